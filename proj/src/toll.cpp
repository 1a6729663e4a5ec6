#include "ceq/toll.hpp"

#include <algorithm>
#include <cmath>

namespace ceq {

double TollSchedule::max_toll() const
{
    double m = 0.0;
    for (double x : toll)
        m = std::max(m, x);
    return m;
}

double marginal_external_cost(const EnergyModel& model, const Scenario& s, double T)
{
    return s.nu * T * congestion_cost_slope(model, s, T);
}

SystemOptimum solve_system_optimum(const Scenario& s, const EnergyModel& model)
{
    validate(s);
    SystemOptimum so;
    so.model = model;
    Scenario own = s;
    if (model.vehicle_class == VehicleClass::electric) {
        own.ev = model;
        own.mpr = 1.0;
    } else {
        own.gv = model;
        own.mpr = 0.0;
    }
    const double dt = own.numerics.dt_minutes / 60.0;
    if (!(own.n_total > 0.0)) {
        so.pattern = ArrivalPattern::empty_at(own);
        so.profile = sample_pattern(so.pattern, dt);
        return so;
    }

    const QuadraticMap social = marginal_social_map(model, own);
    so.lambda = solve_isocost_level(own, model.vehicle_class, social, own.n_total);
    so.pattern = isocost_pattern(own, model.vehicle_class, social, so.lambda);
    so.profile = sample_pattern(so.pattern, dt, [&](double t) {
        return marginal_external_cost(model, own, so.pattern.delay_at(t));
    });
    so.total_cost = so.pattern.integrate(
        [&](double t, double T, const PatternPiece&) { return congestion_cost(model, own, T) + schedule_delay(t, own); });
    return so;
}

TollSchedule compute_toll(const SystemOptimum& so, const EnergyModel& model, const Scenario& s)
{
    TollSchedule sched;
    sched.so = so;
    if (so.empty())
        return sched;
    sched.t = so.profile.t;
    sched.toll.reserve(sched.t.size());
    for (std::size_t i = 0; i < sched.t.size(); ++i) {
        const double t = sched.t[i];
        const bool inside = t >= so.t0() && t <= so.t1();
        sched.toll.push_back(inside ? marginal_external_cost(model, s, so.pattern.delay_at(t)) : 0.0);
    }
    return sched;
}

double verify_tolled_equilibrium(const TollSchedule& toll, const Scenario& s, const EnergyModel& model)
{
    if (toll.empty())
        return 0.0;
    const SystemOptimum& so = toll.so;
    double worst = 0.0;
    for (std::size_t i = 0; i < toll.t.size(); ++i) {
        const double t = toll.t[i];
        if (t < so.t0() || t > so.t1())
            continue;
        const double T = so.pattern.delay_at(t);
        const double cost = congestion_cost(model, s, T) + toll.toll[i] + schedule_delay(t, s);
        worst = std::max(worst, std::abs(cost - so.lambda));
    }
    return worst;
}

} // namespace ceq
