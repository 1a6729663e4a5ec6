#include "ceq/model.hpp"

#include "ceq/errors.hpp"

#include <cmath>
#include <sstream>

namespace ceq {

namespace {

void require(bool ok, std::string_view field, std::string_view constraint, double value)
{
    if (ok)
        return;
    std::ostringstream os;
    os << field << " must be " << constraint << " (got " << value << ")";
    throw InputError(os.str());
}

void check_nonnegative(double x, const char* what)
{
    if (!(x >= 0.0)) {
        std::ostringstream os;
        os << what << " must be non-negative (got " << x << ")";
        throw DomainError(os.str());
    }
}

} // namespace

std::string_view to_string(VehicleClass c)
{
    return c == VehicleClass::gasoline ? "gv" : "ev";
}

const EnergyModel& Scenario::energy(VehicleClass c) const
{
    if (c == VehicleClass::gasoline)
        return gv;
    if (!ev)
        throw InputError("scenario has no [energy.ev] section");
    return *ev;
}

double Scenario::population(VehicleClass c) const
{
    return c == VehicleClass::electric ? mpr * n_total : (1.0 - mpr) * n_total;
}

Scenario basic_scenario()
{
    return Scenario{};
}

std::vector<std::string> validate(const Scenario& s)
{
    require(s.alpha > 0, "demand.alpha", "> 0", s.alpha);
    require(s.beta > 0, "demand.beta", "> 0", s.beta);
    require(s.gamma > 0, "demand.gamma", "> 0", s.gamma);
    require(std::isfinite(s.t_star), "demand.t_star", "finite", s.t_star);
    require(s.n_total >= 0 && std::isfinite(s.n_total), "demand.n_total", ">= 0", s.n_total);
    require(s.mpr >= 0 && s.mpr <= 1, "demand.mpr", "in [0,1]", s.mpr);
    require(s.nu > 0, "corridor.nu", "> 0", s.nu);
    require(s.capacity_r > 0, "corridor.capacity_r", "> 0", s.capacity_r);
    require(s.trip_km > 0, "corridor.trip_km", "> 0", s.trip_km);
    require(s.s_max > 0, "corridor.s_max", "> 0", s.s_max);
    require(s.gv.c1 >= 0, "energy.gv.c1", ">= 0", s.gv.c1);
    require(s.gv.c2 >= 0, "energy.gv.c2", ">= 0", s.gv.c2);
    if (s.ev) {
        require(s.ev->c1 >= 0, "energy.ev.c1", ">= 0", s.ev->c1);
        require(s.ev->c2 >= 0, "energy.ev.c2", ">= 0", s.ev->c2);
    } else if (s.mpr > 0) {
        throw InputError("[energy.ev] is required when demand.mpr > 0");
    }

    const Numerics& n = s.numerics;
    require(n.dt_minutes > 0, "numerics.dt", "> 0", n.dt_minutes);
    require(n.root_tol > 0, "numerics.root_tol", "> 0", n.root_tol);
    require(n.quad_tol > 0, "numerics.quad_tol", "> 0", n.quad_tol);
    require(n.mixed_tol > 0, "numerics.mixed_tol", "> 0", n.mixed_tol);
    require(n.oracle_bin_minutes > 0, "numerics.oracle_bin", "> 0", n.oracle_bin_minutes);
    require(n.eta > 0 && n.eta <= 1, "numerics.eta", "in (0,1]", n.eta);
    require(n.gap_tol > 0, "numerics.gap_tol", "> 0", n.gap_tol);
    require(n.max_days >= 0, "numerics.max_days", ">= 0", static_cast<double>(n.max_days));

    std::vector<std::string> warnings;
    if (!(s.beta < s.alpha))
        warnings.emplace_back("demand.beta >= demand.alpha: early arrival is not cheaper than travel time");
    if (s.ev && (s.ev->c1 > s.gv.c1 || s.ev->c2 > s.gv.c2))
        warnings.emplace_back("EV energy coefficients exceed GV ones: EV cost is not flatter in delay");
    return warnings;
}

double QuadraticMap::value(double T) const
{
    return (linear + quadratic * T) * T;
}

double QuadraticMap::slope(double T) const
{
    return linear + 2.0 * quadratic * T;
}

double QuadraticMap::inverse(double c) const
{
    check_nonnegative(c, "cost");
    if (quadratic == 0.0)
        return c / linear;
    // Rationalized root: no cancellation for small c.
    return 2.0 * c / (linear + std::sqrt(linear * linear + 4.0 * quadratic * c));
}

double schedule_delay(double t, const Scenario& s)
{
    return t <= s.t_star ? s.beta * (s.t_star - t) : s.gamma * (t - s.t_star);
}

double energy_cost(const EnergyModel& model, double T)
{
    check_nonnegative(T, "delay");
    return (model.c1 + model.c2 * T) * T;
}

QuadraticMap congestion_map(const EnergyModel& model, const Scenario& s)
{
    return {s.alpha + model.c1, model.c2};
}

QuadraticMap marginal_social_map(const EnergyModel& model, const Scenario& s)
{
    // Phi + nu*T*Phi' = (1+nu)(alpha+c1) T + (1+2nu) c2 T^2
    const QuadraticMap phi = congestion_map(model, s);
    return {(1.0 + s.nu) * phi.linear, (1.0 + 2.0 * s.nu) * phi.quadratic};
}

double congestion_cost(const EnergyModel& model, const Scenario& s, double T)
{
    check_nonnegative(T, "delay");
    return congestion_map(model, s).value(T);
}

double congestion_cost_slope(const EnergyModel& model, const Scenario& s, double T)
{
    check_nonnegative(T, "delay");
    return congestion_map(model, s).slope(T);
}

double invert_congestion_cost(const EnergyModel& model, const Scenario& s, double c)
{
    return congestion_map(model, s).inverse(c);
}

double delay_from_flow(double f, const Scenario& s)
{
    check_nonnegative(f, "flow");
    return s.trip_km * std::pow(f / s.capacity_r, s.nu);
}

double flow_from_delay(double T, const Scenario& s)
{
    check_nonnegative(T, "delay");
    return s.capacity_r * std::pow(T / s.trip_km, 1.0 / s.nu);
}

double average_speed(double T, const Scenario& s)
{
    return s.trip_km / (s.trip_km / s.s_max + T);
}

CostComponents cost_components(const EnergyModel& model, const Scenario& s, double t, double T,
                               double toll)
{
    CostComponents c;
    c.travel_time = s.alpha * T;
    c.energy = energy_cost(model, T);
    c.schedule = schedule_delay(t, s);
    c.toll = toll;
    c.total = c.travel_time + c.energy + c.schedule + c.toll;
    return c;
}

} // namespace ceq
