#include "ceq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ceq::dynamics {

namespace {

constexpr VehicleClass kClasses[] = {VehicleClass::gasoline, VehicleClass::electric};

bool has_class(const Scenario& s, VehicleClass c)
{
    return s.population(c) > 0.0;
}

} // namespace

double bin_cost(const BinAssignment& a, const Scenario& s, VehicleClass cls, std::size_t bin)
{
    const double T = a.bin_delay(bin, s);
    return congestion_cost(s.energy(cls), s, T) + schedule_delay(a.centers[bin], s);
}

BinAssignment init_assignment(const Scenario& s, double bin_width)
{
    BinAssignment a;
    a.bin_width = bin_width;
    const double heuristic_delay = delay_from_flow(s.n_total, s);
    const double level = congestion_cost(s.gv, s, heuristic_delay);
    double lo = s.t_star - 2.0 * level / s.beta;
    double hi = s.t_star + 2.0 * level / s.gamma;
    if (!(hi > lo)) {
        lo = s.t_star - bin_width;
        hi = s.t_star + bin_width;
    }
    const auto bins = static_cast<std::size_t>(std::ceil((hi - lo) / bin_width));
    a.centers.resize(bins);
    for (std::size_t i = 0; i < bins; ++i)
        a.centers[i] = lo + (static_cast<double>(i) + 0.5) * bin_width;
    for (VehicleClass c : kClasses)
        a.mass(c).assign(bins, s.population(c) / static_cast<double>(bins));
    return a;
}

BinAssignment day_step(const BinAssignment& a, const Scenario& s, double eta)
{
    BinAssignment next = a;
    next.day = a.day + 1;
    const std::size_t n = a.size();
    std::vector<double> cost(n);
    std::vector<double> shed(n);

    for (VehicleClass cls : kClasses) {
        if (!has_class(s, cls))
            continue;
        const std::vector<double>& mass = a.mass(cls);
        double class_mass = 0.0;
        double weighted = 0.0;
        double c_min = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            cost[i] = bin_cost(a, s, cls, i);
            c_min = std::min(c_min, cost[i]);
            class_mass += mass[i];
            weighted += mass[i] * cost[i];
        }
        if (!(class_mass > 0.0))
            continue;
        const double c_mean = weighted / class_mass;

        double released = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fraction = 0.0;
            if (mass[i] > 0.0 && cost[i] > c_min) {
                const double empty_cost = schedule_delay(a.centers[i], s);
                fraction = empty_cost > c_min ? eta : eta * (cost[i] - c_min) / cost[i];
            }
            shed[i] = fraction * mass[i];
            released += shed[i];
        }
        double weight_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            weight_sum += std::max(0.0, c_mean - cost[i]);
        if (!(released > 0.0) || !(weight_sum > 0.0))
            continue;

        std::vector<double>& out = next.mass(cls);
        for (std::size_t i = 0; i < n; ++i) {
            const double gain = released * std::max(0.0, c_mean - cost[i]) / weight_sum;
            out[i] = std::max(0.0, mass[i] - shed[i]) + gain;
        }
    }
    return next;
}

GapReport gap_measure(const BinAssignment& a, const Scenario& s)
{
    GapReport r;
    if (a.size() == 0)
        return r;
    const double used_floor = kUsedMassFraction * s.n_total;
    for (VehicleClass cls : kClasses) {
        if (!has_class(s, cls))
            continue;
        const std::vector<double>& mass = a.mass(cls);
        double c_min = std::numeric_limits<double>::infinity();
        double c_used = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double c = bin_cost(a, s, cls, i);
            c_min = std::min(c_min, c);
            if (mass[i] > used_floor)
                c_used = std::max(c_used, c);
        }
        if (!std::isfinite(c_used))
            continue;
        const double gap = c_used - c_min;
        const double rel = c_min > 0.0 ? gap / c_min : (gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        if (cls == VehicleClass::gasoline) {
            r.gap_gv = gap;
            r.relative_gv = rel;
        } else {
            r.gap_ev = gap;
            r.relative_ev = rel;
        }
    }
    return r;
}

OracleRun run_until_converged(const Scenario& s, double bin_width, double eta, double gap_tol, long max_days)
{
    OracleRun run;
    run.assignment = init_assignment(s, bin_width);
    run.gap = gap_measure(run.assignment, s);
    run.trace.push_back(run.gap);
    while (true) {
        if (run.gap.max_relative() < gap_tol) {
            run.stop = StopReason::converged;
            break;
        }
        if (run.assignment.day >= max_days) {
            run.stop = StopReason::max_days;
            break;
        }
        run.assignment = day_step(run.assignment, s, eta);
        run.gap = gap_measure(run.assignment, s);
        run.trace.push_back(run.gap);
    }
    return run;
}

bool is_contiguous(const BinAssignment& a, VehicleClass cls, double n_total)
{
    const double floor = kUsedMassFraction * n_total;
    const std::vector<double>& mass = a.mass(cls);
    bool started = false;
    bool ended = false;
    for (double m : mass) {
        const bool used = m > floor;
        if (used && ended)
            return false;
        if (used)
            started = true;
        else if (started)
            ended = true;
    }
    return true;
}

} // namespace ceq::dynamics
