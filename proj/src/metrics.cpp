#include "ceq/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ceq {

double EcdProfile::max() const
{
    return delta.empty() ? 0.0 : *std::max_element(delta.begin(), delta.end());
}

double EcdProfile::min() const
{
    return delta.empty() ? 0.0 : *std::min_element(delta.begin(), delta.end());
}

double extra_congested_period(const TimeProfile& profile, double baseline_max_delay)
{
    double total = 0.0;
    for (std::size_t i = 1; i < profile.size(); ++i) {
        const double ya = profile.delay[i - 1] - baseline_max_delay;
        const double yb = profile.delay[i] - baseline_max_delay;
        const double h = profile.t[i] - profile.t[i - 1];
        if (ya > 0.0 && yb > 0.0)
            total += h;
        else if (ya > 0.0 && yb <= 0.0)
            total += h * ya / (ya - yb);
        else if (ya <= 0.0 && yb > 0.0)
            total += h * yb / (yb - ya);
    }
    return total;
}

namespace {

double interpolate(const TimeProfile& p, double t)
{
    if (p.size() == 0 || t < p.t.front() || t > p.t.back())
        return 0.0;
    const auto it = std::lower_bound(p.t.begin(), p.t.end(), t);
    const auto i = static_cast<std::size_t>(it - p.t.begin());
    if (p.t[i] == t || i == 0)
        return p.delay[i];
    const double w = (t - p.t[i - 1]) / (p.t[i] - p.t[i - 1]);
    return (1.0 - w) * p.delay[i - 1] + w * p.delay[i];
}

} // namespace

EcdProfile extra_congestion_delay(const TimeProfile& profile, const TimeProfile& baseline)
{
    EcdProfile ecd;
    std::vector<double> grid;
    grid.reserve(profile.size() + baseline.size());
    std::merge(profile.t.begin(), profile.t.end(), baseline.t.begin(), baseline.t.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    ecd.t = grid;
    ecd.delta.reserve(grid.size());
    for (double t : grid)
        ecd.delta.push_back(interpolate(profile, t) - interpolate(baseline, t));
    return ecd;
}

namespace {

template <class TollFn>
CostBreakdown integrate_costs(const ArrivalPattern& pattern, TollFn&& toll)
{
    CostBreakdown c;
    if (pattern.empty())
        return c;
    const Scenario& s = pattern.scenario();
    c.travel_time = pattern.integrate([&](double, double T, const PatternPiece&) { return s.alpha * T; });
    c.energy = pattern.integrate(
        [&](double, double T, const PatternPiece& p) { return energy_cost(s.energy(p.vehicle_class), T); });
    c.schedule = pattern.integrate([&](double t, double, const PatternPiece&) { return schedule_delay(t, s); });
    c.toll_revenue = pattern.integrate([&](double t, double T, const PatternPiece& p) { return toll(t, T, p); });
    c.social_total = c.travel_time + c.energy + c.schedule;
    return c;
}

} // namespace

CostBreakdown total_cost_breakdown(const EquilibriumSolution& sol)
{
    return integrate_costs(sol.pattern, [](double, double, const PatternPiece&) { return 0.0; });
}

CostBreakdown total_cost_breakdown(const SystemOptimum& so, const TollSchedule* toll)
{
    const Scenario& s = so.pattern.scenario();
    if (!toll)
        return integrate_costs(so.pattern, [](double, double, const PatternPiece&) { return 0.0; });
    return integrate_costs(so.pattern, [&](double, double T, const PatternPiece& p) {
        return marginal_external_cost(s.energy(p.vehicle_class), s, T);
    });
}

CostBreakdown total_cost_breakdown(const TimeProfile& profile)
{
    CostBreakdown c;
    for (std::size_t i = 1; i < profile.size(); ++i) {
        const double h = 0.5 * (profile.t[i] - profile.t[i - 1]);
        const CostComponents& a = profile.costs[i - 1];
        const CostComponents& b = profile.costs[i];
        const double fa = profile.flow[i - 1];
        const double fb = profile.flow[i];
        c.travel_time += h * (fa * a.travel_time + fb * b.travel_time);
        c.energy += h * (fa * a.energy + fb * b.energy);
        c.schedule += h * (fa * a.schedule + fb * b.schedule);
        c.toll_revenue += h * (fa * a.toll + fb * b.toll);
    }
    c.social_total = c.travel_time + c.energy + c.schedule;
    return c;
}

namespace {

MetricsReport base_report(const TimeProfile& profile, const TimeProfile& baseline, double t0, double t1)
{
    MetricsReport r;
    r.max_delay = profile.max_delay();
    r.t0 = t0;
    r.t1 = t1;
    r.duration = t1 - t0;
    r.ecp = extra_congested_period(profile, baseline.max_delay());
    r.ecd = extra_congestion_delay(profile, baseline);
    for (double f : profile.flow)
        r.peak_flow = std::max(r.peak_flow, f);
    return r;
}

} // namespace

MetricsReport summarize(const EquilibriumSolution& sol, const TimeProfile& profile, const TimeProfile& baseline)
{
    MetricsReport r = base_report(profile, baseline, sol.t0(), sol.t1());
    r.costs = total_cost_breakdown(sol);
    return r;
}

MetricsReport summarize(const SystemOptimum& so, const TollSchedule& toll, const TimeProfile& baseline)
{
    MetricsReport r = base_report(so.profile, baseline, so.t0(), so.t1());
    r.costs = total_cost_breakdown(so, &toll);
    return r;
}

} // namespace ceq
