#include "ceq/runs.hpp"

#include "ceq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>

namespace ceq {

namespace {

double profile_dt(const Scenario& s)
{
    return s.numerics.dt_minutes / 60.0;
}

Scenario all_gv(const Scenario& s)
{
    Scenario g = s;
    g.mpr = 0.0;
    return g;
}

} // namespace

SolveRun run_solve(const Scenario& s)
{
    SolveRun r;
    r.scenario = s;
    r.warnings = validate(s);
    const double dt = profile_dt(s);
    r.solution = solve_mixed(s);
    r.profile = sample_profiles(r.solution, dt);
    r.baseline = solve_single_class(all_gv(s), s.gv);
    r.baseline_profile = sample_profiles(r.baseline, dt);
    r.metrics = summarize(r.solution, r.profile, r.baseline_profile);
    return r;
}

std::vector<double> default_mpr_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 10; ++i)
        g.push_back(static_cast<double>(i) / 10.0);
    return g;
}

SweepReport run_sweep(const Scenario& s, std::vector<double> mprs)
{
    for (double m : mprs)
        if (!(m >= 0.0 && m <= 1.0))
            throw InputError("sweep mpr values must be in [0,1] (got " + format_value(m) + ")");
    std::sort(mprs.begin(), mprs.end());
    validate(all_gv(s));

    const double dt = profile_dt(s);
    const EquilibriumSolution baseline = solve_single_class(all_gv(s), s.gv);
    const double baseline_max = sample_profiles(baseline, dt).max_delay();

    auto solve_one = [&s, dt, baseline_max](double mpr) {
        Scenario local = s;
        local.mpr = mpr;
        const EquilibriumSolution sol = solve_mixed(local);
        const TimeProfile prof = sample_profiles(sol, dt);
        SweepRow row;
        row.mpr = mpr;
        row.cost_gv = sol.cost(VehicleClass::gasoline);
        row.cost_ev = sol.cost(VehicleClass::electric);
        row.max_delay = prof.max_delay();
        row.duration = sol.duration();
        row.ecp = extra_congested_period(prof, baseline_max);
        for (double f : prof.flow)
            row.peak_flow = std::max(row.peak_flow, f);
        row.social_cost = total_cost_breakdown(sol).social_total;
        return row;
    };

    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(mprs.size());
    for (double m : mprs)
        jobs.push_back(std::async(std::launch::async, solve_one, m));
    SweepReport report;
    for (auto& j : jobs)
        report.rows.push_back(j.get());
    return report;
}

TollRun run_toll(const Scenario& s)
{
    TollRun r;
    r.scenario = s;
    const EnergyModel& ev = s.energy(VehicleClass::electric);
    Scenario ev_only = s;
    ev_only.mpr = 1.0;
    const double dt = profile_dt(s);

    r.ue = solve_single_class(ev_only, ev);
    r.ue_profile = sample_profiles(r.ue, dt);
    r.so = solve_system_optimum(ev_only, ev);
    r.toll = compute_toll(r.so, ev, ev_only);
    r.residual = verify_tolled_equilibrium(r.toll, ev_only, ev);
    r.baseline_profile = sample_profiles(solve_single_class(all_gv(s), s.gv), dt);
    r.metrics = summarize(r.so, r.toll, r.baseline_profile);
    r.ue_costs = total_cost_breakdown(r.ue);
    r.ecd_untolled_max = extra_congestion_delay(r.ue_profile, r.baseline_profile).max();
    return r;
}

OracleComparison compare_with_analytic(const dynamics::BinAssignment& a, const EquilibriumSolution& sol,
                                       const Scenario& s, double min_mass_fraction)
{
    OracleComparison c;
    double peak = 0.0;
    for (const PatternPiece& p : sol.pattern.pieces())
        peak = std::max(peak, sol.pattern.delay_at(std::clamp(s.t_star, p.t_lo, p.t_hi)));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double m = a.total_mass(i);
        if (!(m > min_mass_fraction * s.n_total))
            continue;
        BinComparison b;
        b.center = a.centers[i];
        b.mass = m;
        b.oracle_delay = a.bin_delay(i, s);
        b.analytic_delay = sol.pattern.delay_at(b.center);
        const double diff = std::abs(b.oracle_delay - b.analytic_delay);
        b.relative_error = b.analytic_delay > 0.0 ? diff / b.analytic_delay : std::numeric_limits<double>::infinity();
        if (b.relative_error > c.max_relative_error || c.bins.empty()) {
            c.max_relative_error = std::max(c.max_relative_error, b.relative_error);
            c.worst_center = b.center;
        }
        if (peak > 0.0)
            c.max_error_vs_peak = std::max(c.max_error_vs_peak, diff / peak);
        c.bins.push_back(b);
    }
    return c;
}

OracleReport run_oracle(const Scenario& s)
{
    validate(s);
    OracleReport r;
    r.scenario = s;
    const Numerics& n = s.numerics;
    r.run = dynamics::run_until_converged(s, n.oracle_bin_minutes / 60.0, n.eta, n.gap_tol, n.max_days);
    r.analytic = solve_mixed(s);
    r.comparison = compare_with_analytic(r.run.assignment, r.analytic, s);
    return r;
}

// --- writers -----------------------------------------------------------------

const char* const kProfileHeader =
    "t_hours,delay_hours,flow_total,flow_gv,flow_ev,cost_traveltime,cost_energy,cost_schedule,toll,cost_total";

std::string format_value(double v)
{
    if (v == 0.0)
        v = 0.0; // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

void csv_row(std::ostream& out, std::initializer_list<double> values)
{
    bool first = true;
    for (double v : values) {
        if (!first)
            out << ',';
        out << format_value(v);
        first = false;
    }
    out << '\n';
}

void kv(std::ostream& out, const char* key, double v)
{
    out << key << " = " << format_value(v) << '\n';
}

void kv(std::ostream& out, const char* key, const std::string& v)
{
    out << key << " = " << v << '\n';
}

void write_costs(std::ostream& out, const char* prefix, const CostBreakdown& c)
{
    const std::string p(prefix);
    kv(out, (p + "cost_traveltime").c_str(), c.travel_time);
    kv(out, (p + "cost_energy").c_str(), c.energy);
    kv(out, (p + "cost_schedule").c_str(), c.schedule);
    kv(out, (p + "toll_revenue").c_str(), c.toll_revenue);
    kv(out, (p + "social_cost").c_str(), c.social_total);
}

} // namespace

void write_profile_csv(std::ostream& out, const TimeProfile& p, double toll_offset)
{
    out << kProfileHeader << '\n';
    for (std::size_t i = 0; i < p.size(); ++i) {
        const CostComponents& c = p.costs[i];
        const double toll = c.toll - toll_offset;
        csv_row(out, {p.t[i], p.delay[i], p.flow[i], p.flow_gv[i], p.flow_ev[i], c.travel_time, c.energy,
                      c.schedule, toll, c.travel_time + c.energy + c.schedule + toll});
    }
}

void write_sweep_csv(std::ostream& out, const SweepReport& r)
{
    out << "mpr,cost_gv,cost_ev,max_delay_hours,duration_hours,ecp_hours,peak_flow,social_cost\n";
    for (const SweepRow& row : r.rows)
        csv_row(out, {row.mpr, row.cost_gv, row.cost_ev, row.max_delay, row.duration, row.ecp, row.peak_flow,
                      row.social_cost});
}

void write_oracle_csv(std::ostream& out, const OracleReport& r)
{
    const dynamics::BinAssignment& a = r.run.assignment;
    const Scenario& s = r.scenario;
    out << "t_hours,mass_gv,mass_ev,flow_total,delay_hours,delay_analytic_hours\n";
    for (std::size_t i = 0; i < a.size(); ++i)
        csv_row(out, {a.centers[i], a.mass_gv[i], a.mass_ev[i], a.bin_flow(i), a.bin_delay(i, s),
                      r.analytic.pattern.delay_at(a.centers[i])});
}

void write_trace_csv(std::ostream& out, const dynamics::OracleRun& r)
{
    out << "day,gap_gv,gap_ev,relative_gap_gv,relative_gap_ev\n";
    for (std::size_t d = 0; d < r.trace.size(); ++d) {
        const dynamics::GapReport& g = r.trace[d];
        csv_row(out, {static_cast<double>(d), g.gap_gv, g.gap_ev, g.relative_gv, g.relative_ev});
    }
}

void write_solve_summary(std::ostream& out, const SolveRun& r)
{
    const EquilibriumSolution& sol = r.solution;
    kv(out, "mpr", r.scenario.mpr);
    kv(out, "n_total", r.scenario.n_total);
    for (const ClassOutcome& o : sol.classes) {
        const std::string cls(to_string(o.vehicle_class));
        kv(out, ("equilibrium_cost_" + cls).c_str(), o.equilibrium_cost);
        kv(out, ("population_" + cls).c_str(), o.population);
    }
    for (const ClassSegment& seg : sol.segments) {
        out << "segment = " << to_string(seg.vehicle_class) << ' ' << format_value(seg.t_lo) << ' '
            << format_value(seg.t_hi) << '\n';
    }
    kv(out, "t0", r.metrics.t0);
    kv(out, "t1", r.metrics.t1);
    kv(out, "duration_hours", r.metrics.duration);
    kv(out, "max_delay_hours", r.metrics.max_delay);
    kv(out, "min_speed_kmh", average_speed(r.metrics.max_delay, r.scenario));
    kv(out, "peak_flow", r.metrics.peak_flow);
    kv(out, "baseline_max_delay_hours", r.baseline_profile.max_delay());
    kv(out, "baseline_peak_flow",
       r.baseline_profile.flow.empty() ? 0.0 : *std::max_element(r.baseline_profile.flow.begin(),
                                                                  r.baseline_profile.flow.end()));
    kv(out, "ecp_hours", r.metrics.ecp);
    kv(out, "ecd_max_hours", r.metrics.ecd.max());
    write_costs(out, "", r.metrics.costs);
    for (const std::string& w : r.warnings)
        kv(out, "warning", w);
}

void write_toll_summary(std::ostream& out, const TollRun& r)
{
    kv(out, "lambda", r.so.lambda);
    kv(out, "so_t0", r.so.t0());
    kv(out, "so_t1", r.so.t1());
    kv(out, "so_duration_hours", r.so.t1() - r.so.t0());
    kv(out, "so_max_delay_hours", r.so.profile.max_delay());
    kv(out, "max_toll", r.toll.max_toll());
    kv(out, "toll_offset", r.scenario.numerics.toll_offset);
    kv(out, "tolled_equilibrium_residual", r.residual);
    kv(out, "ue_equilibrium_cost", r.ue.cost(VehicleClass::electric));
    kv(out, "ue_duration_hours", r.ue.duration());
    kv(out, "ue_max_delay_hours", r.ue_profile.max_delay());
    write_costs(out, "ue_", r.ue_costs);
    write_costs(out, "so_", r.metrics.costs);
    kv(out, "ecd_max_untolled_hours", r.ecd_untolled_max);
    kv(out, "ecd_max_tolled_hours", r.metrics.ecd.max());
}

void write_oracle_summary(std::ostream& out, const OracleReport& r)
{
    kv(out, "mpr", r.scenario.mpr);
    kv(out, "days", static_cast<double>(r.run.assignment.day));
    kv(out, "stop", std::string(r.run.stop == dynamics::StopReason::converged ? "converged" : "max_days"));
    kv(out, "relative_gap_gv", r.run.gap.relative_gv);
    kv(out, "relative_gap_ev", r.run.gap.relative_ev);
    kv(out, "bins_compared", static_cast<double>(r.comparison.bins.size()));
    kv(out, "max_relative_delay_error", r.comparison.max_relative_error);
    kv(out, "worst_bin_center", r.comparison.worst_center);
    kv(out, "max_delay_error_vs_peak", r.comparison.max_error_vs_peak);
    kv(out, "ev_block_contiguous",
       std::string(dynamics::is_contiguous(r.run.assignment, VehicleClass::electric, r.scenario.n_total) ? "yes"
                                                                                                        : "no"));
}

} // namespace ceq
