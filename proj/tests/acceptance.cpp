// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// line fails.

#include "ceq/dynamics.hpp"
#include "ceq/equilibrium.hpp"
#include "ceq/metrics.hpp"
#include "ceq/runs.hpp"
#include "ceq/toll.hpp"
#include "golden.hpp"
#include "oracles/so_direct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ceq;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail)
{
    std::printf("criterion %d %s %s: %s\n", id, pass ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Scenario with_mpr(double mpr)
{
    Scenario s = basic_scenario();
    s.mpr = mpr;
    return s;
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

constexpr double kMinute = 1.0 / 60.0;

void criterion_1()
{
    Stopwatch clock;
    const Scenario s = with_mpr(0.0);
    const EquilibriumSolution sol = solve_single_class(s, s.gv);
    const TimeProfile p = sample_profiles(sol, kMinute);
    const double c = sol.cost(VehicleClass::gasoline);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.t[i] > sol.t0() && p.t[i] < sol.t1())
            worst = std::max(worst, rel(p.costs[i].total, c));
    const double flow_err = rel(sol.pattern.population(), 3000.0);
    const double secs = clock.seconds();
    report(1, "UE defining property", worst <= 1e-6 && flow_err <= 1e-6 && secs < 1.0,
           fmt("C_GV=%.10g max cost deviation %.2e, flow integral error %.2e, %.3f s", c, worst, flow_err, secs));
}

void criterion_2()
{
    bool pass = true;
    std::string detail;
    for (double mpr : {0.0, 1.0}) {
        Stopwatch clock;
        const OracleReport r = run_oracle(with_mpr(mpr));
        const double secs = clock.seconds();
        const bool ok = r.run.stop == dynamics::StopReason::converged && r.comparison.max_relative_error <= 0.02 &&
                        secs < 30.0;
        pass = pass && ok;
        detail += fmt("mpr=%g: %ld days, %zu bins, max rel delay error %.4f at t=%.4f (%.2e of peak), %.2f s; ",
                      mpr, r.run.assignment.day, r.comparison.bins.size(), r.comparison.max_relative_error,
                      r.comparison.worst_center, r.comparison.max_error_vs_peak, secs);
    }
    report(2, "oracle equivalence, single class", pass, detail);
}

void criterion_3()
{
    Stopwatch clock;
    const Scenario s = with_mpr(0.5);
    const OracleReport r = run_oracle(s);
    const dynamics::BinAssignment& a = r.run.assignment;
    const double floor = dynamics::kUsedMassFraction * s.n_total;

    const bool contiguous = dynamics::is_contiguous(a, VehicleClass::electric, s.n_total);
    std::size_t ev_first = a.size(), ev_last = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.mass_ev[i] > floor) {
            ev_first = std::min(ev_first, i);
            ev_last = i;
        }
    bool gv_before = false, gv_after = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.mass_gv[i] > floor && i < ev_first)
            gv_before = true;
        if (a.mass_gv[i] > floor && i > ev_last)
            gv_after = true;
    }
    const bool central = ev_first < a.size() && a.centers[ev_first] < s.t_star && a.centers[ev_last] > s.t_star;
    const bool topology = contiguous && central && gv_before && gv_after;

    double mass_gv = 0.0, mass_ev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mass_gv += a.mass_gv[i];
        mass_ev += a.mass_ev[i];
    }
    const double cons = std::max({rel(mass_gv, 1500.0), rel(mass_ev, 1500.0),
                                  rel(r.analytic.pattern.population(VehicleClass::gasoline), 1500.0),
                                  rel(r.analytic.pattern.population(VehicleClass::electric), 1500.0)});
    const bool match = r.comparison.max_relative_error <= 0.02;
    report(3, "oracle equivalence, mixed", topology && match && cons <= 1e-6 && r.run.stop == dynamics::StopReason::converged,
           fmt("EV block bins %zu-%zu (t=%.4f..%.4f) contiguous=%d central=%d flanked=%d/%d; %ld days; max rel "
               "delay error %.4f at t=%.4f (%.2e of peak); conservation error %.2e; %.2f s",
               ev_first, ev_last, a.centers[std::min(ev_first, a.size() - 1)], a.centers[ev_last], contiguous,
               central, gv_before, gv_after, a.day, r.comparison.max_relative_error, r.comparison.worst_center,
               r.comparison.max_error_vs_peak, cons, clock.seconds()));
}

void criterion_4()
{
    const EquilibriumSolution gv = solve_mixed(with_mpr(0.0));
    const EquilibriumSolution ev = solve_mixed(with_mpr(1.0));
    const double t0 = sample_profiles(gv, kMinute).max_delay();
    const double t1 = sample_profiles(ev, kMinute).max_delay();
    const double ratio = t1 / t0;
    const bool band = ratio >= 1.4 && ratio <= 2.0;
    const bool frozen = std::abs(ratio - golden::kPeakDelayRatio) <= 1e-6 * golden::kPeakDelayRatio;
    const bool shorter = ev.duration() < gv.duration();
    report(4, "peak delay ratio and shorter rush", band && frozen && shorter,
           fmt("ratio %.10f (golden %.10f), duration %.6f h at mpr=1 vs %.6f h at mpr=0", ratio,
               golden::kPeakDelayRatio, ev.duration(), gv.duration()));
}

void criterion_5()
{
    const SweepReport coarse = run_sweep(basic_scenario(), default_mpr_grid());
    Scenario fine_s = basic_scenario();
    fine_s.numerics.dt_minutes = 0.5;
    const SweepReport fine = run_sweep(fine_s, default_mpr_grid());
    bool monotone = coarse.rows.front().ecp == 0.0;
    double worst_shift = 0.0;
    std::string values;
    for (std::size_t i = 0; i < coarse.rows.size(); ++i) {
        if (i > 0 && coarse.rows[i].ecp < coarse.rows[i - 1].ecp)
            monotone = false;
        if (coarse.rows[i].ecp > 0.0)
            worst_shift = std::max(worst_shift, rel(fine.rows[i].ecp, coarse.rows[i].ecp));
        else if (fine.rows[i].ecp != 0.0)
            worst_shift = 1.0;
        values += fmt("%s%.4f", i ? " " : "", coarse.rows[i].ecp);
    }
    report(5, "ECP monotone in mpr", monotone && worst_shift < 0.005,
           fmt("ECP h [%s]; largest change when dt is halved %.3f%%", values.c_str(), 100.0 * worst_shift));
}

void criterion_6()
{
    Stopwatch clock;
    const TollRun r = run_toll(basic_scenario());
    const double secs = clock.seconds();
    const double lambda = r.so.lambda;
    const bool a = r.residual <= 1e-6 * lambda;
    const double so_cost = r.metrics.costs.social_total;
    const double ue_cost = r.ue_costs.social_total;
    const bool b = so_cost < ue_cost * (1.0 - 1e-3);
    const double so_peak = r.so.profile.max_delay();
    const double ue_peak = r.ue_profile.max_delay();
    const bool c = r.so.t0() < r.ue.t0() && r.so.t1() > r.ue.t1() && so_peak < ue_peak;
    const double reduction = 1.0 - r.metrics.ecd.max() / r.ecd_untolled_max;
    const bool d = reduction >= 0.9;
    const bool removed = r.metrics.ecd.max() <= 0.0;
    report(6, "toll validity", a && b && c && d && secs < 5.0,
           fmt("(a) residual %.2e vs lambda %.6f: %s; (b) social cost SO %.2f vs UE %.2f (%.2f%% lower): %s; "
               "(c) SO window [%.4f, %.4f] vs UE [%.4f, %.4f], peak %.4f vs %.4f: %s; (d) max ECD %.4f tolled vs "
               "%.4f untolled, reduction %.1f%%: %s; ECD <= 0 everywhere: %s; %.2f s",
               r.residual, lambda, a ? "ok" : "no", so_cost, ue_cost, 100.0 * (1.0 - so_cost / ue_cost),
               b ? "ok" : "no", r.so.t0(), r.so.t1(), r.ue.t0(), r.ue.t1(), so_peak, ue_peak, c ? "ok" : "no",
               r.metrics.ecd.max(), r.ecd_untolled_max, 100.0 * reduction, d ? "ok" : "no",
               removed ? "yes" : "no", secs));
}

void criterion_7()
{
    const Scenario s = with_mpr(1.0);
    const EnergyModel ev = *s.ev;
    const SystemOptimum so = solve_system_optimum(s, ev);

    oracle::SoProblem p;
    p.population = s.n_total;
    for (double t = 6.0 + 0.5 * kMinute; t < 8.6; t += kMinute) {
        p.centers.push_back(t);
        p.schedule.push_back(schedule_delay(t, s));
    }
    p.bin_cost = [&](double x) {
        const double T = delay_from_flow(x / kMinute, s);
        return x * congestion_cost(ev, s, T);
    };
    const oracle::SoResult r = oracle::minimize_so(p);
    const double diff = rel(r.total, so.total_cost);
    report(7, "SO against direct minimization", diff <= 0.005,
           fmt("discretized minimum %.4f after %d iterations vs analytic %.4f, difference %.4f%%", r.total,
               r.iterations, so.total_cost, 100.0 * diff));
}

void criterion_8()
{
    const Scenario s = basic_scenario();
    double phi_err = 0.0, flow_err = 0.0;
    for (const EnergyModel& m : {s.gv, *s.ev})
        for (int i = 1; i <= 2000; ++i) {
            const double T = 1e-3 * i;
            phi_err = std::max(phi_err, rel(invert_congestion_cost(m, s, congestion_cost(m, s, T)), T));
        }
    for (int i = 1; i <= 8000; ++i) {
        const double f = static_cast<double>(i);
        flow_err = std::max(flow_err, rel(flow_from_delay(delay_from_flow(f, s), s), f));
        const double T = 2.5e-4 * i;
        flow_err = std::max(flow_err, rel(delay_from_flow(flow_from_delay(T, s), s), T));
    }
    double reduction_err = 0.0;
    for (double mpr : {0.0, 1.0}) {
        const Scenario sm = with_mpr(mpr);
        const EnergyModel& m = mpr == 0.0 ? sm.gv : *sm.ev;
        const EquilibriumSolution a = solve_mixed(sm);
        const EquilibriumSolution b = solve_single_class(sm, m);
        reduction_err = std::max(reduction_err, rel(a.cost(m.vehicle_class), b.cost(m.vehicle_class)));
        const TimeProfile pa = sample_profiles(a, kMinute);
        const TimeProfile pb = sample_profiles(b, kMinute);
        if (pa.size() != pb.size()) {
            reduction_err = 1.0;
            continue;
        }
        for (std::size_t i = 0; i < pa.size(); ++i)
            reduction_err = std::max(reduction_err, std::abs(pa.delay[i] - pb.delay[i]));
    }
    report(8, "formula round trips", phi_err <= 1e-12 && flow_err <= 1e-12 && reduction_err <= 1e-9,
           fmt("cost inverse %.2e, flow-delay %.2e, mpr 0/1 reductions %.2e", phi_err, flow_err, reduction_err));
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_9()
{
    namespace fs = std::filesystem;
    const fs::path root = fs::current_path() / "acceptance_determinism";
    fs::remove_all(root);
    const std::string scenario = CEQ_SCENARIO_DIR "/basic.toml";
    bool pass = true;
    std::string detail;
    for (const char* cmd : {"solve", "sweep", "toll", "oracle"}) {
        std::vector<fs::path> dirs;
        for (int run = 0; run < 2; ++run) {
            const fs::path dir = root / (std::string(cmd) + std::to_string(run));
            const std::string line = std::string("\"") + CEQ_CLI_PATH + "\" " + cmd + " --scenario \"" + scenario +
                                     "\" --out \"" + dir.string() + "\" --quiet";
            if (std::system(line.c_str()) != 0) {
                pass = false;
                detail += std::string(cmd) + ": command failed; ";
            }
            dirs.push_back(dir);
        }
        int files = 0;
        bool same = true;
        if (fs::exists(dirs[0]))
            for (const auto& entry : fs::directory_iterator(dirs[0])) {
                if (entry.path().extension() != ".csv")
                    continue;
                ++files;
                same = same && slurp(entry.path()) == slurp(dirs[1] / entry.path().filename());
            }
        pass = pass && same && files > 0;
        detail += fmt("%s: %d csv %s; ", cmd, files, same ? "identical" : "DIFFER");
    }
    report(9, "deterministic CSV output", pass, detail);
}

} // namespace

int main()
{
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
