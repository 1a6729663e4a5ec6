#pragma once

// Run orchestration shared by the C API, the CLI and the acceptance suite:
// solve + metrics, MPR sweeps, the toll case, and oracle-vs-analytic
// comparison.

#include "ceq/dynamics.hpp"
#include "ceq/equilibrium.hpp"
#include "ceq/metrics.hpp"
#include "ceq/toll.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace ceq {

struct SolveRun {
    Scenario scenario;
    EquilibriumSolution solution;
    TimeProfile profile;
    EquilibriumSolution baseline; ///< all-GV solution of the same scenario
    TimeProfile baseline_profile;
    MetricsReport metrics;
    std::vector<std::string> warnings;
};

SolveRun run_solve(const Scenario& s);

struct SweepRow {
    double mpr = 0.0;
    double cost_gv = 0.0;
    double cost_ev = 0.0;
    double max_delay = 0.0;
    double duration = 0.0;
    double ecp = 0.0;
    double peak_flow = 0.0;
    double social_cost = 0.0;
};

struct SweepReport {
    std::vector<SweepRow> rows; ///< sorted by mpr
};

/// 0.0, 0.1, ..., 1.0
std::vector<double> default_mpr_grid();

/// One solve per MPR, run concurrently; rows come back sorted.
SweepReport run_sweep(const Scenario& s, std::vector<double> mprs);

struct TollRun {
    Scenario scenario;
    EquilibriumSolution ue;       ///< untolled EV equilibrium
    TimeProfile ue_profile;
    SystemOptimum so;
    TollSchedule toll;
    TimeProfile baseline_profile; ///< all-GV equilibrium
    double residual = 0.0;        ///< verify_tolled_equilibrium
    MetricsReport metrics;        ///< SO metrics against the all-GV baseline
    CostBreakdown ue_costs;
    double ecd_untolled_max = 0.0;
};

/// The EV-only corridor (mpr = 1): untolled UE, system optimum and toll.
TollRun run_toll(const Scenario& s);

struct BinComparison {
    double center = 0.0;
    double mass = 0.0;
    double oracle_delay = 0.0;
    double analytic_delay = 0.0;
    double relative_error = 0.0;
};

struct OracleComparison {
    std::vector<BinComparison> bins; ///< bins with mass above the threshold
    double max_relative_error = 0.0;
    double max_error_vs_peak = 0.0;  ///< max |dT| / analytic peak delay
    double worst_center = 0.0;
};

OracleComparison compare_with_analytic(const dynamics::BinAssignment& a, const EquilibriumSolution& sol,
                                       const Scenario& s, double min_mass_fraction = 1e-3);

struct OracleReport {
    Scenario scenario;
    dynamics::OracleRun run;
    EquilibriumSolution analytic;
    OracleComparison comparison;
};

OracleReport run_oracle(const Scenario& s);

// CSV and summary writers. Numbers are written with 10 significant digits.

std::string format_value(double v);
extern const char* const kProfileHeader;

void write_profile_csv(std::ostream& out, const TimeProfile& p, double toll_offset = 0.0);
void write_sweep_csv(std::ostream& out, const SweepReport& r);
void write_oracle_csv(std::ostream& out, const OracleReport& r);
void write_trace_csv(std::ostream& out, const dynamics::OracleRun& r);

void write_solve_summary(std::ostream& out, const SolveRun& r);
void write_toll_summary(std::ostream& out, const TollRun& r);
void write_oracle_summary(std::ostream& out, const OracleReport& r);

} // namespace ceq
