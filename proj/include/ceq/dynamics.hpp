#pragma once

// Day-to-day adjustment over discrete arrival bins. Independent of the
// analytic solvers: it only evaluates the cost and flow-speed formulas, and
// its fixed points are exactly the equal-cost assignments of the binned
// model.

#include "ceq/model.hpp"

#include <vector>

namespace ceq::dynamics {

/// Bins with mass below this fraction of n_total count as unused.
inline constexpr double kUsedMassFraction = 1e-9;

struct BinAssignment {
    double bin_width = 0.0;
    std::vector<double> centers;
    std::vector<double> mass_gv;
    std::vector<double> mass_ev;
    long day = 0;

    std::size_t size() const { return centers.size(); }
    std::vector<double>& mass(VehicleClass c) { return c == VehicleClass::gasoline ? mass_gv : mass_ev; }
    const std::vector<double>& mass(VehicleClass c) const
    {
        return c == VehicleClass::gasoline ? mass_gv : mass_ev;
    }
    double total_mass(std::size_t bin) const { return mass_gv[bin] + mass_ev[bin]; }
    double bin_flow(std::size_t bin) const { return total_mass(bin) / bin_width; }
    double bin_delay(std::size_t bin, const Scenario& s) const { return delay_from_flow(bin_flow(bin), s); }
};

struct GapReport {
    double gap_gv = 0.0;
    double gap_ev = 0.0;
    double relative_gv = 0.0;
    double relative_ev = 0.0;

    double max_relative() const { return relative_gv > relative_ev ? relative_gv : relative_ev; }
};

enum class StopReason { converged, max_days };

struct OracleRun {
    BinAssignment assignment;
    GapReport gap;
    StopReason stop = StopReason::max_days;
    std::vector<GapReport> trace; ///< one entry per day, day 0 first
};

/// Cost a commuter of class `cls` pays for arriving in `bin`.
double bin_cost(const BinAssignment& a, const Scenario& s, VehicleClass cls, std::size_t bin);

/// Uniform spread over a window of width 2(1/beta + 1/gamma) * Phi_GV(T_h),
/// T_h being the delay of n_total commuters arriving within one hour. The
/// window is split around t* in the ratio 1/beta : 1/gamma.
BinAssignment init_assignment(const Scenario& s, double bin_width);

/// One day of adjustment. Per class, with c_min the cheapest bin cost:
///  - a bin that would cost more than c_min even if it were empty sheds
///    the fraction eta of its mass;
///  - any other bin sheds eta * (c - c_min) / c of its mass.
/// The shed mass is shared among bins cheaper than the class's mass-weighted
/// mean cost, in proportion to how much cheaper they are. Costs for both
/// classes are taken from the start-of-day assignment.
BinAssignment day_step(const BinAssignment& a, const Scenario& s, double eta);

GapReport gap_measure(const BinAssignment& a, const Scenario& s);

OracleRun run_until_converged(const Scenario& s, double bin_width, double eta, double gap_tol, long max_days);

/// True when the bins used by `cls` form one contiguous block.
bool is_contiguous(const BinAssignment& a, VehicleClass cls, double n_total);

} // namespace ceq::dynamics
