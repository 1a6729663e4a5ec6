#pragma once

#include "ceq/equilibrium.hpp"
#include "ceq/toll.hpp"

#include <vector>

namespace ceq {

/// Integrated cost over all commuters. Toll revenue is a transfer and is
/// kept out of the social total.
struct CostBreakdown {
    double travel_time = 0.0;
    double energy = 0.0;
    double schedule = 0.0;
    double toll_revenue = 0.0;
    double social_total = 0.0;
};

struct EcdProfile {
    std::vector<double> t;
    std::vector<double> delta; ///< delay difference, h

    double max() const;
    double min() const;
};

struct MetricsReport {
    double max_delay = 0.0;
    double t0 = 0.0;
    double t1 = 0.0;
    double duration = 0.0;
    double ecp = 0.0;
    double peak_flow = 0.0;
    EcdProfile ecd;
    CostBreakdown costs;
};

/// Time during which the delay exceeds `baseline_max_delay`, with crossings
/// located by linear interpolation between grid nodes.
double extra_congested_period(const TimeProfile& profile, double baseline_max_delay);

/// profile.delay - baseline.delay on the union of both grids; each profile
/// is interpolated linearly and taken as zero outside its own grid.
EcdProfile extra_congestion_delay(const TimeProfile& profile, const TimeProfile& baseline);

/// Exact (graded quadrature) integrals over a solved pattern.
CostBreakdown total_cost_breakdown(const EquilibriumSolution& sol);
CostBreakdown total_cost_breakdown(const SystemOptimum& so, const TollSchedule* toll);

/// Uniform-grid trapezoid over a sampled profile. Coarser than the pattern
/// version near the window edges; useful for checking emitted CSVs.
CostBreakdown total_cost_breakdown(const TimeProfile& profile);

MetricsReport summarize(const EquilibriumSolution& sol, const TimeProfile& profile, const TimeProfile& baseline);
MetricsReport summarize(const SystemOptimum& so, const TollSchedule& toll, const TimeProfile& baseline);

} // namespace ceq
