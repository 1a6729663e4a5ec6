#pragma once

// User-equilibrium arrival patterns for one or two vehicle classes.
//
// Every pattern is a union of pieces on which the delay solves
//     map(T) = level - schedule_delay(t)
// for a strictly increasing quadratic `map`. For a user equilibrium `map` is
// the class congestion cost and `level` its equilibrium cost; the system
// optimum reuses the same machinery with the marginal social cost.

#include "ceq/model.hpp"
#include "ceq/numerics.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ceq {

struct PatternPiece {
    VehicleClass vehicle_class = VehicleClass::gasoline;
    double t_lo = 0.0;
    double t_hi = 0.0;
    QuadraticMap map;
    double level = 0.0;
    numerics::Grading zero_delay_end = numerics::Grading::none;
};

class ArrivalPattern {
public:
    ArrivalPattern() = default;
    /// Pieces must be sorted and contiguous.
    ArrivalPattern(Scenario scenario, std::vector<PatternPiece> pieces);
    /// Pattern with no commuters; the window collapses to t*.
    static ArrivalPattern empty_at(Scenario scenario);

    bool empty() const { return pieces_.empty(); }
    double t0() const { return t0_; }
    double t1() const { return t1_; }
    const Scenario& scenario() const { return scenario_; }
    std::span<const PatternPiece> pieces() const { return pieces_; }

    /// nullptr outside [t0, t1].
    const PatternPiece* piece_at(double t) const;
    double delay_at(double t) const;
    double flow_at(double t) const;

    /// Integral of flow(t) * weight(t, T, piece) over the pieces of the
    /// given class (all pieces when `cls` is empty).
    template <class W>
    double integrate(W&& weight, std::optional<VehicleClass> cls = std::nullopt) const
    {
        double total = 0.0;
        for (const PatternPiece& p : pieces_) {
            if (cls && p.vehicle_class != *cls)
                continue;
            auto integrand = [&](double t) {
                const double T = delay_on(p, t);
                return flow_from_delay(T, scenario_) * weight(t, T, p);
            };
            total += numerics::integrate_trapezoid(integrand, p.t_lo, p.t_hi, scenario_.numerics.quad_tol,
                                                   p.zero_delay_end, scenario_.nu);
        }
        return total;
    }

    double population(std::optional<VehicleClass> cls = std::nullopt) const;

    double delay_on(const PatternPiece& p, double t) const;

private:
    Scenario scenario_;
    std::vector<PatternPiece> pieces_;
    double t0_ = 0.0;
    double t1_ = 0.0;
};

/// The tent-shaped single-class pattern at a given level: window
/// [t* - level/beta, t* + level/gamma], kink at t*.
ArrivalPattern isocost_pattern(const Scenario& s, VehicleClass cls, const QuadraticMap& map, double level);

/// Level at which the single-class tent carries `population` commuters.
/// Bracket grown geometrically from zero, then refined to numerics.root_tol.
double solve_isocost_level(const Scenario& s, VehicleClass cls, const QuadraticMap& map, double population);

struct ClassSegment {
    VehicleClass vehicle_class = VehicleClass::gasoline;
    double t_lo = 0.0;
    double t_hi = 0.0;
    double equilibrium_cost = 0.0;
};

struct ClassOutcome {
    VehicleClass vehicle_class = VehicleClass::gasoline;
    double equilibrium_cost = 0.0;
    double population = 0.0;
};

struct EquilibriumSolution {
    ArrivalPattern pattern;
    std::vector<ClassSegment> segments;
    std::vector<ClassOutcome> classes;
    /// Delay shared by both classes at the EV segment boundaries (mixed only).
    double boundary_delay = 0.0;

    bool empty() const { return pattern.empty(); }
    double t0() const { return pattern.t0(); }
    double t1() const { return pattern.t1(); }
    double duration() const { return t1() - t0(); }
    const ClassOutcome* outcome(VehicleClass c) const;
    /// Equilibrium cost of a class; 0 when the class is absent.
    double cost(VehicleClass c) const;
    const EnergyModel& model_at(double t) const;
};

EquilibriumSolution solve_single_class(const Scenario& s, const EnergyModel& model);

/// GV-EV-GV segmented equilibrium; mpr of 0 or 1 delegates to the
/// single-class solver. Throws SolverError when conservation or the
/// no-profitable-deviation check fails.
EquilibriumSolution solve_mixed(const Scenario& s);

/// Delay at which a GV and an EV commuter arriving at the same instant both
/// sit on their isocost curves: Phi_GV(T) - Phi_EV(T) = cost_gv - cost_ev.
double boundary_delay(const Scenario& s, double cost_gv, double cost_ev);

/// Largest saving any commuter could obtain by moving to an instant on
/// `grid_points` uniformly spaced points over the window (0 at a true
/// equilibrium, up to rounding).
double max_deviation_gain(const EquilibriumSolution& sol, int grid_points = 2001);

struct TimeProfile {
    double dt = 0.0;
    std::vector<double> t;
    std::vector<double> delay;
    std::vector<double> flow;
    std::vector<double> flow_gv;
    std::vector<double> flow_ev;
    std::vector<CostComponents> costs;

    std::size_t size() const { return t.size(); }
    double max_delay() const;
};

/// Uniform grid with t* as a node, covering [t0 - 2dt, t1 + 2dt]. Outside
/// the window delay and flow are zero and the cost columns show what a
/// commuter of the nearest class would pay. `toll` (may be empty) adds a
/// per-point toll to the cost columns.
TimeProfile sample_pattern(const ArrivalPattern& pattern, double dt,
                           const std::function<double(double)>& toll = {});
TimeProfile sample_profiles(const EquilibriumSolution& sol, double dt);

} // namespace ceq
