#pragma once

// System-optimal arrivals for a single-class corridor and the time-varying
// toll that makes them an equilibrium.
//
// Minimizing  integral f * [Phi(T(f)) + SD(t)] dt  subject to integral f = N
// with dT/df = nu*T/f gives, wherever f > 0,
//     Phi(T) + nu*T*Phi'(T) + SD(t) = lambda.
// The left-hand map is strictly increasing in T, so the optimum is the same
// tent construction as the user equilibrium with Phi replaced by it.

#include "ceq/equilibrium.hpp"

namespace ceq {

struct SystemOptimum {
    EnergyModel model;
    double lambda = 0.0; ///< shadow cost of one more commuter, $
    ArrivalPattern pattern;
    TimeProfile profile; ///< sampled at the scenario dt, toll columns filled
    double total_cost = 0.0; ///< social cost, tolls excluded

    bool empty() const { return pattern.empty(); }
    double t0() const { return pattern.t0(); }
    double t1() const { return pattern.t1(); }
};

struct TollSchedule {
    std::vector<double> t;
    std::vector<double> toll;
    SystemOptimum so;

    bool empty() const { return t.empty(); }
    double max_toll() const;
};

SystemOptimum solve_system_optimum(const Scenario& s, const EnergyModel& model);

/// nu * T * Phi'(T) at delay T: the marginal external cost of one arrival.
double marginal_external_cost(const EnergyModel& model, const Scenario& s, double T);

/// Toll on the SO profile grid; zero outside the SO window.
TollSchedule compute_toll(const SystemOptimum& so, const EnergyModel& model, const Scenario& s);

/// Largest |Phi(T_so) + toll + SD - lambda| over active grid points of the
/// schedule (the grid points where the SO has positive flow).
double verify_tolled_equilibrium(const TollSchedule& toll, const Scenario& s, const EnergyModel& model);

} // namespace ceq
