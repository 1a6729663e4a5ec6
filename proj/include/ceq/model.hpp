#pragma once

// Cost, energy, schedule-delay and flow-speed formulas for the morning
// commute, together with their exact inverses. Units throughout: time in
// hours, money in $, flow in veh/h, distance in km.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ceq {

enum class VehicleClass { gasoline, electric };

std::string_view to_string(VehicleClass c);

/// Congestion-dependent energy cost E(T) = c1*T + c2*T^2 of one vehicle class.
struct EnergyModel {
    VehicleClass vehicle_class = VehicleClass::gasoline;
    double c1 = 0.0; ///< $/h
    double c2 = 0.0; ///< $/h^2
};

/// Solver and reporting settings that travel with a scenario.
struct Numerics {
    double dt_minutes = 1.0;          ///< profile sampling step
    double root_tol = 1e-10;          ///< relative tolerance on equilibrium costs
    double quad_tol = 1e-8;           ///< relative agreement between successive trapezoid levels
    double mixed_tol = 1e-8;          ///< per-class conservation residual, fraction of n_total
    double oracle_bin_minutes = 1.0;
    double eta = 0.05;                ///< day-to-day step fraction
    double gap_tol = 1e-3;            ///< day-to-day relative gap at which to stop
    long max_days = 200000;
    double toll_offset = 0.0;         ///< constant subtracted from reported tolls (incentive rebase)
};

struct Scenario {
    double alpha = 8.4;   ///< value of travel time, $/h
    double beta = 4.2;    ///< early-arrival penalty, $/h
    double gamma = 16.8;  ///< late-arrival penalty, $/h
    double t_star = 8.0;  ///< preferred arrival, clock hours
    double nu = 4.1;      ///< flow-speed elasticity
    double n_total = 3000.0;
    double capacity_r = 8000.0; ///< veh/h
    double trip_km = 20.0;
    double s_max = 60.0;  ///< km/h; only used for speed reporting
    double mpr = 0.0;     ///< EV market penetration in [0, 1]
    EnergyModel gv{VehicleClass::gasoline, 4.0, 16.8};
    std::optional<EnergyModel> ev = EnergyModel{VehicleClass::electric, 0.5, 3.0};
    Numerics numerics;

    const EnergyModel& energy(VehicleClass c) const;
    double population(VehicleClass c) const;
};

/// The bundled base case (N = 3000, R = 8000 veh/h, 20 km trip).
Scenario basic_scenario();

/// Throws InputError naming the field and the violated constraint. Soft
/// assumptions (beta < alpha, EV coefficients not above GV ones) come back
/// as warnings.
std::vector<std::string> validate(const Scenario& s);

/// Per-commuter cost split for one arrival time.
struct CostComponents {
    double travel_time = 0.0;
    double energy = 0.0;
    double schedule = 0.0;
    double toll = 0.0;
    double total = 0.0;
};

/// a*T + b*T^2 with a > 0, b >= 0: strictly increasing on T >= 0 with a
/// closed-form inverse. Both the private congestion cost and the
/// system-optimal marginal cost have this shape.
struct QuadraticMap {
    double linear = 0.0;
    double quadratic = 0.0;

    double value(double T) const;
    double slope(double T) const;
    double inverse(double c) const;
};

double schedule_delay(double t, const Scenario& s);
double energy_cost(const EnergyModel& model, double T);

/// alpha*T + E(T).
double congestion_cost(const EnergyModel& model, const Scenario& s, double T);
double congestion_cost_slope(const EnergyModel& model, const Scenario& s, double T);
double invert_congestion_cost(const EnergyModel& model, const Scenario& s, double c);
QuadraticMap congestion_map(const EnergyModel& model, const Scenario& s);

/// Congestion cost plus the marginal external cost nu*T*Phi'(T). Its inverse
/// gives the system-optimal delay at a given residual cost.
QuadraticMap marginal_social_map(const EnergyModel& model, const Scenario& s);

/// T = m * (f/R)^nu, with (f/R)^nu read in h/km.
double delay_from_flow(double f, const Scenario& s);
double flow_from_delay(double T, const Scenario& s);
double average_speed(double T, const Scenario& s);

CostComponents cost_components(const EnergyModel& model, const Scenario& s, double t, double T,
                               double toll = 0.0);

} // namespace ceq
