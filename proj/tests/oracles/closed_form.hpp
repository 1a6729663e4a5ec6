#pragma once

// Single-class equilibrium by hand. On each side of t* the delay solves
// Phi(T) = C - SD(t), so dt = dPhi / beta (early) or dPhi / gamma (late),
// and the population integral collapses to a polynomial in the peak delay:
//
//   N(C) = (1/beta + 1/gamma) R m^(-1/nu) [A Tp^(p+1)/(p+1) + 2B Tp^(p+2)/(p+2)]
//
// with Phi(T) = A T + B T^2, p = 1/nu and Tp = Phi^-1(C).

#include <cmath>

namespace oracle {

struct SingleClass {
    double alpha, beta, gamma, nu, capacity, trip_km, c1, c2;

    double a() const { return alpha + c1; }
    double b() const { return c2; }
    double phi(double T) const { return (a() + b() * T) * T; }
    double phi_inverse(double c) const { return 2.0 * c / (a() + std::sqrt(a() * a() + 4.0 * b() * c)); }

    double population(double cost) const
    {
        const double p = 1.0 / nu;
        const double tp = phi_inverse(cost);
        const double body = a() * std::pow(tp, p + 1.0) / (p + 1.0) + 2.0 * b() * std::pow(tp, p + 2.0) / (p + 2.0);
        return (1.0 / beta + 1.0 / gamma) * capacity * std::pow(trip_km, -p) * body;
    }

    // Plain bisection; slow and obviously correct.
    double cost_for(double n) const
    {
        double lo = 0.0;
        double hi = 1.0;
        while (population(hi) < n)
            hi *= 2.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (population(mid) < n ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
};

} // namespace oracle
