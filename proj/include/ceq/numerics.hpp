#pragma once

// Scalar root-finding and quadrature used by the equilibrium and
// system-optimum solvers. Everything here is deterministic: no randomness,
// fixed evaluation order.

#include "ceq/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace ceq::numerics {

/// Doubles `hi` from `start` until g(hi) >= 0. g must be increasing with
/// g(0) < 0. Throws SolverError listing every probe when no sign change is
/// found within `max_steps`.
template <class G>
double bracket_upward(G&& g, double start, int max_steps = 200)
{
    std::vector<double> probes;
    double hi = start;
    for (int i = 0; i < max_steps; ++i) {
        const double v = g(hi);
        if (v >= 0.0)
            return hi;
        probes.push_back(hi);
        hi *= 2.0;
        if (!std::isfinite(hi))
            break;
    }
    std::ostringstream os;
    os << "failed to bracket root after " << probes.size() << " probes (";
    for (std::size_t i = 0; i < probes.size(); i += std::max<std::size_t>(1, probes.size() / 8))
        os << (i ? ", " : "") << probes[i];
    os << ")";
    throw SolverError(os.str());
}

/// Root of increasing g on [lo, hi] with g(lo) <= 0 <= g(hi). Regula falsi
/// with the Illinois weighting, falling back to bisection whenever a step
/// fails to halve the bracket. Stops once the bracket is narrower than
/// rel_tol * |x|.
template <class G>
double find_root(G&& g, double lo, double hi, double rel_tol, int max_iter = 400)
{
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0)
        return lo;
    if (ghi == 0.0)
        return hi;
    if (glo > 0.0 || ghi < 0.0) {
        std::ostringstream os;
        os << "root not bracketed on [" << lo << ", " << hi << "]: g = " << glo << ", " << ghi;
        throw SolverError(os.str());
    }

    int side = 0; // which end was kept on the previous step
    for (int it = 0; it < max_iter; ++it) {
        const double width = hi - lo;
        if (width <= rel_tol * std::max(std::abs(lo), std::abs(hi)))
            break;

        double x = (lo * ghi - hi * glo) / (ghi - glo);
        if (!(x > lo && x < hi))
            x = 0.5 * (lo + hi);
        double gx = g(x);
        if (gx == 0.0)
            return x;

        if (gx < 0.0) {
            lo = x;
            glo = gx;
            if (side == -1)
                ghi *= 0.5;
            side = -1;
        } else {
            hi = x;
            ghi = gx;
            if (side == +1)
                glo *= 0.5;
            side = +1;
        }

        if (hi - lo > 0.5 * width) {
            const double mid = 0.5 * (lo + hi);
            const double gm = g(mid);
            if (gm == 0.0)
                return mid;
            if (gm < 0.0) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
                ghi = gm;
            }
            side = 0;
        }
    }
    return 0.5 * (lo + hi);
}

/// Which endpoint of an integration interval carries an algebraic
/// singularity of the integrand's derivative (f ~ dist^(1/q)).
enum class Grading { none, at_lo, at_hi };

/// Composite trapezoid rule over [a, b], halving the step until two
/// successive levels agree to rel_tol. With grading, the substitution
/// t = a + (b-a) u^q (or its mirror) clusters nodes at the singular end so
/// that an integrand behaving like dist^(1/q) becomes smooth in u.
template <class F>
double integrate_trapezoid(F&& f, double a, double b, double rel_tol, Grading grading = Grading::none,
                           double exponent = 1.0, int max_levels = 22)
{
    const double len = b - a;
    if (!(len > 0.0))
        return 0.0;
    const double q = grading == Grading::none ? 1.0 : std::max(1.0, exponent);

    auto integrand = [&](double u) {
        if (grading == Grading::none)
            return f(a + len * u) * len;
        const double jac = q == 1.0 ? len : (u == 0.0 ? 0.0 : len * q * std::pow(u, q - 1.0));
        if (jac == 0.0)
            return 0.0;
        const double t = grading == Grading::at_lo ? a + len * std::pow(u, q) : b - len * std::pow(u, q);
        return f(t) * jac;
    };

    long n = 16;
    double h = 1.0 / static_cast<double>(n);
    double sum = 0.5 * (integrand(0.0) + integrand(1.0));
    for (long i = 1; i < n; ++i)
        sum += integrand(static_cast<double>(i) * h);
    double estimate = sum * h;

    for (int level = 0; level < max_levels; ++level) {
        double mids = 0.0;
        for (long i = 0; i < n; ++i)
            mids += integrand((static_cast<double>(2 * i + 1)) * 0.5 * h);
        sum += mids;
        n *= 2;
        h *= 0.5;
        const double next = sum * h;
        const double diff = std::abs(next - estimate);
        estimate = next;
        if (level >= 1 && diff <= rel_tol * std::abs(next))
            return next;
    }
    std::ostringstream os;
    os << "trapezoid refinement on [" << a << ", " << b << "] did not reach relative tolerance "
       << rel_tol;
    throw SolverError(os.str());
}

} // namespace ceq::numerics
