#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ceq/numerics.hpp"

#include <cmath>

using namespace ceq::numerics;
using doctest::Approx;

TEST_CASE("bracket grows until the sign changes")
{
    const double hi = bracket_upward([](double x) { return x - 37.0; }, 1.0);
    CHECK(hi == 64.0);
    CHECK_THROWS_AS(bracket_upward([](double) { return -1.0; }, 1.0, 20), ceq::SolverError);
}

TEST_CASE("regula falsi with bisection fallback")
{
    CHECK(find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14) == Approx(std::sqrt(2.0)).epsilon(1e-13));
    // very flat on one side: plain regula falsi stalls, the fallback must not
    const double r = find_root([](double x) { return std::pow(x, 12.0) - 1e-6; }, 0.0, 5.0, 1e-13);
    CHECK(r == Approx(std::pow(1e-6, 1.0 / 12.0)).epsilon(1e-11));
    CHECK(find_root([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-12) == 1.0);
    CHECK_THROWS_AS(find_root([](double x) { return x + 1.0; }, 0.0, 1.0, 1e-12), ceq::SolverError);
}

TEST_CASE("trapezoid on smooth integrands")
{
    CHECK(integrate_trapezoid([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-10, Grading::none, 1.0) ==
          Approx(std::exp(1.0) - 1.0).epsilon(1e-9));
    CHECK(integrate_trapezoid([](double) { return 0.0; }, 0.0, 1.0, 1e-10, Grading::none, 1.0) == 0.0);
    CHECK(integrate_trapezoid([](double x) { return x; }, 2.0, 2.0, 1e-10, Grading::none, 1.0) == 0.0);
}

TEST_CASE("graded trapezoid handles root singularities at either end")
{
    const double p = 1.0 / 4.1;
    const double exact = 1.0 / (p + 1.0);
    CHECK(integrate_trapezoid([&](double x) { return std::pow(x, p); }, 0.0, 1.0, 1e-10, Grading::at_lo, 4.1) ==
          Approx(exact).epsilon(1e-8));
    CHECK(integrate_trapezoid([&](double x) { return std::pow(1.0 - x, p); }, 0.0, 1.0, 1e-10, Grading::at_hi,
                              4.1) == Approx(exact).epsilon(1e-8));
}
