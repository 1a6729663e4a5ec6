#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ceq/equilibrium.hpp"
#include "ceq/toll.hpp"

#include <cmath>

using namespace ceq;
using doctest::Approx;

namespace {

Scenario ev_corridor()
{
    Scenario s = basic_scenario();
    s.mpr = 1.0;
    return s;
}

} // namespace

TEST_CASE("marginal external cost")
{
    const Scenario s = ev_corridor();
    CHECK(marginal_external_cost(*s.ev, s, 0.3) == Approx(13.161).epsilon(1e-12));
    CHECK(marginal_external_cost(*s.ev, s, 0.0) == 0.0);
}

TEST_CASE("empty demand")
{
    Scenario s = ev_corridor();
    s.n_total = 0.0;
    const SystemOptimum so = solve_system_optimum(s, *s.ev);
    CHECK(so.lambda == 0.0);
    CHECK(so.empty());
    const TollSchedule t = compute_toll(so, *s.ev, s);
    CHECK(t.empty());
    CHECK(verify_tolled_equilibrium(t, s, *s.ev) == 0.0);
}

TEST_CASE("system optimum for the EV corridor")
{
    const Scenario s = ev_corridor();
    const SystemOptimum so = solve_system_optimum(s, *s.ev);
    const EquilibriumSolution ue = solve_single_class(s, *s.ev);
    CHECK(so.pattern.population() == Approx(3000.0).epsilon(1e-7));
    CHECK(so.lambda == Approx(5.496988823811879).epsilon(1e-8));
    CHECK(so.t0() < ue.t0());
    CHECK(so.t1() > ue.t1());
    CHECK(so.profile.max_delay() < sample_profiles(ue, 1.0 / 60.0).max_delay());
    CHECK(so.total_cost < ue.cost(VehicleClass::electric) * 3000.0);
    CHECK(so.total_cost == Approx(9121.47).epsilon(1e-5));
}

TEST_CASE("toll schedule")
{
    const Scenario s = ev_corridor();
    const SystemOptimum so = solve_system_optimum(s, *s.ev);
    TollSchedule t = compute_toll(so, *s.ev, s);
    REQUIRE(t.t.size() == so.profile.size());
    for (std::size_t i = 0; i < t.t.size(); ++i) {
        CHECK(t.toll[i] >= 0.0);
        if (t.t[i] < so.t0() || t.t[i] > so.t1())
            CHECK(t.toll[i] == 0.0);
    }
    CHECK(so.pattern.delay_at(so.t0()) == 0.0);
    CHECK(marginal_external_cost(*s.ev, s, so.pattern.delay_at(so.t0())) == 0.0);
    CHECK(t.max_toll() == Approx(marginal_external_cost(*s.ev, s, so.pattern.delay_at(s.t_star))));

    const double residual = verify_tolled_equilibrium(t, s, *s.ev);
    CHECK(residual <= 1e-6 * so.lambda);

    std::size_t mid = 0;
    while (t.t[mid] < 7.5)
        ++mid;
    t.toll[mid] += 1.0;
    CHECK(verify_tolled_equilibrium(t, s, *s.ev) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("profile carries the toll column")
{
    const Scenario s = ev_corridor();
    const SystemOptimum so = solve_system_optimum(s, *s.ev);
    for (std::size_t i = 0; i < so.profile.size(); ++i) {
        const double t = so.profile.t[i];
        if (t > so.t0() && t < so.t1())
            CHECK(so.profile.costs[i].total == Approx(so.lambda).epsilon(1e-9));
    }
}

TEST_CASE("marginal social map is strictly increasing")
{
    const Scenario s = ev_corridor();
    for (const EnergyModel& m : {s.gv, *s.ev}) {
        const QuadraticMap psi = marginal_social_map(m, s);
        double last = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            const double v = psi.value(0.001 * i);
            CHECK(v > last);
            last = v;
        }
    }
}
