#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ceq/metrics.hpp"

#include <cmath>

using namespace ceq;
using doctest::Approx;

namespace {

constexpr double kMinute = 1.0 / 60.0;

Scenario with_mpr(double mpr)
{
    Scenario s = basic_scenario();
    s.mpr = mpr;
    return s;
}

TimeProfile profile_at(double mpr, double dt = kMinute)
{
    return sample_profiles(solve_mixed(with_mpr(mpr)), dt);
}

} // namespace

TEST_CASE("ECP")
{
    const TimeProfile base = profile_at(0.0);
    CHECK(extra_congested_period(base, base.max_delay()) == 0.0);
    CHECK(extra_congested_period(base, 10.0) == 0.0);
    CHECK(extra_congested_period(TimeProfile{}, 0.0) == 0.0);

    TimeProfile tri;
    tri.t = {0.0, 1.0, 2.0};
    tri.delay = {0.0, 1.0, 0.0};
    CHECK(extra_congested_period(tri, 0.5) == Approx(1.0));

    const double e5 = extra_congested_period(profile_at(0.5), base.max_delay());
    const double e10 = extra_congested_period(profile_at(1.0), base.max_delay());
    CHECK(e5 > 0.0);
    CHECK(e10 > e5);
}

TEST_CASE("ECD")
{
    const TimeProfile a = profile_at(0.0);
    const TimeProfile b = profile_at(1.0);
    const EcdProfile self = extra_congestion_delay(a, a);
    CHECK(self.max() == 0.0);
    CHECK(self.min() == 0.0);

    const EcdProfile ab = extra_congestion_delay(b, a);
    const EcdProfile ba = extra_congestion_delay(a, b);
    REQUIRE(ab.t.size() == ba.t.size());
    for (std::size_t i = 0; i < ab.t.size(); ++i)
        CHECK(ab.delta[i] == -ba.delta[i]);

    // positive over the middle of the electrified window
    const EquilibriumSolution ev = solve_mixed(with_mpr(1.0));
    double covered = 0.0;
    for (std::size_t i = 1; i < ab.t.size(); ++i)
        if (ab.delta[i] > 0.0 && ab.t[i] > ev.t0() && ab.t[i] < ev.t1())
            covered += ab.t[i] - ab.t[i - 1];
    CHECK(covered > 0.5 * ev.duration());
    CHECK(ab.max() == Approx(0.1369717).epsilon(1e-5));
}

TEST_CASE("cost identity at equilibrium")
{
    for (double mpr : {0.0, 0.5, 1.0}) {
        const Scenario s = with_mpr(mpr);
        const EquilibriumSolution sol = solve_mixed(s);
        const CostBreakdown c = total_cost_breakdown(sol);
        const double expected = sol.cost(VehicleClass::gasoline) * s.population(VehicleClass::gasoline) +
                                sol.cost(VehicleClass::electric) * s.population(VehicleClass::electric);
        CHECK(std::abs(c.social_total - expected) <= 1e-6 * expected);
        CHECK(c.social_total == Approx(c.travel_time + c.energy + c.schedule));
        CHECK(c.toll_revenue == 0.0);
    }
}

TEST_CASE("sampled-profile breakdown")
{
    const CostBreakdown z = total_cost_breakdown(TimeProfile{});
    CHECK(z.social_total == 0.0);
    CHECK(z.toll_revenue == 0.0);

    const EquilibriumSolution sol = solve_mixed(with_mpr(0.0));
    const CostBreakdown exact = total_cost_breakdown(sol);
    const CostBreakdown grid = total_cost_breakdown(sample_profiles(sol, 0.25 * kMinute));
    CHECK(grid.social_total == Approx(exact.social_total).epsilon(2e-3));
}

TEST_CASE("system optimum is cheaper than equilibrium")
{
    const Scenario s = with_mpr(1.0);
    const SystemOptimum so = solve_system_optimum(s, *s.ev);
    const TollSchedule toll = compute_toll(so, *s.ev, s);
    const CostBreakdown so_costs = total_cost_breakdown(so, &toll);
    const CostBreakdown ue_costs = total_cost_breakdown(solve_mixed(s));
    CHECK(so_costs.social_total < ue_costs.social_total);
    CHECK(so_costs.social_total == Approx(so.total_cost).epsilon(1e-7));
    CHECK(so_costs.toll_revenue > 0.0);
    CHECK(total_cost_breakdown(so, nullptr).toll_revenue == 0.0);
}

TEST_CASE("summaries")
{
    const EquilibriumSolution sol = solve_mixed(with_mpr(0.0));
    const TimeProfile p = sample_profiles(sol, kMinute);
    const MetricsReport r = summarize(sol, p, p);
    CHECK(r.ecp == 0.0);
    CHECK(r.ecd.max() == 0.0);
    CHECK(r.duration == Approx(sol.duration()));
    CHECK(r.max_delay == Approx(0.2614128650554703).epsilon(1e-8));
    CHECK(r.peak_flow == Approx(flow_from_delay(r.max_delay, with_mpr(0.0))));
}

TEST_CASE("toll revenue matches the sampled profile")
{
    Scenario s = with_mpr(1.0);
    s.numerics.dt_minutes = 0.25;
    const SystemOptimum so = solve_system_optimum(s, *s.ev);
    const TollSchedule toll = compute_toll(so, *s.ev, s);
    const CostBreakdown exact = total_cost_breakdown(so, &toll);
    const CostBreakdown grid = total_cost_breakdown(so.profile);
    CHECK(grid.toll_revenue == Approx(exact.toll_revenue).epsilon(2e-3));
}
