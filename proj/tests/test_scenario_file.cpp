#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ceq/errors.hpp"
#include "ceq/scenario_file.hpp"

#include <cstring>
#include <filesystem>
#include <map>
#include <string>

using namespace ceq;

namespace {

const char* const kBasic = R"(
[corridor]
trip_km = 20
capacity_r = 8000
nu = 4.1

[demand]
n_total = 3000
t_star = 8
alpha = 8.4
beta = 4.2
gamma = 16.8

[energy.gv]
c1 = 4
c2 = 16.8

[energy.ev]
c1 = 0.5   # per hour
c2 = 3
)";

std::string error_of(const std::string& text)
{
    try {
        parse_scenario(text, "test.toml");
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

std::string replace(std::string text, const std::string& from, const std::string& to)
{
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("parses the base case")
{
    const Scenario s = parse_scenario(kBasic);
    CHECK(s.alpha == 8.4);
    CHECK(s.beta == 4.2);
    CHECK(s.gamma == 16.8);
    CHECK(s.nu == 4.1);
    CHECK(s.n_total == 3000);
    CHECK(s.capacity_r == 8000);
    CHECK(s.trip_km == 20);
    CHECK(s.gv.c1 == 4);
    CHECK(s.gv.c2 == 16.8);
    REQUIRE(s.ev);
    CHECK(s.ev->c1 == 0.5);
    CHECK(s.ev->c2 == 3);
    CHECK(s.mpr == 0.0);
    CHECK(s.s_max == 60.0);
    CHECK(s.numerics.dt_minutes == 1.0);
}

TEST_CASE("bundled scenario file")
{
    const Scenario s = load_scenario(CEQ_SCENARIO_DIR "/basic.toml");
    const Scenario d = basic_scenario();
    for (const std::string& key : scenario_keys())
        CHECK_MESSAGE(get_scenario_key(s, key) == get_scenario_key(d, key), key);
}

TEST_CASE("errors carry location and field")
{
    const std::string bad_mpr = error_of(replace(kBasic, "gamma = 16.8", "gamma = 16.8\nmpr = 1.5"));
    CHECK(bad_mpr.find("mpr") != std::string::npos);
    CHECK(bad_mpr.find("[0,1]") != std::string::npos);

    const std::string no_ev = error_of(replace(replace(kBasic, "[energy.ev]\nc1 = 0.5   # per hour\nc2 = 3", ""),
                                               "gamma = 16.8", "gamma = 16.8\nmpr = 0.2"));
    CHECK(no_ev.find("energy.ev") != std::string::npos);

    const std::string unknown = error_of(replace(kBasic, "nu = 4.1", "nu = 4.1\nlanes = 2"));
    CHECK(unknown.find("corridor.lanes") != std::string::npos);
    CHECK(unknown.rfind("test.toml:6:", 0) == 0);

    const std::string not_number = error_of(replace(kBasic, "alpha = 8.4", "alpha = fast"));
    CHECK(not_number.rfind("test.toml:10:9:", 0) == 0);

    const std::string missing = error_of(replace(kBasic, "beta = 4.2\n", ""));
    CHECK(missing.find("demand.beta") != std::string::npos);

    CHECK(error_of(replace(kBasic, "[demand]", "[demand")).find("']'") != std::string::npos);
    CHECK(error_of(replace(kBasic, "[demand]", "[supply]")).find("supply") != std::string::npos);
    CHECK(error_of(replace(kBasic, "nu = 4.1", "nu = 4.1\nnu = 4")).find("duplicate") != std::string::npos);
    CHECK(error_of(std::string(kBasic) + "\n[numerics]\nmax_days = 2.5\n").find("integer") != std::string::npos);
}

TEST_CASE("emit and reload is exact")
{
    Scenario s = parse_scenario(kBasic);
    s.mpr = 0.1 + 0.2; // not representable in short decimal form
    s.numerics.eta = 1.0 / 3.0;
    s.t_star = 7.0 + 1.0 / 7.0;
    const Scenario back = parse_scenario(emit_scenario(s));
    for (const std::string& key : scenario_keys())
        CHECK_MESSAGE(get_scenario_key(back, key) == get_scenario_key(s, key), key);

    Scenario no_ev = s;
    no_ev.ev.reset();
    no_ev.mpr = 0.0;
    const Scenario back2 = parse_scenario(emit_scenario(no_ev));
    CHECK_FALSE(back2.ev.has_value());
}

TEST_CASE("file round trip and I/O errors")
{
    const auto path = std::filesystem::temp_directory_path() / "ceq_scenario_roundtrip.toml";
    Scenario s = basic_scenario();
    s.mpr = 0.37;
    save_scenario(s, path);
    CHECK(load_scenario(path).mpr == 0.37);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_scenario(path), IoError);
    CHECK_THROWS_AS(save_scenario(s, "/nonexistent-dir/x.toml"), IoError);
}

TEST_CASE("environment overrides")
{
    CHECK(env_var_name("demand.mpr") == "CEQ_DEMAND_MPR");
    CHECK(env_var_name("energy.ev.c1") == "CEQ_ENERGY_EV_C1");

    std::map<std::string, std::string> env{{"CEQ_DEMAND_MPR", "0.3"}, {"CEQ_NUMERICS_DT", " 0.5 "}};
    auto lookup = [&](const char* name) -> const char* {
        const auto it = env.find(name);
        return it == env.end() ? nullptr : it->second.c_str();
    };
    Scenario s = basic_scenario();
    const auto applied = apply_env_overrides(s, lookup);
    CHECK(applied.size() == 2);
    CHECK(s.mpr == 0.3);
    CHECK(s.numerics.dt_minutes == 0.5);

    env["CEQ_DEMAND_MPR"] = "1.5";
    CHECK_THROWS_AS(apply_env_overrides(s, lookup), InputError);
    env["CEQ_DEMAND_MPR"] = "lots";
    CHECK_THROWS_AS(apply_env_overrides(s, lookup), InputError);
}

TEST_CASE("key access")
{
    Scenario s = basic_scenario();
    set_scenario_key(s, "corridor.nu", 3.5);
    CHECK(get_scenario_key(s, "corridor.nu") == 3.5);
    CHECK_THROWS_AS(set_scenario_key(s, "corridor.width", 1.0), InputError);
    CHECK_THROWS_AS(get_scenario_key(s, "nu"), InputError);
}
