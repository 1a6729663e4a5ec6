// Command-line front end over the C interface.
//
//   ceq solve  [--scenario F] [--out D] [--mpr X] [--dt MIN] [--quiet]
//   ceq sweep  [--scenario F] [--out D] [--mpr A,B,...] [--dt MIN] [--quiet]
//   ceq toll   [--scenario F] [--out D] [--dt MIN] [--quiet]
//   ceq oracle [--scenario F] [--out D] [--mpr X] [--quiet]
//
// Exit status: 0 ok, 2 input/validation, 3 solver, 4 i/o, 5 internal.

#include "ceq/ceq.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

enum Exit { exit_ok = 0, exit_input = 2, exit_solver = 3, exit_io = 4, exit_internal = 5 };

struct Failure {
    ceq_status status;
    std::string message;
};

int exit_code(ceq_status s)
{
    switch (s) {
    case CEQ_OK: return exit_ok;
    case CEQ_ERR_INPUT: return exit_input;
    case CEQ_ERR_SOLVER: return exit_solver;
    case CEQ_ERR_IO: return exit_io;
    default: return exit_internal;
    }
}

void check(ceq_status s)
{
    if (s != CEQ_OK)
        throw Failure{s, ceq_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};

using ScenarioPtr = std::unique_ptr<ceq_scenario, Deleter<ceq_scenario, ceq_scenario_free>>;
using SolvePtr = std::unique_ptr<ceq_solve, Deleter<ceq_solve, ceq_solve_free>>;
using SweepPtr = std::unique_ptr<ceq_sweep, Deleter<ceq_sweep, ceq_sweep_free>>;
using TollPtr = std::unique_ptr<ceq_toll, Deleter<ceq_toll, ceq_toll_free>>;
using OraclePtr = std::unique_ptr<ceq_oracle, Deleter<ceq_oracle, ceq_oracle_free>>;

struct Options {
    std::string scenario;
    std::string out = ".";
    std::vector<double> mpr;
    double dt = 0.0;
    bool quiet = false;
};

ScenarioPtr prepare(const Options& o, bool single_mpr)
{
    ceq_scenario* raw = nullptr;
    check(o.scenario.empty() ? ceq_scenario_default(&raw) : ceq_scenario_load(o.scenario.c_str(), &raw));
    ScenarioPtr s(raw);
    check(ceq_scenario_apply_env(s.get(), nullptr));
    if (o.dt > 0.0)
        check(ceq_scenario_set(s.get(), "numerics.dt", o.dt));
    if (single_mpr && !o.mpr.empty()) {
        if (o.mpr.size() != 1)
            throw Failure{CEQ_ERR_INPUT, "--mpr takes a single value for this command"};
        check(ceq_scenario_set(s.get(), "demand.mpr", o.mpr.front()));
    }
    check(ceq_scenario_validate(s.get()));
    return s;
}

std::string out_path(const Options& o, const char* name)
{
    std::error_code ec;
    std::filesystem::create_directories(o.out, ec);
    if (ec)
        throw Failure{CEQ_ERR_IO, "cannot create output directory '" + o.out + "': " + ec.message()};
    return (std::filesystem::path(o.out) / name).string();
}

void echo(const Options& o, const std::string& path)
{
    if (o.quiet)
        return;
    std::ifstream in(path);
    std::cout << in.rdbuf();
}

void cmd_solve(const Options& o)
{
    ScenarioPtr s = prepare(o, true);
    ceq_solve* raw = nullptr;
    check(ceq_solve_run(s.get(), &raw));
    SolvePtr r(raw);
    check(ceq_solve_write_profile(r.get(), out_path(o, "profile.csv").c_str()));
    const std::string summary = out_path(o, "summary.txt");
    check(ceq_solve_write_summary(r.get(), summary.c_str()));
    echo(o, summary);
}

void cmd_sweep(const Options& o)
{
    ScenarioPtr s = prepare(o, false);
    ceq_sweep* raw = nullptr;
    check(ceq_sweep_run(s.get(), o.mpr.data(), o.mpr.size(), &raw));
    SweepPtr r(raw);
    const std::string path = out_path(o, "sweep.csv");
    check(ceq_sweep_write_csv(r.get(), path.c_str()));
    echo(o, path);
}

void cmd_toll(const Options& o)
{
    ScenarioPtr s = prepare(o, false);
    ceq_toll* raw = nullptr;
    check(ceq_toll_run(s.get(), &raw));
    TollPtr r(raw);
    check(ceq_toll_write_profile(r.get(), out_path(o, "toll_profile.csv").c_str()));
    check(ceq_toll_write_untolled_profile(r.get(), out_path(o, "untolled_profile.csv").c_str()));
    const std::string summary = out_path(o, "toll_summary.txt");
    check(ceq_toll_write_summary(r.get(), summary.c_str()));
    echo(o, summary);
}

void cmd_oracle(const Options& o)
{
    ScenarioPtr s = prepare(o, true);
    ceq_oracle* raw = nullptr;
    check(ceq_oracle_run(s.get(), &raw));
    OraclePtr r(raw);
    check(ceq_oracle_write_profile(r.get(), out_path(o, "oracle_profile.csv").c_str()));
    check(ceq_oracle_write_trace(r.get(), out_path(o, "oracle_trace.csv").c_str()));
    const std::string summary = out_path(o, "oracle_summary.txt");
    check(ceq_oracle_write_summary(r.get(), summary.c_str()));
    echo(o, summary);
    ceq_oracle_summary sum{};
    check(ceq_oracle_summary_get(r.get(), &sum));
    if (!sum.converged)
        throw Failure{CEQ_ERR_SOLVER, "day-to-day oracle hit numerics.max_days before reaching numerics.gap_tol"};
}

CLI::App* add_command(CLI::App& app, const char* name, const char* help, Options& o, bool with_mpr, bool with_dt)
{
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", o.scenario, "scenario file (default: built-in base case)");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    if (with_mpr)
        sub->add_option("--mpr", o.mpr, "EV market penetration, comma-separated for sweep")->delimiter(',');
    if (with_dt)
        sub->add_option("--dt", o.dt, "profile step in minutes")->check(CLI::PositiveNumber);
    sub->add_flag("--quiet,-q", o.quiet, "do not print the summary");
    return sub;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Morning-commute departure-time equilibrium for mixed gasoline/electric fleets"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ceq_version());

    Options o;
    CLI::App* solve = add_command(app, "solve", "equilibrium profile and metrics", o, true, true);
    CLI::App* sweep = add_command(app, "sweep", "one solve per EV penetration rate", o, true, true);
    CLI::App* toll = add_command(app, "toll", "system optimum and time-varying toll, EV corridor", o, false, true);
    CLI::App* oracle = add_command(app, "oracle", "day-to-day adjustment compared with the analytic solution", o,
                                   true, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_input;
    }

    try {
        if (solve->parsed())
            cmd_solve(o);
        else if (sweep->parsed())
            cmd_sweep(o);
        else if (toll->parsed())
            cmd_toll(o);
        else if (oracle->parsed())
            cmd_oracle(o);
    } catch (const Failure& f) {
        std::cerr << "ceq: " << ceq_status_name(f.status) << ": " << f.message << '\n';
        return exit_code(f.status);
    } catch (const std::exception& e) {
        std::cerr << "ceq: internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_ok;
}
