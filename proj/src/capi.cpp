#include "ceq/ceq.h"

#include "ceq/errors.hpp"
#include "ceq/runs.hpp"
#include "ceq/scenario_file.hpp"

#include <cstdlib>
#include <fstream>
#include <new>
#include <string>

struct ceq_scenario {
    ceq::Scenario value;
};

struct ceq_solve {
    ceq::SolveRun run;
};

struct ceq_sweep {
    ceq::SweepReport report;
};

struct ceq_toll {
    ceq::TollRun run;
};

struct ceq_oracle {
    ceq::OracleReport report;
};

namespace {

thread_local std::string last_error;

ceq_status fail(ceq_status code, const std::string& message)
{
    last_error = message;
    return code;
}

template <class F>
ceq_status guarded(F&& body)
{
    try {
        body();
        return CEQ_OK;
    } catch (const ceq::InputError& e) {
        return fail(CEQ_ERR_INPUT, e.what());
    } catch (const ceq::DomainError& e) {
        return fail(CEQ_ERR_INPUT, e.what());
    } catch (const ceq::SolverError& e) {
        return fail(CEQ_ERR_SOLVER, e.what());
    } catch (const ceq::IoError& e) {
        return fail(CEQ_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(CEQ_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CEQ_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CEQ_ERR_INTERNAL, "unknown error");
    }
}

void require(const void* p, const char* what)
{
    if (!p)
        throw ceq::InputError(std::string(what) + " is NULL");
}

template <class Writer>
void write_file(const char* path, Writer&& writer)
{
    require(path, "path");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ceq::IoError(std::string("cannot open '") + path + "' for writing");
    writer(out);
    out.flush();
    if (!out)
        throw ceq::IoError(std::string("error writing '") + path + "'");
}

ceq_profile_row to_row(const ceq::TimeProfile& p, std::size_t i, double toll_offset)
{
    const ceq::CostComponents& c = p.costs[i];
    const double toll = c.toll - toll_offset;
    return ceq_profile_row{p.t[i],          p.delay[i],  p.flow[i],     p.flow_gv[i], p.flow_ev[i],
                           c.travel_time,   c.energy,    c.schedule,    toll,
                           c.travel_time + c.energy + c.schedule + toll};
}

ceq_status profile_row(const ceq::TimeProfile* p, std::size_t i, double toll_offset, ceq_profile_row* out)
{
    return guarded([&] {
        require(p, "handle");
        require(out, "out");
        if (i >= p->size())
            throw ceq::InputError("row index " + std::to_string(i) + " out of range");
        *out = to_row(*p, i, toll_offset);
    });
}

} // namespace

extern "C" {

const char* ceq_version(void)
{
    return "1.0.0";
}

const char* ceq_last_error(void)
{
    return last_error.c_str();
}

const char* ceq_status_name(ceq_status status)
{
    switch (status) {
    case CEQ_OK: return "ok";
    case CEQ_ERR_INPUT: return "input error";
    case CEQ_ERR_SOLVER: return "solver error";
    case CEQ_ERR_IO: return "i/o error";
    case CEQ_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

// ---- scenario ---------------------------------------------------------------

ceq_status ceq_scenario_default(ceq_scenario** out)
{
    return guarded([&] {
        require(out, "out");
        *out = new ceq_scenario{ceq::basic_scenario()};
    });
}

ceq_status ceq_scenario_load(const char* path, ceq_scenario** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new ceq_scenario{ceq::load_scenario(path)};
    });
}

ceq_status ceq_scenario_parse(const char* text, ceq_scenario** out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new ceq_scenario{ceq::parse_scenario(text)};
    });
}

ceq_status ceq_scenario_save(const ceq_scenario* s, const char* path)
{
    return guarded([&] {
        require(s, "scenario");
        require(path, "path");
        ceq::save_scenario(s->value, path);
    });
}

ceq_status ceq_scenario_clone(const ceq_scenario* s, ceq_scenario** out)
{
    return guarded([&] {
        require(s, "scenario");
        require(out, "out");
        *out = new ceq_scenario{s->value};
    });
}

void ceq_scenario_free(ceq_scenario* s)
{
    delete s;
}

ceq_status ceq_scenario_set(ceq_scenario* s, const char* key, double value)
{
    return guarded([&] {
        require(s, "scenario");
        require(key, "key");
        ceq::set_scenario_key(s->value, key, value);
    });
}

ceq_status ceq_scenario_get(const ceq_scenario* s, const char* key, double* value)
{
    return guarded([&] {
        require(s, "scenario");
        require(key, "key");
        require(value, "value");
        *value = ceq::get_scenario_key(s->value, key);
    });
}

size_t ceq_scenario_key_count(void)
{
    return ceq::scenario_keys().size();
}

const char* ceq_scenario_key(size_t i)
{
    const auto& keys = ceq::scenario_keys();
    return i < keys.size() ? keys[i].c_str() : nullptr;
}

ceq_status ceq_scenario_apply_env(ceq_scenario* s, size_t* applied)
{
    return guarded([&] {
        require(s, "scenario");
        ceq::Scenario copy = s->value;
        const auto keys = ceq::apply_env_overrides(copy, [](const char* name) { return std::getenv(name); });
        s->value = copy;
        if (applied)
            *applied = keys.size();
    });
}

ceq_status ceq_scenario_validate(const ceq_scenario* s)
{
    return guarded([&] {
        require(s, "scenario");
        ceq::validate(s->value);
    });
}

// ---- solve ------------------------------------------------------------------

ceq_status ceq_solve_run(const ceq_scenario* s, ceq_solve** out)
{
    return guarded([&] {
        require(s, "scenario");
        require(out, "out");
        *out = new ceq_solve{ceq::run_solve(s->value)};
    });
}

void ceq_solve_free(ceq_solve* r)
{
    delete r;
}

ceq_status ceq_solve_metrics(const ceq_solve* r, ceq_metrics* out)
{
    return guarded([&] {
        require(r, "handle");
        require(out, "out");
        const ceq::SolveRun& run = r->run;
        const ceq::MetricsReport& m = run.metrics;
        *out = ceq_metrics{};
        out->cost_gv = run.solution.cost(ceq::VehicleClass::gasoline);
        out->cost_ev = run.solution.cost(ceq::VehicleClass::electric);
        out->t0 = m.t0;
        out->t1 = m.t1;
        out->duration = m.duration;
        out->max_delay = m.max_delay;
        out->peak_flow = m.peak_flow;
        out->ecp = m.ecp;
        out->ecd_max = m.ecd.max();
        out->baseline_max_delay = run.baseline_profile.max_delay();
        out->cost_traveltime = m.costs.travel_time;
        out->cost_energy = m.costs.energy;
        out->cost_schedule = m.costs.schedule;
        out->toll_revenue = m.costs.toll_revenue;
        out->social_cost = m.costs.social_total;
    });
}

size_t ceq_solve_profile_size(const ceq_solve* r)
{
    return r ? r->run.profile.size() : 0;
}

ceq_status ceq_solve_profile_row(const ceq_solve* r, size_t i, ceq_profile_row* out)
{
    return profile_row(r ? &r->run.profile : nullptr, i, 0.0, out);
}

ceq_status ceq_solve_write_profile(const ceq_solve* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_profile_csv(o, r->run.profile); });
    });
}

ceq_status ceq_solve_write_summary(const ceq_solve* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_solve_summary(o, r->run); });
    });
}

// ---- sweep ------------------------------------------------------------------

ceq_status ceq_sweep_run(const ceq_scenario* s, const double* mprs, size_t count, ceq_sweep** out)
{
    return guarded([&] {
        require(s, "scenario");
        require(out, "out");
        std::vector<double> grid = (mprs && count > 0) ? std::vector<double>(mprs, mprs + count)
                                                       : ceq::default_mpr_grid();
        *out = new ceq_sweep{ceq::run_sweep(s->value, std::move(grid))};
    });
}

void ceq_sweep_free(ceq_sweep* r)
{
    delete r;
}

size_t ceq_sweep_size(const ceq_sweep* r)
{
    return r ? r->report.rows.size() : 0;
}

ceq_status ceq_sweep_row_at(const ceq_sweep* r, size_t i, ceq_sweep_row* out)
{
    return guarded([&] {
        require(r, "handle");
        require(out, "out");
        if (i >= r->report.rows.size())
            throw ceq::InputError("row index " + std::to_string(i) + " out of range");
        const ceq::SweepRow& row = r->report.rows[i];
        *out = ceq_sweep_row{row.mpr, row.cost_gv, row.cost_ev,  row.max_delay,
                             row.duration, row.ecp, row.peak_flow, row.social_cost};
    });
}

ceq_status ceq_sweep_write_csv(const ceq_sweep* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_sweep_csv(o, r->report); });
    });
}

// ---- toll -------------------------------------------------------------------

ceq_status ceq_toll_run(const ceq_scenario* s, ceq_toll** out)
{
    return guarded([&] {
        require(s, "scenario");
        require(out, "out");
        *out = new ceq_toll{ceq::run_toll(s->value)};
    });
}

void ceq_toll_free(ceq_toll* r)
{
    delete r;
}

ceq_status ceq_toll_summary_get(const ceq_toll* r, ceq_toll_summary* out)
{
    return guarded([&] {
        require(r, "handle");
        require(out, "out");
        const ceq::TollRun& run = r->run;
        *out = ceq_toll_summary{};
        out->lambda = run.so.lambda;
        out->residual = run.residual;
        out->max_toll = run.toll.max_toll();
        out->so_t0 = run.so.t0();
        out->so_t1 = run.so.t1();
        out->so_max_delay = run.so.profile.max_delay();
        out->so_social_cost = run.metrics.costs.social_total;
        out->ue_cost = run.ue.cost(ceq::VehicleClass::electric);
        out->ue_t0 = run.ue.t0();
        out->ue_t1 = run.ue.t1();
        out->ue_max_delay = run.ue_profile.max_delay();
        out->ue_social_cost = run.ue_costs.social_total;
        out->ecd_untolled_max = run.ecd_untolled_max;
        out->ecd_tolled_max = run.metrics.ecd.max();
        out->ecd_tolled_min = run.metrics.ecd.min();
    });
}

size_t ceq_toll_profile_size(const ceq_toll* r)
{
    return r ? r->run.so.profile.size() : 0;
}

ceq_status ceq_toll_profile_row(const ceq_toll* r, size_t i, ceq_profile_row* out)
{
    return profile_row(r ? &r->run.so.profile : nullptr, i, r ? r->run.scenario.numerics.toll_offset : 0.0, out);
}

ceq_status ceq_toll_write_profile(const ceq_toll* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) {
            ceq::write_profile_csv(o, r->run.so.profile, r->run.scenario.numerics.toll_offset);
        });
    });
}

ceq_status ceq_toll_write_untolled_profile(const ceq_toll* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_profile_csv(o, r->run.ue_profile); });
    });
}

ceq_status ceq_toll_write_summary(const ceq_toll* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_toll_summary(o, r->run); });
    });
}

// ---- oracle -----------------------------------------------------------------

ceq_status ceq_oracle_run(const ceq_scenario* s, ceq_oracle** out)
{
    return guarded([&] {
        require(s, "scenario");
        require(out, "out");
        *out = new ceq_oracle{ceq::run_oracle(s->value)};
    });
}

void ceq_oracle_free(ceq_oracle* r)
{
    delete r;
}

ceq_status ceq_oracle_summary_get(const ceq_oracle* r, ceq_oracle_summary* out)
{
    return guarded([&] {
        require(r, "handle");
        require(out, "out");
        const ceq::OracleReport& rep = r->report;
        const ceq::dynamics::BinAssignment& a = rep.run.assignment;
        *out = ceq_oracle_summary{};
        out->days = a.day;
        out->converged = rep.run.stop == ceq::dynamics::StopReason::converged;
        out->ev_contiguous =
            ceq::dynamics::is_contiguous(a, ceq::VehicleClass::electric, rep.scenario.n_total) ? 1 : 0;
        out->relative_gap_gv = rep.run.gap.relative_gv;
        out->relative_gap_ev = rep.run.gap.relative_ev;
        for (std::size_t i = 0; i < a.size(); ++i) {
            out->mass_gv += a.mass_gv[i];
            out->mass_ev += a.mass_ev[i];
        }
        out->bins_compared = rep.comparison.bins.size();
        out->max_relative_error = rep.comparison.max_relative_error;
        out->max_error_vs_peak = rep.comparison.max_error_vs_peak;
        out->worst_center = rep.comparison.worst_center;
    });
}

size_t ceq_oracle_size(const ceq_oracle* r)
{
    return r ? r->report.run.assignment.size() : 0;
}

ceq_status ceq_oracle_bin_at(const ceq_oracle* r, size_t i, ceq_oracle_bin* out)
{
    return guarded([&] {
        require(r, "handle");
        require(out, "out");
        const ceq::dynamics::BinAssignment& a = r->report.run.assignment;
        if (i >= a.size())
            throw ceq::InputError("bin index " + std::to_string(i) + " out of range");
        *out = ceq_oracle_bin{a.centers[i], a.mass_gv[i], a.mass_ev[i], a.bin_delay(i, r->report.scenario),
                              r->report.analytic.pattern.delay_at(a.centers[i])};
    });
}

ceq_status ceq_oracle_write_profile(const ceq_oracle* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_oracle_csv(o, r->report); });
    });
}

ceq_status ceq_oracle_write_trace(const ceq_oracle* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_trace_csv(o, r->report.run); });
    });
}

ceq_status ceq_oracle_write_summary(const ceq_oracle* r, const char* path)
{
    return guarded([&] {
        require(r, "handle");
        write_file(path, [&](std::ostream& o) { ceq::write_oracle_summary(o, r->report); });
    });
}

} // extern "C"
