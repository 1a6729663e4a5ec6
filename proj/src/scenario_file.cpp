#include "ceq/scenario_file.hpp"

#include "ceq/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace ceq {

namespace {

struct Field {
    std::string name;
    bool required;
    std::function<double(const Scenario&)> get;
    std::function<void(Scenario&, double)> set;
};

EnergyModel& ensure_ev(Scenario& s)
{
    if (!s.ev)
        s.ev = EnergyModel{VehicleClass::electric, 0.0, 0.0};
    return *s.ev;
}

double ev_or_nan(const Scenario& s, double EnergyModel::*m)
{
    return s.ev ? (*s.ev).*m : std::numeric_limits<double>::quiet_NaN();
}

#define CEQ_FIELD(name, req, member)                                                                  \
    Field{name, req, [](const Scenario& s) { return static_cast<double>(s.member); },                \
          [](Scenario& s, double v) { s.member = v; }}

const std::vector<Field>& fields()
{
    static const std::vector<Field> table{
        CEQ_FIELD("corridor.trip_km", true, trip_km),
        CEQ_FIELD("corridor.capacity_r", true, capacity_r),
        CEQ_FIELD("corridor.nu", true, nu),
        CEQ_FIELD("corridor.s_max", false, s_max),
        CEQ_FIELD("demand.n_total", true, n_total),
        CEQ_FIELD("demand.t_star", true, t_star),
        CEQ_FIELD("demand.alpha", true, alpha),
        CEQ_FIELD("demand.beta", true, beta),
        CEQ_FIELD("demand.gamma", true, gamma),
        CEQ_FIELD("demand.mpr", false, mpr),
        CEQ_FIELD("energy.gv.c1", true, gv.c1),
        CEQ_FIELD("energy.gv.c2", true, gv.c2),
        Field{"energy.ev.c1", false, [](const Scenario& s) { return ev_or_nan(s, &EnergyModel::c1); },
              [](Scenario& s, double v) { ensure_ev(s).c1 = v; }},
        Field{"energy.ev.c2", false, [](const Scenario& s) { return ev_or_nan(s, &EnergyModel::c2); },
              [](Scenario& s, double v) { ensure_ev(s).c2 = v; }},
        CEQ_FIELD("numerics.dt", false, numerics.dt_minutes),
        CEQ_FIELD("numerics.root_tol", false, numerics.root_tol),
        CEQ_FIELD("numerics.quad_tol", false, numerics.quad_tol),
        CEQ_FIELD("numerics.mixed_tol", false, numerics.mixed_tol),
        CEQ_FIELD("numerics.oracle_bin", false, numerics.oracle_bin_minutes),
        CEQ_FIELD("numerics.eta", false, numerics.eta),
        CEQ_FIELD("numerics.gap_tol", false, numerics.gap_tol),
        Field{"numerics.max_days", false, [](const Scenario& s) { return static_cast<double>(s.numerics.max_days); },
              [](Scenario& s, double v) {
                  if (v != std::floor(v))
                      throw InputError("numerics.max_days must be an integer");
                  s.numerics.max_days = static_cast<long>(v);
              }},
        CEQ_FIELD("numerics.toll_offset", false, numerics.toll_offset),
    };
    return table;
}

#undef CEQ_FIELD

const Field* find_field(std::string_view name)
{
    for (const Field& f : fields())
        if (f.name == name)
            return &f;
    return nullptr;
}

bool parse_number(std::string_view text, double& out)
{
    if (text.empty())
        return false;
    if (text.front() == '+')
        text.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(out);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(std::string_view origin, std::size_t line, std::size_t column, std::string_view what)
{
    std::ostringstream os;
    os << origin << ":" << line << ":" << column << ": " << what;
    throw InputError(os.str());
}

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::set<std::string>& known_sections()
{
    static const std::set<std::string> s{"corridor", "demand", "energy.gv", "energy.ev", "numerics"};
    return s;
}

} // namespace

const std::vector<std::string>& scenario_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const Field& f : fields())
            k.push_back(f.name);
        return k;
    }();
    return keys;
}

void set_scenario_key(Scenario& s, std::string_view dotted_key, double value)
{
    const Field* f = find_field(dotted_key);
    if (!f)
        throw InputError("unknown scenario key '" + std::string(dotted_key) + "'");
    f->set(s, value);
}

double get_scenario_key(const Scenario& s, std::string_view dotted_key)
{
    const Field* f = find_field(dotted_key);
    if (!f)
        throw InputError("unknown scenario key '" + std::string(dotted_key) + "'");
    return f->get(s);
}

std::string env_var_name(std::string_view dotted_key)
{
    std::string name = "CEQ_";
    for (char c : dotted_key)
        name.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    return name;
}

std::vector<std::string> apply_env_overrides(Scenario& s, const EnvLookup& lookup)
{
    std::vector<std::string> applied;
    for (const Field& f : fields()) {
        const std::string var = env_var_name(f.name);
        const char* raw = lookup(var.c_str());
        if (!raw)
            continue;
        double v = 0.0;
        if (!parse_number(trim(raw), v))
            throw InputError(var + ": expected a number, got '" + std::string(raw) + "'");
        f.set(s, v);
        applied.push_back(f.name);
    }
    if (!applied.empty())
        validate(s);
    return applied;
}

Scenario parse_scenario(std::string_view text, std::string_view origin)
{
    Scenario s;
    s.ev.reset();
    std::set<std::string> seen;
    std::set<std::string> sections_seen;
    std::string section;
    std::size_t line_no = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.remove_suffix(1);
        const std::size_t hash = raw.find('#');
        std::string_view content = raw.substr(0, hash);
        const std::string_view body = trim(content);
        if (body.empty()) {
            if (eol == text.size())
                break;
            continue;
        }
        const std::size_t col = static_cast<std::size_t>(body.data() - raw.data()) + 1;

        if (body.front() == '[') {
            if (body.back() != ']')
                parse_fail(origin, line_no, col + body.size() - 1, "expected ']' to close section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            if (!known_sections().count(section))
                parse_fail(origin, line_no, col, "unknown section [" + section + "]");
            if (!sections_seen.insert(section).second)
                parse_fail(origin, line_no, col, "duplicate section [" + section + "]");
            if (section == "energy.ev" && !s.ev)
                s.ev = EnergyModel{VehicleClass::electric, 0.0, 0.0};
        } else {
            const std::size_t eq = body.find('=');
            if (eq == std::string_view::npos)
                parse_fail(origin, line_no, col + body.size(), "expected '=' after key");
            const std::string key(trim(body.substr(0, eq)));
            const std::string_view value = trim(body.substr(eq + 1));
            if (key.empty())
                parse_fail(origin, line_no, col, "missing key before '='");
            if (section.empty())
                parse_fail(origin, line_no, col, "key '" + key + "' appears before any [section]");
            const std::string dotted = section + "." + key;
            const Field* f = find_field(dotted);
            if (!f)
                parse_fail(origin, line_no, col, "unknown key '" + dotted + "'");
            const std::size_t vcol = static_cast<std::size_t>(value.data() - raw.data()) + 1;
            double v = 0.0;
            if (!parse_number(value, v))
                parse_fail(origin, line_no, value.empty() ? col + eq + 1 : vcol,
                           "expected a number for '" + dotted + "'");
            if (!seen.insert(dotted).second)
                parse_fail(origin, line_no, col, "duplicate key '" + dotted + "'");
            f->set(s, v);
        }
        if (eol == text.size())
            break;
    }

    for (const Field& f : fields()) {
        const bool ev_key = f.name.rfind("energy.ev.", 0) == 0;
        const bool needed = f.required || (ev_key && s.ev);
        if (needed && !seen.count(f.name))
            throw InputError(std::string(origin) + ": missing required field '" + f.name + "'");
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("error reading scenario file '" + path.string() + "'");
    return parse_scenario(buf.str(), path.string());
}

std::string emit_scenario(const Scenario& s)
{
    std::ostringstream os;
    std::string section;
    for (const Field& f : fields()) {
        const std::size_t dot = f.name.rfind('.');
        const std::string sec = f.name.substr(0, dot);
        if (sec == "energy.ev" && !s.ev)
            continue;
        if (sec != section) {
            if (!section.empty())
                os << "\n";
            os << "[" << sec << "]\n";
            section = sec;
        }
        os << f.name.substr(dot + 1) << " = " << format_number(f.get(s)) << "\n";
    }
    return os.str();
}

void save_scenario(const Scenario& s, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write scenario file '" + path.string() + "'");
    out << emit_scenario(s);
    if (!out)
        throw IoError("error writing scenario file '" + path.string() + "'");
}

} // namespace ceq
