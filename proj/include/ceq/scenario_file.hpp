#pragma once

// Scenario files: sectioned `key = value` text with `#` comments.
//
//   [corridor]     trip_km, capacity_r, nu, s_max
//   [demand]       n_total, t_star, alpha, beta, gamma, mpr
//   [energy.gv]    c1, c2
//   [energy.ev]    c1, c2          (required when mpr > 0)
//   [numerics]     dt (minutes), root_tol, quad_tol, mixed_tol,
//                  oracle_bin (minutes), eta, gap_tol, max_days, toll_offset
//
// Every value is a number. Unknown sections and keys are rejected.

#include "ceq/model.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ceq {

/// Dotted names of every recognised key, in emission order.
const std::vector<std::string>& scenario_keys();

void set_scenario_key(Scenario& s, std::string_view dotted_key, double value);
double get_scenario_key(const Scenario& s, std::string_view dotted_key);

/// "demand.mpr" -> "CEQ_DEMAND_MPR".
std::string env_var_name(std::string_view dotted_key);

using EnvLookup = std::function<const char*(const char*)>;

/// Applies CEQ_* overrides for every known key that is set in the
/// environment. Returns the keys that were overridden.
std::vector<std::string> apply_env_overrides(Scenario& s, const EnvLookup& lookup);

/// Parses and validates. `origin` prefixes error messages.
Scenario parse_scenario(std::string_view text, std::string_view origin = "<scenario>");

/// Throws IoError when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

std::string emit_scenario(const Scenario& s);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

} // namespace ceq
