#pragma once

#include "extscen/power.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace extscen {

/// Formats a double so that parsing the text recovers the identical bits
/// (%.17g). All CSV writers in the project use this.
std::string format_double(double v);

/// Parses a full decimal field; throws std::invalid_argument on anything
/// that is not a single finite number.
double parse_double(const std::string& field, const std::string& context);

/// Writes one scenario as CSV with header `period,<rg ids...>,<ld ids...>`
/// and rows `t,<values...>` for t = 1..N_T. Values round-trip bit-exactly.
void write_scenario_csv(const std::filesystem::path& path, const Scenario& s,
                        const std::vector<std::string>& rg_ids,
                        const std::vector<std::string>& ld_ids);

/// Reads a scenario CSV produced by write_scenario_csv. The header must
/// name exactly the given units in order; the label is taken from the file
/// stem unless `label` is nonempty.
Scenario read_scenario_csv(const std::filesystem::path& path,
                           const std::vector<std::string>& rg_ids,
                           const std::vector<std::string>& ld_ids,
                           const std::string& label = "");

} // namespace extscen
