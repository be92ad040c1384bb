#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gkr/dde_oracle.hpp"
#include "json.hpp"

namespace gkr {

/// Writes to a temporary sibling and renames it over `path`.  Creates parent
/// directories.  Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// `t,x` rows.
void write_series_csv(const TimeSeries& series, std::ostream& os);

nlohmann::json orbit_to_json(const Orbit& orbit);
Orbit orbit_from_json(const nlohmann::json& j);

}  // namespace gkr
