#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace gkr::cli {

/// `lo:hi:step` (inclusive) or a single value.
struct Range {
  double lo = 0.0, hi = 0.0, step = 1.0;
  std::vector<double> values() const;
};

/// Throws ConfigError on malformed input or an empty range (hi < lo).
Range parse_range(const std::string& text);

/// `lo:hi` with lo < hi.
std::pair<double, double> parse_bracket(const std::string& text);

/// Comma-separated integers, e.g. "4,6,8,10".
std::vector<int> parse_int_list(const std::string& text);

/// Flat `key = value` lines; `#` starts a comment.  Keys are returned in
/// file order.  Throws IoError when unreadable, ConfigError when malformed
/// or a key repeats.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// $GKR_OUTPUT_DIR when set and non-empty, else ./gkr_out.
std::filesystem::path default_output_dir();

}  // namespace gkr::cli
