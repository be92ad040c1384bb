#include "config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "gkr/errors.hpp"
#include "gkr/io.hpp"

namespace gkr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError("cannot read a number from '" + s + "' in " + what);
  }
  if (pos != s.size() || !std::isfinite(v)) throw ConfigError("cannot read a number from '" + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> Range::values() const {
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(n);
  for (long i = 0; i < n; ++i) v.push_back(lo + static_cast<double>(i) * step);
  return v;
}

Range parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  Range r;
  if (parts.size() == 1) {
    r.lo = r.hi = to_double(parts[0], "range '" + text + "'");
    return r;
  }
  if (parts.size() != 3) throw ConfigError("range '" + text + "' must be lo:hi:step or a single value");
  r.lo = to_double(parts[0], "range '" + text + "'");
  r.hi = to_double(parts[1], "range '" + text + "'");
  r.step = to_double(parts[2], "range '" + text + "'");
  if (!(r.step > 0.0)) throw ConfigError("range '" + text + "': step must be positive");
  if (r.hi < r.lo) throw ConfigError("range '" + text + "' is empty (hi < lo)");
  return r;
}

std::pair<double, double> parse_bracket(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ConfigError("bracket '" + text + "' must be lo:hi");
  const double lo = to_double(parts[0], "bracket '" + text + "'");
  const double hi = to_double(parts[1], "bracket '" + text + "'");
  if (!(lo < hi)) throw ConfigError("bracket '" + text + "' needs lo < hi");
  return {lo, hi};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& p : split(text, ',')) {
    const double v = to_double(p, "list '" + text + "'");
    if (v != std::floor(v) || v < 1 || v > 1000) throw ConfigError("list '" + text + "' needs integers in [1, 1000]");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::istringstream is(read_file(path));
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty() || value.empty()) throw ConfigError(where + ": empty key or value");
    if (!seen.insert(key).second) throw ConfigError(where + ": key '" + key + "' given twice");
    out.emplace_back(key, value);
  }
  return out;
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("GKR_OUTPUT_DIR"); env && *env) return env;
  return "gkr_out";
}

}  // namespace gkr::cli
