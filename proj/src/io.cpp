#include "gkr/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "gkr/errors.hpp"

namespace gkr {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_series_csv(const TimeSeries& series, std::ostream& os) {
  os << "t,x\n";
  os.precision(17);
  for (std::size_t k = 0; k < series.size(); ++k) os << series.times[k] << ',' << series.values[k] << '\n';
}

nlohmann::json orbit_to_json(const Orbit& orbit) {
  nlohmann::json j;
  j["period"] = orbit.period;
  j["amplitude"] = orbit.amplitude;
  j["stability"] = to_string(orbit.stability);
  j["samples"] = orbit.samples;
  return j;
}

Orbit orbit_from_json(const nlohmann::json& j) {
  try {
    Orbit o;
    o.period = j.at("period").get<double>();
    o.amplitude = j.at("amplitude").get<double>();
    o.stability = stability_from_string(j.at("stability").get<std::string>());
    o.samples = j.at("samples").get<std::vector<std::array<double, 2>>>();
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed orbit JSON: ") + e.what());
  }
}

}  // namespace gkr
