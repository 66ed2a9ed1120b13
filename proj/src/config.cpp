#include "fsr/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fsr/error.hpp"

namespace fsr {

namespace {

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw StructuralError("config: " + key + " expects an unsigned integer");
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) throw StructuralError("config: " + key + " expects a number");
  return out;
}

}  // namespace

void Config::validate() const {
  if (fs_cap == 0 || cyclo_cap == 0 || search_budget == 0) throw StructuralError("config: caps must be positive");
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw StructuralError("config: tolerance must lie in (0, 1)");
  if (precision_bits == 0 || precision_bits > cyclo::kNumericPrecisionBits) {
    throw StructuralError("config: precision_bits must be in [1, " + std::to_string(cyclo::kNumericPrecisionBits) + "]");
  }
  if (jobs == 0) throw StructuralError("config: jobs must be positive");
}

void apply_config_text(Config& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw StructuralError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);

    if (key == "fs_cap") {
      config.fs_cap = parse_uint(key, value);
    } else if (key == "cyclo_cap") {
      config.cyclo_cap = parse_uint(key, value);
    } else if (key == "search_budget") {
      config.search_budget = parse_uint(key, value);
    } else if (key == "tolerance") {
      config.tolerance = parse_double(key, value);
    } else if (key == "precision_bits") {
      config.precision_bits = static_cast<unsigned>(parse_uint(key, value));
    } else if (key == "jobs") {
      config.jobs = static_cast<unsigned>(parse_uint(key, value));
    } else if (key == "seed") {
      config.seed = parse_uint(key, value);
    } else if (key == "output") {
      if (value == "json") config.output = OutputMode::Json;
      else if (value == "text") config.output = OutputMode::Text;
      else throw StructuralError("config: output must be \"text\" or \"json\"");
    } else {
      throw StructuralError("config: unknown key \"" + key + "\"");
    }
  }
}

void load_config_file(Config& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(config, ss.str());
}

void apply_environment(Config& config) {
  if (const char* v = std::getenv("FS_RECON_JOBS"); v && *v) {
    config.jobs = static_cast<unsigned>(parse_uint("FS_RECON_JOBS", v));
  }
}

}  // namespace fsr
