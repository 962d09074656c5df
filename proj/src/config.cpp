#include "pclab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pclab/error.hpp"
#include "pclab/series.hpp"

namespace pclab {
namespace {

using Kind = ConfigKey::Kind;

ConfigKey real_key(std::string name, double def, double lo, double hi, std::string help) {
  return {std::move(name), Kind::real, format_real(def), lo, hi, {}, std::move(help)};
}

ConfigKey int_key(std::string name, std::int64_t def, double lo, double hi, std::string help) {
  return {std::move(name), Kind::integer, std::to_string(def), lo, hi, {}, std::move(help)};
}

ConfigKey choice_key(std::string name, std::string def, std::vector<std::string> choices,
                     std::string help) {
  return {std::move(name), Kind::choice, std::move(def), 0, 0, std::move(choices), std::move(help)};
}

std::vector<ConfigKey> build_keys() {
  std::vector<ConfigKey> k = {
      {"zero_file", Kind::text, "", 0, 0, {}, "zero ordinate file (empty: use output_dir/zeros.pclb)"},
      choice_key("zero_format", "auto", {"auto", "plain", "offset", "binary"}, "zero file format"),
      int_key("sieve_limit", 2'000'000, 100, 1e9, "sieve limit"),
      {"output_dir", Kind::text, "pclab-out", 0, 0, {}, "directory for artifacts"},
      choice_key("format", "csv", {"csv", "json"}, "series output format"),
      real_key("height", 0.0, 0.0, 1e6, "zero height T (0: top of the table)"),
      real_key("tolerance", 1e-10, 1e-12, 1e-3, "zero refinement tolerance"),
      real_key("height_cap", 1e5, 100.0, 1e6, "refuse zero computation above this height"),
      real_key("cutoff", 200.0, 50.0, 1e5, "pair cutoff |g - g'|"),
      real_key("alpha_max", 3.0, 0.0, 3.0, "form factor grid end"),
      real_key("alpha_step", 0.005, 1e-4, 1.0, "form factor grid step"),
      real_key("tail_tolerance", 1e-3, 1e-12, 1.0, "tail-bound warning level"),
      real_key("lambda", 1.0, 1e-3, 10.0, "Fejer pair scale"),
      choice_key("pair", "fejer", {"fejer", "selberg"}, "test function pair"),
      real_key("beta_max", 3.0, 0.01, 50.0, "spacing histogram range"),
      int_key("bins", 300, 1, 1'000'000, "histogram bins"),
      choice_key("scale", "asymptotic", {"asymptotic", "unfolded"}, "spacing normalization"),
      {"weighted", Kind::flag, "false", 0, 0, {}, "weight pairs by w(g - g')"},
      real_key("x", 100.5, 1.0, 1e9, "x for single-point explicit formulas"),
      real_key("x_min", 2.0, 1.0, 1e9, "x grid start"),
      real_key("x_max", 500.0, 1.0, 1e9, "x grid end"),
      int_key("x_count", 50, 1, 1'000'000, "number of x grid points"),
      real_key("x_step", 0.01, 1e-6, 1e6, "x grid step"),
      real_key("t", 30.0, -1e6, 1e6, "t for single-point evaluations"),
      real_key("t_min", 20.0, 0.0, 1e6, "t grid start"),
      real_key("t_max", 1000.0, 0.0, 1e6, "t grid end"),
      real_key("grid_step", 0.5, 1e-4, 1e4, "t grid step"),
      real_key("sigma", 2.0, -1.0, 100.0, "real part of s"),
      real_key("prime_cutoff", 0.0, 0.0, 1e9, "prime sum cutoff (0: sieve limit)"),
      real_key("window", 1.0, 1e-6, 1e9, "window length h"),
      int_key("k", 1, 1, 50, "moment order or pair shift"),
      int_key("k_max", 6, 1, 1000, "largest moment order or shift"),
      int_key("n_max", 1'000'000, 10, 1e9, "twin sum range"),
      int_key("X", 1'000'000, 10, 1e9, "short-interval moment range"),
      real_key("delta", 0.0, 0.0, 1.0, "relative interval length (0: X^(-1/2))"),
  };
  std::sort(k.begin(), k.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return k;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, v);
  require(res.ec == std::errc() && res.ptr == end && std::isfinite(v), ErrorKind::invalid_argument,
          "config key '" + std::string(key) + "': not a number: '" + std::string(value) + "'");
  return v;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = build_keys();
  return keys;
}

const ConfigKey* find_config_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

RunConfig::RunConfig() {
  for (const auto& k : config_keys()) values_.emplace(k.name, k.default_value);
}

void RunConfig::set(std::string_view key, std::string_view value) {
  const ConfigKey* spec = find_config_key(key);
  require(spec != nullptr, ErrorKind::invalid_argument, "unknown config key '" + std::string(key) + "'");
  value = trim(value);
  std::string canonical;
  const auto range_msg = [&] {
    return "config key '" + spec->name + "' = " + std::string(value) + " outside [" +
           format_real(spec->min) + ", " + format_real(spec->max) + "]";
  };
  switch (spec->kind) {
    case Kind::real: {
      const double v = parse_number(key, value);
      require(v >= spec->min && v <= spec->max, ErrorKind::invalid_argument, range_msg());
      canonical = format_real(v);
      break;
    }
    case Kind::integer: {
      const double v = parse_number(key, value);
      require(v == std::floor(v), ErrorKind::invalid_argument,
              "config key '" + spec->name + "' needs an integer");
      require(v >= spec->min && v <= spec->max, ErrorKind::invalid_argument, range_msg());
      canonical = std::to_string(static_cast<std::int64_t>(v));
      break;
    }
    case Kind::choice: {
      require(std::find(spec->choices.begin(), spec->choices.end(), value) != spec->choices.end(),
              ErrorKind::invalid_argument,
              "config key '" + spec->name + "': illegal value '" + std::string(value) + "'");
      canonical = value;
      break;
    }
    case Kind::flag: {
      if (value == "true" || value == "1" || value == "yes" || value.empty())
        canonical = "true";
      else if (value == "false" || value == "0" || value == "no")
        canonical = "false";
      else
        fail(ErrorKind::invalid_argument, "config key '" + spec->name + "' needs true or false");
      break;
    }
    case Kind::text:
      canonical = value;
      break;
  }
  values_.find(key)->second = std::move(canonical);
}

const std::string& RunConfig::raw(std::string_view key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), ErrorKind::internal, "config key '" + std::string(key) + "' not registered");
  return it->second;
}

double RunConfig::real(std::string_view key) const { return parse_number(key, raw(key)); }

std::int64_t RunConfig::integer(std::string_view key) const {
  return static_cast<std::int64_t>(parse_number(key, raw(key)));
}

const std::string& RunConfig::text(std::string_view key) const { return raw(key); }

bool RunConfig::flag(std::string_view key) const { return raw(key) == "true"; }

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string RunConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : values_) j[k] = v;
  return j;
}

void merge_config(RunConfig& config, std::string_view text, std::string_view source) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    require(eq != std::string_view::npos, ErrorKind::invalid_argument,
            where + ": expected 'key = value'");
    try {
      config.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      fail(e.kind(), where + ": " + e.what());
    }
  }
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  RunConfig config;
  merge_config(config, text, source);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

std::string_view tool_version() { return PCLAB_VERSION; }

}  // namespace pclab
