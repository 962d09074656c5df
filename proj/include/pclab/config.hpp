#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pclab {

// One legal configuration key. Reals and integers carry an inclusive range;
// choice keys list their legal values.
struct ConfigKey {
  enum class Kind { real, integer, text, choice, flag };
  std::string name;
  Kind kind = Kind::real;
  std::string default_value;
  double min = 0.0;
  double max = 0.0;
  std::vector<std::string> choices;
  std::string help;
};

const std::vector<ConfigKey>& config_keys();
const ConfigKey* find_config_key(std::string_view name);

// Flat key = value settings. Every known key always has a value; unknown keys
// and out-of-range values are rejected on set().
class RunConfig {
 public:
  RunConfig();

  void set(std::string_view key, std::string_view value);

  double real(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  const std::string& text(std::string_view key) const;
  bool flag(std::string_view key) const;

  // Sorted "key = value" lines; the hash is FNV-1a over this text.
  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
  nlohmann::json to_json() const;

 private:
  const std::string& raw(std::string_view key) const;
  std::map<std::string, std::string, std::less<>> values_;
};

RunConfig parse_config(std::string_view text, std::string_view source = "<config>");
RunConfig load_config(const std::filesystem::path& path);
// Applies the settings of a config file on top of an existing config.
void merge_config(RunConfig& config, std::string_view text, std::string_view source);

std::string_view tool_version();

}  // namespace pclab
