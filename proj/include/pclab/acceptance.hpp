#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pclab/arith.hpp"
#include "pclab/zero_store.hpp"

namespace pclab {

// Desk-scale reference data: the first 1e5 zero ordinates and a sieve to 2e6.
struct ReferenceData {
  ZeroTable zeros;
  PrimeTable primes;
  std::string zeros_origin;
};

inline constexpr double kReferenceHeight = 74920.9;  // just above the 100000th ordinate
inline constexpr std::uint64_t kReferenceSieveLimit = 2'000'000;

// Zeros come from PCLAB_ZEROS_FILE when set, else from a cached computation
// in cache_dir (computed on first use).
ReferenceData load_reference_data(const std::filesystem::path& cache_dir);

struct Check {
  std::string what;
  double value = 0.0;
  std::string bound;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> reported;  // informational only
  std::string error;  // set when evaluation threw
  double seconds = 0.0;

  bool pass() const;
  std::string summary_line() const;
};

inline constexpr int kCriterionCount = 15;

// Criteria known to fail at desk heights; see the decisions ledger.
const std::set<int>& expected_failures();

// Runs the selected criteria (all when `only` is empty). scratch_dir holds
// temporary cache files for the round-trip check.
std::vector<CriterionResult> run_acceptance(const ReferenceData& data,
                                            const std::filesystem::path& scratch_dir,
                                            const std::set<int>& only = {});

nlohmann::json to_json(const CriterionResult& result);

}  // namespace pclab
