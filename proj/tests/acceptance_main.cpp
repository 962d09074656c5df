// Evaluates every acceptance criterion on the reference data and prints one
// line per criterion. Exits non-zero only on an unexpected failure; the known
// desk-scale failures are listed in expected_failures() and still print FAIL.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#include "pclab/acceptance.hpp"

int main(int argc, char** argv) {
  std::filesystem::path cache = "acceptance-cache";
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--cache-dir" && i + 1 < argc)
      cache = argv[++i];
    else
      only.insert(std::atoi(a.c_str()));
  }
  const auto data = pclab::load_reference_data(cache);
  std::cout << "reference zeros: " << data.zeros.size() << " to T = " << data.zeros.t_max() << " ("
            << data.zeros_origin << "); sieve to " << data.primes.limit() << "\n";
  const auto results = pclab::run_acceptance(data, cache / "scratch", only);
  int passed = 0;
  int unexpected = 0;
  for (const auto& r : results) {
    std::cout << r.summary_line() << "\n";
    if (r.pass())
      ++passed;
    else if (!pclab::expected_failures().contains(r.id))
      ++unexpected;
  }
  std::cout << passed << "/" << results.size() << " criteria pass";
  if (unexpected) std::cout << "; " << unexpected << " unexpected failure(s)";
  std::cout << "\n";
  return unexpected ? 1 : 0;
}
