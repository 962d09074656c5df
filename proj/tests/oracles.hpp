#pragma once
// Slow, obviously-correct reference routines shared by the tests.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline double von_mangoldt(std::uint64_t n) {
  if (n < 2) return 0.0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return std::log(static_cast<double>(n));
}

inline int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

inline double psi(double x) {
  double s = 0.0;
  for (std::uint64_t n = 2; static_cast<double>(n) <= x; ++n) s += von_mangoldt(n);
  return s;
}

// Number of zeros in (0, T] counted by brute force over a sorted list.
inline double count(const std::vector<double>& gammas, double T) {
  double c = 0.0;
  for (double g : gammas) {
    if (g < T) c += 1.0;
    else if (g == T) c += 0.5;
  }
  return c;
}

inline double smooth(double T) {
  const double tp = T / (2.0 * M_PI);
  return tp * std::log(tp / M_E) + 0.875;
}

}  // namespace oracle
