#include "pclab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>

#include "pclab/error.hpp"
#include "pclab/explicit_formula.hpp"
#include "pclab/paircorr.hpp"
#include "pclab/parallel.hpp"
#include "pclab/series.hpp"
#include "pclab/summation.hpp"
#include "pclab/zeta.hpp"

namespace pclab {
namespace {

constexpr double kPi = std::numbers::pi;

// Published ordinates, truncated to five decimals.
constexpr std::array<double, 6> kFirstOrdinates = {14.13472, 21.02203, 25.01085,
                                                   30.42487, 32.93506, 37.58617};

Check within(std::string what, double value, double lo, double hi) {
  return {std::move(what), value, "[" + format_real(lo) + ", " + format_real(hi) + "]",
          value >= lo && value <= hi};
}

Check below(std::string what, double value, double limit) {
  return {std::move(what), value, "< " + format_real(limit), value < limit};
}

Check at_least(std::string what, double value, double limit) {
  return {std::move(what), value, ">= " + format_real(limit), value >= limit};
}

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void zero_finding(CriterionResult& r) {
  const ZeroTable z = find_zeros(100.0, 1e-10);
  double worst = 0.0;
  for (std::size_t i = 0; i < kFirstOrdinates.size(); ++i)
    worst = std::max(worst, std::abs(z.ordinates()[i] - kFirstOrdinates[i]));
  r.checks.push_back(below("max |gamma_i - published|, i <= 6", worst, 5e-5));
  r.checks.push_back(within("zeros in (0, 100]", static_cast<double>(z.size()), 29, 29));
}

void counting_formula(CriterionResult& r, const ZeroTable& zeros) {
  double worst = 0.0;
  for (int i = 0; i <= 1960; ++i) worst = std::max(worst, std::abs(s_of_t(20.0 + 0.5 * i, zeros)));
  r.checks.push_back(below("max |N(T) - smooth(T)| on [20, 1000] step 0.5", worst, 1.2));
}

void small_gap(CriterionResult& r) {
  const double lam = small_gap_threshold();
  r.checks.push_back(within("small_gap_threshold", lam, 0.6072 - 2e-4, 0.6072 + 2e-4));
}

void fejer_constant(CriterionResult& r, const ZeroTable& zeros) {
  const auto res = pair_sum(zeros, zeros.t_max(), fejer_pair(1.0));
  const double target = 4.0 / 3.0;
  r.checks.push_back(within("normalized Fejer pair sum, lambda = 1", res.normalized_direct,
                            0.85 * target, 1.15 * target));
  r.reported.emplace_back("normalized transform route", res.normalized_transform);
  r.reported.emplace_back("N* = sum m / ((T/2pi) log T)", zero_stats(zeros, zeros.t_max()).n_star);
}

void form_factor(CriterionResult& r, const ZeroTable& zeros) {
  const double T = zeros.t_max();
  const auto grid = uniform_grid(0.0, 3.0, 0.005);
  const auto F = f_alpha(zeros, T, grid);
  double dev = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.2 - 1e-12 || grid[i] > 0.8 + 1e-12) continue;
    dev += std::abs(F.F[i] - grid[i]);
    ++n;
  }
  r.checks.push_back(below("mean |F(alpha) - alpha| on [0.2, 0.8]", dev / n, 0.15));
  r.checks.push_back(at_least("min F(alpha) on [0, 3]", *std::min_element(F.F.begin(), F.F.end()), 0.0));
  r.checks.push_back(within("F(0) / log T", F.F.front() / std::log(T), 0.7, 1.3));
  r.reported.emplace_back("tail bound", F.tail_bound);
}

void two_route(CriterionResult& r, const ZeroTable& zeros) {
  const auto res = pair_sum(zeros, zeros.t_max(), fejer_pair(0.5));
  r.checks.push_back(below("relative difference direct vs transform, Fejer lambda = 0.5",
                           res.relative_difference, 0.02));
  r.reported.emplace_back("normalized direct", res.normalized_direct);
  r.reported.emplace_back("normalized transform", res.normalized_transform);
}

void lemma1(CriterionResult& r, const ZeroTable& zeros) {
  const auto grid = uniform_grid(0.0, 3.0, 0.005);
  const auto F = f_alpha(zeros, zeros.t_max(), grid);
  for (double B : {0.0, 0.5, 1.0})
    r.checks.push_back(below("int_B^{B+1} F, B = " + short_real(B), lemma1_window(F, B), 3.0 + 1e-12));
}

void gue(CriterionResult& r, const ZeroTable& zeros) {
  r.checks.push_back(below("|int sinc^2 - 1|", std::abs(sinc2_total_integral() - 1.0), 1e-6));
  const double T = zeros.t_max();
  const auto hist = pcc_histogram(zeros, T, 3.0, 300);
  const auto cmp = compare_with_gue(hist, 3.0);
  r.checks.push_back(below("sup |cumulative - GUE| on [0, 3]", cmp.sup_deviation, 0.15));
  const auto unfolded = compare_with_gue(pcc_histogram(zeros, T, 3.0, 300, SpacingScale::unfolded), 3.0);
  r.reported.emplace_back("sup deviation, unfolded spacings", unfolded.sup_deviation);
}

void explicit_psi(CriterionResult& r, const ZeroTable& zeros, const PrimeTable& primes) {
  const ZeroTable z = zeros.truncated(1e4);
  std::vector<double> res_full;
  std::vector<double> res_half;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = std::floor(2.0 + i * (497.0 / 49.0)) + 0.5;
    const auto full = psi_from_zeros(x, z, 1e4, primes);
    const auto half = psi_from_zeros(x, z, 5e3, primes);
    worst = std::max(worst, full.residual);
    res_full.push_back(full.residual);
    res_half.push_back(half.residual);
  }
  r.checks.push_back(below("max |psi0 from zeros - psi0|, T = 1e4", worst, 0.5));
  const double reduction = 1.0 - median(res_full) / median(res_half);
  r.checks.push_back(at_least("median residual reduction T = 5e3 -> 1e4", reduction, 0.2));
}

void landau(CriterionResult& r, const ZeroTable& zeros, const PrimeTable& primes) {
  const double T = zeros.t_max();
  r.checks.push_back(within("Lambda-hat(2)", landau_detect(2.0, zeros, T), 0.59, 0.79));
  for (double x : {2.5, 6.0})
    r.checks.push_back(below("|Lambda-hat(" + short_real(x) + ")|", std::abs(landau_detect(x, zeros, T)), 0.1));
  std::vector<std::pair<double, int>> peaks;  // (|value|, grid index)
  for (int i = 0; i <= 1850; ++i) {
    const double x = 1.5 + 0.01 * i;
    peaks.emplace_back(std::abs(landau_detect(x, zeros, T)), i);
  }
  std::sort(peaks.begin(), peaks.end(), std::greater<>());
  std::vector<std::uint64_t> powers;
  for (auto v : primes.prime_powers())
    if (v >= 2 && v <= 20) powers.push_back(v);
  const auto is_power = [&](int i) {
    const double x = 1.5 + 0.01 * i;
    const double n = std::round(x);
    return std::abs(x - n) < 1e-9 &&
           std::find(powers.begin(), powers.end(), static_cast<std::uint64_t>(n)) != powers.end();
  };
  int top10 = 0;
  for (int k = 0; k < 10; ++k) top10 += is_power(peaks[k].second);
  r.checks.push_back(within("top-10 peaks at prime powers", top10, 10, 10));
  // all 12 prime powers in range occupy the top 12 slots
  int topall = 0;
  for (std::size_t k = 0; k < powers.size(); ++k) topall += is_power(peaks[k].second);
  r.checks.push_back(within("top-" + std::to_string(powers.size()) + " peaks are all prime powers in range",
                            topall, static_cast<double>(powers.size()), static_cast<double>(powers.size())));
}

void montgomery(CriterionResult& r, const ZeroTable& zeros, const PrimeTable& primes) {
  for (auto [x, t] : {std::pair{50.0, 30.0}, std::pair{100.0, 100.0}}) {
    const std::string at = "(x, t) = (" + short_real(x) + ", " + short_real(t) + ")";
    const auto full = montgomery_formula(x, t, zeros, primes);
    r.checks.push_back(below("residual " + at, full.report.residual, 0.5));
    MontgomeryOptions half;
    half.zero_height = zeros.t_max() / 2;
    half.prime_cutoff = primes.limit() / 2;
    half.tail_corrections = false;
    MontgomeryOptions doubled;
    doubled.tail_corrections = false;
    const double rh = montgomery_formula(x, t, zeros, primes, half).residual_exact;
    const double rf = montgomery_formula(x, t, zeros, primes, doubled).residual_exact;
    r.checks.push_back(below("exact residual ratio, doubled / half truncation " + at, rf / rh, 1.0));
    r.reported.emplace_back("exact residual " + at, full.residual_exact);
  }
}

void twins(CriterionResult& r, const PrimeTable& primes) {
  const SingularSeriesTable series;
  for (int k : {2, 4, 6}) {
    const auto res = twin_sum(1'000'000, k, primes, series);
    r.checks.push_back(within("twin ratio k = " + std::to_string(k), res.ratio, 0.9, 1.1));
  }
}

// Midpoint rule on a uniform grid; independent of the piecewise evaluator.
double moment_by_grid(std::uint64_t X, double delta, const PrimeTable& primes, double step) {
  CompensatedSum<double> acc;
  const auto n = static_cast<std::size_t>(std::llround((static_cast<double>(X) - 1.0) / step));
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 1.0 + (i + 0.5) * step;
    const double d = primes.psi((1.0 + delta) * x) - primes.psi(x) - delta * x;
    acc += d * d;
  }
  return acc.value() * step;
}

void short_interval(CriterionResult& r, const PrimeTable& primes) {
  const auto big = interval_second_moment(1'000'000, 1e-3, primes);
  r.checks.push_back(within("I(1e6, 1e-3) / model", big.ratio, 0.5, 1.5));
  const auto small = interval_second_moment(10'000, 1e-2, primes);
  const double oracle = moment_by_grid(10'000, 1e-2, primes, 1e-3);
  r.checks.push_back(below("|piecewise / grid - 1|, X = 1e4", std::abs(small.value / oracle - 1.0), 5e-3));
}

void s_statistics(CriterionResult& r, const ZeroTable& zeros, const PrimeTable& primes) {
  // S decreases between jumps, so its extremes sit at the one-sided limits.
  double worst = std::max(std::abs(s_of_t(20.0, zeros)), std::abs(s_of_t(100.0, zeros)));
  for (double g : zeros.ordinates()) {
    if (g <= 20.0) continue;
    if (g > 100.0) break;
    worst = std::max({worst, std::abs(s_of_t(g - 1e-9, zeros)), std::abs(s_of_t(g + 1e-9, zeros))});
  }
  r.checks.push_back(below("sup |S(t)| on [20, 100]", worst, 1.2));

  const auto m = s_moment(1e4, 1, zeros);
  r.checks.push_back(within("int S^2 / ((1/2pi^2) T log log T), T = 1e4", m.value / m.model, 1.0 / 3.0, 3.0));

  const SelbergApprox approx(20.0, primes);
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i <= 9900; ++i) {
    const double t = 50.0 + 0.5 * i;
    const double a = approx(t).value;
    const double b = s_of_t(t, zeros);
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
    ++n;
  }
  const double corr = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
  r.checks.push_back(at_least("corr(Selberg approximation, S) on [50, 5000], x = 20", corr, 0.6 + 1e-12));
}

void determinism(CriterionResult& r, const ReferenceData& data, const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  const auto zpath = scratch / "roundtrip_zeros.pclb";
  write_zero_cache(data.zeros, zpath);
  const ZeroTable back = load_zero_cache(zpath);
  const auto a = data.zeros.ordinates();
  const auto b = back.ordinates();
  const bool same = a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
  const auto zpath2 = scratch / "roundtrip_zeros2.pclb";
  write_zero_cache(back, zpath2);
  const bool same_file = file_bytes(zpath) == file_bytes(zpath2);
  r.checks.push_back(within("zero cache round trip identical", same && same_file, 1, 1));

  const auto spath = scratch / "roundtrip_sieve.pclb";
  write_sieve_cache(data.primes, spath);
  r.checks.push_back(within("sieve cache round trip identical", load_sieve_cache(spath) == data.primes, 1, 1));

  // windows reach past T, so keep some zeros above it
  const ZeroTable z = data.zeros.truncated(1.1e4);
  const auto grid = uniform_grid(0.0, 3.0, 0.01);
  const auto run = [&](std::size_t threads) {
    set_worker_count(threads);
    std::vector<double> out = f_alpha(z, 1e4, grid).F;
    out.push_back(s_moment(1e4, 2, z).value);
    out.push_back(fujii_variance(1e4, 1.0, z).value);
    out.push_back(pair_sum(z, 1e4, fejer_pair(0.5)).direct);
    return out;
  };
  const auto one = run(1);
  const auto four = run(4);
  set_worker_count(0);
  const bool identical = one.size() == four.size() &&
                         std::memcmp(one.data(), four.data(), one.size() * sizeof(double)) == 0;
  r.checks.push_back(within("outputs identical for 1 and 4 threads", identical, 1, 1));
  std::filesystem::remove(zpath);
  std::filesystem::remove(zpath2);
  std::filesystem::remove(spath);
}

}  // namespace

ReferenceData load_reference_data(const std::filesystem::path& cache_dir) {
  ReferenceData data;
  if (const char* env = std::getenv("PCLAB_ZEROS_FILE"); env && *env) {
    const std::filesystem::path src(env);
    const auto fmt = src.extension() == ".pclb" ? ZeroFileFormat::binary_cache : ZeroFileFormat::plain_ordinates;
    data.zeros = fmt == ZeroFileFormat::binary_cache ? load_zero_cache(src) : ingest(src, fmt, {.write_cache = false});
    data.zeros_origin = src.string();
  } else {
    const auto cached = cache_dir / "reference_zeros.pclb";
    if (std::filesystem::exists(cached)) {
      data.zeros = load_zero_cache(cached);
      data.zeros_origin = cached.string();
    } else {
      ZeroSearchOptions options;
      options.height_cap = 1e5;
      data.zeros = find_zeros(kReferenceHeight, 1e-10, options);
      std::filesystem::create_directories(cache_dir);
      write_zero_cache(data.zeros, cached);
      data.zeros_origin = "computed to T = " + format_real(kReferenceHeight);
    }
  }
  data.primes = sieve_build(kReferenceSieveLimit);
  return data;
}

bool CriterionResult::pass() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string CriterionResult::summary_line() const {
  std::ostringstream out;
  char head[16];
  std::snprintf(head, sizeof head, "%2d", id);
  out << "criterion " << head << " " << (pass() ? "PASS" : "FAIL") << "  " << title;
  if (!error.empty()) out << ": error: " << error;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    out << (i ? "; " : ": ") << c.what << " = " << short_real(c.value) << " " << c.bound
        << (c.pass ? "" : " (fail)");
  }
  for (const auto& [name, v] : reported) out << "; [reported] " << name << " = " << short_real(v);
  char tail[32];
  std::snprintf(tail, sizeof tail, "  (%.1f s)", seconds);
  out << tail;
  return out.str();
}

const std::set<int>& expected_failures() {
  static const std::set<int> ids = {4, 5, 8};
  return ids;
}

std::vector<CriterionResult> run_acceptance(const ReferenceData& data,
                                            const std::filesystem::path& scratch_dir,
                                            const std::set<int>& only) {
  const ZeroTable& zeros = data.zeros;
  const PrimeTable& primes = data.primes;
  struct Entry {
    int id;
    const char* title;
    std::function<void(CriterionResult&)> run;
  };
  const std::vector<Entry> entries = {
      {1, "zero finding", [&](auto& r) { zero_finding(r); }},
      {2, "counting formula", [&](auto& r) { counting_formula(r, zeros); }},
      {3, "small-gap constant", [&](auto& r) { small_gap(r); }},
      {4, "Fejer multiplicity constant", [&](auto& r) { fejer_constant(r, zeros); }},
      {5, "form factor", [&](auto& r) { form_factor(r, zeros); }},
      {6, "pair-sum two-route identity", [&](auto& r) { two_route(r, zeros); }},
      {7, "form factor window bound", [&](auto& r) { lemma1(r, zeros); }},
      {8, "GUE model", [&](auto& r) { gue(r, zeros); }},
      {9, "explicit formula for psi", [&](auto& r) { explicit_psi(r, zeros, primes); }},
      {10, "Landau prime detection", [&](auto& r) { landau(r, zeros, primes); }},
      {11, "Montgomery formula", [&](auto& r) { montgomery(r, zeros, primes); }},
      {12, "twin sums", [&](auto& r) { twins(r, primes); }},
      {13, "short-interval moments", [&](auto& r) { short_interval(r, primes); }},
      {14, "S(T) statistics", [&](auto& r) { s_statistics(r, zeros, primes); }},
      {15, "determinism and formats", [&](auto& r) { determinism(r, data, scratch_dir); }},
  };
  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    if (!only.empty() && !only.contains(e.id)) continue;
    CriterionResult r;
    r.id = e.id;
    r.title = e.title;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.run(r);
    } catch (const std::exception& ex) {
      r.error = ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json to_json(const CriterionResult& result) {
  nlohmann::json j;
  j["id"] = result.id;
  j["title"] = result.title;
  j["status"] = result.pass() ? "pass" : "fail";
  j["expected_failure"] = expected_failures().contains(result.id);
  auto checks = nlohmann::json::array();
  for (const auto& c : result.checks)
    checks.push_back({{"what", c.what}, {"value", c.value}, {"bound", c.bound}, {"pass", c.pass}});
  j["checks"] = std::move(checks);
  auto reported = nlohmann::json::array();
  for (const auto& [name, v] : result.reported)
    reported.push_back({{"what", name}, {"value", v}, {"status", "reported"}});
  j["reported"] = std::move(reported);
  if (!result.error.empty()) j["error"] = result.error;
  return j;
}

}  // namespace pclab
