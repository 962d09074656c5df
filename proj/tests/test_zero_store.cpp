#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "oracles.hpp"
#include "pclab/error.hpp"
#include "pclab/zero_store.hpp"
#include "pclab/zeta.hpp"

using namespace pclab;
namespace fs = std::filesystem;

namespace {

const ZeroTable& zeros_2000() {
  static const ZeroTable z = find_zeros(2000.0);
  return z;
}

std::vector<double> as_vector(const ZeroTable& z) { return {z.ordinates().begin(), z.ordinates().end()}; }

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("pclab_zs_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::internal;
}

// Midpoint rule of g(S(t)) on (0, T] with an incremental zero pointer.
template <class G>
double moment_by_grid(const std::vector<double>& g, double T, double step, G f) {
  std::size_t k = 0;
  double acc = 0.0;
  const auto n = static_cast<std::size_t>(std::llround(T / step));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (i + 0.5) * step;
    while (k < g.size() && g[k] < t) ++k;
    acc += f(static_cast<double>(k) - oracle::smooth(t));
  }
  return acc * step;
}

}  // namespace

TEST_CASE("ingest plain ordinates") {
  TempDir d;
  const auto p = d.write("z.txt", "# header\n14.134725141734693\n  21.022039638771555\n\n25.010857580145689\n");
  const auto z = ingest(p, ZeroFileFormat::plain_ordinates, {.write_cache = false});
  CHECK(z.size() == 3);
  CHECK(z.ordinates()[1] == 21.022039638771555);
  CHECK(z.info().source == ZeroSource::file);
  CHECK(z.info().precision == doctest::Approx(1e-15));
}

TEST_CASE("ingest offset blocks") {
  TempDir d;
  const auto p = d.write("z.txt", "BASE 14\n0.134725141734693\n7.022039638771555\nBASE 25\n0.010857580145689\n");
  const auto z = ingest(p, ZeroFileFormat::offset_block, {.write_cache = false});
  REQUIRE(z.size() == 3);
  CHECK(z.ordinates()[0] == doctest::Approx(14.134725141734693).epsilon(1e-15));
  CHECK(z.ordinates()[2] == doctest::Approx(25.010857580145689).epsilon(1e-15));
  CHECK(kind_of([&] { ingest(d.write("y.txt", "0.5\n"), ZeroFileFormat::offset_block, {.write_cache = false}); }) ==
        ErrorKind::validation);
}

TEST_CASE("ingest rejects malformed tables") {
  TempDir d;
  const auto bad = d.write("bad.txt", "14.134725\n21.02\n20.5\n");
  try {
    ingest(bad, ZeroFileFormat::plain_ordinates, {.write_cache = false});
    FAIL("non-monotone table accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::validation);
    CHECK(std::string(e.what()).find("bad.txt:3") != std::string::npos);
  }
  CHECK(kind_of([&] { ingest(d.write("e.txt", "# nothing\n"), ZeroFileFormat::plain_ordinates, {.write_cache = false}); }) ==
        ErrorKind::empty_input);
  CHECK(kind_of([&] { ingest(d.write("w.txt", "2.5\n3.5\n"), ZeroFileFormat::plain_ordinates, {.write_cache = false}); }) ==
        ErrorKind::wrong_file);
  CHECK(kind_of([&] { ingest(d.write("n.txt", "14.1347\nabc\n"), ZeroFileFormat::plain_ordinates, {.write_cache = false}); }) ==
        ErrorKind::validation);
  CHECK(kind_of([&] { ingest(d.path / "missing.txt", ZeroFileFormat::plain_ordinates); }) == ErrorKind::io);
}

TEST_CASE("too many ordinates in a unit interval is rejected") {
  std::vector<double> g = {14.134725141734693};
  for (int i = 1; i <= 20; ++i) g.push_back(20.0 + 0.01 * i);
  CHECK(kind_of([&] { ZeroTable(g, 0, {}); }) == ErrorKind::validation);
}

TEST_CASE("binary cache round trip is exact") {
  TempDir d;
  const auto& z = zeros_2000();
  const auto p = d.path / "z.pclb";
  write_zero_cache(z, p);
  const auto back = load_zero_cache(p);
  REQUIRE(back.size() == z.size());
  CHECK(std::equal(z.ordinates().begin(), z.ordinates().end(), back.ordinates().begin()));
  CHECK(ingest(p, ZeroFileFormat::binary_cache).size() == z.size());

  // ingest writes a cache next to text sources
  const auto txt = d.write("t.txt", "14.134725141734693\n21.022039638771555\n");
  ingest(txt, ZeroFileFormat::plain_ordinates);
  CHECK(fs::exists(cache_path_for(txt)));
  CHECK(load_zero_cache(cache_path_for(txt)).size() == 2);
}

TEST_CASE("truncation keeps coverage honest") {
  const auto t = zeros_2000().truncated(1000.0);
  CHECK(t.size() == 649);
  CHECK(t.t_max() == 1000.0);
  CHECK(kind_of([&] { zeros_2000().truncated(3000.0); }) == ErrorKind::coverage);
  CHECK(kind_of([&] { s_moment(1500.0, 1, t); }) == ErrorKind::coverage);
}

TEST_CASE("counting function against brute force") {
  const auto g = as_vector(zeros_2000());
  for (double T : {14.0, 100.0, 500.5, 1999.0})
    CHECK(count_N(T, zeros_2000()) == oracle::count(g, T));
  CHECK(count_N(g[10], zeros_2000()) == 10.5);
  for (double T : {20.0, 333.3, 1500.0})
    CHECK(smooth_main_term(T) == doctest::Approx(oracle::smooth(T)).epsilon(1e-14));
  CHECK(count_N(100.0, zeros_2000()) == 29.0);
}

TEST_CASE("S(t) stays small at low height") {
  const auto c = s_curve(zeros_2000(), 20.0, 1000.0, 0.5);
  double worst = 0.0;
  for (double s : c.s) worst = std::max(worst, std::abs(s));
  CHECK(worst < 1.2);
  CHECK(std::abs(s_mean(2000.0, zeros_2000())) < 0.05);
}

TEST_CASE("S moments equal grid quadrature") {
  const auto g = as_vector(zeros_2000());
  for (int k : {1, 2}) {
    const auto m = s_moment(1500.0, k, zeros_2000());
    const double ref = moment_by_grid(g, 1500.0, 1e-3, [k](double s) { return std::pow(s, 2 * k); });
    CHECK(m.value == doctest::Approx(ref).epsilon(1e-3));
    CHECK(m.model == doctest::Approx(s_moment_coefficient(k) * 1500.0 * std::pow(std::log(std::log(1500.0)), k)));
  }
  CHECK(s_moment_coefficient(1) == doctest::Approx(1.0 / (2.0 * M_PI * M_PI)));
}

TEST_CASE("window variance equals grid quadrature") {
  const auto g = as_vector(zeros_2000());
  const double h = 0.75;
  const auto r = fujii_variance(1500.0, h, zeros_2000());
  std::size_t a = 0, b = 0;
  double acc = 0.0;
  const double step = 1e-3;
  for (std::size_t i = 0; i < 1'500'000; ++i) {
    const double t = (i + 0.5) * step;
    while (a < g.size() && g[a] < t) ++a;
    while (b < g.size() && g[b] < t + h) ++b;
    const double d = static_cast<double>(b - a) - (oracle::smooth(t + h) - oracle::smooth(t));
    acc += d * d;
  }
  CHECK(r.value == doctest::Approx(acc * step).epsilon(1e-3));
  CHECK(fujii_variance(1500.0, 0.0, zeros_2000()).value == 0.0);
  CHECK(std::isnan(fujii_variance(1500.0, 0.1, zeros_2000()).model));
}

TEST_CASE("sign changes against dense sampling") {
  const auto g = as_vector(zeros_2000());
  const double T = 600.0;
  std::size_t k = 0;
  int last = 0;
  std::uint64_t changes = 0;
  for (std::size_t i = 1; i <= 6'000'000; ++i) {
    const double t = i * 1e-4;
    while (k < g.size() && g[k] <= t) ++k;
    const double s = static_cast<double>(k) - oracle::smooth(t);
    const int sg = (s > 0) - (s < 0);
    if (sg != 0 && last != 0 && sg != last) ++changes;
    if (sg != 0) last = sg;
  }
  CHECK(sign_changes(T, zeros_2000()).count == changes);
}

TEST_CASE("unit interval density") {
  const auto d = unit_interval_density(zeros_2000());
  CHECK(d.max_count >= 2);
  CHECK(d.max_count <= 3 * std::log(2000.0));
  CHECK(d.max_ratio <= 3.0);
}
