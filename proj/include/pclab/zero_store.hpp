#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pclab {

enum class ZeroSource { computed, file };
enum class ZeroFileFormat { plain_ordinates, offset_block, binary_cache };

std::string_view to_string(ZeroFileFormat f);
ZeroFileFormat parse_zero_format(std::string_view name);

// Ascending positive ordinates of critical-line zeros. Validated on
// construction and immutable afterwards.
class ZeroTable {
 public:
  struct Info {
    ZeroSource source = ZeroSource::computed;
    std::filesystem::path path;
    ZeroFileFormat format = ZeroFileFormat::plain_ordinates;
    double precision = 0.0;  // claimed absolute error per ordinate
  };

  ZeroTable() = default;
  // t_max <= 0 means "up to the last ordinate". Multiplicities default to 1.
  ZeroTable(std::vector<double> ordinates, double t_max, Info info,
            std::vector<std::uint32_t> multiplicities = {});

  std::span<const double> ordinates() const { return ordinates_; }
  std::size_t size() const { return ordinates_.size(); }
  bool empty() const { return ordinates_.empty(); }
  double t_max() const { return t_max_; }
  const Info& info() const { return info_; }
  std::uint32_t multiplicity(std::size_t i) const {
    return multiplicities_.empty() ? 1u : multiplicities_[i];
  }
  bool all_simple() const { return multiplicities_.empty(); }

  // Zeros counted with multiplicity among the first k ordinates.
  std::uint64_t weight_before(std::size_t k) const {
    return prefix_.empty() ? k : prefix_[k];
  }

  // Ordinates <= T, with coverage T (T must not exceed t_max()).
  ZeroTable truncated(double T) const;

 private:
  std::vector<double> ordinates_;
  std::vector<std::uint32_t> multiplicities_;
  std::vector<std::uint64_t> prefix_;
  double t_max_ = 0.0;
  Info info_;
};

struct IngestOptions {
  bool write_cache = true;
};

ZeroTable ingest(const std::filesystem::path& path, ZeroFileFormat format,
                 const IngestOptions& options = {});

std::filesystem::path cache_path_for(const std::filesystem::path& source);
void write_zero_cache(const ZeroTable& table, const std::filesystem::path& path);
ZeroTable load_zero_cache(const std::filesystem::path& path);

// N(T) with the half-weight convention at exact hits.
double count_N(double T, const ZeroTable& table);

// (T/2pi) log(T/(2pi e)) + 7/8.
double smooth_main_term(double T);

// S(T) = N(T) - smooth_main_term(T); needs 20 <= T <= t_max.
double s_of_t(double T, const ZeroTable& table);

struct SCurve {
  std::vector<double> t;
  std::vector<double> s;
};

SCurve s_curve(const ZeroTable& table, double t0, double t1, double step);

// (1/T) int_0^T S(t) dt.
double s_mean(double T, const ZeroTable& table, double grid_step = 0.01);

struct FujiiResult {
  double value = 0.0;
  double model = 0.0;  // (T/pi^2) log(h log T), or NaN when h log T <= e
  double ratio = 0.0;
  double upper_shape = 0.0;  // T log(2 + h log T)
};

FujiiResult fujii_variance(double T, double h, const ZeroTable& table, double grid_step = 0.01);

struct MomentReport {
  double value = 0.0;
  double model = 0.0;
  double ratio = 0.0;
};

// (2k)! / (k! (2pi)^(2k))
double s_moment_coefficient(int k);
MomentReport s_moment(double T, int k, const ZeroTable& table, double grid_step = 0.01);

struct SignChangeReport {
  std::uint64_t count = 0;
  double model = 0.0;  // T log T / sqrt(pi log log T)
  double ratio = 0.0;
};

// Sign changes of S on (0, T]. Exact: S is monotone between jumps apart from
// the turning point of the smooth term at 2pi, so piece endpoints suffice.
SignChangeReport sign_changes(double T, const ZeroTable& table);

struct DensityReport {
  std::uint64_t max_count = 0;  // most ordinates in any closed unit interval
  double height = 0.0;          // upper end of that interval
  double max_ratio = 0.0;       // max over windows of count / log(height)
};

DensityReport unit_interval_density(const ZeroTable& table, double t_min = 20.0);

}  // namespace pclab
