#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

#include "binary_io.hpp"
#include "pclab/error.hpp"
#include "pclab/zero_store.hpp"

namespace pclab {
namespace {

constexpr char kZeroMagic[8] = {'P', 'C', 'L', 'B', 'Z', 'R', '0', '1'};

std::string fmt_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::string_view to_string(ZeroFileFormat f) {
  switch (f) {
    case ZeroFileFormat::plain_ordinates: return "plain-ordinates";
    case ZeroFileFormat::offset_block: return "offset-block";
    case ZeroFileFormat::binary_cache: return "binary-cache";
  }
  return "unknown";
}

ZeroFileFormat parse_zero_format(std::string_view name) {
  if (name == "plain-ordinates" || name == "plain") return ZeroFileFormat::plain_ordinates;
  if (name == "offset-block" || name == "offset") return ZeroFileFormat::offset_block;
  if (name == "binary-cache" || name == "binary" || name == "pclb") return ZeroFileFormat::binary_cache;
  fail(ErrorKind::invalid_argument, "unknown zero file format: " + std::string(name));
}

ZeroTable::ZeroTable(std::vector<double> ordinates, double t_max, Info info,
                     std::vector<std::uint32_t> multiplicities)
    : ordinates_(std::move(ordinates)), info_(std::move(info)) {
  require(!ordinates_.empty(), ErrorKind::empty_input, "zero table is empty");
  const double first = ordinates_.front();
  require(first >= 14.13 && first <= 14.14, ErrorKind::wrong_file,
          "first ordinate " + fmt_double(first) + " is not the first zeta zero (14.1347...)");
  for (std::size_t i = 1; i < ordinates_.size(); ++i) {
    require(ordinates_[i] > ordinates_[i - 1], ErrorKind::validation,
            "ordinate #" + std::to_string(i + 1) + " (" + fmt_double(ordinates_[i]) +
                ") does not exceed the previous one");
  }
  if (!multiplicities.empty()) {
    require(multiplicities.size() == ordinates_.size(), ErrorKind::validation,
            "multiplicity count differs from ordinate count");
    bool simple = true;
    for (auto m : multiplicities) {
      require(m >= 1, ErrorKind::validation, "multiplicity must be positive");
      simple = simple && m == 1;
    }
    if (!simple) {
      multiplicities_ = std::move(multiplicities);
      prefix_.resize(ordinates_.size() + 1, 0);
      for (std::size_t i = 0; i < ordinates_.size(); ++i) {
        prefix_[i + 1] = prefix_[i] + multiplicities_[i];
      }
    }
  }
  t_max_ = t_max > 0.0 ? t_max : ordinates_.back();
  require(t_max_ >= ordinates_.back(), ErrorKind::validation,
          "coverage height below the last ordinate");

  const DensityReport dens = unit_interval_density(*this, 0.0);
  const double cap = 3.0 * std::log(std::max(t_max_, 20.0));
  require(static_cast<double>(dens.max_count) <= cap, ErrorKind::validation,
          std::to_string(dens.max_count) + " ordinates in a unit interval near " +
              fmt_double(dens.height) + " exceeds 3 log T_max");
  if (t_max_ >= 1000.0) {
    const double rel = count_N(t_max_, *this) / smooth_main_term(t_max_) - 1.0;
    require(std::abs(rel) < 0.01, ErrorKind::validation,
            "zero count at T_max deviates from the counting formula by " +
                fmt_double(100.0 * rel) + "%; table incomplete?");
  }
}

ZeroTable ZeroTable::truncated(double T) const {
  require(T <= t_max_, ErrorKind::coverage, "truncation height above table coverage");
  const auto end = std::upper_bound(ordinates_.begin(), ordinates_.end(), T);
  const auto n = static_cast<std::size_t>(end - ordinates_.begin());
  std::vector<double> ord(ordinates_.begin(), end);
  std::vector<std::uint32_t> mult;
  if (!multiplicities_.empty()) mult.assign(multiplicities_.begin(), multiplicities_.begin() + n);
  return ZeroTable(std::move(ord), T, info_, std::move(mult));
}

std::filesystem::path cache_path_for(const std::filesystem::path& source) {
  auto p = source;
  p += ".pclb";
  return p;
}

void write_zero_cache(const ZeroTable& table, const std::filesystem::path& path) {
  // count, coverage height and claimed precision (doubles as raw bits)
  const std::vector<std::uint64_t> header = {table.size(), std::bit_cast<std::uint64_t>(table.t_max()),
                                             std::bit_cast<std::uint64_t>(table.info().precision)};
  detail::write_blob(path, kZeroMagic, header, std::as_bytes(table.ordinates()));
}

ZeroTable load_zero_cache(const std::filesystem::path& path) {
  std::vector<std::uint64_t> header;
  std::vector<std::byte> payload;
  detail::read_blob(path, kZeroMagic, 3, header, payload);
  require(header[0] * sizeof(double) == payload.size(), ErrorKind::validation,
          "zero cache payload size mismatch: " + path.string());
  std::vector<double> ord(header[0]);
  std::memcpy(ord.data(), payload.data(), payload.size());
  ZeroTable::Info info{ZeroSource::file, path, ZeroFileFormat::binary_cache,
                       std::bit_cast<double>(header[2])};
  return ZeroTable(std::move(ord), std::bit_cast<double>(header[1]), std::move(info));
}

ZeroTable ingest(const std::filesystem::path& path, ZeroFileFormat format,
                 const IngestOptions& options) {
  if (format == ZeroFileFormat::binary_cache) return load_zero_cache(path);

  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open zero file: " + path.string());

  std::vector<double> ord;
  std::string line;
  std::size_t line_no = 0;
  bool have_base = false;
  double base = 0.0;
  double precision = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);

    if (format == ZeroFileFormat::offset_block && s.starts_with("BASE")) {
      const auto arg = trim(s.substr(4));
      require(parse_real(arg, base), ErrorKind::validation, where + ": malformed BASE line");
      have_base = true;
      continue;
    }
    double v = 0.0;
    require(parse_real(s, v), ErrorKind::validation,
            where + ": not a decimal number: '" + std::string(s) + "'");
    if (format == ZeroFileFormat::offset_block) {
      require(have_base, ErrorKind::validation, where + ": offset before any BASE line");
      v += base;
    }
    require(v > 0.0, ErrorKind::validation, where + ": ordinate must be positive");
    if (!ord.empty() && v <= ord.back()) {
      fail(ErrorKind::validation, where + ": ordinate " + fmt_double(v) +
                                      " does not exceed previous " + fmt_double(ord.back()));
    }
    // digits after the decimal point bound the stored precision
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
      precision = std::max(precision, 0.5 * std::pow(10.0, -static_cast<double>(s.size() - dot - 1)));
    }
    ord.push_back(v);
  }
  require(!ord.empty(), ErrorKind::empty_input, "no ordinates in " + path.string());

  ZeroTable::Info info{ZeroSource::file, path, format, precision};
  ZeroTable table(std::move(ord), 0.0, std::move(info));
  if (options.write_cache) write_zero_cache(table, cache_path_for(path));
  return table;
}

}  // namespace pclab
