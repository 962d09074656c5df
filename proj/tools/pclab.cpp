// pclab: command-line front end for the zero and prime computations.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pclab/acceptance.hpp"
#include "pclab/arith.hpp"
#include "pclab/config.hpp"
#include "pclab/error.hpp"
#include "pclab/explicit_formula.hpp"
#include "pclab/paircorr.hpp"
#include "pclab/series.hpp"
#include "pclab/zero_store.hpp"
#include "pclab/zeta.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pclab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitCoverage = 3;
constexpr int kExitIo = 4;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::coverage:
      return kExitCoverage;
    case ErrorKind::io:
      return kExitIo;
    case ErrorKind::internal:
    case ErrorKind::missed_zero:
      return 1;
    default:
      return kExitValidation;
  }
}

struct Context {
  RunConfig config;
  fs::path out_dir;
};

// Every artifact carries the exact configuration it was produced with.
void stamp(GridSeries& series, const Context& ctx, std::string_view command) {
  auto& meta = series.metadata();
  meta["command"] = command;
  meta["version"] = tool_version();
  meta["config_hash"] = ctx.config.hash_hex();
  meta["config"] = ctx.config.canonical();
}

json envelope(const Context& ctx, std::string_view command, json result) {
  json j;
  j["command"] = command;
  j["version"] = tool_version();
  j["config"] = ctx.config.to_json();
  j["config_hash"] = ctx.config.hash_hex();
  j["result"] = std::move(result);
  return j;
}

fs::path emit_report(const Context& ctx, std::string_view command, json result) {
  std::string name(command);
  for (char& c : name)
    if (c == '-') c = '_';
  const auto path = ctx.out_dir / (name + ".json");
  write_text(path, dump_json(envelope(ctx, command, std::move(result))));
  std::cout << "wrote " << path.string() << "\n";
  return path;
}

void emit_series(GridSeries& series, const Context& ctx, std::string_view command) {
  stamp(series, ctx, command);
  const auto fmt = ctx.config.text("format") == "json" ? OutputFormat::json : OutputFormat::csv;
  const auto path = write_series(series, ctx.out_dir, fmt);
  std::cout << "wrote " << path.string() << " (" << series.size() << " rows)\n";
}

json real_or_string(double v) { return std::isfinite(v) ? json(v) : json(format_real(v)); }

json complex_json(cplx z) { return json::array({real_or_string(z.real()), real_or_string(z.imag())}); }

json explicit_json(const ExplicitEvalReport& r) {
  return {{"x", r.x},
          {"s", complex_json(r.s)},
          {"lhs", complex_json(r.lhs)},
          {"rhs", complex_json(r.rhs)},
          {"residual", r.residual},
          {"zero_height", r.zero_height},
          {"prime_cutoff", r.prime_cutoff},
          {"truncation_estimate", r.truncation_estimate}};
}

fs::path zero_artifact(const Context& ctx) { return ctx.out_dir / "zeros.pclb"; }
fs::path sieve_artifact(const Context& ctx) { return ctx.out_dir / "sieve.pclb"; }

ZeroFileFormat detect_format(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open zero file: " + path.string());
  char magic[8] = {};
  in.read(magic, sizeof magic);
  if (in.gcount() == 8 && std::string_view(magic, 8) == "PCLBZR01") return ZeroFileFormat::binary_cache;
  in.clear();
  in.seekg(0);
  std::string line;
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    return line.compare(pos, 4, "BASE") == 0 ? ZeroFileFormat::offset_block
                                             : ZeroFileFormat::plain_ordinates;
  }
  return ZeroFileFormat::plain_ordinates;
}

ZeroFileFormat configured_format(const Context& ctx, const fs::path& file) {
  const auto& f = ctx.config.text("zero_format");
  return f == "auto" ? detect_format(file) : parse_zero_format(f);
}

ZeroTable load_zeros(const Context& ctx) {
  if (const auto& file = ctx.config.text("zero_file"); !file.empty()) {
    const fs::path p(file);
    require(fs::exists(p), ErrorKind::coverage, "zero file " + file + " not found");
    return ingest(p, configured_format(ctx, p), {.write_cache = false});
  }
  const auto art = zero_artifact(ctx);
  require(fs::exists(art), ErrorKind::coverage,
          "no zero table in " + ctx.out_dir.string() +
              ": run `pclab zeros-ingest <file>` (or `pclab zeros-compute`) first");
  return load_zero_cache(art);
}

PrimeTable load_primes(const Context& ctx, std::uint64_t needed = 0) {
  const auto limit = std::max<std::uint64_t>(ctx.config.integer("sieve_limit"), needed);
  if (fs::exists(sieve_artifact(ctx))) {
    PrimeTable t = load_sieve_cache(sieve_artifact(ctx));
    if (t.limit() >= limit) return t;
  }
  return sieve_build(limit);
}

double height(const Context& ctx, const ZeroTable& zeros) {
  const double T = ctx.config.real("height");
  if (T == 0.0) return zeros.t_max();
  require(T <= zeros.t_max(), ErrorKind::coverage,
          "height " + format_real(T) + " above zero table coverage " + format_real(zeros.t_max()));
  return T;
}

json table_summary(const ZeroTable& z) {
  const auto d = unit_interval_density(z);
  return {{"count", z.size()},
          {"first", z.ordinates().front()},
          {"last", z.ordinates().back()},
          {"t_max", z.t_max()},
          {"format", std::string(to_string(z.info().format))},
          {"precision", z.info().precision},
          {"max_per_unit_interval", d.max_count},
          {"densest_interval_top", d.height}};
}

// ---- subcommands ----

void cmd_sieve(const Context& ctx) {
  const auto limit = static_cast<std::uint64_t>(ctx.config.integer("sieve_limit"));
  const PrimeTable t = sieve_build(limit);
  write_sieve_cache(t, sieve_artifact(ctx));
  emit_report(ctx, "sieve",
              {{"limit", limit},
               {"prime_count", t.primes().size()},
               {"prime_powers", t.prime_powers().size()},
               {"psi_at_limit", t.psi(static_cast<double>(limit))},
               {"memory_estimate_bytes", sieve_memory_estimate(limit)},
               {"cache", sieve_artifact(ctx).string()}});
}

void cmd_zeros_compute(const Context& ctx) {
  double T = ctx.config.real("height");
  if (T == 0.0) T = 1e4;
  ZeroSearchOptions options;
  options.height_cap = ctx.config.real("height_cap");
  const ZeroTable z = find_zeros(T, ctx.config.real("tolerance"), options);
  write_zero_cache(z, zero_artifact(ctx));
  json r = table_summary(z);
  r["tolerance"] = ctx.config.real("tolerance");
  emit_report(ctx, "zeros-compute", r);
}

void cmd_zeros_ingest(const Context& ctx, const fs::path& file) {
  const ZeroTable z = ingest(file, configured_format(ctx, file));
  write_zero_cache(z, zero_artifact(ctx));
  json r = table_summary(z);
  r["source"] = file.string();
  emit_report(ctx, "zeros-ingest", r);
}

std::vector<double> alpha_grid(const Context& ctx) {
  return uniform_grid(0.0, ctx.config.real("alpha_max"), ctx.config.real("alpha_step"));
}

void cmd_falpha(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const auto F = f_alpha(z, height(ctx, z), alpha_grid(ctx), ctx.config.real("cutoff"),
                         ctx.config.real("tail_tolerance"));
  GridSeries s("falpha", {"alpha", "F"});
  for (std::size_t i = 0; i < F.alpha.size(); ++i) s.add_row({F.alpha[i], F.F[i]});
  s.metadata()["T"] = format_real(F.T);
  s.metadata()["cutoff"] = format_real(F.cutoff);
  s.metadata()["normalization"] = format_real(F.normalization);
  s.metadata()["tail_bound"] = format_real(F.tail_bound);
  s.metadata()["tail_warning"] = F.tail_warning ? "true" : "false";
  emit_series(s, ctx, "falpha");
  if (F.tail_warning) std::cerr << "warning: tail bound " << F.tail_bound << " above tolerance\n";
}

void cmd_pairsum(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const bool fejer = ctx.config.text("pair") == "fejer";
  const FourierPair pair = fejer ? fejer_pair(ctx.config.real("lambda")) : selberg_minorant_pair();
  const auto r = pair_sum(z, height(ctx, z), pair, ctx.config.real("cutoff"), ctx.config.real("alpha_step"));
  emit_report(ctx, "pairsum",
              {{"pair", pair.name},
               {"T", height(ctx, z)},
               {"direct", r.direct},
               {"transform", real_or_string(r.transform)},
               {"normalized_direct", r.normalized_direct},
               {"normalized_transform", real_or_string(r.normalized_transform)},
               {"relative_difference", real_or_string(r.relative_difference)},
               {"tail_bound", r.tail_bound}});
}

void cmd_pcc_hist(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double beta_max = ctx.config.real("beta_max");
  const auto scale = ctx.config.text("scale") == "unfolded" ? SpacingScale::unfolded : SpacingScale::asymptotic;
  const auto h = pcc_histogram(z, height(ctx, z), beta_max, static_cast<int>(ctx.config.integer("bins")),
                               scale, ctx.config.flag("weighted"));
  const auto cum = h.cumulative();
  GridSeries s("pcc_hist", {"beta", "density", "cumulative", "gue_cdf"});
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double width = h.edges[i + 1] - h.edges[i];
    s.add_row({h.edges[i + 1], h.counts[i] / width, cum[i], gue_model(h.edges[i + 1])});
  }
  const auto cmp = compare_with_gue(h, beta_max);
  s.metadata()["T"] = format_real(h.T);
  s.metadata()["sup_deviation"] = format_real(cmp.sup_deviation);
  s.metadata()["sup_deviation_at"] = format_real(cmp.at_beta);
  emit_series(s, ctx, "pcc-hist");
}

void cmd_gue_model(const Context& ctx) {
  const double beta_max = ctx.config.real("beta_max");
  const auto bins = ctx.config.integer("bins");
  GridSeries s("gue_model", {"beta", "gue_cdf"});
  for (std::int64_t i = 0; i < bins; ++i) {
    const double b = bins == 1 ? 0.0 : beta_max * static_cast<double>(i) / static_cast<double>(bins - 1);
    s.add_row({b, gue_model(b)});
  }
  s.metadata()["sinc2_total_integral"] = format_real(sinc2_total_integral());
  emit_series(s, ctx, "gue-model");
}

void cmd_small_gap(const Context& ctx) {
  const double lam = small_gap_threshold();
  std::cout << "lambda_star=" << format_real(lam) << "\n";
  emit_report(ctx, "small-gap", {{"lambda_star", lam}, {"g_at_root", small_gap_function(lam)}});
}

void cmd_lemma1(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const auto F = f_alpha(z, height(ctx, z), uniform_grid(0.0, 3.0, ctx.config.real("alpha_step")),
                         ctx.config.real("cutoff"), ctx.config.real("tail_tolerance"));
  GridSeries s("lemma1", {"B", "window_integral"});
  for (double B = 0.0; B <= 2.0 + 1e-12; B += 0.25) s.add_row({B, lemma1_window(F, B)});
  s.metadata()["T"] = format_real(F.T);
  s.metadata()["bound"] = "3";
  emit_series(s, ctx, "lemma1");
}

void cmd_psi_explicit(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double T = height(ctx, z);
  const double x0 = ctx.config.real("x_min");
  const double x1 = ctx.config.real("x_max");
  const auto n = ctx.config.integer("x_count");
  require(x0 > 1.0 && x1 >= x0, ErrorKind::invalid_argument, "psi-explicit needs 1 < x_min <= x_max");
  const PrimeTable p = load_primes(ctx, static_cast<std::uint64_t>(x1) + 1);
  GridSeries s("psi_explicit", {"x", "psi0_from_zeros", "psi0_sieve", "residual", "truncation_estimate"});
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = n == 1 ? x0 : x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(n - 1);
    const auto r = psi_from_zeros(x, z, T, p);
    s.add_row({x, r.lhs.real(), r.rhs.real(), r.residual, r.truncation_estimate});
  }
  s.metadata()["T"] = format_real(T);
  emit_series(s, ctx, "psi-explicit");
}

void cmd_landau(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double T = height(ctx, z);
  const double x0 = ctx.config.real("x_min");
  const double x1 = ctx.config.real("x_max");
  const double step = ctx.config.real("x_step");
  require(x0 > 1.0 && x1 >= x0, ErrorKind::invalid_argument, "landau needs 1 < x_min <= x_max");
  GridSeries s("landau", {"x", "lambda_hat"});
  const auto n = static_cast<std::int64_t>(std::floor((x1 - x0) / step + 1e-9));
  for (std::int64_t i = 0; i <= n; ++i) {
    const double x = x0 + step * static_cast<double>(i);
    s.add_row({x, landau_detect(x, z, T)});
  }
  s.metadata()["T"] = format_real(T);
  emit_series(s, ctx, "landau");
}

void cmd_montgomery(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const PrimeTable p = load_primes(ctx);
  MontgomeryOptions o;
  o.zero_height = height(ctx, z);
  o.prime_cutoff = static_cast<std::uint64_t>(ctx.config.real("prime_cutoff"));
  const auto r = montgomery_formula(ctx.config.real("x"), ctx.config.real("t"), z, p, o);
  json j = explicit_json(r.report);
  j["rhs_exact"] = complex_json(r.rhs_exact);
  j["residual_exact"] = r.residual_exact;
  j["zero_tail_bound"] = r.zero_tail_bound;
  j["prime_tail"] = complex_json(r.prime_tail);
  emit_report(ctx, "montgomery", j);
}

void cmd_s_of_t(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const auto c = s_curve(z, ctx.config.real("t_min"), ctx.config.real("t_max"), ctx.config.real("grid_step"));
  GridSeries s("s_of_t", {"t", "S"});
  for (std::size_t i = 0; i < c.t.size(); ++i) s.add_row({c.t[i], c.s[i]});
  emit_series(s, ctx, "s-of-t");
}

void cmd_fujii(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double T = height(ctx, z);
  const auto r = fujii_variance(T, ctx.config.real("window"), z);
  emit_report(ctx, "fujii",
              {{"T", T},
               {"h", ctx.config.real("window")},
               {"value", r.value},
               {"model", real_or_string(r.model)},
               {"ratio", real_or_string(r.ratio)},
               {"upper_shape", r.upper_shape}});
}

void cmd_s_moments(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double T = height(ctx, z);
  GridSeries s("s_moments", {"k", "value", "model", "ratio"});
  for (std::int64_t k = 1; k <= ctx.config.integer("k_max"); ++k) {
    const auto m = s_moment(T, static_cast<int>(k), z);
    s.add_row({static_cast<double>(k), m.value, m.model, m.ratio});
  }
  s.metadata()["T"] = format_real(T);
  emit_series(s, ctx, "s-moments");
}

void cmd_sign_changes(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double T = height(ctx, z);
  const auto r = sign_changes(T, z);
  emit_report(ctx, "sign-changes", {{"T", T}, {"count", r.count}, {"model", r.model}, {"ratio", r.ratio}});
}

void cmd_selberg_approx(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double x = ctx.config.real("x");
  const PrimeTable p = load_primes(ctx, static_cast<std::uint64_t>(std::ceil(x * x)));
  const SelbergApprox approx(x, p);
  const auto ts = uniform_grid(ctx.config.real("t_min"), ctx.config.real("t_max"), ctx.config.real("grid_step"));
  GridSeries s("selberg_approx", {"t", "approx", "S", "error_sum", "error_log"});
  for (double t : ts) {
    require(x <= t * t, ErrorKind::domain, "selberg-approx needs x <= t^2 on the whole grid");
    const auto v = approx(t);
    s.add_row({t, v.value, s_of_t(t, z), v.error_sum, v.error_log});
  }
  s.metadata()["x"] = format_real(x);
  s.metadata()["sigma1"] = format_real(approx.sigma1());
  emit_series(s, ctx, "selberg-approx");
}

void cmd_logderiv_check(const Context& ctx) {
  const ZeroTable z = load_zeros(ctx);
  const double x = ctx.config.real("x");
  const PrimeTable p = load_primes(ctx, static_cast<std::uint64_t>(std::ceil(x * x)));
  const cplx s(ctx.config.real("sigma"), ctx.config.real("t"));
  emit_report(ctx, "logderiv-check", explicit_json(smoothed_logderiv_check(s, x, z, p, height(ctx, z))));
}

void cmd_twin(const Context& ctx) {
  const auto n_max = static_cast<std::uint64_t>(ctx.config.integer("n_max"));
  const auto k_max = ctx.config.integer("k_max");
  const PrimeTable p = load_primes(ctx, n_max + static_cast<std::uint64_t>(k_max));
  const SingularSeriesTable series;
  GridSeries s("twin", {"k", "sum", "singular_series", "ratio"});
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const auto r = twin_sum(n_max, k, p, series);
    s.add_row({static_cast<double>(k), r.sum, r.singular_series, r.ratio});
  }
  s.metadata()["N"] = std::to_string(n_max);
  s.metadata()["twin_constant"] = format_real(series.twin_constant());
  emit_series(s, ctx, "twin");
}

void cmd_interval_moment(const Context& ctx) {
  const auto X = static_cast<std::uint64_t>(ctx.config.integer("X"));
  double delta = ctx.config.real("delta");
  if (delta == 0.0) delta = 1.0 / std::sqrt(static_cast<double>(X));
  const double h = ctx.config.real("window");
  const PrimeTable p = load_primes(ctx, static_cast<std::uint64_t>(std::ceil((1.0 + delta) * X + h)) + 1);
  const auto rel = interval_second_moment(X, delta, p);
  const auto fixed = fixed_interval_second_moment(X, h, p);
  const auto part = [](const MomentResult& m) {
    return json{{"value", m.value}, {"model", m.model}, {"ratio", real_or_string(m.ratio)}, {"degenerate", m.degenerate}};
  };
  emit_report(ctx, "interval-moment",
              {{"X", X}, {"delta", delta}, {"h", h}, {"relative", part(rel)}, {"fixed", part(fixed)}});
}

void cmd_gaps(const Context& ctx) {
  const PrimeTable p = load_primes(ctx);
  const auto g = prime_gap_scan(p);
  GridSeries s("gaps", {"prime", "gap", "gap_over_sqrt_p_log2_p", "gap_over_sqrt_p_log_p", "gap_over_log2_p"});
  for (const auto& r : g.maximal_gaps)
    s.add_row({static_cast<double>(r.prime), static_cast<double>(r.gap), r.ratio_sqrt_log2, r.ratio_sqrt_log, r.ratio_log2});
  s.metadata()["min_prime"] = std::to_string(g.min_prime);
  s.metadata()["max_ratio_sqrt_log2"] = format_real(g.max_ratio_sqrt_log2);
  s.metadata()["max_ratio_sqrt_log"] = format_real(g.max_ratio_sqrt_log);
  s.metadata()["max_ratio_log2"] = format_real(g.max_ratio_log2);
  emit_series(s, ctx, "gaps");
}

int cmd_report(const Context& ctx) {
  ReferenceData data;
  data.zeros = load_zeros(ctx);
  data.zeros_origin = ctx.config.text("zero_file").empty() ? zero_artifact(ctx).string() : ctx.config.text("zero_file");
  data.primes = load_primes(ctx, kReferenceSieveLimit);
  const auto results = run_acceptance(data, ctx.out_dir / "scratch");
  std::error_code ec;
  fs::remove_all(ctx.out_dir / "scratch", ec);
  json criteria = json::array();
  int passed = 0;
  for (const auto& r : results) {
    std::cout << r.summary_line() << "\n";
    passed += r.pass();
    criteria.push_back(to_json(r));
  }
  emit_report(ctx, "report",
              {{"zeros", data.zeros_origin},
               {"zero_count", data.zeros.size()},
               {"criteria", criteria},
               {"pass_count", passed},
               {"fail_count", static_cast<int>(results.size()) - passed},
               {"total", results.size()}});
  return kExitOk;
}

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<std::string> keys;
};

std::string flag_for(const std::string& key) {
  std::string f = "--" + key;
  for (char& c : f)
    if (c == '_') c = '-';
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pclab: zeta zeros, pair correlation and explicit formulas"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  app.add_option("--config", config_file, "key = value configuration file");
  const std::vector<std::string> global_keys = {"output_dir", "format", "zero_file", "zero_format", "sieve_limit"};
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : global_keys)
    options[key] = app.add_option(flag_for(key), values[key], find_config_key(key)->help);

  const std::vector<Subcommand> subs = {
      {"sieve", "build and cache the prime sieve", {}},
      {"zeros-compute", "compute zeros up to a height", {"height", "tolerance", "height_cap"}},
      {"zeros-ingest", "validate and cache a zero table", {}},
      {"falpha", "form factor F(alpha)", {"height", "cutoff", "alpha_max", "alpha_step", "tail_tolerance"}},
      {"pairsum", "pair sum by both routes", {"height", "cutoff", "alpha_step", "lambda", "pair"}},
      {"pcc-hist", "normalized spacing histogram", {"height", "beta_max", "bins", "scale", "weighted"}},
      {"gue-model", "GUE pair correlation cdf", {"beta_max", "bins"}},
      {"small-gap", "small-gap threshold", {}},
      {"lemma1", "form factor window integrals", {"height", "cutoff", "alpha_step", "tail_tolerance"}},
      {"psi-explicit", "psi from zeros against the sieve", {"height", "x_min", "x_max", "x_count"}},
      {"landau", "prime-detecting zero sum", {"height", "x_min", "x_max", "x_step"}},
      {"montgomery", "two-sided explicit formula", {"height", "x", "t", "prime_cutoff"}},
      {"s-of-t", "S(t) on a grid", {"t_min", "t_max", "grid_step"}},
      {"fujii", "variance of zero counts in windows", {"height", "window"}},
      {"s-moments", "moments of S(t)", {"height", "k_max"}},
      {"sign-changes", "sign changes of S(t)", {"height"}},
      {"selberg-approx", "Dirichlet polynomial approximation of S(t)", {"x", "t_min", "t_max", "grid_step"}},
      {"logderiv-check", "smoothed explicit formula for zeta'/zeta", {"height", "x", "sigma", "t"}},
      {"twin", "shifted von Mangoldt correlations", {"n_max", "k_max"}},
      {"interval-moment", "short-interval psi moments", {"X", "delta", "window"}},
      {"gaps", "prime gap scan", {}},
      {"report", "evaluate all acceptance criteria", {}},
  };

  std::map<std::string, std::map<std::string, std::string>> sub_values;
  std::map<std::string, std::map<std::string, CLI::Option*>> sub_options;
  std::map<std::string, CLI::App*> apps;
  std::string ingest_file;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    apps[s.name] = sub;
    for (const auto& key : s.keys)
      sub_options[s.name][key] = sub->add_option(flag_for(key), sub_values[s.name][key], find_config_key(key)->help);
  }
  apps["zeros-ingest"]->add_option("file", ingest_file, "zero ordinate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    Context ctx;
    if (!config_file.empty()) ctx.config = load_config(config_file);
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) ctx.config.set(key, values[key]);
    std::string command;
    for (const auto& s : subs) {
      if (!apps[s.name]->parsed()) continue;
      command = s.name;
      for (const auto& [key, opt] : sub_options[s.name])
        if (opt->count() > 0) ctx.config.set(key, sub_values[s.name][key]);
    }
    ctx.out_dir = ctx.config.text("output_dir");
    fs::create_directories(ctx.out_dir);

    const std::map<std::string, std::function<void(const Context&)>> handlers = {
        {"sieve", cmd_sieve},
        {"zeros-compute", cmd_zeros_compute},
        {"zeros-ingest", [&](const Context& c) { cmd_zeros_ingest(c, ingest_file); }},
        {"falpha", cmd_falpha},
        {"pairsum", cmd_pairsum},
        {"pcc-hist", cmd_pcc_hist},
        {"gue-model", cmd_gue_model},
        {"small-gap", cmd_small_gap},
        {"lemma1", cmd_lemma1},
        {"psi-explicit", cmd_psi_explicit},
        {"landau", cmd_landau},
        {"montgomery", cmd_montgomery},
        {"s-of-t", cmd_s_of_t},
        {"fujii", cmd_fujii},
        {"s-moments", cmd_s_moments},
        {"sign-changes", cmd_sign_changes},
        {"selberg-approx", cmd_selberg_approx},
        {"logderiv-check", cmd_logderiv_check},
        {"twin", cmd_twin},
        {"interval-moment", cmd_interval_moment},
        {"gaps", cmd_gaps},
    };
    if (command == "report") return cmd_report(ctx);
    handlers.at(command)(ctx);
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "pclab: " << to_string(e.kind()) << ": " << e.what() << "\n";
    if (e.kind() == ErrorKind::coverage)
      std::cerr << "pclab: extend the table with `pclab zeros-ingest <file>` or `pclab zeros-compute`\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "pclab: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "pclab: " << e.what() << "\n";
    return 1;
  }
}
