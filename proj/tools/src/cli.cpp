#include "kreisslab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "kreisslab/bounds.hpp"
#include "kreisslab/errors.hpp"
#include "kreisslab/experiments.hpp"
#include "kreisslab/kreiss.hpp"
#include "kreisslab/parallel.hpp"
#include "kreisslab/symbols.hpp"

namespace kreisslab::cli {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  double p = 2.0;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out;
  bool json = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--trials", c.trials, "Random trials");
  cmd->add_option("--out", c.out, "Write the report to FILE instead of stdout");
  cmd->add_flag("--json", c.json, "JSON report instead of CSV");
  cmd->add_option("--threads", c.threads, "Worker threads (default: KREISSLAB_THREADS or 1)");
}

int threads_of(const Common& c) { return c.threads > 0 ? c.threads : threads_from_environment(1); }

// Infinite values are not representable in JSON numbers.
ordered_json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

ordered_json envelope(std::string_view command, ordered_json config, std::string_view anchor) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["anchor"] = anchor;
  return j;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t to_int(std::string_view s) {
  const auto t = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    throw std::invalid_argument(fmt::format("'{}' is not an integer", s));
  return v;
}

double to_real(std::string_view s) {
  const auto t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(fmt::format("'{}' is not a number", s));
  }
  if (used != t.size()) throw std::invalid_argument(fmt::format("'{}' is not a number", s));
  return v;
}

template <class T, class F>
std::vector<T> split(std::string_view text, F convert) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(convert(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::int64_t> int_list_option(const std::string& text, std::string_view flag) {
  try {
    return parse_int_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{}: {}", flag, e.what()));
  }
}

std::vector<double> real_list_option(const std::string& text, std::string_view flag) {
  try {
    return parse_real_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{}: {}", flag, e.what()));
  }
}

// ---- growth ---------------------------------------------------------------

struct GrowthArgs {
  Common common;
  double a = 0.5;
  std::string n = "16..4096";
  double tol = 1e-12;
  bool log_correction = false;
  bool no_higham = false;
  int restarts = 8;
};

std::string growth(const GrowthArgs& g) {
  const double p = g.common.p;
  if (!(p >= 1.0)) throw UsageError(fmt::format("--p {} is below 1", p));
  if (!(g.a >= 0.0 && g.a < 1.0)) throw UsageError(fmt::format("--a {} is outside [0, 1)", g.a));
  const auto Ns = int_list_option(g.n, "--n");

  experiments::GrowthOptions opts;
  opts.bracket.use_higham = !g.no_higham;
  opts.bracket.restarts = g.restarts;
  opts.bracket.seed = g.common.seed;
  opts.threads = threads_of(g.common);
  const auto series = experiments::growth_experiment(g.a, p, Ns, g.tol, opts);

  if (!g.common.json) {
    std::string csv = "N,lower,upper,method_lower,method_upper\n";
    for (const auto& e : series.entries)
      csv += fmt::format("{},{},{},{},{}\n", e.N, e.bracket.lower, e.bracket.upper, e.bracket.lower_method,
                         e.bracket.upper_method);
    return csv;
  }
  ordered_json cfg;
  cfg["a"] = g.a;
  cfg["p"] = num(p);
  cfg["n"] = Ns;
  cfg["tol"] = g.tol;
  cfg["seed"] = g.common.seed;
  cfg["use_higham"] = !g.no_higham;
  cfg["restarts"] = g.restarts;
  cfg["log_correction"] = g.log_correction;
  auto j = envelope("growth", cfg, "N^{|1/2-1/p|}/C_p <= ||q_a(S)^N||_p <= C_p N^{|1/2-1/p|}");
  j["operator"] = series.descriptor;
  j["entries"] = ordered_json::array();
  for (const auto& e : series.entries)
    j["entries"].push_back({{"N", e.N},
                            {"lower", num(e.bracket.lower)},
                            {"upper", num(e.bracket.upper)},
                            {"method_lower", e.bracket.lower_method},
                            {"method_upper", e.bracket.upper_method}});
  j["tau_p"] = std::abs(0.5 - (std::isinf(p) ? 0.0 : 1.0 / p));
  ordered_json fits = ordered_json::object();
  if (series.entries.size() >= 3) {
    using experiments::FitTarget;
    for (auto [name, target] : {std::pair{"geometric_mean", FitTarget::geometric_mean},
                                std::pair{"lower", FitTarget::lower}, std::pair{"upper", FitTarget::upper}}) {
      try {
        const auto f = experiments::fit_exponent(series, g.log_correction, target);
        fits[name] = {{"slope", f.slope},
                      {"intercept", f.intercept},
                      {"log_exponent", f.log_exponent},
                      {"max_residual", f.max_residual}};
      } catch (const DomainError&) {
        fits[name] = nullptr;
      }
    }
  }
  j["fit"] = fits;
  return j.dump(2) + "\n";
}

// ---- kreiss ---------------------------------------------------------------

struct KreissArgs {
  Common common;
  std::string kind = "kreiss";
  std::string op = "mobius";
  double a = 0.5;
  double scale = 1.0;
  int k_max = 0;
  std::string moduli;
  std::string radii;
  int phases = kreiss::kDefaultPhases;
  std::int64_t n_max = 0;
  std::string n = "16,64,256,1024";
  double tol = 1e-10;
};

symbols::ConvOperator make_operator(const KreissArgs& k) {
  if (k.op == "mobius") {
    if (!(k.a >= 0.0 && k.a < 1.0)) throw UsageError(fmt::format("--a {} is outside [0, 1)", k.a));
    return symbols::mobius_symbol(k.a, 1e-15);
  }
  if (k.op == "shift") return symbols::shift(1, k.scale);
  if (k.op == "identity") return symbols::scalar(k.scale);
  throw UsageError(fmt::format("unknown --operator '{}'", k.op));
}

std::string_view kreiss_anchor(kreiss::KreissKind kind) {
  switch (kind) {
    case kreiss::KreissKind::kreiss: return "||R(lambda,T)|| <= C/(|lambda|-1), |lambda| > 1";
    case kreiss::KreissKind::iterated_kreiss: return "||R(lambda,T)^k|| <= C/(|lambda|-1)^k, |lambda| > 1, k >= 1";
    case kreiss::KreissKind::strong_kreiss: return "||e^{zT}|| <= L e^{|z|}, z in C";
    case kreiss::KreissKind::absolute_strong_kreiss: return "sum_n r^n/n! ||T^n x|| <= C e^r ||x||, r > 0";
    case kreiss::KreissKind::window_power_sum: return "sum_{N-2sqrt(N) <= n <= N} ||T^n x||^p <= C N^{p/2} ||x||^p";
  }
  return "";
}

std::string kreiss_cmd(const KreissArgs& k) {
  const double p = k.common.p;
  if (!(p >= 1.0)) throw UsageError(fmt::format("--p {} is below 1", p));
  const auto T = make_operator(k);
  const auto x = FourierSeries::monomial(0);
  kreiss::KreissOptions opts;
  opts.phases = k.phases;
  opts.relative_tol = k.tol;
  opts.threads = threads_of(k.common);

  const auto moduli = k.moduli.empty() ? kreiss::default_moduli() : real_list_option(k.moduli, "--moduli");
  auto radii = k.radii.empty() ? kreiss::default_radii() : real_list_option(k.radii, "--radii");
  std::sort(radii.begin(), radii.end());

  ordered_json cfg;
  cfg["kind"] = k.kind;
  cfg["operator"] = T.descriptor;
  cfg["p"] = num(p);
  cfg["tol"] = k.tol;

  kreiss::KreissReport report;
  if (k.kind == "kreiss" || k.kind == "iterated") {
    const int k_max = k.k_max > 0 ? k.k_max : (k.kind == "kreiss" ? 1 : 5);
    if (k.kind == "kreiss" && k_max != 1) throw UsageError("--kind kreiss takes --k-max 1; use iterated");
    report = kreiss::kreiss_constant(T, p, k_max, moduli, opts);
    cfg["k_max"] = k_max;
    cfg["moduli"] = moduli;
    cfg["phases"] = k.phases;
  } else if (k.kind == "strong") {
    report = kreiss::strong_kreiss_constant(T, p, radii, k.phases, opts);
    cfg["radii"] = radii;
    cfg["phases"] = k.phases;
  } else if (k.kind == "absolute") {
    const auto n_max = k.n_max > 0 ? k.n_max : kreiss::required_poisson_n_max(radii.back());
    report = kreiss::absolute_strong_kreiss_constant(T, p, x, radii, n_max);
    cfg["radii"] = radii;
    cfg["n_max"] = n_max;
    cfg["x"] = "e_0";
  } else if (k.kind == "window") {
    const auto Ns = int_list_option(k.n, "--n");
    report = kreiss::window_power_sum_report(T, p, x, Ns);
    cfg["n"] = Ns;
    cfg["x"] = "e_0";
  } else {
    throw UsageError(fmt::format("unknown --kind '{}'", k.kind));
  }

  if (!k.common.json) {
    std::string csv = "parameter,value\n";
    for (const auto& s : report.samples) csv += fmt::format("{},{}\n", s.parameter, s.value);
    return csv;
  }
  auto j = envelope("kreiss", cfg, kreiss_anchor(report.kind));
  j["kind"] = kreiss::to_string(report.kind);
  j["constant"] = num(report.constant);
  j["diverging"] = report.diverging;
  j["constant_is_lower_estimate"] = report.constant_is_lower_estimate();
  j["grid"] = report.grid;
  j["norm_method"] = report.norm_method;
  if (report.singular_at)
    j["singular_at"] = {report.singular_at->real(), report.singular_at->imag()};
  else
    j["singular_at"] = nullptr;
  j["samples"] = ordered_json::array();
  for (const auto& s : report.samples) j["samples"].push_back({num(s.parameter), num(s.value)});
  return j.dump(2) + "\n";
}

// ---- lp -------------------------------------------------------------------

struct LpArgs {
  Common common;
  std::string kind = "forward";
  std::string L = "1,2,4,8";
  std::int64_t freq_range = 64;
  int support = 16;
  std::size_t m = 0;
  bool repeat_interval = false;
};

std::string lp_cmd(const LpArgs& a) {
  experiments::LpKind kind;
  try {
    kind = experiments::parse_lp_kind(a.kind);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  experiments::ExperimentConfig cfg;
  cfg.seed = a.common.seed;
  cfg.trials = a.common.trials;
  cfg.p = a.common.p;
  cfg.Ls.clear();
  for (auto L : int_list_option(a.L, "--L")) {
    if (L < 1 || L > (std::int64_t{1} << 20)) throw UsageError(fmt::format("--L {} out of range", L));
    cfg.Ls.push_back(static_cast<int>(L));
  }
  cfg.freq_range = a.freq_range;
  cfg.support_size = a.support;
  cfg.m = a.m;
  cfg.repeat_single_interval = a.repeat_interval;
  cfg.threads = threads_of(a.common);
  const auto r = experiments::lp_inequality_experiment(kind, cfg);

  if (!a.common.json) {
    std::string csv = "L,worst_ratio,mean_ratio,witness_seed\n";
    for (const auto& row : r.per_L)
      csv += fmt::format("{},{},{},{}\n", row.L, row.worst_ratio, row.mean_ratio, row.witness_seed);
    return csv;
  }
  // Thread count is left out: reports must not depend on it.
  ordered_json c;
  c["kind"] = experiments::to_string(kind);
  c["seed"] = cfg.seed;
  c["trials"] = cfg.trials;
  c["p"] = num(cfg.p);
  c["L"] = cfg.Ls;
  c["freq_range"] = cfg.freq_range;
  c["support_size"] = cfg.support_size;
  c["m"] = cfg.m;
  c["repeat_single_interval"] = cfg.repeat_single_interval;
  auto j = envelope("lp", c, experiments::lp_statement(kind));
  j["worst_ratio"] = num(r.worst_ratio);
  j["per_L"] = ordered_json::array();
  for (const auto& row : r.per_L)
    j["per_L"].push_back({{"L", row.L},
                          {"worst_ratio", num(row.worst_ratio)},
                          {"mean_ratio", num(row.mean_ratio)},
                          {"witness_seed", row.witness_seed}});
  ordered_json intervals = ordered_json::array();
  for (const auto& I : r.witness.intervals) intervals.push_back({I.lo, I.hi});
  j["witness"] = {{"L", r.witness.L},
                  {"trial", r.witness.trial},
                  {"seed", r.witness.seed},
                  {"intervals", intervals},
                  {"ratio", num(r.witness.ratio)}};
  j["second_form_violations"] = r.second_form_violations;
  j["findings"] = r.findings;
  return j.dump(2) + "\n";
}

// ---- technical / bootstrap / exponents ------------------------------------

struct TechnicalArgs {
  Common common;
  std::string N = "100,1000,10000";
};

std::string technical_cmd(const TechnicalArgs& t) {
  const auto Ns = int_list_option(t.N, "--N");
  std::vector<bounds::TechnicalReport> reports;
  for (auto N : Ns) reports.push_back(bounds::technical_check(N));
  if (!t.common.json) {
    std::string csv = "N,K_min,min_ratio,max_ratio,ratio_at_zero,variation_sum_scaled\n";
    for (const auto& r : reports)
      csv += fmt::format("{},{},{},{},{},{}\n", r.N, r.K_min, r.min_ratio, r.max_ratio, r.ratio_at_zero,
                         r.variation_sum_scaled);
    return csv;
  }
  ordered_json cfg;
  cfg["N"] = Ns;
  auto j = envelope("technical", cfg,
                    "e^N/(C sqrt N) <= N^{N+K}/(N+K)! <= C e^N/sqrt N, K in [2-2sqrt N, 0]; "
                    "bounded variation of the inverse Poisson window weights");
  j["reports"] = ordered_json::array();
  for (const auto& r : reports)
    j["reports"].push_back({{"N", r.N},
                            {"K_min", r.K_min},
                            {"min_ratio", num(r.min_ratio)},
                            {"max_ratio", num(r.max_ratio)},
                            {"ratio_at_zero", num(r.ratio_at_zero)},
                            {"variation_sum_scaled", num(r.variation_sum_scaled)}});
  return j.dump(2) + "\n";
}

struct BootstrapArgs {
  Common common;
  double alpha0 = 1.0;
  double log_ep = 0.0;
  std::int64_t N = 1000000;
  int K = -1;
};

std::string bootstrap_cmd(const BootstrapArgs& b) {
  const double p = b.common.p;
  if (!(p > 1.0) || std::isinf(p)) throw UsageError(fmt::format("--p {} is outside (1, inf)", p));
  const auto s = b.K >= 0 ? bounds::bootstrap_iterate(b.alpha0, p, b.log_ep, b.K)
                          : bounds::bootstrap_trajectory(b.alpha0, p, b.log_ep, b.N);
  if (!b.common.json) {
    std::string csv = "k,alpha,log_constant\n";
    for (std::size_t k = 0; k < s.alphas.size(); ++k)
      csv += fmt::format("{},{},{}\n", k, s.alphas[k], s.constants_log[k]);
    return csv;
  }
  ordered_json cfg;
  cfg["alpha0"] = b.alpha0;
  cfg["p"] = p;
  cfg["log_Ep"] = b.log_ep;
  if (b.K >= 0)
    cfg["K"] = b.K;
  else
    cfg["N"] = b.N;
  auto j = envelope("bootstrap", cfg, "alpha -> alpha/2 + delta_p, 2^K <= log N/log log N < 2^{K+1}");
  j["K"] = s.K;
  j["alphas"] = s.alphas;
  j["constants_log"] = s.constants_log;
  j["bound_exponent"] = s.bound_exponent;
  j["fixed_point"] = 2.0 * bounds::exponents(p).delta_p;
  j["kappa"] = s.kappa;
  return j.dump(2) + "\n";
}

struct ExponentsArgs {
  Common common;
  std::string p = "1.3333333333333333,1.5,2,3,4";
};

std::string exponents_cmd(const ExponentsArgs& e) {
  const auto ps = real_list_option(e.p, "--p");
  std::vector<std::pair<bounds::ExponentRecord, double>> rows;
  for (double p : ps) {
    if (!(p > 1.0) || std::isinf(p)) throw UsageError(fmt::format("--p {} is outside (1, inf)", p));
    rows.emplace_back(bounds::exponents(p), bounds::final_power_exponent(p));
  }
  if (!e.common.json) {
    std::string csv = "p,p_prime,p_dprime,delta_p,tau_p,q,p_bar,final_exponent\n";
    for (const auto& [r, f] : rows)
      csv += fmt::format("{},{},{},{},{},{},{},{}\n", r.p, r.p_prime, r.p_dprime, r.delta_p, r.tau_p, r.q, r.p_bar, f);
    return csv;
  }
  ordered_json cfg;
  cfg["p"] = ps;
  auto j = envelope("exponents", cfg, "delta_p + delta_q - 1/2 = tau_p = 1/min(p,q) - 1/2");
  j["rows"] = ordered_json::array();
  for (const auto& [r, f] : rows)
    j["rows"].push_back({{"p", r.p},
                         {"p_prime", r.p_prime},
                         {"p_dprime", r.p_dprime},
                         {"delta_p", r.delta_p},
                         {"tau_p", r.tau_p},
                         {"q", r.q},
                         {"p_bar", r.p_bar},
                         {"final_exponent", f}});
  return j.dump(2) + "\n";
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", c.out));
  file << text;
  if (!file) throw std::runtime_error(fmt::format("write to '{}' failed", c.out));
}

}  // namespace

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return split<std::int64_t>(text, to_int);
  const auto lo = to_int(text.substr(0, dots));
  const auto hi = to_int(text.substr(dots + 2));
  if (lo < 1 || hi < lo) throw std::invalid_argument(fmt::format("bad range '{}'", text));
  std::vector<std::int64_t> out;
  for (auto v = lo; v <= hi; v *= 2) out.push_back(v);
  return out;
}

std::vector<double> parse_real_list(std::string_view text) { return split<double>(text, to_real); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on Kreiss-type conditions and power growth of convolution operators"};
  app.name(args.empty() ? "kreiss-lab" : args.front());
  app.require_subcommand(1);

  GrowthArgs g;
  auto* growth_cmd = app.add_subcommand("growth", "Norm brackets of q_a(S)^N over a list of N");
  add_common(growth_cmd, g.common);
  growth_cmd->add_option("--p", g.common.p, "Exponent p >= 1 (inf allowed)");
  growth_cmd->add_option("--a", g.a, "Moebius parameter in [0, 1)");
  growth_cmd->add_option("--n", g.n, "Powers: a..b (doubling) or a comma list");
  growth_cmd->add_option("--tol", g.tol, "Coefficient tolerance");
  growth_cmd->add_flag("--log-correction", g.log_correction, "Add a log log N regressor to the fits");
  growth_cmd->add_flag("--no-higham", g.no_higham, "Skip the dual power iteration lower bound");
  growth_cmd->add_option("--restarts", g.restarts, "Random restarts for the lower bound");

  KreissArgs k;
  auto* kreiss_sub = app.add_subcommand("kreiss", "Kreiss-type constants of a convolution operator");
  add_common(kreiss_sub, k.common);
  kreiss_sub->add_option("--p", k.common.p, "Exponent p >= 1");
  kreiss_sub->add_option("--kind", k.kind, "kreiss|iterated|strong|absolute|window");
  kreiss_sub->add_option("--operator", k.op, "mobius|shift|identity");
  kreiss_sub->add_option("--a", k.a, "Moebius parameter in [0, 1)");
  kreiss_sub->add_option("--scale", k.scale, "Scalar factor for shift/identity");
  kreiss_sub->add_option("--k-max", k.k_max, "Largest resolvent power (iterated)");
  kreiss_sub->add_option("--moduli", k.moduli, "Comma list of |lambda| > 1");
  kreiss_sub->add_option("--radii", k.radii, "Comma list of radii r > 0");
  kreiss_sub->add_option("--phases", k.phases, "Phases sampled per modulus or radius");
  kreiss_sub->add_option("--n-max", k.n_max, "Series cutoff for --kind absolute (default from the Poisson tail)");
  kreiss_sub->add_option("--n", k.n, "N values for --kind window");
  kreiss_sub->add_option("--tol", k.tol, "Relative accuracy of the symbol computations");

  LpArgs l;
  auto* lp_sub = app.add_subcommand("lp", "Random search on square-function inequalities");
  add_common(lp_sub, l.common);
  lp_sub->add_option("--p", l.common.p, "Exponent p");
  lp_sub->add_option("--kind", l.kind, "forward|weak-l1|reverse|blocks|stechkin");
  lp_sub->add_option("--L", l.L, "Number of intervals: comma list or a..b");
  lp_sub->add_option("--freq-range", l.freq_range, "Intervals and supports inside [-R, R]");
  lp_sub->add_option("--support", l.support, "Support size of the random f");
  lp_sub->add_option("--m", l.m, "Quadrature grid (0 = automatic)");
  lp_sub->add_flag("--repeat-interval", l.repeat_interval, "weak-l1: L copies of one interval");

  TechnicalArgs t;
  auto* tech_sub = app.add_subcommand("technical", "Poisson ratio and window-weight variation checks");
  add_common(tech_sub, t.common);
  tech_sub->add_option("--N", t.N, "Comma list of N >= 16");

  BootstrapArgs b;
  auto* boot_sub = app.add_subcommand("bootstrap", "Exponent bootstrap trajectory");
  add_common(boot_sub, b.common);
  boot_sub->add_option("--p", b.common.p, "Exponent in (1, inf)");
  boot_sub->add_option("--alpha0", b.alpha0, "Starting exponent");
  boot_sub->add_option("--log-ep", b.log_ep, "log of the per-step constant");
  boot_sub->add_option("--N", b.N, "N selecting the number of rounds");
  boot_sub->add_option("--K", b.K, "Explicit number of rounds (overrides --N)");

  ExponentsArgs e;
  auto* exp_sub = app.add_subcommand("exponents", "Exponent identities for a list of p");
  add_common(exp_sub, e.common);
  exp_sub->add_option("--p", e.p, "Comma list of p in (1, inf)");

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::pair<CLI::App*, std::function<std::pair<const Common*, std::string>()>>> dispatch{
      {growth_cmd, [&] { return std::pair{&g.common, growth(g)}; }},
      {kreiss_sub, [&] { return std::pair{&k.common, kreiss_cmd(k)}; }},
      {lp_sub, [&] { return std::pair{&l.common, lp_cmd(l)}; }},
      {tech_sub, [&] { return std::pair{&t.common, technical_cmd(t)}; }},
      {boot_sub, [&] { return std::pair{&b.common, bootstrap_cmd(b)}; }},
      {exp_sub, [&] { return std::pair{&e.common, exponents_cmd(e)}; }},
  };
  try {
    for (const auto& [cmd, run] : dispatch) {
      if (!cmd->parsed()) continue;
      const auto [common, text] = run();
      emit(*common, text, out);
      return kExitOk;
    }
    return kExitUsage;
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& ex) {
    err << "invalid input: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace kreisslab::cli
