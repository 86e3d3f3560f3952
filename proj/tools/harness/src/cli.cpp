#include "powersph/harness/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "CLI11.hpp"
#include "powersph/errors.hpp"
#include "powersph/harness/grid.hpp"
#include "powersph/harness/stability.hpp"
#include "powersph/harness/table.hpp"
#include "powersph/harness/timing.hpp"
#include "powersph/harness/verify.hpp"
#include "powersph/powersph.hpp"

namespace powersph::harness {
namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::string out_path;
  std::string format = "csv";
};

Format parse_format(const std::string& s) { return s == "jsonl" ? Format::Jsonl : Format::Csv; }

// Splits on commas and/or whitespace; throws UsageError on a non-number.
std::vector<double> parse_numbers(std::string_view line) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ',' || std::isspace(static_cast<unsigned char>(line[i])))) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
    if (ec != std::errc() || ptr != line.data() + j) {
      throw UsageError("not a number: '" + std::string(line.substr(i, j - i)) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

Direction direction_or_e1(const std::string& spec, std::size_t d) {
  if (spec.empty()) return Direction::basis(d, 0);
  auto v = parse_numbers(spec);
  if (v.size() != d) throw UsageError("--mu needs exactly d values");
  return Direction::normalized(std::move(v));
}

std::vector<std::size_t> dimension_grid(const std::vector<double>& grid, std::ostream& err) {
  std::vector<std::size_t> out;
  for (double v : grid) {
    if (v != std::floor(v)) throw UsageError("dimensions must be integers");
    if (v < 2.0) {
      err << "# skipping d=" << format_double(v) << " (sphere needs d >= 2)\n";
      continue;
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("no dimension >= 2 in grid");
  return out;
}

int cmd_stability(const Globals& g, const std::string& d_spec, const std::string& k_spec,
                  std::size_t samples, std::size_t threads, std::ostream& out, std::ostream& err) {
  if (samples == 0) throw UsageError("--samples must be >= 1");
  const auto ds = dimension_grid(parse_grid(d_spec), err);
  const auto ks = parse_grid(k_spec);
  err << "# stability-sweep rng=mt19937_64 seed=" << g.seed
      << " mu=seeded random unit vector per cell, samples=" << samples << "\n";
  TableWriter t(out, parse_format(g.format), {"d", "kappa", "ps_stable", "vmf_stable", "failure_kind"});
  for (const auto& c : run_stability_sweep(ds, ks, samples, g.seed, threads)) {
    t.row({static_cast<long long>(c.d), c.kappa, c.ps_stable, c.vmf_stable,
           std::string(to_string(c.failure_kind()))});
  }
  return kExitOk;
}

int cmd_timing(const Globals& g, TimingConfig cfg, const std::string& k_spec, std::ostream& out,
               std::ostream& err) {
  cfg.seed = g.seed;
  const auto ks = parse_grid(k_spec);
  err << "# bench-timing d=" << cfg.d << " batch=" << cfg.batch << " trials=" << cfg.trials
      << " reps=" << cfg.reps << " clock=steady_clock (CPU wall time, one warm-up batch per trial)\n";
  TableWriter t(out, parse_format(g.format),
                {"dist", "kappa", "mean_ms", "std_ms", "trials", "reps", "mean_rejections"});
  for (const auto& r : run_timing(cfg, ks)) {
    t.row({r.dist, r.kappa, r.mean_ms, r.std_ms, static_cast<long long>(r.trials),
           static_cast<long long>(r.reps), r.mean_rejections});
  }
  return kExitOk;
}

int cmd_verify(const Globals& g, VerifyConfig cfg, const std::vector<std::string>& cells,
               const std::string& kappa_q, std::ostream& out, std::ostream& err) {
  cfg.seed = g.seed;
  if (!cells.empty()) {
    cfg.cells.clear();
    for (const auto& c : cells) {
      std::string spaced = c;
      std::replace(spaced.begin(), spaced.end(), ':', ' ');
      const auto v = parse_numbers(spaced);
      if (c.find(':') == std::string::npos || v.size() != 2 || v[0] != std::floor(v[0])) throw UsageError("--cell expects d:kappa");
      cfg.cells.push_back({static_cast<std::size_t>(v[0]), v[1]});
    }
  }
  if (!kappa_q.empty()) cfg.kappa_q = parse_grid(kappa_q);
  err << "# mc-verify rng=mt19937_64 seed=" << g.seed << " n=" << cfg.n_samples
      << " n_gradient=" << cfg.n_gradient << "\n";
  TableWriter t(out, parse_format(g.format),
                {"quantity", "d", "kappa", "kappa_q", "closed_form", "mc_estimate", "mc_se", "pass"});
  bool all = true;
  for (const auto& r : run_verification(cfg)) {
    t.row({r.quantity, static_cast<long long>(r.d), r.kappa, r.kappa_q, r.closed_form, r.mc_estimate,
           r.mc_se, r.pass});
    if (!r.pass) {
      all = false;
      err << "FAIL " << r.quantity << " d=" << r.d << " kappa=" << format_double(r.kappa)
          << " closed_form=" << format_double(r.closed_form)
          << " mc_estimate=" << format_double(r.mc_estimate) << " mc_se=" << format_double(r.mc_se)
          << "\n";
    }
  }
  return all ? kExitOk : kExitVerificationFailure;
}

int cmd_sample(const Globals& g, std::size_t d, double kappa, std::size_t n, const std::string& mu_spec,
               const std::string& dist, bool gradient, std::ostream& out) {
  if (n == 0) throw UsageError("--n must be >= 1");
  const Direction mu = direction_or_e1(mu_spec, d);
  std::vector<std::string> cols{"t"};
  for (std::size_t i = 0; i < d; ++i) cols.push_back("x" + std::to_string(i));
  if (gradient) cols.push_back("dot_grad_kappa");
  TableWriter t(out, parse_format(g.format), cols);
  RandomStream rng(g.seed);

  auto emit = [&](double tv, const std::vector<double>& x, std::optional<double> grad) {
    std::vector<Value> row{tv};
    row.insert(row.end(), x.begin(), x.end());
    if (gradient) row.emplace_back(*grad);
    t.row(row);
  };
  if (dist == "vmf") {
    const VonMisesFisherParams q(mu, kappa);
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = sample_vmf(q, rng, gradient);
      emit(s.t, s.x, s.dot_grad_kappa);
    }
  } else {
    const PowerSphericalParams p(mu, kappa);
    for (std::size_t i = 0; i < n; ++i) {
      const auto s = sample(p, 1, rng, gradient).front();
      emit(s.t, s.x, s.dot_grad_kappa);
    }
  }
  return kExitOk;
}

int cmd_logprob(const Globals& g, std::size_t d, double kappa, const std::string& mu_spec, bool with_vmf,
                const std::string& input, std::istream& in, std::ostream& out, std::ostream& err) {
  const Direction mu = direction_or_e1(mu_spec, d);
  const PowerSphericalParams p(mu, kappa);
  const VonMisesFisherParams q(mu, kappa);
  std::ifstream file;
  if (!input.empty()) {
    file.open(input);
    if (!file) throw UsageError("cannot open input '" + input + "'");
  }
  std::istream& src = input.empty() ? in : file;

  std::vector<std::string> cols{"row", "log_prob"};
  if (with_vmf) cols.push_back("log_prob_vmf");
  cols.push_back("error");
  TableWriter t(out, parse_format(g.format), cols);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::string line;
  long long index = 0;
  long long failures = 0;
  while (std::getline(src, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<Value> row{index};
    try {
      const auto x = parse_numbers(line);
      if (x.size() != d) throw UsageError("expected " + std::to_string(d) + " values, got " + std::to_string(x.size()));
      row.emplace_back(log_prob(x, p));
      if (with_vmf) row.emplace_back(log_prob_vmf(x, q));
      row.emplace_back(std::string());
    } catch (const std::exception& e) {
      row.resize(1);
      row.emplace_back(nan);
      if (with_vmf) row.emplace_back(nan);
      std::string msg = e.what();
      std::replace(msg.begin(), msg.end(), ',', ';');
      row.emplace_back(msg);
      err << "row " << index << ": " << e.what() << "\n";
      ++failures;
    }
    t.row(row);
    ++index;
  }
  return failures == 0 ? kExitOk : kExitVerificationFailure;
}

int cmd_kl(const Globals& g, std::size_t d, double kappa, const std::string& mu_spec,
           std::optional<double> kappa_q, const std::string& mu_q_spec, std::ostream& out) {
  const Direction mu = direction_or_e1(mu_spec, d);
  const PowerSphericalParams p(mu, kappa);
  TableWriter t(out, parse_format(g.format), {"quantity", "value"});
  t.row({std::string("entropy"), entropy(p)});
  t.row({std::string("kl_uniform"), kl_from_uniform(p)});
  if (kappa_q) {
    const Direction mu_q = mu_q_spec.empty() ? mu : direction_or_e1(mu_q_spec, d);
    t.row({std::string("kl_vmf"), kl_to_vmf(p, VonMisesFisherParams(mu_q, *kappa_q))});
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Power Spherical distribution: experiments and verification", "powersph"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
  app.add_option("--out", g.out_path, "Write results to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  auto* stab = app.add_subcommand("stability-sweep", "Finite-value check over a (d, kappa) grid");
  std::string d_grid(kStabilityGrid), k_grid(kStabilityGrid);
  std::size_t samples = 10, threads = 0;
  stab->add_option("--d-grid", d_grid)->capture_default_str();
  stab->add_option("--kappa-grid", k_grid)->capture_default_str();
  stab->add_option("--samples", samples)->capture_default_str();
  stab->add_option("--threads", threads, "0 = hardware concurrency")->capture_default_str();

  auto* timing = app.add_subcommand("bench-timing", "Batch sampling time across kappa");
  TimingConfig tcfg;
  std::string t_grid(kTimingKappaGrid);
  timing->add_option("--d", tcfg.d)->capture_default_str();
  timing->add_option("--batch", tcfg.batch)->capture_default_str();
  timing->add_option("--kappa-grid", t_grid)->capture_default_str();
  timing->add_option("--trials", tcfg.trials)->capture_default_str();
  timing->add_option("--reps", tcfg.reps)->capture_default_str();

  auto* verify = app.add_subcommand("mc-verify", "Closed forms vs Monte-Carlo estimates");
  VerifyConfig vcfg;
  std::vector<std::string> cells;
  std::string kappa_q_list;
  verify->add_option("--n", vcfg.n_samples, "Samples per cell")->capture_default_str();
  verify->add_option("--n-gradient", vcfg.n_gradient, "Samples for the gradient row")->capture_default_str();
  verify->add_option("--cell", cells, "d:kappa (repeatable; replaces the default cells)");
  verify->add_option("--kappa-q", kappa_q_list, "vMF concentrations for kl_vmf rows (d = 3 cells)");

  auto* samp = app.add_subcommand("sample", "Draw unit vectors");
  std::size_t d = 3, n = 1;
  double kappa = 0.0;
  std::string mu_spec, dist = "power_spherical";
  bool gradient = false;
  samp->add_option("--d", d)->required();
  samp->add_option("--kappa", kappa)->required();
  samp->add_option("--n", n)->capture_default_str();
  samp->add_option("--mu", mu_spec, "Comma-separated direction (default e1)");
  samp->add_option("--dist", dist)->check(CLI::IsMember({"power_spherical", "vmf"}))->capture_default_str();
  samp->add_flag("--gradient", gradient, "Add the d(mu^T x)/dkappa column");

  auto* lp = app.add_subcommand("logprob", "Log-densities of input vectors, one per line");
  bool with_vmf = false;
  std::string input;
  lp->add_option("--d", d)->required();
  lp->add_option("--kappa", kappa)->required();
  lp->add_option("--mu", mu_spec, "Comma-separated direction (default e1)");
  lp->add_option("--input", input, "Input file (default stdin)");
  lp->add_flag("--vmf", with_vmf, "Also emit the vMF log-density");

  auto* kl = app.add_subcommand("kl", "Entropy and KL divergences");
  std::optional<double> kappa_q;
  std::string mu_q_spec;
  kl->add_option("--d", d)->required();
  kl->add_option("--kappa", kappa)->required();
  kl->add_option("--mu", mu_spec, "Comma-separated direction (default e1)");
  kl->add_option("--kappa-q", kappa_q, "vMF concentration; adds kl_vmf");
  kl->add_option("--mu-q", mu_q_spec, "vMF direction (default mu)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  if (!g.out_path.empty()) {
    file.open(g.out_path);
    if (!file) {
      err << "error: cannot open '" << g.out_path << "' for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = g.out_path.empty() ? out : file;

  try {
    if (*stab) return cmd_stability(g, d_grid, k_grid, samples, threads, sink, err);
    if (*timing) return cmd_timing(g, tcfg, t_grid, sink, err);
    if (*verify) return cmd_verify(g, vcfg, cells, kappa_q_list, sink, err);
    if (*samp) return cmd_sample(g, d, kappa, n, mu_spec, dist, gradient, sink);
    if (*lp) return cmd_logprob(g, d, kappa, mu_spec, with_vmf, input, in, sink, err);
    if (*kl) return cmd_kl(g, d, kappa, mu_spec, kappa_q, mu_q_spec, sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace powersph::harness
