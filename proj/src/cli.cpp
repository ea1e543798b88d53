#include "momentlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "momentlab/bounds.hpp"
#include "momentlab/characteristic.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"
#include "momentlab/solver.hpp"
#include "momentlab/sweep.hpp"
#include "momentlab/verify.hpp"

namespace momentlab {

namespace {

struct RelationFlags {
  std::optional<int> k;
  std::string allowed;
  std::string preset;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k", k, "Arity of the relation (>= 3)");
    cmd->add_option("--I", allowed, "Accepted ones-counts, e.g. 1,8,12");
    cmd->add_option("--preset", preset, "Shortcut for --I: 1-in-k or nae")
        ->check(CLI::IsMember({"1-in-k", "nae"}));
  }

  RelationIndexSet resolve() const {
    if (!k) throw ValidationError("--k is required");
    if (!preset.empty() && !allowed.empty()) throw ValidationError("give either --I or --preset, not both");
    if (preset == "1-in-k") return RelationIndexSet::one_in_k(*k);
    if (preset == "nae") return RelationIndexSet::not_all_equal(*k);
    if (allowed.empty()) throw ValidationError("--I or --preset is required");
    return {*k, parse_int_list(allowed)};
  }
};

std::string num(double x, const char* spec = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

// Writes to --out when given, else to the command's stream.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "' for writing");
  f << text;
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string profile_csv(const RelationIndexSet& rel, double r, int grid) {
  if (grid < 2) throw ValidationError("--grid must be >= 2");
  if (!(r >= 0.0)) throw ValidationError("--r must be >= 0");
  std::ostringstream os;
  os << "# rel=k:" << rel.k() << ";I:" << rel.allowed_csv() << " r=" << num(r) << '\n';
  os << "delta,g,gamma\n";
  for (double d : linspace(0.0, 1.0, static_cast<std::size_t>(grid - 1))) {
    os << num(d, "%.6f") << ',' << num(g(rel, d)) << ',' << num(gamma(rel, r, d)) << '\n';
  }
  auto set = find_characteristic_set(rel);
  annotate_gamma(set, r);
  for (const auto& p : set.points) {
    os << "# delta*=" << num(p.delta, "%.6f") << " g=" << num(p.g_value) << " gamma=" << num(*p.gamma_at_r) << '\n';
  }
  return os.str();
}

std::string surface_csv(const RelationIndexSet& rel, double delta, double r, int grid) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("--delta must lie in (0,1)");
  if (!(r >= 0.0)) throw ValidationError("--r must be >= 0");
  if (grid < 2) throw ValidationError("--grid must be >= 2");
  const double top = overlap_max(delta);
  if (!(top > 1e-12)) throw ValidationError("overlap range [0, (1-delta)/delta] is empty");
  auto mus = linspace(0.0, top, static_cast<std::size_t>(grid - 1));
  const double ind = 1.0 - delta;
  if (std::none_of(mus.begin(), mus.end(), [&](double m) { return m == ind; })) {
    mus.insert(std::upper_bound(mus.begin(), mus.end(), ind), ind);
  }
  std::ostringstream os;
  os << "# rel=k:" << rel.k() << ";I:" << rel.allowed_csv() << " delta=" << num(delta) << " r=" << num(r) << '\n';
  os << "mu,G,t,Gamma\n";
  double best = -1, best_mu = 0;
  for (double mu : mus) {
    const double G = bigG(rel, delta, mu);
    const double T = t(delta, mu);
    const double Gam = bigGamma(rel, delta, r, mu);
    if (Gam > best) {
      best = Gam;
      best_mu = mu;
    }
    os << num(mu, "%.10g") << ',' << num(G, "%.12g") << ',' << num(T, "%.12g") << ',' << num(Gam, "%.12g") << '\n';
  }
  const double gam = gamma(rel, r, delta);
  os << "# independence mu=" << num(ind, "%.10g") << " Gamma=" << num(bigGamma(rel, delta, r, ind), "%.12g")
     << " gamma^2=" << num(gam * gam, "%.12g") << '\n';
  os << "# argmax mu=" << num(best_mu, "%.10g") << " Gamma=" << num(best, "%.12g") << '\n';
  return os.str();
}

std::string verify_text(const std::vector<TimedReport>& reports, bool& all_passed) {
  std::ostringstream os;
  all_passed = true;
  std::vector<std::string> failures;
  for (const auto& tr : reports) {
    const bool ok = tr.report.passed();
    all_passed = all_passed && ok;
    os << (ok ? "PASS " : "FAIL ") << tr.report.name << " (" << num(tr.seconds, "%.2f") << " s)\n";
    os << tr.report.format();
    for (const auto& item : tr.report.items) {
      if (item.status == CheckStatus::Fail) failures.push_back(tr.report.name + ": " + item.name);
    }
  }
  if (!failures.empty()) {
    os << "failed checks:\n";
    for (const auto& f : failures) os << "  " << f << '\n';
  }
  return os.str();
}

std::string solve_text(const Instance& inst, const SolveResult& res) {
  std::ostringstream os;
  os << "s " << to_string(res.status) << '\n';
  if (res.witness) os << "v " << res.witness->to_string() << '\n';
  os << "c nodes=" << res.stats.nodes << " propagations=" << res.stats.propagations << " n=" << inst.n()
     << " m=" << inst.m() << '\n';
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment-method bounds and experiments for random permutation-invariant boolean CSPs", "momentlab"};
  app.require_subcommand(1);
  std::string out_path;

  RelationFlags bounds_rel;
  std::optional<double> bounds_delta;
  std::string bounds_format = "json";
  auto* bounds_cmd = app.add_subcommand("bounds", "Lower and upper bounds on the satisfiability ratio");
  bounds_rel.attach(bounds_cmd);
  bounds_cmd->add_option("--delta", bounds_delta, "Characteristic point to use (default: chosen automatically)");
  bounds_cmd->add_option("--format", bounds_format, "Output format")->check(CLI::IsMember({"json"}));
  bounds_cmd->add_option("--out", out_path, "Output file (default stdout)");

  RelationFlags profile_rel;
  double profile_r = 0;
  int profile_grid = 1001;
  auto* profile_cmd = app.add_subcommand("profile", "g and gamma over a delta grid, CSV");
  profile_rel.attach(profile_cmd);
  profile_cmd->add_option("--r", profile_r, "Constraint-to-variable ratio")->required();
  profile_cmd->add_option("--grid", profile_grid, "Number of grid points (>= 2)");
  profile_cmd->add_option("--out", out_path, "Output file (default stdout)");

  RelationFlags surface_rel;
  double surface_delta = 0, surface_r = 0;
  int surface_grid = 1001;
  auto* surface_cmd = app.add_subcommand("surface", "G, t and Gamma over the overlap range, CSV");
  surface_rel.attach(surface_cmd);
  surface_cmd->add_option("--delta", surface_delta, "Fraction of ones")->required();
  surface_cmd->add_option("--r", surface_r, "Constraint-to-variable ratio")->required();
  surface_cmd->add_option("--grid", surface_grid, "Number of grid points (>= 2)");
  surface_cmd->add_option("--out", out_path, "Output file (default stdout)");

  RelationFlags exp_rel;
  std::size_t exp_n = 0;
  long long exp_trials = 0;
  double r_min = 0, r_max = 0, r_step = 0;
  std::uint64_t exp_seed = 0;
  std::uint64_t node_budget = SweepOptions{}.node_budget;
  unsigned threads = 0;
  bool report_crossing = false;
  auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo satisfiability sweep, CSV");
  exp_rel.attach(exp_cmd);
  exp_cmd->add_option("--n", exp_n, "Number of variables (>= 10)")->required();
  exp_cmd->add_option("--r-min", r_min, "First ratio")->required();
  exp_cmd->add_option("--r-max", r_max, "Last ratio")->required();
  exp_cmd->add_option("--r-step", r_step, "Ratio step")->required();
  exp_cmd->add_option("--trials", exp_trials, "Instances per ratio (>= 1)")->required();
  exp_cmd->add_option("--seed", exp_seed, "Master seed")->required();
  exp_cmd->add_option("--node-budget", node_budget, "Search nodes per instance before giving up");
  exp_cmd->add_option("--threads", threads, "Worker threads (default: MOMENTLAB_THREADS or all cores)");
  exp_cmd->add_flag("--report-crossing", report_crossing, "Append the interpolated 0.5 crossing");
  exp_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::vector<std::string> only;
  std::optional<int> verify_k;
  int max_n = 4;
  auto* verify_cmd = app.add_subcommand("verify", "Run the identity and certificate suite");
  verify_cmd->add_option("--only", only, "Groups to run (comma separated)")->delimiter(',');
  verify_cmd->add_option("--k", verify_k, "Restrict the 1-in-k certificate groups to one k");
  verify_cmd->add_option("--max-n", max_n, "Largest n in the enumeration sweep");
  verify_cmd->add_option("--out", out_path, "Output file (default stdout)");

  RelationFlags gen_rel;
  std::size_t gen_n = 0, gen_m = 0;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random instance in CSPI format");
  gen_rel.attach(gen_cmd);
  gen_cmd->add_option("--n", gen_n, "Number of variables")->required();
  gen_cmd->add_option("--m", gen_m, "Number of constraints")->required();
  gen_cmd->add_option("--seed", gen_seed, "Seed")->required();
  gen_cmd->add_option("--out", out_path, "Output file (default stdout)");

  std::string solve_in;
  std::uint64_t solve_budget = SolveOptions{}.node_budget;
  auto* solve_cmd = app.add_subcommand("solve", "Decide a CSPI instance");
  solve_cmd->add_option("--in", solve_in, "Instance file ('-' for stdin)")->required();
  solve_cmd->add_option("--node-budget", solve_budget, "Search nodes before giving up");
  solve_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*bounds_cmd) {
      BoundsOptions opts;
      opts.delta = bounds_delta;
      emit(out_path, to_json(compute_bounds(bounds_rel.resolve(), opts)) + "\n", out);
      return kExitOk;
    }
    if (*profile_cmd) {
      emit(out_path, profile_csv(profile_rel.resolve(), profile_r, profile_grid), out);
      return kExitOk;
    }
    if (*surface_cmd) {
      emit(out_path, surface_csv(surface_rel.resolve(), surface_delta, surface_r, surface_grid), out);
      return kExitOk;
    }
    if (*exp_cmd) {
      const auto rel = exp_rel.resolve();
      if (exp_trials < 1) throw ValidationError("--trials must be >= 1");
      SweepOptions so;
      so.node_budget = node_budget;
      so.threads = threads;
      const auto result = sweep(rel, exp_n, r_min, r_max, r_step, static_cast<std::size_t>(exp_trials), exp_seed, so);
      std::string text = to_csv(result);
      if (report_crossing) {
        try {
          const auto c = empirical_threshold(result);
          text += "# crossing r=" + num(c.r, "%.6f") + " lo=" + num(c.lo, "%.6f") + " hi=" + num(c.hi, "%.6f") + "\n";
        } catch (const NoCrossingError&) {
          text += "# crossing none\n";
        }
      }
      emit(out_path, text, out);
      if (result.unresolved_rate() > 0.01) {
        err << "error: " << result.total_unresolved() << " unresolved trials ("
            << num(100.0 * result.unresolved_rate(), "%.2f") << "%) exceed the 1% limit\n";
        return kExitQuality;
      }
      return kExitOk;
    }
    if (*verify_cmd) {
      VerifyOptions vo;
      vo.only = only;
      vo.k = verify_k;
      vo.max_n = max_n;
      bool passed = false;
      const auto text = verify_text(run_verification(vo), passed);
      emit(out_path, text, out);
      return passed ? kExitOk : kExitVerifyFailed;
    }
    if (*gen_cmd) {
      emit(out_path, serialize_instance(generate_instance(gen_n, gen_m, gen_rel.resolve(), gen_seed)), out);
      return kExitOk;
    }
    if (*solve_cmd) {
      const auto inst = parse_instance(read_input(solve_in));
      SolveOptions so;
      so.node_budget = solve_budget;
      try {
        emit(out_path, solve_text(inst, solve(inst, so)), out);
      } catch (const ResourceLimitExceeded& e) {
        emit(out_path, "s UNKNOWN\nc " + std::string(e.what()) + "\n", out);
        return kExitQuality;
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace momentlab
