#include "momentlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "momentlab/bounds.hpp"
#include "momentlab/characteristic.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/exact.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"
#include "momentlab/oracle.hpp"

namespace momentlab {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

double rel_err(double got, double want, double scale) { return std::abs(got - want) / std::max(std::abs(want), scale); }

void absorb(CheckReport& into, const CheckReport& from, const std::string& prefix) {
  for (auto item : from.items) {
    item.name = prefix + item.name;
    into.items.push_back(std::move(item));
  }
}

}  // namespace

RelationIndexSet random_relation(SplitMix64& rng, int k_min, int k_max) {
  const int k = k_min + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(k_max - k_min + 1)));
  std::vector<int> allowed;
  while (allowed.empty()) {
    for (int i = 1; i < k; ++i) {
      if (rng.bounded(2) == 1) allowed.push_back(i);
    }
  }
  return {k, allowed};
}

const std::vector<std::string>& verify_group_names() {
  static const std::vector<std::string> names = {"identities", "characteristic", "bounds", "overlap-max",
                                                 "first-moment", "oracle", "laplace"};
  return names;
}

CheckReport verify_identities(std::uint64_t seed) {
  CheckReport rep;
  rep.name = "identities";
  SplitMix64 rng(seed);

  double worst_G = 0, worst_Gamma = 0, worst_t = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const double delta = 0.01 + 0.98 * unit_draw(rng);
    const double r = 2.0 * unit_draw(rng);
    const double gv = g(rel, delta);
    worst_G = std::max(worst_G, std::abs(bigG(rel, delta, 1.0 - delta) - gv * gv));
    const double gam = gamma(rel, r, delta);
    worst_Gamma = std::max(worst_Gamma, std::abs(bigGamma(rel, delta, r, 1.0 - delta) - gam * gam));
    const double ent = std::exp(xlogx_pair(delta));
    worst_t = std::max(worst_t, std::abs(t(delta, 1.0 - delta) - ent * ent));
  }
  rep.check("G_at_independence", worst_G < 1e-12, worst_G, "max |G(1-delta) - g^2| over 500 draws");
  rep.check("Gamma_at_independence", worst_Gamma < 1e-10, worst_Gamma, "max |Gamma(1-delta) - gamma^2|");
  rep.check("t_at_independence", worst_t < 1e-14, worst_t, "max |t(1-delta) - entropy^2|");

  // dG/dμ at 1-δ by central differences against the closed form.
  double worst_slope = 0, worst_alt = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const double delta = 0.02 + 0.96 * unit_draw(rng);
    const double mu = 1.0 - delta;
    const double fd = derivative([&](double x) { return bigG(rel, delta, x); }, mu, 1, {0.0, overlap_max(delta)});
    const double closed = gprime_closed_at_independence(rel, delta);
    const double gv = g(rel, delta);
    worst_slope = std::max(worst_slope, rel_err(fd, closed, gv * gv));
    worst_alt = std::max(worst_alt, rel_err(fd, gprime_closed_at_independence_alt(rel, delta), gv * gv));
  }
  rep.check("G_slope_at_independence", worst_slope < 1e-6, worst_slope,
            "relative error of FD dG/dmu vs -delta g'^2/k, scale max(|value|, g^2)");
  rep.info("G_slope_alt_form", worst_alt, "same comparison against -delta g'^2/(k(1-delta)^2)");

  double worst_norm = 0, worst_phi_norm = 0, worst_gh = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const int k = rel.k();
    const double delta = 0.01 + 0.98 * unit_draw(rng);
    const double mu = overlap_max(delta) * unit_draw(rng);
    double s = 0, sp = 0;
    for (int i = 0; i <= k; ++i) {
      s += pi(i, k, delta);
      for (int j = 0; j <= k; ++j) sp += phi(i, j, delta, mu, k);
    }
    worst_norm = std::max(worst_norm, std::abs(s - 1.0));
    worst_phi_norm = std::max(worst_phi_norm, std::abs(sp - 1.0));
    const double fd = derivative([&](double x) { return g(rel, x); }, delta, 1, {0.0, 1.0});
    worst_gh = std::max(worst_gh, std::abs(delta * (1 - delta) * fd - (h(rel, delta) - k * delta * g(rel, delta))));
  }
  rep.check("pi_normalization", worst_norm < 1e-14, worst_norm);
  rep.check("phi_normalization", worst_phi_norm < 1e-12, worst_phi_norm);
  rep.check("g_h_link", worst_gh < 1e-9, worst_gh, "delta (1-delta) g' = h - k delta g (FD g')");

  bool vandermonde = true, hypergeometric = true;
  for (int k = 0; k <= 20; ++k) {
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) {
        mpz_class s = 0, sd = 0;
        for (int d = 0; d <= std::min(i, j); ++d) {
          const mpz_class term = exact::binomial(i, d) * exact::binomial(k - i, j - d);
          s += term;
          sd += d * term;
        }
        vandermonde = vandermonde && s == exact::binomial(k, j);
        if (k > 0) hypergeometric = hypergeometric && mpq_class(sd) == mpq_class(i * j) / k * exact::binomial(k, j);
      }
    }
  }
  rep.check("vandermonde", vandermonde, 0, "exact, k <= 20");
  rep.check("hypergeometric_mean", hypergeometric, 0, "exact, k <= 20");

  // Double-precision functions against their rational twins at rational points.
  double worst_twin = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 10);
    const int den = 2 + static_cast<int>(rng.bounded(60));
    const int num = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(den - 1)));
    const mpq_class dq(num, den);
    const double dd = static_cast<double>(num) / den;
    const double top = std::min(1.0, (1.0 - dd) / dd);
    const int mnum = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(std::floor(top * den)) + 1));
    mpq_class mq(mnum, den);
    mq.canonicalize();
    const double md = static_cast<double>(mnum) / den;
    worst_twin = std::max({worst_twin, std::abs(g(rel, dd) - exact::to_double(exact::g(rel, dq))),
                           std::abs(h(rel, dd) - exact::to_double(exact::h(rel, dq))),
                           std::abs(g_prime(rel, dd) - exact::to_double(exact::g_prime(rel, dq))),
                           std::abs(bigG(rel, dd, md) - exact::to_double(exact::bigG(rel, dq, mq)))});
  }
  rep.check("rational_twins", worst_twin < 1e-12, worst_twin, "g, h, g', G vs exact rationals");
  return rep;
}

CheckReport verify_characteristic_sets() {
  CheckReport rep;
  rep.name = "characteristic sets";
  double worst = 0;
  bool singletons = true;
  for (int k = 3; k <= 10; ++k) {
    const auto set = find_characteristic_set(RelationIndexSet::one_in_k(k));
    singletons = singletons && set.points.size() == 1;
    if (!set.points.empty()) worst = std::max(worst, std::abs(set.points.front().delta - 1.0 / k));
  }
  rep.check("one_in_k", singletons && worst < 1e-8, worst, "Delta(1_k) = {1/k}, k = 3..10");

  const auto nae = find_characteristic_set(RelationIndexSet::not_all_equal(3));
  rep.check("nae3", nae.points.size() == 1 && std::abs(nae.points.front().delta - 0.5) < 1e-8,
            nae.points.empty() ? -1.0 : nae.points.front().delta);

  const RelationIndexSet i13(13, {1, 8, 12});
  auto set = find_characteristic_set(i13);
  const bool three = set.points.size() == 3;
  rep.check("i13_count", three, static_cast<double>(set.points.size()), "three local maxima of g");
  if (three) {
    const auto& p = set.points;
    rep.check("i13_g_order", p[1].g_value < p[0].g_value && p[0].g_value < p[2].g_value, p[1].delta,
              "g(d2) < g(d1) < g(d3)");
    rep.check("i13_best_is_middle", best_delta(set, 0.64) == p[1].delta, best_delta(set, 0.64),
              "gamma at r = 0.64 is largest at d2");
  }

  // Stationarity of Γ at 1-δ holds at members of Δ and fails away from them.
  bool iff = true;
  // {1,3} at k=4 is left out: its maximum at 1/2 is flat to third order.
  for (const auto& rel : {RelationIndexSet::one_in_k(3), RelationIndexSet::one_in_k(5), RelationIndexSet::not_all_equal(3),
                          i13}) {
    const auto s = find_characteristic_set(rel);
    for (double d : linspace(0.0025, 0.9975, 199)) {
      const bool member = s.contains(d, 1e-8);
      if (member != verify_stationarity(rel, d, 0.3)) iff = false;
    }
    for (const auto& p : s.points) iff = iff && verify_stationarity(rel, p.delta, 0.3);
  }
  rep.check("stationarity_iff", iff, 0, "200-point delta grid for 1_3, 1_5, nae3, {1,8,12}");
  return rep;
}

CheckReport verify_bound_certificates() {
  CheckReport rep;
  rep.name = "bounds";
  std::vector<std::pair<RelationIndexSet, std::string>> rels;
  for (int k = 3; k <= 10; ++k) rels.emplace_back(RelationIndexSet::one_in_k(k), "1_" + std::to_string(k));
  for (int k = 3; k <= 8; ++k) rels.emplace_back(RelationIndexSet::not_all_equal(k), "nae" + std::to_string(k));

  for (const auto& [rel, label] : rels) {
    const auto report = compute_bounds(rel);
    const bool ordered = report.r_star <= report.r_refined && report.r_refined <= report.r_hat &&
                         report.r_hat <= report.r_upper;
    rep.check(label + "_ordering", ordered && report.r_star > 0.0, report.r_refined,
              fmt("r*=%.6f ", report.r_star) + fmt("ref=%.6f ", report.r_refined) + fmt("rhat=%.6f ", report.r_hat) +
                  fmt("up=%.6f", report.r_upper));
    const auto delta = report.delta_used;
    rep.check(label + "_concave_below", concavity_certificate(rel, delta, 0.99 * report.r_star), report.r_star,
              "(log Gamma)'' < 0 at 0.99 r*");
    const auto nv = nu_detail(rel, delta);
    rep.check(label + "_nu_witness", nv.nu >= nv.witness * (1 - 1e-9) && nv.nu > 0, nv.nu,
              "witness " + fmt("%.6g", nv.witness));
    if (label.rfind("1_", 0) == 0) {
      const int k = rel.k();
      const double floor = std::log(static_cast<double>(k)) / k;
      rep.check(label + "_refined_floor", report.r_refined >= floor - 1e-6, report.r_refined - floor,
                "r_refined - log k/k");
    }
  }
  const auto one3 = RelationIndexSet::one_in_k(3);
  rep.check("1_3_concavity_has_teeth", !concavity_certificate(one3, 1.0 / 3, 100 * r_star(one3, 1.0 / 3)), 0,
            "certificate fails at 100 r*");
  const double rh = rhat(one3, 1.0 / 3);
  rep.check("rhat_1_3", std::abs(rh - 0.78492) <= 1e-5, rh);
  const double up7 = upper_bound(RelationIndexSet::one_in_k(7));
  const double l7 = std::log(7.0);
  rep.check("upper_1_7", up7 <= l7 * l7 / 7 + 1e-5, up7, "<= log^2 7 / 7");
  return rep;
}

CheckReport verify_overlap_maximum(std::optional<int> k) {
  CheckReport rep;
  rep.name = "overlap maximum for 1-in-k at log k/k";
  const int lo = k.value_or(3), hi = k.value_or(12);
  for (int kk = lo; kk <= hi; ++kk) {
    const auto label = "k" + std::to_string(kk) + ".";
    rep.check(label + "grid_argmax", verify_1ink_global_max(kk), 1.0 - 1.0 / kk, "argmax at 1-1/k");
    absorb(rep, verify_appendix_c(kk), label);
  }
  return rep;
}

CheckReport verify_first_moment_fact(std::optional<int> k) {
  CheckReport rep;
  rep.name = "first moment for 1-in-k at log^2 k/k";
  const int lo = k.value_or(6), hi = k.value_or(15);
  for (int kk = lo; kk <= hi; ++kk) absorb(rep, verify_upper_bound_fact(kk), "k" + std::to_string(kk) + ".");
  return rep;
}

CheckReport verify_oracle(int max_n) {
  CheckReport rep;
  rep.name = "exact oracle";
  if (max_n < 1) throw ValidationError("max-n must be >= 1");
  const std::vector<RelationIndexSet> rels = {{3, {1}}, {3, {2}}, {3, {1, 2}}};
  bool first_ok = true, second_ok = true, variance_ok = true, partition_ok = true;
  int cases = 0;
  for (const auto& rel : rels) {
    for (int n = 1; n <= max_n; ++n) {
      for (int m = 0; m <= 2; ++m) {
        mpq_class total_by_p = 0;
        for (int p = 0; p <= n; ++p) {
          const auto f1 = exact_first_moment(n, p, m, rel, MomentMethod::ProductFormula);
          const auto e1 = exact_first_moment(n, p, m, rel, MomentMethod::Enumeration);
          const auto f2 = exact_second_moment(n, p, m, rel, MomentMethod::ProductFormula);
          const auto e2 = exact_second_moment(n, p, m, rel, MomentMethod::Enumeration);
          first_ok = first_ok && f1.value == e1.value;
          second_ok = second_ok && f2.value == e2.value;
          variance_ok = variance_ok && f2.value >= f1.value * f1.value;
          total_by_p += e1.value;
          ++cases;
        }
        const auto counts = enumerate_solution_counts(n, m, rel);
        partition_ok = partition_ok && counts.total == total_by_p;
      }
    }
  }
  rep.check("first_moment_modes_agree", first_ok, cases, "n <= " + std::to_string(max_n) + ", k=3, m <= 2");
  rep.check("second_moment_modes_agree", second_ok, cases);
  rep.check("second_dominates_first_squared", variance_ok, cases);
  rep.check("solution_count_partition", partition_ok, 0, "sum over p of E[X_p] = E[X]");

  bool phi_ok = true;
  const int n_phi = std::max(3, std::min(max_n, 4));
  for (int p = 0; p <= n_phi; ++p) {
    for (int pp = 0; pp <= std::min(p, n_phi - p); ++pp) {
      mpq_class total = 0;
      for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 3; ++j) {
          phi_ok = phi_ok && verify_phi_counts(n_phi, p, pp, i, j, 3);
          total += enumerate_phi_fraction(n_phi, p, pp, i, j, 3);
        }
      }
      phi_ok = phi_ok && total == 1;
    }
  }
  rep.check("phi_counts", phi_ok, n_phi, "tuple enumeration at n=" + std::to_string(n_phi) + ", k=3");

  const auto one3 = RelationIndexSet::one_in_k(3);
  const auto e = exact_first_moment(3, 1, 1, one3);
  rep.check("first_moment_example", e.value == mpq_class(4, 3), exact::to_double(e.value), "n=3 p=1 m=1: 4/3");
  const double r60 = exact::to_double(moment_ratio(60, 20, 18, one3));
  const double r120 = exact::to_double(moment_ratio(120, 40, 36, one3));
  rep.check("ratio_stability", r60 > 0.01 && r120 >= 0.8 * r60 && r120 <= 1.0, r120 / r60,
            fmt("ratio n=60 %.6f ", r60) + fmt("n=120 %.6f", r120));
  return rep;
}

CheckReport verify_laplace() {
  CheckReport rep;
  rep.name = "laplace estimate";
  const auto one3 = RelationIndexSet::one_in_k(3);
  double prev_gap = INFINITY;
  bool closer = true;
  for (int n : {60, 120, 240}) {
    const double est = laplace_estimate(one3, 1.0 / 3, 0.3, static_cast<std::size_t>(n));
    const auto exact = exact_second_moment(n, n / 3, static_cast<int>(std::lround(0.3 * n)), one3);
    const double ratio = est / exact::to_double(exact.value);
    rep.check("ratio_n" + std::to_string(n), ratio >= 0.5 && ratio <= 2.0, ratio, "estimate / exact E[X^2]");
    const double gap = std::abs(ratio - 1.0);
    if (n > 60) closer = closer && gap < 0.005;
    prev_gap = gap;
  }
  rep.check("converges", closer, prev_gap, "|ratio - 1| < 0.5% for n in {120, 240}");
  return rep;
}

std::vector<TimedReport> run_verification(const VerifyOptions& options) {
  const auto& names = verify_group_names();
  std::vector<std::string> selected;
  for (auto name : options.only) {
    if (name == "appendix-c") name = "overlap-max";
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ValidationError("unknown verify group '" + name + "'");
    }
    selected.push_back(name);
  }
  if (selected.empty()) selected = names;
  if (options.k && *options.k < 3) throw ValidationError("k must be >= 3");

  std::vector<TimedReport> out;
  for (const auto& name : names) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckReport rep;
    if (name == "identities") rep = verify_identities(options.seed);
    if (name == "characteristic") rep = verify_characteristic_sets();
    if (name == "bounds") rep = verify_bound_certificates();
    if (name == "overlap-max") rep = verify_overlap_maximum(options.k);
    if (name == "first-moment") rep = verify_first_moment_fact(options.k);
    if (name == "oracle") rep = verify_oracle(options.max_n);
    if (name == "laplace") rep = verify_laplace();
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    out.push_back({std::move(rep), took.count()});
  }
  return out;
}

}  // namespace momentlab
