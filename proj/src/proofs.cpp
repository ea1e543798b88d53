// Numerical certificates for positive 1-in-k-SAT: the overlap maximum at the
// bound log k / k and the first-moment bound at log^2 k / k.

#include <cmath>
#include <cstdio>
#include <string>

#include "momentlab/bounds.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"

namespace momentlab {

namespace {

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

void require_k(int k, int min_k, const char* fn) {
  if (k < min_k) throw ValidationError(std::string(fn) + ": k must be >= " + std::to_string(min_k));
}

// k·log Γ_{1_k,1/k,log k/k}(μ) and its derivative, both in closed form.
struct OneInKOverlap {
  int k;
  double K;
  double logk;

  explicit OneInKOverlap(int k_) : k(k_), K(k_), logk(std::log(static_cast<double>(k_))) {}

  double scaled_log_gamma(double mu) const { return logk * std::log(bigG_one_in_k(k, mu)) - K * log_t(1.0 / K, mu); }

  // (k log t_{1/k})'(μ)
  double entropy_slope(double mu) const {
    return 2.0 * std::log(mu) - std::log1p(-mu) - std::log(K - 1.0 - mu);
  }

  double derivative(double mu) const {
    const double quad = K * (1.0 - mu + mu * mu) - 1.0;
    const double dlogG = -(K - 2.0) / (K - 1.0 - mu) + K * (2.0 * mu - 1.0) / quad;
    return logk * dlogG - entropy_slope(mu);
  }

  // Upper bound on k·log Γ over [a, 1/2] obtained by freezing 1 - μ + μ² at l.
  double tau(double l, double mu) const {
    const double inner = (1.0 - K) * logk + (K - 2.0) * std::log(K - 1.0 - mu) + std::log(K * l - 1.0);
    return logk * inner - K * log_t(1.0 / K, mu);
  }

  double tau_prime(double mu) const { return -(K - 2.0) * logk / (K - 1.0 - mu) - entropy_slope(mu); }

  // 2k·log γ_{1_k, log k/k}(1/k)
  double target() const { return 2.0 * K * log_gamma(RelationIndexSet::one_in_k(k), logk / K, 1.0 / K); }
};

// Tight bound on 1 - μ + μ² over [a, 1/2]; the quadratic decreases there.
double frozen_quadratic(double a) { return 1.0 - a + a * a; }
// The variant with the opposite sign on a², kept for comparison.
double frozen_quadratic_literal(double a) { return 1.0 - a - a * a; }

}  // namespace

OverlapScan scan_one_in_k_overlap(int k, double r, double step) {
  require_k(k, 3, "scan_one_in_k_overlap");
  if (!(step > 0.0 && step <= 0.5)) throw DomainError("scan_one_in_k_overlap: step must lie in (0, 1/2]");
  const double delta = 1.0 / k;
  auto v = [&](double mu) { return r * std::log(bigG_one_in_k(k, mu)) - log_t(delta, mu); };
  OverlapScan out;
  out.max_log = -INFINITY;
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / step));
  for (double mu : linspace(0.0, 1.0, steps)) {
    const double value = v(mu);
    if (value > out.max_log) {
      out.max_log = value;
      out.argmax = mu;
    }
  }
  out.log_at_independence = v(1.0 - delta);
  out.log_gamma_sq = 2.0 * log_gamma(RelationIndexSet::one_in_k(k), r, delta);
  return out;
}

bool verify_1ink_global_max(int k, double step) {
  require_k(k, 3, "verify_1ink_global_max");
  const auto scan = scan_one_in_k_overlap(k, std::log(static_cast<double>(k)) / k, step);
  return std::abs(scan.argmax - (1.0 - 1.0 / k)) <= step * (1.0 + 1e-9);
}

CheckReport verify_appendix_c(int k) {
  require_k(k, 3, "verify_appendix_c");
  const OneInKOverlap ov(k);
  const double K = k;
  const double target = ov.target();
  const double split = 0.15;
  CheckReport rep;
  rep.name = "overlap maximum, 1-in-" + std::to_string(k) + " at r = log k/k";

  const auto scan = scan_one_in_k_overlap(k, ov.logk / K, 1e-4);
  rep.check("identity_at_independence", std::abs(scan.log_at_independence - scan.log_gamma_sq) <= 1e-10,
            scan.log_at_independence - scan.log_gamma_sq, "log Gamma(1-1/k) - 2 log gamma(1/k)");
  rep.check("grid_argmax", std::abs(scan.argmax - (1.0 - 1.0 / K)) <= 1e-4 * (1.0 + 1e-9), scan.argmax,
            "expected 1-1/k=" + fmt("%.6f", 1.0 - 1.0 / K));

  if (k == 3) {
    rep.skip("tau_prime_half", "the [0,1/2] argument is stated for k > 3");
    rep.skip("stage_i_monotone", "the [0,1/2] argument is stated for k > 3");
    rep.skip("stage_i_sound", "the [0,1/2] argument is stated for k > 3");
    rep.skip("stage_ii", "the [0,1/2] argument is stated for k > 3");
    rep.skip("stage_iii", "the [0,1/2] argument is stated for k > 3");
  } else {
    const double closed = std::log(2.0 * K - 3.0) - 2.0 * (K - 2.0) * ov.logk / (2.0 * K - 3.0);
    rep.check("tau_prime_half", closed > 0.0 && std::abs(closed - ov.tau_prime(0.5)) <= 1e-12, closed,
              "closed form vs direct " + fmt("%.3g", closed - ov.tau_prime(0.5)));

    // τ'_a does not depend on a; one sweep over (0, 1/2] covers every stage.
    double min_slope = INFINITY;
    for (double mu : linspace(1e-3, 0.5, 499)) min_slope = std::min(min_slope, ov.tau_prime(mu));
    rep.check("stage_i_monotone", min_slope > 0.0, min_slope, "min tau'_a on [0.001, 0.5]");

    double worst_gap = INFINITY;
    for (double a : {0.0, split}) {
      for (double mu : linspace(a, 0.5, 500)) {
        worst_gap = std::min(worst_gap, ov.tau(frozen_quadratic(a), mu) - ov.scaled_log_gamma(mu));
      }
    }
    rep.check("stage_i_sound", worst_gap >= -1e-12, worst_gap, "min of tau_a - k log Gamma on [a,1/2]");

    const double s2 = ov.tau(frozen_quadratic(0.0), split) - target;
    rep.check("stage_ii", s2 < 0.0, s2, "tau_0(0.15) - 2k log gamma(1/k)");
    const double s3 = ov.tau(frozen_quadratic(split), 0.5) - target;
    rep.check("stage_iii", s3 < 0.0, s3, "tau_0.15(0.5) - 2k log gamma(1/k)");
    const double s3_literal = ov.tau(frozen_quadratic_literal(split), 0.5) - target;
    rep.info("stage_iii_l_minus", s3_literal, "same margin with l_a = 1-a-a^2");
  }

  // Stages chosen greedily: from a, advance to the largest b with τ_a(b) below target.
  {
    double a = 0.0;
    int stages = 0;
    bool closed = false;
    for (; stages < 64; ++stages) {
      const double l = frozen_quadratic(a);
      auto below = [&](double mu) { return ov.tau(l, mu) < target; };
      if (below(0.5)) {
        closed = true;
        ++stages;
        break;
      }
      if (!below(a)) break;
      double lo = a, hi = 0.5;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (below(mid) ? lo : hi) = mid;
      }
      if (lo <= a + 1e-9) break;
      a = lo;
    }
    if (k == 3) {
      rep.info("staged_chain", stages, closed ? "chain reaches 1/2" : "chain stalls");
    } else {
      rep.check("staged_chain", closed, stages, closed ? "stages needed to reach 1/2" : "chain stalls");
    }
  }

  const double peak = 1.0 - 1.0 / K;
  double min_left = INFINITY;
  for (double mu = 0.5; mu < peak - 1e-12; mu += 1e-3) min_left = std::min(min_left, ov.derivative(mu));
  rep.check("chord_derivative_positive", min_left > 0.0, min_left, "min of (k log Gamma)' on [1/2, 1-1/k)");

  double max_right = -INFINITY;
  for (double mu = peak + 1e-3; mu < 1.0; mu += 1e-3) max_right = std::max(max_right, ov.derivative(mu));
  rep.check("tangent_derivative_negative", max_right < 0.0, max_right, "max of (k log Gamma)' on (1-1/k, 1)");

  // Coefficients of the linear minorant and majorant, multiplied by (μ - 1 + 1/k).
  const double half_gap = -0.5 + 1.0 / K;
  const double chord = (2.0 - K) * ov.logk / ((K - 1.5) * half_gap) + std::log(2.0 * K - 3.0) / half_gap;
  rep.check("chord_coefficient", chord <= 0.0, chord, "slope of the chord minorant");
  const double tangent = K * K * K / ((K - 1.0) * (K - 1.0)) * (ov.logk / (K - 1.0) - 1.0);
  rep.check("tangent_coefficient", tangent < 0.0, tangent, "slope of the tangent majorant");
  return rep;
}

CheckReport verify_upper_bound_fact(int k) {
  require_k(k, 3, "verify_upper_bound_fact");
  const double K = k;
  const double logk = std::log(K);
  const double r = logk * logk / K;
  const auto rel = RelationIndexSet::one_in_k(k);
  const bool asserted = k >= 7;
  CheckReport rep;
  rep.name = "first moment, 1-in-" + std::to_string(k) + " at r = log^2 k/k";

  auto record = [&](const std::string& item, bool ok, double value, const std::string& detail) {
    if (asserted) {
      rep.check(item, ok, value, detail);
    } else {
      rep.info(item, value, detail + (ok ? " (holds)" : " (does not hold)") + ", k < 7 not asserted");
    }
  };

  const double half = 2.0 * std::pow(K / std::ldexp(1.0, k), r);
  record("piece_half", half < 1.0, half, "gamma(1/2) = 2 (k/2^k)^r");

  const double g_at = g(rel, 1.0 / K);
  const double piece0 = std::pow(g_at, r) * std::exp(-xlogx_pair(1.0 / K));
  record("piece_0", piece0 < 1.0, piece0, "g(1/k)^r / entropy at 1/k bounds [0,1/k]");
  rep.info("piece_0_printed_form", K * std::exp((K - 1.0) * (logk - 1.0) * (logk + 1.0) / K),
           "k exp((k-1)(log k-1)(log k+1)/k) as printed");

  // Entropy bound from the tangent of the log-entropy at 1/k.
  auto entropy_bound = [&](double d) { return std::pow(K - 1.0, d - 1.0) * K; };
  auto piece_ii_bound = [&](double d) { return entropy_bound(d) * std::pow(g_at, r); };
  const double s = -std::log1p(-1.0 / K) * ((K - 1.0) * logk * logk - K) / (K * std::log(K - 1.0));
  record("s_definition", std::abs(piece_ii_bound(s) - 1.0) <= 1e-9 && s > 1.0 / K && s < 0.5, s,
         "piece (ii) bound equals 1 at s: " + fmt("%.3g", piece_ii_bound(s) - 1.0));

  double tangent_gap = INFINITY;
  for (double d : linspace(1.0 / K, 0.5, 5000)) {
    tangent_gap = std::min(tangent_gap, std::log(entropy_bound(d)) + xlogx_pair(d));
  }
  record("entropy_tangent", tangent_gap >= -1e-12, tangent_gap, "min of log bound - entropy on [1/k,1/2]");

  double piece2 = 0.0;
  if (s > 1.0 / K) {
    const auto ds = linspace(1.0 / K, s, 5000);
    for (std::size_t i = 0; i + 1 < ds.size(); ++i) piece2 = std::max(piece2, piece_ii_bound(ds[i]));
  }
  record("piece_ii", piece2 < 1.0, piece2, "max bound on [1/k, s)");

  const double log_g_s = std::log(g(rel, s));
  const double slope = 1.0 / s - (K - 1.0) / (1.0 - s);
  double piece3 = 0.0;
  double piece3_at = s;
  for (double d : linspace(s, 0.5, 20000)) {
    const double b = std::exp(r * (log_g_s + slope * (d - s))) * entropy_bound(d);
    if (b > piece3) {
      piece3 = b;
      piece3_at = d;
    }
  }
  record("piece_iii", piece3 < 1.0, piece3, "max tangent bound on [s,1/2] at delta=" + fmt("%.4f", piece3_at));

  const double direct = std::exp(max_log_gamma(rel, r, 1e-5));
  record("direct_grid", direct < 1.0, direct, "max gamma on a 1e-5 delta grid");
  return rep;
}

}  // namespace momentlab
