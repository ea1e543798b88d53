#include "momentlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "json.hpp"
#include "momentlab/characteristic.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"

namespace momentlab {

namespace {

void require_interior(double delta, const char* fn) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError(std::string(fn) + ": delta must lie in (0,1)");
}

std::size_t grid_steps(double span, double step) {
  return std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(span / step)));
}

}  // namespace

RhoResult rho_detail(double delta) {
  require_interior(delta, "rho");
  const double lo = kScanEpsilon;
  const double hi = overlap_max(delta) - kScanEpsilon;
  auto f = [delta](double mu) { return entropy_curvature(delta, mu); };
  const auto best = scan_minimize(f, lo, hi, grid_steps(hi - lo, kOverlapGridStep), 1e-10);
  return {best.value, best.x};
}

double rho(double delta) { return rho_detail(delta).rho; }

NuResult nu_detail(const RelationIndexSet& rel, double delta) {
  require_interior(delta, "nu");
  const OverlapPolynomial G(rel, delta);
  const double lo = kScanEpsilon;
  const double hi = G.mu_max() - kScanEpsilon;
  NuResult out;
  out.min_G = std::numeric_limits<double>::infinity();
  for (double mu : linspace(lo, hi, grid_steps(hi - lo, kOverlapGridStep))) {
    out.min_G = std::min(out.min_G, G.value(mu));
  }
  out.small_G_warning = out.min_G < 1e-300;
  const auto best = scan_maximize([&](double mu) { return G.log_second(mu); }, lo, hi,
                                  grid_steps(hi - lo, kOverlapGridStep), 1e-10);
  out.nu = best.value;
  out.mu = best.x;
  const double gv = g(rel, delta);
  const double g2 = g_second(rel, delta);
  const int k = rel.k();
  out.witness = delta * delta * g2 * g2 / (static_cast<double>(k) * (k - 1) * gv * gv);
  return out;
}

double nu(const RelationIndexSet& rel, double delta) { return nu_detail(rel, delta).nu; }

double r_star(const RelationIndexSet& rel, double delta) {
  require_interior(delta, "r_star");
  const auto set = find_characteristic_set(rel);
  if (!set.contains(delta, kMembershipTol)) {
    throw NotCharacteristicError("r_star: delta=" + std::to_string(delta) + " is not a local maximizer of g for " +
                                 rel.to_string());
  }
  return rho(delta) / nu(rel, delta);
}

bool concavity_certificate(const RelationIndexSet& rel, double delta, double r, double step) {
  require_interior(delta, "concavity_certificate");
  const OverlapPolynomial G(rel, delta);
  const double top = G.mu_max();
  for (std::size_t j = 1;; ++j) {
    const double mu = static_cast<double>(j) * step;
    if (mu >= top) break;
    if (!(r * G.log_second(mu) - entropy_curvature(delta, mu) < 0.0)) return false;
  }
  return true;
}

double refined_lower_bound(const RelationIndexSet& rel, double delta, double tol) {
  const double lower = r_star(rel, delta);
  const double cap = rhat(rel, delta);
  if (lower >= cap) return cap;

  const OverlapPolynomial G(rel, delta);
  const auto mus = linspace(0.0, G.mu_max(), grid_steps(G.mu_max(), kOverlapGridStep));
  std::vector<double> logG(mus.size()), logt(mus.size());
  for (std::size_t j = 0; j < mus.size(); ++j) {
    const double gv = G.value(mus[j]);
    logG[j] = gv > 0.0 ? std::log(gv) : -std::numeric_limits<double>::infinity();
    logt[j] = log_t(delta, mus[j]);
  }
  const double logG_ind = 2.0 * std::log(g(rel, delta));
  const double logt_ind = 2.0 * xlogx_pair(delta);

  auto independence_is_max = [&](double r) {
    const double ref = r * logG_ind - logt_ind;
    const double slack = 1e-12 * std::max(1.0, std::abs(ref));
    for (std::size_t j = 0; j < mus.size(); ++j) {
      if (r * logG[j] - logt[j] > ref + slack) return false;
    }
    return true;
  };

  if (!independence_is_max(lower)) return lower;
  if (independence_is_max(cap)) return cap;
  double lo = lower;
  double hi = cap;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (independence_is_max(mid) ? lo : hi) = mid;
  }
  return lo;
}

double max_log_gamma(const RelationIndexSet& rel, double r, double step) {
  double best = -std::numeric_limits<double>::infinity();
  for (double d : linspace(0.0, 1.0, grid_steps(1.0, step))) best = std::max(best, log_gamma(rel, r, d));
  return best;
}

UpperBoundResult upper_bound_detail(const RelationIndexSet& rel, double tol) {
  if (!(tol > 0.0)) throw DomainError("upper_bound: tol must be positive");
  auto cap = [&](double d) { return rhat(rel, d); };
  const auto best = scan_maximize(cap, kScanEpsilon, 1.0 - kScanEpsilon, 10000, tol);
  UpperBoundResult out;
  out.r_upper = best.value;
  out.delta = best.x;
  out.probe_r = best.value + 1e-6;
  out.certificate = max_log_gamma(rel, out.probe_r) < 0.0;
  return out;
}

double upper_bound(const RelationIndexSet& rel, double tol) { return upper_bound_detail(rel, tol).r_upper; }

double default_bounds_delta(const RelationIndexSet& rel) {
  const auto set = find_characteristic_set(rel);
  auto by_g = std::max_element(set.points.begin(), set.points.end(),
                               [](const auto& a, const auto& b) { return a.g_value < b.g_value; });
  double delta = by_g->delta;
  for (std::size_t round = 0; round < set.points.size(); ++round) {
    const double next = best_delta(set, rho(delta) / nu(rel, delta));
    if (next == delta) break;
    delta = next;
  }
  return delta;
}

BoundsReport compute_bounds(const RelationIndexSet& rel, const BoundsOptions& options) {
  const auto set = find_characteristic_set(rel);
  double delta = 0.0;
  if (options.delta) {
    delta = *options.delta;
    if (!set.contains(delta, kMembershipTol)) {
      throw NotCharacteristicError("delta=" + std::to_string(delta) + " is not in the characteristic set of " +
                                   rel.to_string());
    }
  } else {
    delta = default_bounds_delta(rel);
  }

  BoundsReport rep{rel, delta, 0, 0, 0, 0, 0, 0, {}};
  const auto rh = rho_detail(delta);
  const auto nv = nu_detail(rel, delta);
  rep.rho = rh.rho;
  rep.nu = nv.nu;
  rep.r_star = rh.rho / nv.nu;
  rep.r_refined = refined_lower_bound(rel, delta, options.refine_tol);
  rep.r_hat = rhat(rel, delta);
  const auto up = upper_bound_detail(rel, options.upper_tol);
  rep.r_upper = up.r_upper;

  auto& d = rep.diagnostics;
  d["characteristic_count"] = static_cast<double>(set.points.size());
  d["rho_argmin_mu"] = rh.mu;
  d["nu_argmax_mu"] = nv.mu;
  d["nu_witness"] = nv.witness;
  d["nu_ge_witness"] = nv.nu >= nv.witness * (1.0 - 1e-9);
  d["nu_min_G"] = nv.min_G;
  d["nu_small_G_warning"] = nv.small_G_warning;
  d["mu_grid_step"] = kOverlapGridStep;
  d["refine_tol"] = options.refine_tol;
  d["concavity_at_0.99_r_star"] = concavity_certificate(rel, delta, 0.99 * rep.r_star);
  d["stationary_at_independence"] = verify_stationarity(rel, delta, std::max(rep.r_star, 1e-3));
  d["upper_argmax_delta"] = up.delta;
  d["upper_probe_r"] = up.probe_r;
  d["upper_certificate"] = up.certificate;
  d["ordering_holds"] = rep.r_star <= rep.r_refined && rep.r_refined <= rep.r_hat && rep.r_hat <= rep.r_upper;
  return rep;
}

namespace {

double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace

std::string to_json(const BoundsReport& report, int indent) {
  nlohmann::ordered_json j;
  j["relation"] = {{"k", report.relation.k()}, {"I", report.relation.allowed()}};
  j["delta_used"] = round_sig12(report.delta_used);
  j["rho"] = round_sig12(report.rho);
  j["nu"] = round_sig12(report.nu);
  j["r_star"] = round_sig12(report.r_star);
  j["r_refined"] = round_sig12(report.r_refined);
  j["r_hat"] = round_sig12(report.r_hat);
  j["r_upper"] = round_sig12(report.r_upper);
  auto& diag = j["diagnostics"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : report.diagnostics) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            diag[name] = round_sig12(v);
          } else {
            diag[name] = v;
          }
        },
        value);
  }
  return j.dump(indent);
}

double laplace_estimate(const RelationIndexSet& rel, double delta, double r, std::size_t n) {
  require_interior(delta, "laplace_estimate");
  if (!(r >= 0.0)) throw DomainError("laplace_estimate: r must be >= 0");
  if (n == 0) throw DomainError("laplace_estimate: n must be positive");
  const OverlapPolynomial G(rel, delta);
  auto v = [&](double mu) {
    const double gv = G.value(mu);
    const double lg = r == 0.0 ? 0.0 : r * std::log(gv);
    return lg - log_t(delta, mu);
  };
  const double lo = kScanEpsilon;
  const double hi = G.mu_max() - kScanEpsilon;
  const auto mus = linspace(lo, hi, grid_steps(hi - lo, kOverlapGridStep));
  std::vector<double> vs(mus.size());
  for (std::size_t j = 0; j < mus.size(); ++j) vs[j] = v(mus[j]);

  std::vector<std::size_t> peaks;
  for (std::size_t j = 0; j < vs.size(); ++j) {
    const bool left = j == 0 || vs[j] > vs[j - 1];
    const bool right = j + 1 == vs.size() || vs[j] >= vs[j + 1];
    if (left && right) peaks.push_back(j);
  }
  if (peaks.size() != 1) {
    throw MultipleMaximaError("laplace_estimate: log Gamma has " + std::to_string(peaks.size()) +
                              " local maxima on the overlap range");
  }
  const std::size_t j0 = peaks.front();
  if (j0 == 0 || j0 + 1 == vs.size()) {
    throw MultipleMaximaError("laplace_estimate: maximum of log Gamma sits at the end of the overlap range");
  }
  const auto peak = golden_maximize(v, mus[j0 - 1], mus[j0 + 1], 1e-12);
  const double mu0 = peak.x;
  const double curvature = r * G.log_second(mu0) - entropy_curvature(delta, mu0);
  if (std::abs(curvature) < 1e-9) throw DegenerateCurvatureError("laplace_estimate: v''(mu0) vanishes");

  const double x1 = (1.0 - mu0) * delta;
  const double x2 = mu0 * delta;
  const double x4 = 1.0 - delta - mu0 * delta;
  const double nd = static_cast<double>(n);
  const double two_pi = 2.0 * std::numbers::pi;
  const double log_est = std::log(delta * nd) - 1.5 * std::log(two_pi * nd) - 0.5 * std::log(x1 * x2 * x2 * x4) +
                         0.5 * std::log(two_pi / (nd * std::abs(curvature))) + nd * peak.value;
  return std::exp(log_est);
}

}  // namespace momentlab
