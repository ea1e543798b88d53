#include "momentlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "momentlab/errors.hpp"

namespace momentlab {

namespace {

constexpr double kRangeSlack = 1e-12;

void require_unit(double delta, const char* fn) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError(std::string(fn) + ": delta must lie in [0,1], got " + std::to_string(delta));
  }
}

void require_overlap(double delta, double mu, const char* fn) {
  require_unit(delta, fn);
  if (!(mu >= -kRangeSlack && mu <= overlap_max(delta) + kRangeSlack)) {
    throw DomainError(std::string(fn) + ": overlap mu=" + std::to_string(mu) + " outside [0, " +
                      std::to_string(overlap_max(delta)) + "]");
  }
}

// x^n with 0^0 = 1 and tiny negative x (rounding at range ends) treated as 0.
double ipow(double x, int n) {
  if (n == 0) return 1.0;
  if (x <= 0.0) return 0.0;
  double result = 1.0;
  double base = x;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

double xlogx(double x) { return x <= 0.0 ? 0.0 : x * std::log(x); }

// Bernstein basis B_{i,n}(δ); zero outside 0..n.
double bernstein(int i, int n, double delta) {
  if (i < 0 || i > n) return 0.0;
  return binomial(n, i) * ipow(delta, i) * ipow(1.0 - delta, n - i);
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double result = 1.0;
  for (int j = 1; j <= k; ++j) result = result * (n - k + j) / j;
  return result < 9e15 ? std::round(result) : result;
}

double pi(int i, int k, double delta) {
  if (i < 0 || i > k) throw DomainError("pi: need 0 <= i <= k");
  require_unit(delta, "pi");
  return bernstein(i, k, delta);
}

double g(const RelationIndexSet& rel, double delta) {
  require_unit(delta, "g");
  double sum = 0.0;
  for (int i : rel.allowed()) sum += bernstein(i, rel.k(), delta);
  return sum;
}

double h(const RelationIndexSet& rel, double delta) {
  require_unit(delta, "h");
  double sum = 0.0;
  for (int i : rel.allowed()) sum += i * bernstein(i, rel.k(), delta);
  return sum;
}

double g_prime(const RelationIndexSet& rel, double delta) {
  require_unit(delta, "g_prime");
  const int k = rel.k();
  double sum = 0.0;
  for (int i : rel.allowed()) sum += bernstein(i - 1, k - 1, delta) - bernstein(i, k - 1, delta);
  return k * sum;
}

double g_second(const RelationIndexSet& rel, double delta) {
  require_unit(delta, "g_second");
  const int k = rel.k();
  double sum = 0.0;
  for (int i : rel.allowed()) {
    sum += bernstein(i - 2, k - 2, delta) - 2.0 * bernstein(i - 1, k - 2, delta) + bernstein(i, k - 2, delta);
  }
  return static_cast<double>(k) * (k - 1) * sum;
}

double xlogx_pair(double delta) {
  require_unit(delta, "entropy");
  return xlogx(delta) + xlogx(1.0 - delta);
}

double log_gamma(const RelationIndexSet& rel, double r, double delta) {
  if (!(r >= 0.0)) throw DomainError("gamma: r must be >= 0");
  const double gv = g(rel, delta);
  const double lg = r == 0.0 ? 0.0 : (gv > 0.0 ? r * std::log(gv) : -std::numeric_limits<double>::infinity());
  return lg - xlogx_pair(delta);
}

double gamma(const RelationIndexSet& rel, double r, double delta) { return std::exp(log_gamma(rel, r, delta)); }

double rhat(const RelationIndexSet& rel, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("rhat: delta must lie in (0,1)");
  const double gv = g(rel, delta);
  if (gv >= 1.0) throw DomainError("rhat: g(delta) = 1, first-moment cap undefined");
  if (gv <= 0.0) return 0.0;
  return xlogx_pair(delta) / std::log(gv);
}

double overlap_max(double delta) {
  if (delta <= 0.0) return 1.0;
  return std::min(1.0, (1.0 - delta) / delta);
}

double kappa(int i, int j, int d, int k, double delta, double mu) {
  if (d < std::max(0, i + j - k) || d > std::min(i, j)) {
    throw DomainError("kappa: d=" + std::to_string(d) + " outside [max(0,i+j-k), min(i,j)]");
  }
  require_overlap(delta, mu, "kappa");
  return ipow((1.0 - mu) * delta, d) * ipow(mu * delta, i + j - 2 * d) *
         ipow(1.0 - delta - mu * delta, k - i - j + d);
}

double phi(int i, int j, double delta, double mu, int k) {
  if (i < 0 || j < 0 || i > k || j > k) throw DomainError("phi: need 0 <= i,j <= k");
  double sum = 0.0;
  for (int d = std::max(0, i + j - k); d <= std::min(i, j); ++d) {
    sum += binomial(k, i) * binomial(i, d) * binomial(k - i, j - d) * kappa(i, j, d, k, delta, mu);
  }
  return sum;
}

double bigG(const RelationIndexSet& rel, double delta, double mu) {
  require_overlap(delta, mu, "bigG");
  double sum = 0.0;
  for (int i : rel.allowed()) {
    for (int j : rel.allowed()) sum += phi(i, j, delta, mu, rel.k());
  }
  return sum;
}

double log_t(double delta, double mu) {
  require_overlap(delta, mu, "t");
  const double a = (1.0 - mu) * delta;
  const double b = mu * delta;
  const double z = std::max(0.0, 1.0 - delta - mu * delta);
  return xlogx(a) + 2.0 * xlogx(b) + xlogx(z);
}

double t(double delta, double mu) { return std::exp(log_t(delta, mu)); }

double log_bigGamma(const RelationIndexSet& rel, double delta, double r, double mu) {
  if (!(r >= 0.0)) throw DomainError("bigGamma: r must be >= 0");
  const double lt = log_t(delta, mu);
  if (r == 0.0) return -lt;
  const double gv = bigG(rel, delta, mu);
  if (gv <= 0.0) return -std::numeric_limits<double>::infinity();
  return r * std::log(gv) - lt;
}

double bigGamma(const RelationIndexSet& rel, double delta, double r, double mu) {
  return std::exp(log_bigGamma(rel, delta, r, mu));
}

double bigG_one_in_k(int k, double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) throw DomainError("bigG_one_in_k: mu must lie in [0,1]");
  const double kd = k;
  return std::pow(kd, 1.0 - kd) * ipow(kd - 1.0 - mu, k - 2) * (kd * (1.0 - mu + mu * mu) - 1.0);
}

double entropy_curvature(double delta, double mu) {
  return delta / (1.0 - mu) + 2.0 * delta / mu + delta * delta / (1.0 - delta - delta * mu);
}

OverlapPolynomial::OverlapPolynomial(const RelationIndexSet& rel, double delta)
    : delta_(delta), mu_max_(overlap_max(delta)), k_(rel.k()) {
  require_unit(delta, "OverlapPolynomial");
  const int k = rel.k();
  // Monomials with identical exponents are merged.
  for (int i : rel.allowed()) {
    for (int j : rel.allowed()) {
      for (int d = std::max(0, i + j - k); d <= std::min(i, j); ++d) {
        const Term term{binomial(k, i) * binomial(i, d) * binomial(k - i, j - d), d, i + j - 2 * d, k - i - j + d};
        auto same = std::find_if(terms_.begin(), terms_.end(), [&](const Term& x) {
          return x.d == term.d && x.e == term.e && x.f == term.f;
        });
        if (same == terms_.end()) {
          terms_.push_back(term);
        } else {
          same->coef += term.coef;
        }
      }
    }
  }
}

double OverlapPolynomial::value(double mu) const { return derivatives(mu).value; }

Derivatives OverlapPolynomial::derivatives(double mu) const {
  require_overlap(delta_, mu, "OverlapPolynomial");
  const double dl = delta_;
  const double a = (1.0 - mu) * dl;
  const double b = mu * dl;
  const double z = std::max(0.0, 1.0 - dl - mu * dl);
  // da/dμ = -δ, db/dμ = δ, dz/dμ = -δ; write each monomial as a^d b^e z^f and
  // differentiate with falling powers so endpoints stay exact.
  std::vector<double> pa(static_cast<std::size_t>(k_) + 1), pb(pa.size()), pz(pa.size());
  for (int n = 0; n <= k_; ++n) {
    pa[n] = ipow(a, n);
    pb[n] = ipow(b, n);
    pz[n] = ipow(z, n);
  }
  auto p = [](const std::vector<double>& powers, int n) { return n < 0 ? 0.0 : powers[n]; };
  Derivatives out;
  for (const auto& [c, d, e, f] : terms_) {
    const double A0 = p(pa, d), B0 = p(pb, e), Z0 = p(pz, f);
    // First derivatives of each factor (with respect to μ, divided by δ).
    const double A1 = -d * p(pa, d - 1), B1 = e * p(pb, e - 1), Z1 = -f * p(pz, f - 1);
    const double A2 = static_cast<double>(d) * (d - 1) * p(pa, d - 2);
    const double B2 = static_cast<double>(e) * (e - 1) * p(pb, e - 2);
    const double Z2 = static_cast<double>(f) * (f - 1) * p(pz, f - 2);
    out.value += c * A0 * B0 * Z0;
    out.first += c * dl * (A1 * B0 * Z0 + A0 * B1 * Z0 + A0 * B0 * Z1);
    out.second += c * dl * dl *
                  (A2 * B0 * Z0 + A0 * B2 * Z0 + A0 * B0 * Z2 + 2.0 * (A1 * B1 * Z0 + A1 * B0 * Z1 + A0 * B1 * Z1));
  }
  return out;
}

double OverlapPolynomial::log_second(double mu) const {
  const auto [v, d1, d2] = derivatives(mu);
  if (v <= 0.0) return -std::numeric_limits<double>::infinity();
  return (v * d2 - d1 * d1) / (v * v);
}

}  // namespace momentlab
