#pragma once

#include <vector>

#include "momentlab/relation.hpp"

namespace momentlab {

// Scalar probability and growth-rate functions of a permutation-invariant
// relation. Conventions: 0^0 = 1 and 0·log 0 = 0, so every function is
// defined on the closed interval and returns the exact limit at endpoints.
//
//   g(δ)      probability a δ-valuation satisfies a random constraint
//   γ(r, δ)   growth rate of the expected number of δ-solutions
//   G(δ, μ)   probability a pair of δ-valuations with overlap μ satisfies a constraint
//   t(δ, μ)   multinomial entropy factor of a pair with overlap μ
//   Γ         G^r / t, growth rate of the second moment at overlap μ
//
// μ ranges over [0, min(1, (1-δ)/δ)]; μ = 1-δ is the independence point.

double binomial(int n, int k);

/// C(k,i) δ^i (1-δ)^(k-i).
double pi(int i, int k, double delta);

double g(const RelationIndexSet& rel, double delta);
/// Σ_{i∈I} i·π_i(δ)
double h(const RelationIndexSet& rel, double delta);
/// Analytic first and second derivatives of g in δ (Bernstein difference form).
double g_prime(const RelationIndexSet& rel, double delta);
double g_second(const RelationIndexSet& rel, double delta);

/// Entropy term δ^δ (1-δ)^(1-δ) in log form: δ log δ + (1-δ) log(1-δ).
double xlogx_pair(double delta);

double gamma(const RelationIndexSet& rel, double r, double delta);
double log_gamma(const RelationIndexSet& rel, double r, double delta);

/// First-moment cap: the ratio at which γ(r, δ) = 1.
double rhat(const RelationIndexSet& rel, double delta);

/// Upper end of the overlap range, min(1, (1-δ)/δ).
double overlap_max(double delta);

double kappa(int i, int j, int d, int k, double delta, double mu);
double phi(int i, int j, double delta, double mu, int k);
double bigG(const RelationIndexSet& rel, double delta, double mu);
double t(double delta, double mu);
double log_t(double delta, double mu);
double bigGamma(const RelationIndexSet& rel, double delta, double r, double mu);
double log_bigGamma(const RelationIndexSet& rel, double delta, double r, double mu);

/// Closed form for 1-in-k at δ = 1/k: k^(1-k) (k-1-μ)^(k-2) (k(1-μ+μ²) - 1).
double bigG_one_in_k(int k, double mu);

struct Derivatives {
  double value = 0;
  double first = 0;
  double second = 0;
};

/// Expanded form of G(δ, ·) for one relation: a sum of monomials
/// c · a^d · b^e · z^f with a = (1-μ)δ, b = μδ, z = 1-δ-μδ. Precomputing the
/// coefficients makes repeated μ-scans cheap and gives exact derivatives.
class OverlapPolynomial {
 public:
  OverlapPolynomial(const RelationIndexSet& rel, double delta);

  double delta() const noexcept { return delta_; }
  double mu_max() const noexcept { return mu_max_; }
  double value(double mu) const;
  Derivatives derivatives(double mu) const;
  /// (log G)'' = (G G'' - G'^2) / G^2
  double log_second(double mu) const;

 private:
  struct Term {
    double coef;
    int d, e, f;
  };
  double delta_;
  double mu_max_;
  int k_;
  std::vector<Term> terms_;
};

/// -(log t)''(μ) = δ/(1-μ) + 2δ/μ + δ²/(1-δ-δμ); positive and convex on the open range.
double entropy_curvature(double delta, double mu);

}  // namespace momentlab
