#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "momentlab/check_report.hpp"
#include "momentlab/relation.hpp"

namespace momentlab {

/// Guard keeping μ-scans off the singular ends of the overlap range.
inline constexpr double kScanEpsilon = 1e-9;
/// Default μ-grid resolution for bound computations.
inline constexpr double kOverlapGridStep = 1e-4;
/// Distance within which a delta counts as a member of Δ.
inline constexpr double kMembershipTol = 1e-6;

struct RhoResult {
  double rho = 0;  // min over μ of δ/(1-μ) + 2δ/μ + δ²/(1-δ-δμ)
  double mu = 0;   // minimizer
};

/// ρ(δ): the entropy curvature bound. The expression diverges at both ends of
/// the overlap range, so the minimum is interior and finite.
RhoResult rho_detail(double delta);
double rho(double delta);

struct NuResult {
  double nu = 0;       // max over μ of (log G)''
  double mu = 0;       // maximizer
  double witness = 0;  // δ² g''(δ)² / (k(k-1) g(δ)²), the value at μ = 1-δ when δ ∈ Δ
  double min_G = 0;    // smallest G seen on the scan
  bool small_G_warning = false;
};

NuResult nu_detail(const RelationIndexSet& rel, double delta);
double nu(const RelationIndexSet& rel, double delta);

/// ρ/ν. Throws NotCharacteristicError if delta is not within kMembershipTol of Δ.
double r_star(const RelationIndexSet& rel, double delta);

/// (log Γ)'' < 0 at every interior point of a μ-grid with the given step.
bool concavity_certificate(const RelationIndexSet& rel, double delta, double r, double step = 1e-3);

/// Largest r in [r_star, rhat] (bisection to tol) at which the μ-grid maximum
/// of Γ is still attained at the independence point μ = 1-δ.
double refined_lower_bound(const RelationIndexSet& rel, double delta, double tol = 1e-6);

struct UpperBoundResult {
  double r_upper = 0;  // max over δ of rhat
  double delta = 0;    // maximizer
  /// Probe ratio slightly above r_upper and whether max_δ γ < 1 there.
  double probe_r = 0;
  bool certificate = false;
};

UpperBoundResult upper_bound_detail(const RelationIndexSet& rel, double tol = 1e-10);
double upper_bound(const RelationIndexSet& rel, double tol = 1e-10);

/// max over a δ-grid of log γ(r, δ) (negative means E[X] vanishes exponentially).
double max_log_gamma(const RelationIndexSet& rel, double r, double step = 1e-4);

using Diagnostic = std::variant<bool, double, std::string>;

struct BoundsReport {
  RelationIndexSet relation;
  double delta_used = 0;
  double rho = 0;
  double nu = 0;
  double r_star = 0;
  double r_refined = 0;
  double r_hat = 0;
  double r_upper = 0;
  std::map<std::string, Diagnostic> diagnostics;
};

struct BoundsOptions {
  std::optional<double> delta;  // must be in Δ; default chosen by best_delta
  double refine_tol = 1e-6;
  double upper_tol = 1e-10;
};

BoundsReport compute_bounds(const RelationIndexSet& rel, const BoundsOptions& options = {});

/// Default δ: fixed point of δ ← best_delta(rel, r_star(δ)).
double default_bounds_delta(const RelationIndexSet& rel);

/// JSON document with fixed field names, numbers to 12 significant digits.
std::string to_json(const BoundsReport& report, int indent = 2);

/// Laplace-method estimate of E[X_δ²] at n variables and m = r·n constraints:
/// δn · (2πn)^{-3/2} · u(μ0) · sqrt(2π / (n |v''(μ0)|)) · exp(n v(μ0)),
/// v = log Γ, u = (x1 x2 x3 x4)^{-1/2} the multinomial prefactor.
/// Throws MultipleMaximaError / DegenerateCurvatureError when the method does not apply.
double laplace_estimate(const RelationIndexSet& rel, double delta, double r, std::size_t n);

// Certificates specific to 1-in-k-SAT.

struct OverlapScan {
  double argmax = 0;
  double max_log = 0;              // max over the grid of log Γ
  double log_at_independence = 0;  // log Γ(1 - 1/k)
  double log_gamma_sq = 0;         // 2 log γ(r, 1/k)
};

/// Grid scan of log Γ_{1_k, 1/k, r} over [0, 1] using the closed form of G.
OverlapScan scan_one_in_k_overlap(int k, double r, double step = 1e-4);

/// True iff at r = log k / k the grid argmax of Γ is within `step` of 1 - 1/k.
bool verify_1ink_global_max(int k, double step = 1e-4);

/// Staged bound on μ ∈ [0, 1/2] and chord/tangent sign checks on [1/2, 1] at r = log k/k.
CheckReport verify_appendix_c(int k);

/// Piecewise first-moment bound at r = log²k / k plus a dense direct grid.
CheckReport verify_upper_bound_fact(int k);

}  // namespace momentlab
