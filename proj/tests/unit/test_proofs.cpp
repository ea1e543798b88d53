#include <cmath>

#include "doctest.h"
#include "momentlab/bounds.hpp"
#include "oracles.hpp"

using namespace momentlab;
using doctest::Approx;

TEST_CASE("1-in-k overlap maximum sits at independence for r = log k / k") {
  for (int k = 3; k <= 12; ++k) {
    CHECK(verify_1ink_global_max(k));
    const double r = std::log(k) / k;
    const auto scan = scan_one_in_k_overlap(k, r);
    CHECK(scan.argmax == Approx(1 - 1.0 / k).epsilon(2e-4));
    CHECK(scan.log_at_independence == Approx(scan.log_gamma_sq).epsilon(1e-10));
    CHECK(scan.log_gamma_sq == Approx(2 * oracle::log_gamma(k, {1}, r, 1.0 / k)).epsilon(1e-10));
  }
}

TEST_CASE("closed-form G agrees with the generic sum") {
  // scan_one_in_k_overlap uses a closed form; compare log Γ at a couple of μ.
  for (int k : {3, 5, 9}) {
    const double d = 1.0 / k, r = std::log(k) / k;
    const auto scan = scan_one_in_k_overlap(k, r, 0.25);
    double best = -INFINITY;
    for (double mu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      best = std::max(best, r * std::log(oracle::bigG(k, {1}, d, mu)) - oracle::log_t(d, mu));
    }
    CHECK(scan.max_log == Approx(best).epsilon(1e-10));
  }
}

TEST_CASE("overlap certificate reports") {
  const auto r3 = verify_appendix_c(3);
  REQUIRE(r3.find("grid_argmax") != nullptr);
  CHECK(r3.find("grid_argmax")->status == CheckStatus::Pass);
  CHECK(r3.find("stage_iii")->status == CheckStatus::NotApplicable);

  for (int k : {4, 6, 10}) {
    const auto rep = verify_appendix_c(k);
    for (const char* item : {"identity_at_independence", "grid_argmax", "tau_prime_half", "stage_i_monotone",
                             "stage_i_sound", "stage_ii", "chord_derivative_positive", "tangent_derivative_negative",
                             "chord_coefficient", "tangent_coefficient"}) {
      INFO(k << " " << item);
      REQUIRE(rep.find(item) != nullptr);
      CHECK(rep.find(item)->status == CheckStatus::Pass);
    }
    // The literal third-stage inequality does not hold at these k; the
    // report must say so rather than hide it.
    CHECK(rep.find("stage_iii")->status == CheckStatus::Fail);
    CHECK_FALSE(rep.passed());
  }
}

TEST_CASE("upper-bound fact report") {
  const auto r5 = verify_upper_bound_fact(5);
  for (const auto& item : r5.items) CHECK(item.status == CheckStatus::Info);

  for (int k = 8; k <= 15; ++k) {
    const auto rep = verify_upper_bound_fact(k);
    INFO(k);
    CHECK(rep.passed());
    CHECK(rep.find("direct_grid")->status == CheckStatus::Pass);
    CHECK(rep.find("direct_grid")->value < 1);
  }
  // At k = 7 the dense grid confirms the claim but the tangent piece does not.
  const auto r7 = verify_upper_bound_fact(7);
  CHECK(r7.find("direct_grid")->status == CheckStatus::Pass);
  CHECK(r7.find("piece_iii")->status == CheckStatus::Fail);
}
