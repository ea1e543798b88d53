#include <cmath>

#include "doctest.h"
#include "momentlab/characteristic.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"
#include "momentlab/rng.hpp"
#include "momentlab/verify.hpp"
#include "oracles.hpp"

using namespace momentlab;
using doctest::Approx;

TEST_CASE("characteristic set of 1-in-k is {1/k}") {
  for (int k = 3; k <= 10; ++k) {
    const auto set = find_characteristic_set(RelationIndexSet::one_in_k(k));
    REQUIRE(set.points.size() == 1);
    CHECK(std::abs(set.points[0].delta - 1.0 / k) < 1e-8);
    CHECK(set.points[0].g_second < 0);
    CHECK_FALSE(set.points[0].plateau);
  }
}

TEST_CASE("not-all-equal and the three-peak relation") {
  const auto nae = find_characteristic_set(RelationIndexSet::not_all_equal(3));
  REQUIRE(nae.points.size() == 1);
  CHECK(nae.points[0].delta == Approx(0.5).epsilon(1e-9));

  auto set = find_characteristic_set(RelationIndexSet(13, {1, 8, 12}));
  REQUIRE(set.points.size() == 3);
  const auto& p = set.points;
  CHECK(p[0].delta < p[1].delta);
  CHECK(p[1].delta < p[2].delta);
  CHECK(p[1].g_value < p[0].g_value);
  CHECK(p[0].g_value < p[2].g_value);
  annotate_gamma(set, 0.64);
  CHECK(*p[1].gamma_at_r > *p[0].gamma_at_r);
  CHECK(*p[1].gamma_at_r > *p[2].gamma_at_r);
  CHECK(best_delta(set, 0.64) == p[1].delta);
  // Each point is a grid-scan maximum of g in its neighbourhood.
  for (const auto& pt : p) {
    for (double off : {-1e-3, 1e-3}) CHECK(oracle::g(13, {1, 8, 12}, pt.delta + off) < pt.g_value);
  }
}

TEST_CASE("flat maximum is still found") {
  // g = (1 - (1-2δ)^4)/2 has g' ∝ (1-2δ)^3: a sign change of odd multiplicity.
  const auto set = find_characteristic_set(RelationIndexSet(4, {1, 3}));
  REQUIRE(set.points.size() == 1);
  CHECK(set.points[0].delta == Approx(0.5).epsilon(1e-6));
  CHECK(set.points[0].plateau);
}

TEST_CASE("every relation has a nonempty characteristic set") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const auto rel = random_relation(rng, 3, 14);
    const auto set = find_characteristic_set(rel);
    CHECK_FALSE(set.points.empty());
    for (const auto& p : set.points) {
      CHECK(std::abs(g_prime(rel, p.delta)) < 1e-6);
      CHECK(set.contains(p.delta, 1e-12));
    }
  }
}

TEST_CASE("stationarity of Gamma at 1-delta holds exactly on Delta") {
  SplitMix64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const double d = 0.05 + 0.9 * unit_draw(rng);
    auto G = [&](double mu) { return oracle::bigG(rel.k(), rel.allowed(), d, mu); };
    const double fd = derivative(G, 1 - d, 1, {0.0, overlap_max(d)});
    const double gv = g(rel, d);
    CHECK(gprime_closed_at_independence(rel, d) == Approx(fd).epsilon(1e-6).scale(gv * gv));
  }
  for (const auto& rel : {RelationIndexSet::one_in_k(3), RelationIndexSet::one_in_k(6),
                          RelationIndexSet::not_all_equal(3), RelationIndexSet(13, {1, 8, 12})}) {
    const auto set = find_characteristic_set(rel);
    for (const auto& p : set.points) {
      CHECK(verify_stationarity(rel, p.delta, 0.4));
      CHECK(std::abs(independence_slope(rel, p.delta, 0.4)) < 1e-6);
    }
    for (double d : linspace(0.0025, 0.9975, 199)) {
      if (!set.contains(d, 1e-3)) CHECK_FALSE(verify_stationarity(rel, d, 0.4));
    }
  }
}

TEST_CASE("best delta picks the largest gamma") {
  const auto set = find_characteristic_set(RelationIndexSet::one_in_k(5));
  CHECK(best_delta(set, 0.2) == set.points[0].delta);
  CHECK(best_delta(RelationIndexSet::one_in_k(5), 0.2) == Approx(0.2).epsilon(1e-9));
}
