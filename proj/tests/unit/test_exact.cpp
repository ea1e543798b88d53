#include <cmath>

#include "doctest.h"
#include "momentlab/exact.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/rng.hpp"
#include "momentlab/verify.hpp"
#include "oracles.hpp"

using namespace momentlab;
using doctest::Approx;

TEST_CASE("integers") {
  CHECK(exact::binomial(10, 3) == 120);
  CHECK(exact::binomial(5, 6) == 0);
  CHECK(exact::binomial(5, -1) == 0);
  CHECK(exact::binomial(60, 30) == mpz_class("118264581564861424"));
  CHECK(exact::multinomial(6, {1, 2, 3}) == 60);
  CHECK(exact::power(mpq_class(0), 0) == 1);
  CHECK(exact::power(mpq_class(2, 3), 3) == mpq_class(8, 27));
}

TEST_CASE("rational twins match the double implementations") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 10);
    const mpq_class d(1 + static_cast<long>(rng.bounded(98)), 100);
    const mpq_class mu(static_cast<long>(rng.bounded(101)), 100);
    const double dd = d.get_d();
    CHECK(exact::to_double(exact::g(rel, d)) == Approx(g(rel, dd)).epsilon(1e-12));
    CHECK(exact::to_double(exact::h(rel, d)) == Approx(h(rel, dd)).epsilon(1e-12));
    CHECK(exact::to_double(exact::g_prime(rel, d)) == Approx(g_prime(rel, dd)).epsilon(1e-10).scale(1));
    if (mu * d <= 1 - d) {
      CHECK(exact::to_double(exact::bigG(rel, d, mu)) ==
            Approx(oracle::bigG(rel.k(), rel.allowed(), dd, mu.get_d())).epsilon(1e-12));
    }
  }
}

TEST_CASE("exact identity at independence") {
  for (int k = 3; k <= 8; ++k) {
    for (const auto& rel : {RelationIndexSet::one_in_k(k), RelationIndexSet::not_all_equal(k)}) {
      for (int num = 1; num < 10; ++num) {
        const mpq_class d(num, 10);
        const mpq_class gv = exact::g(rel, d);
        CHECK(exact::bigG(rel, d, 1 - d) == gv * gv);
      }
    }
  }
}

TEST_CASE("kappa sums to one over d (Vandermonde)") {
  for (int k = 3; k <= 7; ++k) {
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) {
        mpz_class sum = 0;
        for (int d = 0; d <= k; ++d) sum += exact::binomial(i, d) * exact::binomial(k - i, j - d);
        CHECK(sum == exact::binomial(k, j));
      }
    }
  }
}

TEST_CASE("joint tuple probability partitions") {
  const mpq_class a(1, 5), b(1, 7);
  const mpq_class c = 1 - a - 2 * b;
  const int k = 4;
  mpq_class total = 0;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) total += exact::joint_tuple_probability(i, j, k, a, b, c);
  CHECK(total == 1);
  CHECK(exact::joint_tuple_probability(0, 0, k, a, b, c) == exact::power(c, k));
}
