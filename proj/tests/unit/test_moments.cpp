#include <cmath>

#include "doctest.h"
#include "momentlab/errors.hpp"
#include "momentlab/moments.hpp"
#include "momentlab/numeric.hpp"
#include "momentlab/rng.hpp"
#include "momentlab/verify.hpp"
#include "oracles.hpp"

using namespace momentlab;
using doctest::Approx;

namespace {

const RelationIndexSet kOne3 = RelationIndexSet::one_in_k(3);

}  // namespace

TEST_CASE("binomial probabilities") {
  CHECK(pi(0, 4, 0.0) == 1.0);
  CHECK(pi(1, 3, 1.0 / 3) == Approx(4.0 / 9).epsilon(1e-15));
  double s = 0;
  for (int i = 0; i <= 5; ++i) s += pi(i, 5, 0.37);
  CHECK(std::abs(s - 1.0) < 1e-14);
  CHECK_THROWS_AS(pi(4, 3, 0.5), DomainError);
  CHECK_THROWS_AS(pi(1, 3, 1.5), DomainError);
  CHECK(binomial(20, 10) == 184756.0);
}

TEST_CASE("g and h") {
  CHECK(g(kOne3, 1.0 / 3) == Approx(4.0 / 9).epsilon(1e-15));
  CHECK(g(RelationIndexSet::not_all_equal(3), 0.5) == Approx(0.75).epsilon(1e-15));
  CHECK(g(kOne3, 0.0) == 0.0);
  CHECK(g(kOne3, 1.0) == 0.0);
  CHECK_THROWS_AS(g(kOne3, -0.1), DomainError);
  for (int k = 3; k <= 9; ++k) {
    const auto rel = RelationIndexSet::one_in_k(k);
    for (double d : {0.05, 0.2, 0.5, 0.9}) {
      CHECK(g(rel, d) == Approx(k * d * std::pow(1 - d, k - 1)).epsilon(1e-13));
      CHECK(h(rel, d) == Approx(g(rel, d)).epsilon(1e-15));
    }
  }
  CHECK(h(RelationIndexSet::not_all_equal(4), 0.0) == 0.0);
}

TEST_CASE("analytic derivatives of g against finite differences") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const double d = 0.02 + 0.96 * unit_draw(rng);
    auto f = [&](double x) { return oracle::g(rel.k(), rel.allowed(), x); };
    CHECK(g_prime(rel, d) == Approx(derivative(f, d, 1)).epsilon(1e-7).scale(1.0));
    CHECK(g_second(rel, d) == Approx(derivative(f, d, 2)).epsilon(1e-4).scale(1.0));
    // δ(1-δ) g' = h - kδ g
    CHECK(d * (1 - d) * derivative(f, d, 1) == Approx(h(rel, d) - rel.k() * d * g(rel, d)).epsilon(1e-9).scale(1.0));
  }
  CHECK(derivative([](double x) { return g(kOne3, x); }, 1.0 / 3, 1) == Approx(0.0).epsilon(1e-6));
  CHECK(derivative([](double x) { return g(kOne3, x); }, 1.0 / 3, 2) == Approx(-6.0).epsilon(1e-4));
  CHECK(g_second(kOne3, 1.0 / 3) == Approx(-6.0));
}

TEST_CASE("gamma and the first-moment cap") {
  CHECK(gamma(kOne3, 0.0, 0.5) == Approx(2.0).epsilon(1e-15));
  CHECK(rhat(kOne3, 1.0 / 3) == Approx(0.78492).epsilon(1e-5));
  const double direct = ((1.0 / 3) * std::log(1.0 / 3) + (2.0 / 3) * std::log(2.0 / 3)) / std::log(4.0 / 9);
  CHECK(rhat(kOne3, 1.0 / 3) == Approx(direct).epsilon(1e-14));
  CHECK(gamma(kOne3, std::log(3.0) / 3, 1.0 / 3) ==
        Approx(std::exp(oracle::log_gamma(3, {1}, std::log(3.0) / 3, 1.0 / 3))).epsilon(1e-13));
  CHECK_THROWS_AS(gamma(kOne3, -1.0, 0.5), DomainError);
  CHECK_THROWS_AS(rhat(kOne3, 0.0), DomainError);

  SplitMix64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const double d = 0.03 + 0.94 * unit_draw(rng);
    if (g(rel, d) < 1e-12) continue;
    CHECK(gamma(rel, rhat(rel, d), d) == Approx(1.0).epsilon(1e-10));
    CHECK(gamma(rel, 0.3, d) > gamma(rel, 0.6, d));
  }
  // rhat(1_k, 1/k) k / log k behaves like 1 + 1/log k.
  double prev = INFINITY;
  for (int k : {50, 100, 200}) {
    const double ratio = rhat(RelationIndexSet::one_in_k(k), 1.0 / k) / (std::log(k) / k);
    CHECK(std::abs(ratio - (1 + 1 / std::log(k))) < 0.02);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("kappa, phi and G") {
  // κ(i,i,i,δ,0) = δ^i (1-δ)^{k-i}
  CHECK(kappa(2, 2, 2, 5, 0.3, 0.0) == Approx(0.09 * std::pow(0.7, 3)).epsilon(1e-14));
  // κ(1,1,1,1/3,2/3) = (1/9)^1 · (2/9)^0 · (4/9)^2
  CHECK(kappa(1, 1, 1, 3, 1.0 / 3, 2.0 / 3) == Approx((1.0 / 9) * (16.0 / 81)).epsilon(1e-14));
  CHECK_THROWS_AS(kappa(1, 1, 2, 3, 0.3, 0.5), DomainError);
  CHECK_THROWS_AS(kappa(2, 2, 0, 3, 0.3, 0.5), DomainError);
  CHECK(phi(1, 1, 1.0 / 3, 2.0 / 3, 3) == Approx(16.0 / 81).epsilon(1e-14));
  CHECK(bigG(kOne3, 1.0 / 3, 2.0 / 3) == Approx(16.0 / 81).epsilon(1e-14));
  CHECK_THROWS_AS(bigG(kOne3, 0.75, 0.5), DomainError);  // (1-δ)/δ = 1/3

  SplitMix64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const int k = rel.k();
    const double d = 0.01 + 0.98 * unit_draw(rng);
    const double mu = overlap_max(d) * unit_draw(rng);
    CHECK(bigG(rel, d, mu) == Approx(oracle::bigG(k, rel.allowed(), d, mu)).epsilon(1e-12));
    double total = 0;
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= k; ++j) total += phi(i, j, d, mu, k);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    const int i = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(k + 1)));
    const int j = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(k + 1)));
    CHECK(phi(i, j, d, 1 - d, k) == Approx(pi(i, k, d) * pi(j, k, d)).epsilon(1e-12).scale(1e-300));
    const double gv = g(rel, d);
    CHECK(std::abs(bigG(rel, d, 1 - d) - gv * gv) < 1e-12);
  }
}

TEST_CASE("closed form of G for 1-in-k") {
  for (int k = 3; k <= 12; ++k) {
    const auto rel = RelationIndexSet::one_in_k(k);
    for (double mu : {0.0, 0.1, 0.5, 1.0 - 1.0 / k, 1.0}) {
      const double closed = std::pow(k, 1 - k) * std::pow(k - 1 - mu, k - 2) * (k * (1 - mu + mu * mu) - 1);
      CHECK(bigG(rel, 1.0 / k, mu) == Approx(closed).epsilon(1e-12));
      CHECK(bigG_one_in_k(k, mu) == Approx(closed).epsilon(1e-14));
    }
  }
}

TEST_CASE("entropy factor t") {
  CHECK(t(0.5, 0.0) == Approx(0.5).epsilon(1e-15));
  SplitMix64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const double d = 0.01 + 0.98 * unit_draw(rng);
    const double e = std::exp(oracle::xl(d) + oracle::xl(1 - d));
    CHECK(std::abs(t(d, 1 - d) - e * e) < 1e-14);
    const double mu = overlap_max(d) * (0.001 + 0.998 * unit_draw(rng));
    CHECK(t(d, mu) > 0.0);
    CHECK(log_t(d, mu) == Approx(oracle::log_t(d, mu)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(t(0.75, 0.5), DomainError);
}

TEST_CASE("Gamma at the independence point and its maximum for 1-in-3") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 12);
    const double d = 0.01 + 0.98 * unit_draw(rng);
    const double r = 2 * unit_draw(rng);
    const double gam = gamma(rel, r, d);
    CHECK(std::abs(bigGamma(rel, d, r, 1 - d) - gam * gam) < 1e-10);
    const double mu = overlap_max(d) * unit_draw(rng);
    CHECK(bigGamma(rel, d, 0.0, mu) == Approx(1.0 / t(d, mu)).epsilon(1e-12));
  }
  const double r = std::log(3.0) / 3;
  double best = -1, arg = 0;
  for (double mu : linspace(0.0, 1.0, 1000)) {
    const double v = bigGamma(kOne3, 1.0 / 3, r, mu);
    if (v > best) {
      best = v;
      arg = mu;
    }
  }
  CHECK(std::abs(arg - 2.0 / 3) <= 1e-3 + 1e-12);
}

TEST_CASE("overlap polynomial derivatives") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rel = random_relation(rng, 3, 10);
    const double d = 0.05 + 0.9 * unit_draw(rng);
    const OverlapPolynomial poly(rel, d);
    const double mu = poly.mu_max() * (0.05 + 0.9 * unit_draw(rng));
    auto G = [&](double x) { return oracle::bigG(rel.k(), rel.allowed(), d, x); };
    const auto der = poly.derivatives(mu);
    CHECK(der.value == Approx(G(mu)).epsilon(1e-12));
    CHECK(der.first == Approx(derivative(G, mu, 1)).epsilon(1e-6).scale(1e-3));
    CHECK(der.second == Approx(derivative(G, mu, 2)).epsilon(1e-4).scale(1e-2));
    if (G(mu) > 1e-6) {
      CHECK(poly.log_second(mu) ==
            Approx(oracle::log_G_second_fd(rel.k(), rel.allowed(), d, mu)).epsilon(1e-3).scale(1.0));
    }
  }
}

TEST_CASE("numeric helpers") {
  CHECK(derivative([](double x) { return x * x; }, 3.0, 1) == Approx(6.0).epsilon(1e-7));
  CHECK_THROWS_AS(derivative([](double x) { return x; }, 0.0, 1, {0.0, 1.0}), DomainClippedError);
  const auto mn = golden_minimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(mn.x == Approx(0.3).epsilon(1e-8));
  const auto mx = scan_maximize([](double x) { return std::sin(x); }, 0.0, 3.0, 100);
  CHECK(mx.x == Approx(M_PI / 2).epsilon(1e-8));
  CHECK(bisect_root([](double x) { return x * x - 2; }, 0.0, 2.0, 1e-12) == Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1; }, 0.0, 2.0, 1e-12), NumericalError);
  const auto xs = linspace(0.0, 1.0, 4);
  CHECK(xs.size() == 5);
  CHECK(xs.back() == 1.0);
}
