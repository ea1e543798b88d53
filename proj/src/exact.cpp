#include "momentlab/exact.hpp"

#include <numeric>

#include "momentlab/errors.hpp"

namespace momentlab::exact {

namespace {

void require_unit(const mpq_class& x, const char* fn) {
  if (x < 0 || x > 1) throw DomainError(std::string(fn) + ": argument outside [0,1]");
}

}  // namespace

mpz_class binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

mpz_class multinomial(int n, const std::vector<int>& parts) {
  long total = 0;
  for (int p : parts) {
    if (p < 0) throw ValidationError("multinomial: negative part");
    total += p;
  }
  if (total != n) throw ValidationError("multinomial: parts do not sum to n");
  mpz_class out = 1;
  int remaining = n;
  for (int p : parts) {
    out *= binomial(remaining, p);
    remaining -= p;
  }
  return out;
}

mpq_class power(const mpq_class& base, int exponent) {
  if (exponent < 0) throw DomainError("power: negative exponent");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

mpq_class pi(int i, int k, const mpq_class& delta) {
  if (i < 0 || i > k) throw DomainError("pi: i outside 0..k");
  require_unit(delta, "pi");
  return mpq_class(binomial(k, i)) * power(delta, i) * power(1 - delta, k - i);
}

mpq_class g(const RelationIndexSet& rel, const mpq_class& delta) {
  mpq_class s = 0;
  for (int i : rel.allowed()) s += pi(i, rel.k(), delta);
  return s;
}

mpq_class h(const RelationIndexSet& rel, const mpq_class& delta) {
  mpq_class s = 0;
  for (int i : rel.allowed()) s += i * pi(i, rel.k(), delta);
  return s;
}

// d/dδ [δ^i (1-δ)^{k-i}] = i δ^{i-1}(1-δ)^{k-i} - (k-i) δ^i (1-δ)^{k-i-1}
mpq_class g_prime(const RelationIndexSet& rel, const mpq_class& delta) {
  require_unit(delta, "g_prime");
  const int k = rel.k();
  const mpq_class one_minus = 1 - delta;
  mpq_class s = 0;
  for (int i : rel.allowed()) {
    const mpq_class c(binomial(k, i));
    mpq_class term = 0;
    if (i > 0) term += i * power(delta, i - 1) * power(one_minus, k - i);
    if (k - i > 0) term -= (k - i) * power(delta, i) * power(one_minus, k - i - 1);
    s += c * term;
  }
  return s;
}

mpq_class g_second(const RelationIndexSet& rel, const mpq_class& delta) {
  require_unit(delta, "g_second");
  const int k = rel.k();
  const mpq_class x = delta;
  const mpq_class y = 1 - delta;
  mpq_class s = 0;
  for (int i : rel.allowed()) {
    const int j = k - i;
    mpq_class term = 0;
    if (i >= 2) term += i * (i - 1) * power(x, i - 2) * power(y, j);
    if (i >= 1 && j >= 1) term -= 2 * i * j * power(x, i - 1) * power(y, j - 1);
    if (j >= 2) term += j * (j - 1) * power(x, i) * power(y, j - 2);
    s += mpq_class(binomial(k, i)) * term;
  }
  return s;
}

mpq_class kappa(int i, int j, int d, int k, const mpq_class& delta, const mpq_class& mu) {
  if (d < std::max(0, i + j - k) || d > std::min(i, j)) throw DomainError("kappa: d outside its range");
  require_unit(delta, "kappa");
  const mpq_class x4 = 1 - delta - mu * delta;
  if (mu < 0 || x4 < 0 || mu > 1) throw DomainError("kappa: mu outside the overlap range");
  return power((1 - mu) * delta, d) * power(mu * delta, i + j - 2 * d) * power(x4, k - i - j + d);
}

mpq_class phi(int i, int j, const mpq_class& delta, const mpq_class& mu, int k) {
  if (i < 0 || j < 0 || i > k || j > k) throw DomainError("phi: i, j outside 0..k");
  mpq_class s = 0;
  for (int d = std::max(0, i + j - k); d <= std::min(i, j); ++d) {
    s += mpq_class(binomial(k, i) * binomial(i, d) * binomial(k - i, j - d)) * kappa(i, j, d, k, delta, mu);
  }
  return s;
}

mpq_class bigG(const RelationIndexSet& rel, const mpq_class& delta, const mpq_class& mu) {
  mpq_class s = 0;
  for (int i : rel.allowed()) {
    for (int j : rel.allowed()) s += phi(i, j, delta, mu, rel.k());
  }
  return s;
}

mpq_class joint_tuple_probability(int i, int j, int k, const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  mpq_class s = 0;
  for (int d = std::max(0, i + j - k); d <= std::min(i, j); ++d) {
    s += mpq_class(binomial(k, i) * binomial(i, d) * binomial(k - i, j - d)) * power(a, d) *
         power(b, i + j - 2 * d) * power(c, k - i - j + d);
  }
  return s;
}

double to_double(const mpq_class& q) { return mpq_get_d(q.get_mpq_t()); }

}  // namespace momentlab::exact
