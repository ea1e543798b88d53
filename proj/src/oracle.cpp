#include "momentlab/oracle.hpp"

#include <bit>

#include "momentlab/errors.hpp"
#include "momentlab/exact.hpp"

namespace momentlab {

const char* to_string(MomentMethod method) {
  return method == MomentMethod::Enumeration ? "enumeration" : "product-formula";
}

namespace {

void validate(int n, int p, int m, const RelationIndexSet&) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (p < 0 || p > n) throw ValidationError("p must lie in 0..n");
  if (m < 0) throw ValidationError("m must be >= 0");
}

// n^e with an overflow guard against `cap`; returns cap + 1 if exceeded.
std::uint64_t capped_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

// Per-tuple satisfaction masks over all 2^n valuations (bit v set when the
// valuation with bit pattern v satisfies the constraint on that tuple).
std::vector<std::uint64_t> tuple_masks(int n, const RelationIndexSet& rel) {
  const int k = rel.k();
  const std::uint64_t tuples = capped_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), kEnumerationCap);
  std::vector<std::uint64_t> masks;
  masks.reserve(tuples);
  std::vector<int> vars(static_cast<std::size_t>(k), 0);
  const std::uint64_t valuations = std::uint64_t{1} << n;
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::uint64_t rest = t;
    for (int c = k - 1; c >= 0; --c) {
      vars[static_cast<std::size_t>(c)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
      rest /= static_cast<std::uint64_t>(n);
    }
    std::uint64_t mask = 0;
    for (std::uint64_t v = 0; v < valuations; ++v) {
      int ones = 0;
      for (int x : vars) ones += static_cast<int>((v >> x) & 1U);
      if (rel.accepts(ones)) mask |= std::uint64_t{1} << v;
    }
    masks.push_back(mask);
  }
  return masks;
}

struct EnumerationSpace {
  std::vector<std::uint64_t> masks;
  std::uint64_t instances = 0;
};

EnumerationSpace prepare_enumeration(int n, int m, const RelationIndexSet& rel) {
  if (n > kEnumerationMaxN) {
    throw SizeLimitError("enumeration supports n <= " + std::to_string(kEnumerationMaxN));
  }
  const std::uint64_t tuples =
      capped_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rel.k()), kEnumerationCap);
  const std::uint64_t instances = capped_pow(tuples, static_cast<std::uint64_t>(m), kEnumerationCap);
  if (tuples > kEnumerationCap || instances > kEnumerationCap) {
    throw SizeLimitError("enumeration space (n^k)^m exceeds " + std::to_string(kEnumerationCap));
  }
  return {tuple_masks(n, rel), instances};
}

// Visits every ordered m-tuple of constraint tuples, passing the AND of their masks.
template <typename Visit>
void for_each_instance(const std::vector<std::uint64_t>& masks, int m, std::uint64_t all, Visit&& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  std::vector<std::uint64_t> prefix(static_cast<std::size_t>(m) + 1, all);
  // prefix[c] = AND of the masks chosen at positions < c
  for (int c = 0; c < m; ++c) prefix[static_cast<std::size_t>(c) + 1] = prefix[static_cast<std::size_t>(c)] & masks[0];
  while (true) {
    visit(prefix[static_cast<std::size_t>(m)]);
    int c = m - 1;
    while (c >= 0 && ++idx[static_cast<std::size_t>(c)] == masks.size()) {
      idx[static_cast<std::size_t>(c)] = 0;
      --c;
    }
    if (c < 0) return;
    for (int j = c; j < m; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      prefix[uj + 1] = prefix[uj] & masks[idx[uj]];
    }
  }
}

std::uint64_t weight_mask(int n, int p) {
  std::uint64_t out = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (std::popcount(v) == p) out |= std::uint64_t{1} << v;
  }
  return out;
}

mpz_class space_size(int n, int k, int m) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k) * static_cast<unsigned long>(m));
  return out;
}

RationalMoment enumerate_moment(int n, int p, int m, const RelationIndexSet& rel, int power) {
  const auto space = prepare_enumeration(n, m, rel);
  const std::uint64_t all = weight_mask(n, p);
  // At most 1e8 instances times 64^2, so 64 bits cannot overflow.
  std::uint64_t acc = 0;
  for_each_instance(space.masks, m, all, [&](std::uint64_t sat) {
    const auto x = static_cast<std::uint64_t>(std::popcount(sat));
    acc += power == 1 ? x : x * x;
  });
  const mpz_class sum(static_cast<unsigned long>(acc));
  RationalMoment out;
  out.space_size = space_size(n, rel.k(), m);
  out.value = mpq_class(sum, out.space_size);
  out.value.canonicalize();
  out.method = MomentMethod::Enumeration;
  return out;
}

}  // namespace

RationalMoment exact_first_moment(int n, int p, int m, const RelationIndexSet& rel, MomentMethod method) {
  validate(n, p, m, rel);
  if (method == MomentMethod::Enumeration) return enumerate_moment(n, p, m, rel, 1);
  mpq_class delta(p, n);
  delta.canonicalize();
  const mpq_class q = exact::g(rel, delta);
  RationalMoment out;
  out.value = mpq_class(exact::binomial(n, p)) * exact::power(q, m);
  out.space_size = 1;
  out.method = MomentMethod::ProductFormula;
  return out;
}

RationalMoment exact_second_moment(int n, int p, int m, const RelationIndexSet& rel, MomentMethod method) {
  validate(n, p, m, rel);
  if (method == MomentMethod::Enumeration) return enumerate_moment(n, p, m, rel, 2);
  const int k = rel.k();
  mpq_class sum = 0;
  for (int pp = 0; pp <= std::min(p, n - p); ++pp) {
    mpq_class a(p - pp, n), b(pp, n), c(n - p - pp, n);
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    mpq_class q = 0;
    for (int i : rel.allowed()) {
      for (int j : rel.allowed()) q += exact::joint_tuple_probability(i, j, k, a, b, c);
    }
    sum += mpq_class(exact::multinomial(n, {p - pp, pp, pp, n - p - pp})) * exact::power(q, m);
  }
  RationalMoment out;
  out.value = sum;
  out.space_size = 1;
  out.method = MomentMethod::ProductFormula;
  return out;
}

SolutionCountMoments enumerate_solution_counts(int n, int m, const RelationIndexSet& rel) {
  if (n < 1 || m < 0) throw ValidationError("n must be >= 1 and m >= 0");
  const auto space = prepare_enumeration(n, m, rel);
  std::vector<std::uint64_t> weights;
  for (int p = 0; p <= n; ++p) weights.push_back(weight_mask(n, p));
  std::vector<mpz_class> by(static_cast<std::size_t>(n) + 1, 0);
  mpz_class total = 0;
  const std::uint64_t valuations = std::uint64_t{1} << n;
  const std::uint64_t full = valuations == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << valuations) - 1;
  for_each_instance(space.masks, m, full, [&](std::uint64_t sat) {
    total += static_cast<unsigned long>(std::popcount(sat));
    for (int p = 0; p <= n; ++p) {
      by[static_cast<std::size_t>(p)] += static_cast<unsigned long>(std::popcount(sat & weights[static_cast<std::size_t>(p)]));
    }
  });
  const mpz_class size = space_size(n, rel.k(), m);
  SolutionCountMoments out;
  for (auto& b : by) {
    mpq_class q(b, size);
    q.canonicalize();
    out.by_ones.push_back(q);
  }
  out.total = mpq_class(total, size);
  out.total.canonicalize();
  return out;
}

mpq_class enumerate_phi_fraction(int n, int p, int p_prime, int i, int j, int k) {
  if (n < 1 || k < 1) throw ValidationError("n and k must be positive");
  if (p_prime < 0 || p - p_prime < 0 || n - p - p_prime < 0) {
    throw ValidationError("overlap requires 0 <= p' <= p and p + p' <= n");
  }
  const std::uint64_t tuples = capped_pow(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k), 10'000'000);
  if (tuples > 10'000'000) throw SizeLimitError("n^k exceeds 1e7");
  // σ1 sets [0, p); σ2 sets [0, p-p') and [p, p+p').
  std::vector<int> s1(static_cast<std::size_t>(n), 0), s2(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < p; ++v) s1[static_cast<std::size_t>(v)] = 1;
  for (int v = 0; v < p - p_prime; ++v) s2[static_cast<std::size_t>(v)] = 1;
  for (int v = p; v < p + p_prime; ++v) s2[static_cast<std::size_t>(v)] = 1;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::uint64_t rest = t;
    int ones1 = 0, ones2 = 0;
    for (int c = 0; c < k; ++c) {
      const auto x = static_cast<std::size_t>(rest % static_cast<std::uint64_t>(n));
      rest /= static_cast<std::uint64_t>(n);
      ones1 += s1[x];
      ones2 += s2[x];
    }
    if (ones1 == i && ones2 == j) ++hits;
  }
  mpq_class out(mpz_class(static_cast<unsigned long>(hits)), mpz_class(static_cast<unsigned long>(tuples)));
  out.canonicalize();
  return out;
}

bool verify_phi_counts(int n, int p, int p_prime, int i, int j, int k) {
  const mpq_class enumerated = enumerate_phi_fraction(n, p, p_prime, i, j, k);
  if (i < 0 || j < 0 || i > k || j > k) return enumerated == 0;
  mpq_class a(p - p_prime, n), b(p_prime, n), c(n - p - p_prime, n);
  a.canonicalize();
  b.canonicalize();
  c.canonicalize();
  return enumerated == exact::joint_tuple_probability(i, j, k, a, b, c);
}

mpq_class moment_ratio(int n, int p, int m, const RelationIndexSet& rel) {
  const auto second = exact_second_moment(n, p, m, rel);
  if (second.value == 0) return 0;
  const auto first = exact_first_moment(n, p, m, rel);
  return first.value * first.value / second.value;
}

}  // namespace momentlab
