#include "doctest.h"
#include "momentlab/errors.hpp"
#include "momentlab/exact.hpp"
#include "momentlab/oracle.hpp"

using namespace momentlab;

namespace {

const auto kOne3 = RelationIndexSet::one_in_k(3);

// Brute force over every instance of n variables with m constraints and every
// valuation: counts ones-p solutions, with no shared code with the library.
mpq_class brute_first(int n, int p, int m, const RelationIndexSet& rel) {
  const int k = rel.k();
  long tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= n;
  long instances = 1;
  for (int i = 0; i < m; ++i) instances *= tuples;
  mpz_class sum = 0;
  for (long inst = 0; inst < instances; ++inst) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) != p) continue;
      bool ok = true;
      long rest = inst;
      for (int c = 0; c < m && ok; ++c) {
        long t = rest % tuples;
        rest /= tuples;
        int ones = 0;
        for (int pos = 0; pos < k; ++pos) {
          ones += (mask >> (t % n)) & 1;
          t /= n;
        }
        ok = rel.accepts(ones);
      }
      if (ok) ++sum;
    }
  }
  mpq_class out(sum, instances);
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("first moment") {
  const auto f = exact_first_moment(3, 1, 1, kOne3);
  CHECK(f.value == mpq_class(4, 3));
  const auto e = exact_first_moment(3, 1, 1, kOne3, MomentMethod::Enumeration);
  CHECK(e.value == mpq_class(4, 3));
  CHECK(e.space_size == 27);
  CHECK(brute_first(3, 1, 1, kOne3) == mpq_class(4, 3));
  CHECK(exact_first_moment(5, 2, 0, kOne3).value == 10);
  CHECK(exact_first_moment(5, 0, 2, kOne3).value == 0);
  CHECK(exact_first_moment(5, 0, 2, kOne3, MomentMethod::Enumeration).value == 0);
}

TEST_CASE("modes agree with each other and with brute force") {
  for (const auto& rel : {kOne3, RelationIndexSet(3, {1, 2}), RelationIndexSet(3, {2})}) {
    for (int n = 1; n <= 4; ++n) {
      for (int m = 0; m <= 2; ++m) {
        for (int p = 0; p <= n; ++p) {
          INFO(rel.to_string() << " n=" << n << " m=" << m << " p=" << p);
          const auto f1 = exact_first_moment(n, p, m, rel);
          CHECK(f1.value == exact_first_moment(n, p, m, rel, MomentMethod::Enumeration).value);
          const auto f2 = exact_second_moment(n, p, m, rel);
          CHECK(f2.value == exact_second_moment(n, p, m, rel, MomentMethod::Enumeration).value);
          CHECK(f2.value >= f1.value * f1.value);
          if (m <= 1 || n <= 3) CHECK(f1.value == brute_first(n, p, m, rel));
        }
      }
    }
  }
  CHECK(exact_second_moment(4, 2, 0, kOne3).value == 36);
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(exact_first_moment(7, 2, 1, kOne3, MomentMethod::Enumeration), SizeLimitError);
  CHECK_THROWS_AS(exact_first_moment(6, 2, 4, kOne3, MomentMethod::Enumeration), SizeLimitError);
  CHECK_THROWS_AS(verify_phi_counts(300, 100, 50, 1, 1, 3), SizeLimitError);
}

TEST_CASE("solution counts partition") {
  const auto counts = enumerate_solution_counts(4, 2, kOne3);
  mpq_class sum = 0;
  for (const auto& v : counts.by_ones) sum += v;
  CHECK(sum == counts.total);
  for (int p = 0; p <= 4; ++p) {
    CHECK(counts.by_ones[static_cast<std::size_t>(p)] == exact_first_moment(4, p, 2, kOne3).value);
  }
}

TEST_CASE("phi counts") {
  CHECK(verify_phi_counts(3, 1, 1, 1, 1, 3));
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) CHECK(verify_phi_counts(6, 3, 1, i, j, 3));
  CHECK(enumerate_phi_fraction(5, 2, 1, 0, 0, 3) == exact::power(mpq_class(2, 5), 3));
  mpq_class total = 0;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) total += enumerate_phi_fraction(5, 2, 2, i, j, 4);
  CHECK(total == 1);
}

TEST_CASE("moment ratio") {
  CHECK(moment_ratio(10, 3, 0, kOne3) == 1);
  CHECK(moment_ratio(10, 0, 3, kOne3) == 0);
  const mpq_class r60 = moment_ratio(60, 20, 18, kOne3);
  CHECK(r60 > mpq_class(1, 100));
  CHECK(r60 <= 1);
  const mpq_class r120 = moment_ratio(120, 40, 36, kOne3);
  CHECK(r120 >= mpq_class(4, 5) * r60);
}
