#include "doctest.h"
#include "momentlab/errors.hpp"
#include "momentlab/solver.hpp"

using namespace momentlab;

namespace {

bool exhaustive_sat(const Instance& inst) {
  const std::size_t n = inst.n();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& c : inst.constraints()) {
      int ones = 0;
      for (auto v : c.vars) ones += (mask >> v) & 1;
      if (!inst.relation().accepts(ones)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("trivial instances") {
  const auto rel = RelationIndexSet::one_in_k(3);
  const auto empty = solve(Instance(5, rel, {}));
  CHECK(empty.status == SolveStatus::Sat);
  REQUIRE(empty.witness);
  CHECK(empty.witness->n() == 5);

  const Instance dup(3, rel, {Constraint{{0, 1, 2}}, Constraint{{0, 1, 2}}});
  const auto res = solve(dup);
  REQUIRE(res.status == SolveStatus::Sat);
  CHECK(res.witness->ones() == 1);
  CHECK(satisfies(*res.witness, dup));

  // x0 appears three times: 1-in-3 needs exactly one position set, impossible.
  const Instance rep(1, rel, {Constraint{{0, 0, 0}}});
  CHECK(solve(rep).status == SolveStatus::Unsat);
}

TEST_CASE("all triples on four variables") {
  const auto rel = RelationIndexSet::one_in_k(3);
  std::vector<Constraint> cs;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = a + 1; b < 4; ++b)
      for (std::uint32_t c = b + 1; c < 4; ++c) cs.push_back({{a, b, c}});
  const Instance inst(4, rel, cs);
  const auto res = solve(inst);
  CHECK((res.status == SolveStatus::Sat) == exhaustive_sat(inst));
  CHECK(res.status == SolveStatus::Unsat);
}

TEST_CASE("agrees with exhaustive search on random small instances") {
  const std::vector<RelationIndexSet> rels = {RelationIndexSet::one_in_k(3), RelationIndexSet::not_all_equal(3),
                                              RelationIndexSet(4, {1, 3}), RelationIndexSet(5, {2}),
                                              RelationIndexSet(4, {1, 2})};
  int sat = 0, unsat = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto& rel = rels[seed % rels.size()];
    const std::size_t n = 4 + seed % 11;
    const std::size_t m = 1 + (seed * 7) % (2 * n);
    const auto inst = generate_instance(n, m, rel, seed);
    const auto res = solve(inst);
    const bool truth = exhaustive_sat(inst);
    INFO("seed=" << seed);
    CHECK((res.status == SolveStatus::Sat) == truth);
    if (res.status == SolveStatus::Sat) {
      REQUIRE(res.witness);
      CHECK(satisfies(*res.witness, inst));
      ++sat;
    } else {
      CHECK_FALSE(res.witness);
      ++unsat;
    }
  }
  CHECK(sat > 100);
  CHECK(unsat > 100);
}

TEST_CASE("value order does not change the answer") {
  const auto rel = RelationIndexSet::one_in_k(4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = generate_instance(40, 14, rel, seed);
    SolveOptions zero, one;
    zero.zero_first = true;
    one.zero_first = false;
    CHECK(solve(inst, zero).status == solve(inst, one).status);
  }
  CHECK(prefers_zero_first(rel, 0.3));
  CHECK_FALSE(prefers_zero_first(RelationIndexSet(4, {3}), 0.3));
}

TEST_CASE("node budget") {
  const auto inst = generate_instance(200, 140, RelationIndexSet::one_in_k(3), 0);
  SolveOptions opts;
  opts.node_budget = 2;  // this instance needs 5 decisions
  CHECK_THROWS_AS(solve(inst, opts), ResourceLimitExceeded);
}
