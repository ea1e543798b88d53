#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "momentlab/errors.hpp"
#include "momentlab/sweep.hpp"

using namespace momentlab;
using doctest::Approx;

namespace {

SweepResult synthetic(const std::vector<double>& rs, const std::vector<std::size_t>& sats, std::size_t trials) {
  SweepResult res{RelationIndexSet::one_in_k(3), 100, trials, 1, {}};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    SweepPoint p;
    p.r = rs[i];
    p.m = static_cast<std::size_t>(std::llround(rs[i] * 100));
    p.trials = trials;
    p.sat = sats[i];
    p.frac = static_cast<double>(sats[i]) / static_cast<double>(trials);
    p.ci = wilson_interval(sats[i], trials);
    res.points.push_back(p);
  }
  return res;
}

}  // namespace

TEST_CASE("Wilson interval") {
  // Reference values from the closed form with z = 1.96.
  const auto w = wilson_interval(8, 10);
  CHECK(w.lo == Approx(0.4901624).epsilon(1e-6));
  CHECK(w.hi == Approx(0.9433178).epsilon(1e-6));
  const auto zero = wilson_interval(0, 20);
  CHECK(zero.lo == 0);
  CHECK(zero.hi > 0);
  const auto all = wilson_interval(20, 20);
  CHECK(all.hi == Approx(1.0));
  CHECK(all.lo < 1);
}

TEST_CASE("ratio grid") {
  const auto g = ratio_grid(0.2, 1.0, 0.05);
  CHECK(g.size() == 17);
  CHECK(g.back() == Approx(1.0));
  CHECK_THROWS(ratio_grid(1.0, 0.5, 0.1));
}

TEST_CASE("threshold interpolation") {
  const auto res = synthetic({0.3, 0.5, 0.7, 0.9}, {10, 8, 4, 0}, 10);
  const auto t = empirical_threshold(res);
  CHECK(t.r == Approx(0.65));
  CHECK(t.lo <= t.r);
  CHECK(t.hi >= t.r);
  CHECK_THROWS_AS(empirical_threshold(synthetic({0.3, 0.5}, {10, 10}, 10)), NoCrossingError);
}

TEST_CASE("sweep behaviour on 1-in-3") {
  const auto res = sweep(RelationIndexSet::one_in_k(3), 100, 0.3, 0.9, 0.6, 200, 7);
  REQUIRE(res.points.size() == 2);
  CHECK(res.points[0].m == 30);
  CHECK(res.points[0].frac >= 0.9);
  CHECK(res.points[1].frac <= 0.1);
  CHECK(res.total_unresolved() == 0);
}

TEST_CASE("sweep is independent of the worker count") {
  const auto rel = RelationIndexSet::one_in_k(3);
  SweepOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = to_csv(sweep(rel, 40, 0.4, 0.8, 0.1, 30, 99, one));
  const auto b = to_csv(sweep(rel, 40, 0.4, 0.8, 0.1, 30, 99, four));
  CHECK(a == b);
  CHECK(a != to_csv(sweep(rel, 40, 0.4, 0.8, 0.1, 30, 100, one)));
}

TEST_CASE("csv round trip") {
  const auto res = sweep(RelationIndexSet(4, {1, 3}), 30, 0.5, 0.7, 0.1, 10, 5);
  const auto csv = to_csv(res);
  CHECK(csv.rfind("# seed=5 rel=k:4;I:1,3 n=30\nr,m,trials,sat,unresolved,frac,ci_lo,ci_hi\n", 0) == 0);
  const auto back = parse_sweep_csv(csv);
  CHECK(back.relation == res.relation);
  CHECK(back.n == 30);
  CHECK(back.master_seed == 5);
  CHECK(to_csv(back) == csv);
  CHECK_THROWS_AS(parse_sweep_csv("# seed=5 rel=k:4;I:1,3 n=30\nr,m\n"), ParseError);
}

TEST_CASE("thread count") {
  CHECK(resolve_thread_count(3) == 3);
  setenv("MOMENTLAB_THREADS", "2", 1);
  CHECK(resolve_thread_count(0) == 2);
  unsetenv("MOMENTLAB_THREADS");
  CHECK(resolve_thread_count(0) >= 1);
}
