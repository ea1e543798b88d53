#pragma once

#include <gmpxx.h>

#include <vector>

#include "momentlab/relation.hpp"

namespace momentlab::exact {

mpz_class binomial(int n, int k);  // 0 outside 0 <= k <= n
/// n! / (parts[0]! parts[1]! ...); throws ValidationError unless the parts sum to n.
mpz_class multinomial(int n, const std::vector<int>& parts);
/// Rational power with 0^0 = 1.
mpq_class power(const mpq_class& base, int exponent);

mpq_class pi(int i, int k, const mpq_class& delta);
mpq_class g(const RelationIndexSet& rel, const mpq_class& delta);
mpq_class h(const RelationIndexSet& rel, const mpq_class& delta);
mpq_class g_prime(const RelationIndexSet& rel, const mpq_class& delta);
mpq_class g_second(const RelationIndexSet& rel, const mpq_class& delta);

mpq_class kappa(int i, int j, int d, int k, const mpq_class& delta, const mpq_class& mu);
mpq_class phi(int i, int j, const mpq_class& delta, const mpq_class& mu, int k);
mpq_class bigG(const RelationIndexSet& rel, const mpq_class& delta, const mpq_class& mu);

/// Per-tuple joint probability at finite n from the three overlap ratios
/// a = (p-p')/n, b = p'/n, c = (n-p-p')/n.
mpq_class joint_tuple_probability(int i, int j, int k, const mpq_class& a, const mpq_class& b, const mpq_class& c);

double to_double(const mpq_class& q);

}  // namespace momentlab::exact
