#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace momentlab {

/// A permutation-invariant boolean relation of arity k, identified by the set
/// of ones-counts it accepts. Nontrivial: 0 and k are never accepted.
class RelationIndexSet {
 public:
  /// Throws ValidationError if k < 3, `allowed` is empty, or an element lies
  /// outside 1..k-1. Duplicates and ordering are normalized.
  RelationIndexSet(int k, std::vector<int> allowed);

  static RelationIndexSet one_in_k(int k);
  static RelationIndexSet not_all_equal(int k);

  int k() const noexcept { return k_; }
  const std::vector<int>& allowed() const noexcept { return allowed_; }
  bool accepts(int ones) const noexcept {
    return ones >= 0 && ones <= k_ && mask_[static_cast<std::size_t>(ones)];
  }
  /// True if some accepted count lies in [lo, hi].
  bool accepts_any_in(int lo, int hi) const noexcept;
  /// True if every count in [lo, hi] is accepted.
  bool accepts_all_in(int lo, int hi) const noexcept;

  /// "k=3 I=1,2"
  std::string to_string() const;
  /// "1,2"
  std::string allowed_csv() const;

  friend bool operator==(const RelationIndexSet&, const RelationIndexSet&) = default;

 private:
  int k_;
  std::vector<int> allowed_;
  std::vector<bool> mask_;
  std::vector<int> prefix_;  // prefix_[c] = #accepted counts < c
};

/// Parses "1,8,12" into integers; throws ValidationError on junk.
std::vector<int> parse_int_list(const std::string& text);

class Valuation {
 public:
  explicit Valuation(std::vector<std::uint8_t> bits);
  /// First `ones` variables set to 1.
  static Valuation with_ones(std::size_t n, std::size_t ones);
  static Valuation from_string(const std::string& bits);  // "0110"

  std::size_t n() const noexcept { return bits_.size(); }
  std::size_t ones() const noexcept { return ones_; }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t ones_;
};

/// A k-tuple of variable indices. Indices may repeat.
struct Constraint {
  std::vector<std::uint32_t> vars;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

class Instance {
 public:
  /// Throws ValidationError if a constraint has the wrong arity or an index >= n.
  Instance(std::size_t n, RelationIndexSet relation, std::vector<Constraint> constraints,
           std::optional<std::uint64_t> seed = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return constraints_.size(); }
  double ratio() const noexcept { return static_cast<double>(m()) / static_cast<double>(n_); }
  const RelationIndexSet& relation() const noexcept { return relation_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_;
  RelationIndexSet relation_;
  std::vector<Constraint> constraints_;
  std::optional<std::uint64_t> seed_;
};

/// Number of positions of `c` whose variable is 1 under `v`, with multiplicity.
/// Throws std::out_of_range for an index >= v.n().
int ones_count(const Valuation& v, const Constraint& c);

/// Throws DimensionMismatch if v.n() != inst.n().
bool satisfies(const Valuation& v, const Instance& inst);

/// m constraints with every coordinate i.i.d. uniform over [0, n), drawn from
/// SplitMix64(seed) in row-major order.
Instance generate_instance(std::size_t n, std::size_t m, const RelationIndexSet& rel,
                           std::uint64_t seed);

/// Text format "CSPI 1"; see README for the grammar.
std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);

/// floor(delta * n), robust to binary representation error in delta.
std::size_t ones_for_delta(double delta, std::size_t n);

}  // namespace momentlab
