#include "momentlab/solver.hpp"

#include <algorithm>

#include "momentlab/characteristic.hpp"
#include "momentlab/errors.hpp"

namespace momentlab {

const char* to_string(SolveStatus status) { return status == SolveStatus::Sat ? "SAT" : "UNSAT"; }

bool prefers_zero_first(const RelationIndexSet& rel, double r) { return best_delta(rel, r) < 0.5; }

namespace {

struct Occurrence {
  std::uint32_t constraint;
  int multiplicity;
};

class Search {
 public:
  Search(const Instance& inst, const SolveOptions& options)
      : inst_(inst),
        rel_(inst.relation()),
        budget_(options.node_budget),
        zero_first_(options.zero_first.value_or(prefers_zero_first(inst.relation(), inst.ratio()))),
        value_(inst.n(), kUnassigned),
        occ_(inst.n()),
        distinct_(inst.m()),
        ones_(inst.m(), 0),
        free_(inst.m(), 0) {
    const auto& cs = inst.constraints();
    for (std::uint32_t c = 0; c < cs.size(); ++c) {
      auto vars = cs[c].vars;
      std::sort(vars.begin(), vars.end());
      for (std::size_t i = 0; i < vars.size();) {
        std::size_t j = i;
        while (j < vars.size() && vars[j] == vars[i]) ++j;
        const int mult = static_cast<int>(j - i);
        occ_[vars[i]].push_back({c, mult});
        distinct_[c].push_back({vars[i], mult});
        i = j;
      }
      free_[c] = static_cast<int>(vars.size());
    }
  }

  SolveResult run() {
    SolveResult out;
    for (std::uint32_t c = 0; c < inst_.m(); ++c) queue_.push_back(c);
    if (propagate() && descend()) {
      std::vector<std::uint8_t> bits(inst_.n());
      for (std::size_t v = 0; v < bits.size(); ++v) bits[v] = value_[v] == kUnassigned ? (zero_first_ ? 0 : 1) : static_cast<std::uint8_t>(value_[v]);
      Valuation witness(std::move(bits));
      if (!satisfies(witness, inst_)) throw NumericalError("solver produced a witness that fails re-verification");
      out.status = SolveStatus::Sat;
      out.witness = std::move(witness);
    }
    out.stats = stats_;
    return out;
  }

 private:
  static constexpr std::int8_t kUnassigned = -1;

  struct Slot {
    std::uint32_t var;
    int multiplicity;
  };

  bool feasible(std::uint32_t c) const { return rel_.accepts_any_in(ones_[c], ones_[c] + free_[c]); }
  bool entailed(std::uint32_t c) const { return rel_.accepts_all_in(ones_[c], ones_[c] + free_[c]); }

  bool assign(std::uint32_t var, int val) {
    value_[var] = static_cast<std::int8_t>(val);
    trail_.push_back(var);
    bool ok = true;
    for (const auto& o : occ_[var]) {
      free_[o.constraint] -= o.multiplicity;
      ones_[o.constraint] += val * o.multiplicity;
      if (!feasible(o.constraint)) ok = false;
      queue_.push_back(o.constraint);
    }
    return ok;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto var = trail_.back();
      trail_.pop_back();
      const int val = value_[var];
      for (const auto& o : occ_[var]) {
        free_[o.constraint] += o.multiplicity;
        ones_[o.constraint] -= val * o.multiplicity;
      }
      value_[var] = kUnassigned;
    }
    queue_.clear();
  }

  bool propagate() {
    while (!queue_.empty()) {
      const auto c = queue_.back();
      queue_.pop_back();
      if (!feasible(c)) return false;
      if (free_[c] == 0 || entailed(c)) continue;
      for (const auto& s : distinct_[c]) {
        if (value_[s.var] != kUnassigned) continue;
        const int lo = ones_[c];
        const int hi = ones_[c] + free_[c];
        const bool can0 = rel_.accepts_any_in(lo, hi - s.multiplicity);
        const bool can1 = rel_.accepts_any_in(lo + s.multiplicity, hi);
        if (!can0 && !can1) return false;
        if (can0 != can1) {
          ++stats_.propagations;
          if (!assign(s.var, can1 ? 1 : 0)) return false;
        }
      }
    }
    return true;
  }

  // Unassigned variable occurring in the most non-entailed constraints; n() when
  // every remaining variable only touches entailed constraints.
  std::uint32_t pick() const {
    std::uint32_t best = static_cast<std::uint32_t>(inst_.n());
    int best_score = -1;
    for (std::uint32_t v = 0; v < inst_.n(); ++v) {
      if (value_[v] != kUnassigned) continue;
      int score = 0;
      for (const auto& o : occ_[v]) {
        if (!entailed(o.constraint)) ++score;
      }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    return best_score > 0 ? best : static_cast<std::uint32_t>(inst_.n());
  }

  bool descend() {
    const auto var = pick();
    if (var == inst_.n()) return true;
    if (++stats_.nodes > budget_) {
      throw ResourceLimitExceeded("node budget of " + std::to_string(budget_) + " exceeded");
    }
    const std::size_t mark = trail_.size();
    for (int val : {zero_first_ ? 0 : 1, zero_first_ ? 1 : 0}) {
      if (assign(var, val) && propagate() && descend()) return true;
      undo_to(mark);
    }
    return false;
  }

  const Instance& inst_;
  const RelationIndexSet& rel_;
  std::uint64_t budget_;
  bool zero_first_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<Occurrence>> occ_;
  std::vector<std::vector<Slot>> distinct_;
  std::vector<int> ones_;
  std::vector<int> free_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::uint32_t> queue_;
  SolveStats stats_;
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveOptions& options) { return Search(inst, options).run(); }

}  // namespace momentlab
