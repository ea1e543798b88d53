#include "momentlab/relation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "momentlab/errors.hpp"
#include "momentlab/rng.hpp"

namespace momentlab {

RelationIndexSet::RelationIndexSet(int k, std::vector<int> allowed)
    : k_(k), allowed_(std::move(allowed)) {
  if (k_ < 3) throw ValidationError("arity k must be >= 3, got " + std::to_string(k_));
  if (allowed_.empty()) throw ValidationError("allowed ones-count set I must be nonempty");
  std::sort(allowed_.begin(), allowed_.end());
  allowed_.erase(std::unique(allowed_.begin(), allowed_.end()), allowed_.end());
  for (int c : allowed_) {
    if (c < 1 || c > k_ - 1) {
      throw ValidationError("allowed count " + std::to_string(c) + " outside 1.." +
                            std::to_string(k_ - 1) + " (relation must be nontrivial)");
    }
  }
  mask_.assign(static_cast<std::size_t>(k_) + 1, false);
  for (int c : allowed_) mask_[static_cast<std::size_t>(c)] = true;
  prefix_.assign(static_cast<std::size_t>(k_) + 2, 0);
  for (int c = 0; c <= k_; ++c) {
    prefix_[static_cast<std::size_t>(c) + 1] = prefix_[static_cast<std::size_t>(c)] + (mask_[c] ? 1 : 0);
  }
}

RelationIndexSet RelationIndexSet::one_in_k(int k) { return RelationIndexSet(k, {1}); }

RelationIndexSet RelationIndexSet::not_all_equal(int k) {
  std::vector<int> all;
  for (int c = 1; c < k; ++c) all.push_back(c);
  return RelationIndexSet(k, std::move(all));
}

bool RelationIndexSet::accepts_any_in(int lo, int hi) const noexcept {
  lo = std::max(lo, 0);
  hi = std::min(hi, k_);
  if (lo > hi) return false;
  return prefix_[static_cast<std::size_t>(hi) + 1] - prefix_[static_cast<std::size_t>(lo)] > 0;
}

bool RelationIndexSet::accepts_all_in(int lo, int hi) const noexcept {
  if (lo < 0 || hi > k_ || lo > hi) return false;
  return prefix_[static_cast<std::size_t>(hi) + 1] - prefix_[static_cast<std::size_t>(lo)] == hi - lo + 1;
}

std::string RelationIndexSet::allowed_csv() const {
  std::string out;
  for (std::size_t i = 0; i < allowed_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(allowed_[i]);
  }
  return out;
}

std::string RelationIndexSet::to_string() const {
  return "k=" + std::to_string(k_) + " I=" + allowed_csv();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item(text.data() + pos, comma - pos);
    int value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw ValidationError("bad integer list '" + text + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

Valuation::Valuation(std::vector<std::uint8_t> bits) : bits_(std::move(bits)), ones_(0) {
  for (auto& b : bits_) {
    b = b ? 1 : 0;
    ones_ += b;
  }
}

Valuation Valuation::with_ones(std::size_t n, std::size_t ones) {
  if (ones > n) throw ValidationError("more ones than variables");
  std::vector<std::uint8_t> bits(n, 0);
  std::fill_n(bits.begin(), ones, 1);
  return Valuation(std::move(bits));
}

Valuation Valuation::from_string(const std::string& text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw ValidationError("valuation string must be 0/1 only");
    bits.push_back(ch == '1');
  }
  return Valuation(std::move(bits));
}

std::string Valuation::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s += b ? '1' : '0';
  return s;
}

Instance::Instance(std::size_t n, RelationIndexSet relation, std::vector<Constraint> constraints,
                   std::optional<std::uint64_t> seed)
    : n_(n), relation_(std::move(relation)), constraints_(std::move(constraints)), seed_(seed) {
  if (n_ == 0) throw ValidationError("instance needs at least one variable");
  const auto k = static_cast<std::size_t>(relation_.k());
  for (std::size_t c = 0; c < constraints_.size(); ++c) {
    const auto& vars = constraints_[c].vars;
    if (vars.size() != k) {
      throw ValidationError("constraint " + std::to_string(c) + " has " + std::to_string(vars.size()) +
                            " variables, expected " + std::to_string(k));
    }
    for (auto x : vars) {
      if (x >= n_) {
        throw ValidationError("constraint " + std::to_string(c) + " references variable " +
                              std::to_string(x) + " >= n=" + std::to_string(n_));
      }
    }
  }
}

int ones_count(const Valuation& v, const Constraint& c) {
  int ones = 0;
  for (auto x : c.vars) {
    if (x >= v.n()) throw std::out_of_range("variable index " + std::to_string(x) + " out of range");
    ones += v[x] ? 1 : 0;
  }
  return ones;
}

bool satisfies(const Valuation& v, const Instance& inst) {
  if (v.n() != inst.n()) {
    throw DimensionMismatch("valuation has " + std::to_string(v.n()) + " variables, instance has " +
                            std::to_string(inst.n()));
  }
  const auto& rel = inst.relation();
  return std::all_of(inst.constraints().begin(), inst.constraints().end(),
                     [&](const Constraint& c) { return rel.accepts(ones_count(v, c)); });
}

Instance generate_instance(std::size_t n, std::size_t m, const RelationIndexSet& rel, std::uint64_t seed) {
  if (n == 0) throw ValidationError("n must be >= 1");
  SplitMix64 rng(seed);
  std::vector<Constraint> constraints(m);
  for (auto& c : constraints) {
    c.vars.resize(static_cast<std::size_t>(rel.k()));
    for (auto& x : c.vars) x = static_cast<std::uint32_t>(rng.bounded(n));
  }
  return Instance(n, rel, std::move(constraints), seed);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "CSPI 1\n";
  out << "k=" << inst.relation().k() << " I=" << inst.relation().allowed_csv() << '\n';
  out << "n=" << inst.n() << " m=" << inst.m() << '\n';
  if (inst.seed()) {
    out << "seed=" << *inst.seed() << '\n';
  } else {
    out << "seed=-\n";
  }
  for (const auto& c : inst.constraints()) {
    out << 'c';
    for (auto x : c.vars) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

namespace {

template <typename T>
T parse_number(std::string_view s, std::size_t line, const char* what) {
  T value{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

std::string_view expect_prefix(std::string_view s, std::string_view prefix, std::size_t line) {
  if (s.substr(0, prefix.size()) != prefix) {
    throw ParseError(line, "expected '" + std::string(prefix) + "'");
  }
  return s.substr(prefix.size());
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      if (nl == std::string_view::npos) {
        lines.push_back(rest);
        break;
      }
      lines.push_back(rest.substr(0, nl));
      rest.remove_prefix(nl + 1);
    }
  }
  if (lines.size() < 4) throw ParseError(lines.size() + 1, "truncated header (need 4 lines)");
  if (lines[0] != "CSPI 1") throw ParseError(1, "unknown magic/version '" + std::string(lines[0]) + "'");

  const auto sp2 = lines[1].find(' ');
  if (sp2 == std::string_view::npos) throw ParseError(2, "expected 'k=<int> I=<list>'");
  const int k = parse_number<int>(expect_prefix(lines[1].substr(0, sp2), "k=", 2), 2, "arity");
  const auto list = expect_prefix(lines[1].substr(sp2 + 1), "I=", 2);
  std::vector<int> allowed;
  try {
    allowed = parse_int_list(std::string(list));
  } catch (const ValidationError& e) {
    throw ParseError(2, e.what());
  }
  if (!std::is_sorted(allowed.begin(), allowed.end()) ||
      std::adjacent_find(allowed.begin(), allowed.end()) != allowed.end()) {
    throw ParseError(2, "allowed counts must be strictly increasing");
  }
  std::optional<RelationIndexSet> rel;
  try {
    rel.emplace(k, allowed);
  } catch (const ValidationError& e) {
    throw ParseError(2, e.what());
  }

  const auto sp3 = lines[2].find(' ');
  if (sp3 == std::string_view::npos) throw ParseError(3, "expected 'n=<int> m=<int>'");
  const auto n = parse_number<std::size_t>(expect_prefix(lines[2].substr(0, sp3), "n=", 3), 3, "n");
  const auto m = parse_number<std::size_t>(expect_prefix(lines[2].substr(sp3 + 1), "m=", 3), 3, "m");
  if (n == 0) throw ParseError(3, "n must be >= 1");

  std::optional<std::uint64_t> seed;
  const auto seed_text = expect_prefix(lines[3], "seed=", 4);
  if (seed_text != "-") seed = parse_number<std::uint64_t>(seed_text, 4, "seed");

  if (lines.size() - 4 < m) {
    throw ParseError(lines.size() + 1, "expected " + std::to_string(m) + " constraint lines, found " +
                                           std::to_string(lines.size() - 4));
  }
  std::vector<Constraint> constraints(m);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t lineno = c + 5;
    auto body = expect_prefix(lines[c + 4], "c", lineno);
    auto& vars = constraints[c].vars;
    while (!body.empty()) {
      if (body.front() != ' ') throw ParseError(lineno, "expected space-separated indices");
      body.remove_prefix(1);
      const auto next = std::min(body.find(' '), body.size());
      const auto x = parse_number<std::uint32_t>(body.substr(0, next), lineno, "variable index");
      if (x >= n) throw ParseError(lineno, "variable index " + std::to_string(x) + " >= n");
      vars.push_back(x);
      body.remove_prefix(next);
    }
    if (vars.size() != static_cast<std::size_t>(k)) {
      throw ParseError(lineno, "constraint has " + std::to_string(vars.size()) + " indices, header says k=" +
                                   std::to_string(k));
    }
  }
  if (lines.size() > m + 4) throw ParseError(m + 5, "trailing content after " + std::to_string(m) + " constraints");
  return Instance(n, *rel, std::move(constraints), seed);
}

std::size_t ones_for_delta(double delta, std::size_t n) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0,1]");
  const double p = std::floor(delta * static_cast<double>(n) + 1e-9);
  return std::min(n, static_cast<std::size_t>(p));
}

}  // namespace momentlab
