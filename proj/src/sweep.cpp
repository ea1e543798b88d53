#include "momentlab/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "momentlab/errors.hpp"
#include "momentlab/rng.hpp"
#include "momentlab/solver.hpp"

namespace momentlab {

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * nt)) / (1 + z2 / nt);
  const double half = z * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt)) / (1 + z2 / nt);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::size_t SweepResult::total_unresolved() const {
  std::size_t total = 0;
  for (const auto& p : points) total += p.unresolved;
  return total;
}

double SweepResult::unresolved_rate() const {
  std::size_t all = 0;
  for (const auto& p : points) all += p.trials;
  return all == 0 ? 0.0 : static_cast<double>(total_unresolved()) / static_cast<double>(all);
}

std::vector<double> ratio_grid(double r_min, double r_max, double r_step) {
  if (!(r_step > 0.0)) throw ValidationError("r-step must be positive");
  if (!(r_min >= 0.0) || !(r_min < r_max)) throw ValidationError("need 0 <= r-min < r-max");
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double r = r_min + static_cast<double>(i) * r_step;
    if (r > r_max + r_step * 1e-6) break;
    grid.push_back(r);
  }
  return grid;
}

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MOMENTLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) hw = static_cast<unsigned>(std::min<long>(cap, 1024));
  }
  return hw;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), std::max<std::size_t>(count, 1)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

SweepResult sweep(const RelationIndexSet& rel, std::size_t n, double r_min, double r_max, double r_step,
                  std::size_t trials, std::uint64_t master_seed, const SweepOptions& options) {
  if (n < 10) throw ValidationError("sweep needs n >= 10");
  if (trials < 1) throw ValidationError("sweep needs trials >= 1");
  const auto grid = ratio_grid(r_min, r_max, r_step);

  SweepResult out{rel, n, trials, master_seed, {}};
  std::vector<std::size_t> ms;
  std::vector<bool> zero_first;
  for (double r : grid) {
    const auto m = static_cast<std::size_t>(std::llround(r * static_cast<double>(n)));
    ms.push_back(m);
    zero_first.push_back(prefers_zero_first(rel, static_cast<double>(m) / static_cast<double>(n)));
  }

  // 0 = unsat, 1 = sat, 2 = unresolved; indexed so scheduling cannot matter.
  std::vector<std::uint8_t> outcome(grid.size() * trials, 0);
  parallel_for(outcome.size(), resolve_thread_count(options.threads), [&](std::size_t job) {
    const std::size_t i = job / trials;
    const std::size_t t = job % trials;
    const auto inst = generate_instance(n, ms[i], rel, derive_seed(master_seed, i, t));
    SolveOptions so;
    so.node_budget = options.node_budget;
    so.zero_first = zero_first[i];
    try {
      outcome[job] = solve(inst, so).status == SolveStatus::Sat ? 1 : 0;
    } catch (const ResourceLimitExceeded&) {
      outcome[job] = 2;
    }
  });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepPoint p;
    p.r = grid[i];
    p.m = ms[i];
    p.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
      const auto o = outcome[i * trials + t];
      p.sat += o == 1;
      p.unresolved += o == 2;
    }
    const std::size_t resolved = trials - p.unresolved;
    p.frac = resolved == 0 ? 0.0 : static_cast<double>(p.sat) / static_cast<double>(resolved);
    p.ci = wilson_interval(p.sat, resolved);
    out.points.push_back(p);
  }
  return out;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "# seed=" << result.master_seed << " rel=k:" << result.relation.k() << ";I:" << result.relation.allowed_csv()
     << " n=" << result.n << '\n';
  os << "r,m,trials,sat,unresolved,frac,ci_lo,ci_hi\n";
  char buf[160];
  for (const auto& p : result.points) {
    std::snprintf(buf, sizeof buf, "%.6f,%zu,%zu,%zu,%zu,%.6f,%.6f,%.6f\n", p.r, p.m, p.trials, p.sat, p.unresolved,
                  p.frac, p.ci.lo, p.ci.hi);
    os << buf;
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string& field, std::size_t line) {
  std::istringstream is(field);
  T value{};
  if (!(is >> value) || !is.eof()) throw ParseError(line, "bad number '" + field + "'");
  return value;
}

}  // namespace

SweepResult parse_sweep_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line.rfind("# ", 0) != 0) throw ParseError(1, "expected '# seed=... rel=k:...;I:... n=...'");
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::vector<int> allowed;
  std::optional<std::size_t> n;
  for (const auto& tok : split(line.substr(2), ' ')) {
    if (tok.rfind("seed=", 0) == 0) {
      seed = parse_number<std::uint64_t>(tok.substr(5), lineno);
    } else if (tok.rfind("rel=k:", 0) == 0) {
      const auto semi = tok.find(";I:");
      if (semi == std::string::npos) throw ParseError(lineno, "relation must read rel=k:<k>;I:<list>");
      k = parse_number<int>(tok.substr(6, semi - 6), lineno);
      try {
        allowed = parse_int_list(tok.substr(semi + 3));
      } catch (const ValidationError& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (tok.rfind("n=", 0) == 0) {
      n = parse_number<std::size_t>(tok.substr(2), lineno);
    } else if (!tok.empty()) {
      throw ParseError(lineno, "unknown metadata '" + tok + "'");
    }
  }
  if (!seed || !k || !n) throw ParseError(lineno, "metadata needs seed, rel and n");
  std::optional<RelationIndexSet> rel;
  try {
    rel.emplace(*k, allowed);
  } catch (const ValidationError& e) {
    throw ParseError(lineno, e.what());
  }

  if (!next_line() || line != "r,m,trials,sat,unresolved,frac,ci_lo,ci_hi") {
    throw ParseError(lineno, "expected header r,m,trials,sat,unresolved,frac,ci_lo,ci_hi");
  }
  SweepResult out{*rel, *n, 0, *seed, {}};
  while (next_line()) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = split(line, ',');
    if (f.size() != 8) throw ParseError(lineno, "expected 8 fields, got " + std::to_string(f.size()));
    SweepPoint p;
    p.r = parse_number<double>(f[0], lineno);
    p.m = parse_number<std::size_t>(f[1], lineno);
    p.trials = parse_number<std::size_t>(f[2], lineno);
    p.sat = parse_number<std::size_t>(f[3], lineno);
    p.unresolved = parse_number<std::size_t>(f[4], lineno);
    p.frac = parse_number<double>(f[5], lineno);
    p.ci.lo = parse_number<double>(f[6], lineno);
    p.ci.hi = parse_number<double>(f[7], lineno);
    if (p.sat + p.unresolved > p.trials) throw ParseError(lineno, "sat + unresolved exceeds trials");
    out.trials = p.trials;
    out.points.push_back(p);
  }
  return out;
}

namespace {

// First i with y(i) >= 1/2 > y(i+1); interpolated r, or nullopt.
template <typename Y>
std::optional<double> crossing(const std::vector<SweepPoint>& pts, Y y) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = y(pts[i]);
    const double b = y(pts[i + 1]);
    if (a >= 0.5 && b < 0.5) return pts[i].r + (pts[i + 1].r - pts[i].r) * (a - 0.5) / (a - b);
  }
  return std::nullopt;
}

}  // namespace

ThresholdEstimate empirical_threshold(const SweepResult& result) {
  const auto& pts = result.points;
  const auto mid = crossing(pts, [](const SweepPoint& p) { return p.frac; });
  if (!mid) throw NoCrossingError("sweep does not bracket a sat fraction of 0.5");
  ThresholdEstimate est;
  est.r = *mid;
  // The lower CI curve falls through 1/2 first, the upper one last.
  est.lo = std::min(est.r, crossing(pts, [](const SweepPoint& p) { return p.ci.lo; }).value_or(pts.front().r));
  est.hi = std::max(est.r, crossing(pts, [](const SweepPoint& p) { return p.ci.hi; }).value_or(pts.back().r));
  return est;
}

}  // namespace momentlab
