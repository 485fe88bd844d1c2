#include <algorithm>
#include <optional>
#include <random>

#include "normalized.hpp"
#include "partsmm/error.hpp"

namespace partsmm {
namespace detail {
namespace {

class FeasibleHillClimber {
 public:
  FeasibleHillClimber(const Normalized& n, std::uint64_t seed)
      : n_(n), occ_(2 * n.num_vars), locked_(n.num_vars, 0), rng_(seed) {
    for (std::uint32_t c = 0; c < n.hard.size(); ++c) {
      for (Lit l : n.hard[c]) occ_[l].push_back(c);
    }
    max_cascade_ = std::max<std::size_t>(64, 4 * n.num_vars);
  }

  void reset(const std::vector<std::uint8_t>& values) {
    values_ = values;
    weight_ = 0;
    for (std::size_t v = 0; v < values_.size(); ++v) weight_ += weight_of(v, values_[v]);
  }

  const std::vector<std::uint8_t>& values() const { return values_; }
  std::uint64_t weight() const { return weight_; }

  std::uint32_t pick_var() {
    std::uniform_int_distribution<std::uint32_t> any(0, static_cast<std::uint32_t>(n_.num_vars - 1));
    // Bias toward variables sitting on their lighter polarity.
    for (int tries = 0; tries < 8; ++tries) {
      const std::uint32_t v = any(rng_);
      if (preferred(v) != (values_[v] != 0)) return v;
    }
    return any(rng_);
  }

  /// Flips v and repairs; returns the weight change, or nullopt if the move
  /// was rejected (state untouched).
  std::optional<std::int64_t> move(std::uint32_t v) {
    ++epoch_;
    changed_.clear();
    delta_ = 0;
    flip(v);
    std::size_t head = 0;
    while (head < changed_.size()) {
      const std::uint32_t u = changed_[head++];
      const Lit falsified = make_lit(u, values_[u] == 1);
      for (std::uint32_t c : occ_[falsified]) {
        const auto& clause = n_.hard[c];
        if (satisfied(clause)) continue;
        std::optional<Lit> fix;
        const bool random_pick = std::uniform_int_distribution<int>(0, 9)(rng_) == 0;
        if (random_pick) {
          std::vector<Lit> open;
          for (Lit l : clause) {
            if (locked_[lit_var(l)] != epoch_) open.push_back(l);
          }
          if (!open.empty()) {
            fix = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng_)];
          }
        } else {
          for (auto it = clause.rbegin(); it != clause.rend(); ++it) {
            if (locked_[lit_var(*it)] != epoch_) {
              fix = *it;
              break;
            }
          }
        }
        if (!fix || changed_.size() >= max_cascade_) {
          revert();
          return std::nullopt;
        }
        flip(lit_var(*fix));
      }
    }
    return delta_;
  }

  void revert() {
    for (std::uint32_t u : changed_) {
      values_[u] ^= 1;
    }
    weight_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(weight_) - delta_);
    changed_.clear();
    delta_ = 0;
  }

  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

 private:
  std::uint64_t weight_of(std::size_t v, std::uint8_t val) const {
    return val ? n_.wpos[v] : n_.wneg[v];
  }
  bool preferred(std::uint32_t v) const { return n_.wpos[v] > n_.wneg[v]; }

  bool satisfied(const std::vector<Lit>& clause) const {
    for (Lit l : clause) {
      if ((values_[lit_var(l)] == 1) != lit_neg(l)) return true;
    }
    return false;
  }

  void flip(std::uint32_t v) {
    const auto before = static_cast<std::int64_t>(weight_of(v, values_[v]));
    values_[v] ^= 1;
    const auto after = static_cast<std::int64_t>(weight_of(v, values_[v]));
    delta_ += after - before;
    weight_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(weight_) + after - before);
    locked_[v] = epoch_;
    changed_.push_back(v);
  }

  const Normalized& n_;
  std::vector<std::vector<std::uint32_t>> occ_;
  std::vector<std::uint64_t> locked_;
  std::uint64_t epoch_ = 0;
  std::vector<std::uint32_t> changed_;
  std::int64_t delta_ = 0;
  std::vector<std::uint8_t> values_;
  std::uint64_t weight_ = 0;
  std::size_t max_cascade_ = 64;
  std::mt19937_64 rng_;
};

bool all_false_feasible(const Normalized& n) {
  for (const auto& c : n.hard) {
    bool has_negative = false;
    for (Lit l : c) has_negative = has_negative || lit_neg(l);
    if (!has_negative) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint8_t> local_search(const Normalized& n, const LocalSearchOptions& opt,
                                       Clock::time_point deadline, SolveStats& stats) {
  std::vector<std::uint8_t> start(n.num_vars, 0);
  if (!all_false_feasible(n)) {
    start = first_model(n, deadline, stats);
    if (start.empty()) throw Error("no feasible assignment found before the deadline");
  }
  if (opt.iterations == 0 || n.num_vars == 0) return start;

  FeasibleHillClimber hc(n, opt.seed);
  hc.reset(start);
  std::vector<std::uint8_t> best = start;
  std::uint64_t best_weight = hc.weight();
  std::uint64_t stale = 0;

  for (std::uint64_t it = 0; it < opt.iterations; ++it) {
    if ((it & 1023) == 1023 && Clock::now() >= deadline) break;
    const std::uint32_t v = hc.pick_var();
    const auto delta = hc.move(v);
    if (!delta) {
      ++stale;
    } else if (*delta > 0) {
      stale = 0;
    } else if (*delta == 0 && hc.coin(0.3)) {
      ++stale;
    } else {
      hc.revert();
      ++stale;
    }
    if (hc.weight() > best_weight) {
      best_weight = hc.weight();
      best = hc.values();
    }
    if (opt.restart_after > 0 && stale >= opt.restart_after) {
      ++stats.restarts;
      stale = 0;
      hc.reset(start);
      // Random walk away from the start before climbing again.
      const std::size_t walk = std::max<std::size_t>(1, n.num_vars / 8);
      for (std::size_t k = 0; k < walk; ++k) hc.move(hc.pick_var());
    }
  }
  return best;
}

}  // namespace detail

SolveResult solve_local(const WcnfProblem& p, const LocalSearchOptions& options) {
  const auto started = detail::Clock::now();
  const detail::Normalized n = detail::normalize(p);
  SolveStats stats;
  auto values = detail::local_search(n, options, detail::Clock::time_point::max(), stats);
  values.resize(p.num_vars);
  return detail::finish(p, std::move(values), false, stats, started);
}

SolveResult solve_local(const WcnfProblem& p, std::uint64_t seed, std::uint64_t iterations) {
  LocalSearchOptions o;
  o.seed = seed;
  o.iterations = iterations;
  return solve_local(p, o);
}

}  // namespace partsmm
