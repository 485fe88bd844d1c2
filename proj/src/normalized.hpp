#pragma once

// Solver-internal instance form shared by the exact and local engines.

#include <chrono>
#include <cstdint>
#include <vector>

#include "partsmm/maxsat.hpp"

namespace partsmm::detail {

/// 2 * var + negated.
using Lit = std::uint32_t;

inline Lit make_lit(std::uint32_t var, bool negated) { return (var << 1) | (negated ? 1u : 0u); }
inline std::uint32_t lit_var(Lit l) { return l >> 1; }
inline bool lit_neg(Lit l) { return (l & 1u) != 0; }
inline Lit negate(Lit l) { return l ^ 1u; }
inline Lit from_dimacs(int lit) {
  return make_lit(static_cast<std::uint32_t>((lit > 0 ? lit : -lit) - 1), lit < 0);
}

/// Unit-soft form: every soft clause is folded into per-variable weights for
/// the positive and negative polarity. Non-unit soft clauses get a blocking
/// variable b with hard (C or b) and soft (not b).
struct Normalized {
  std::size_t num_vars = 0;
  std::size_t original_vars = 0;
  std::vector<std::uint64_t> wpos;
  std::vector<std::uint64_t> wneg;
  std::vector<std::vector<Lit>> hard;
};

Normalized normalize(const WcnfProblem& p);

using Clock = std::chrono::steady_clock;

/// Feasible assignment over the normalized variables found by local search;
/// throws InfeasibleError when no model exists.
std::vector<std::uint8_t> local_search(const Normalized& n, const LocalSearchOptions& opt,
                                       Clock::time_point deadline, SolveStats& stats);

/// First model of the hard clauses (depth-first, no weights). Throws
/// InfeasibleError when none exists; returns empty if the deadline passes.
std::vector<std::uint8_t> first_model(const Normalized& n, Clock::time_point deadline,
                                      SolveStats& stats);

/// Fills weight, assignment and stats.wall_seconds for values over the
/// original problem's variables.
SolveResult finish(const WcnfProblem& p, std::vector<std::uint8_t> values, bool optimal,
                   SolveStats stats, Clock::time_point started);

}  // namespace partsmm::detail
