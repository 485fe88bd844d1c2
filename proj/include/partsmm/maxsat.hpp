#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partsmm/wcnf.hpp"

namespace partsmm {

using Seconds = std::chrono::duration<double>;

inline constexpr Seconds kDefaultBudget{180.0};

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::size_t components = 0;
  double wall_seconds = 0.0;
};

struct SolveResult {
  /// values[v-1] for variable v.
  std::vector<std::uint8_t> values;
  /// Statement view of `values`; empty when the problem has no names.
  Assignment assignment;
  std::uint64_t satisfied_soft_weight = 0;
  bool proven_optimal = false;
  SolveStats stats;
};

/// Exact weighted MaxSAT by depth-first branch and bound.
///
/// The instance is first simplified: non-unit soft clauses are relaxed into
/// hard clauses with a fresh unit-weighted blocking variable, variables tied
/// by binary equivalences (a <=> b, a <=> not b) are merged, and the hard
/// clause graph is split into connected components solved independently.
/// Each component is searched with unit propagation over its hard clauses and
/// an upper bound of (weight so far) + (best unit weight of each free
/// variable) - (disjoint core cost), where cores are hard clauses falsified by
/// the free variables' preferred polarities. A seeded local-search run gives
/// the starting incumbent.
///
/// When the budget runs out the best incumbent is returned with
/// proven_optimal = false. Throws InfeasibleError when the hard clauses have
/// no model.
SolveResult solve_exact(const WcnfProblem& p, Seconds budget = kDefaultBudget);

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  std::uint64_t iterations = 100000;
  /// Non-improving attempts before a restart.
  std::uint64_t restart_after = 2000;
};

/// Hill climbing that never leaves the hard-feasible region. Starts from the
/// all-False assignment (or the first model found when all-False violates a
/// hard clause). A move flips one variable and then repairs every hard clause
/// it falsifies by flipping another, not yet touched, literal in that clause,
/// preferring the clause's last literal; a move that cannot be repaired is
/// rejected. Deterministic for a given seed. Never proven optimal.
SolveResult solve_local(const WcnfProblem& p, const LocalSearchOptions& options);
SolveResult solve_local(const WcnfProblem& p, std::uint64_t seed, std::uint64_t iterations);

inline constexpr std::size_t kBruteForceLimit = 24;

/// Exhaustive enumeration in lexicographic order (variable 1 most
/// significant, False before True); returns the lexicographically smallest
/// optimum. Partial assignments are cut only when they already falsify a
/// hard clause. Refuses instances above kBruteForceLimit variables.
SolveResult brute_force(const WcnfProblem& p);

/// Runs `command <file.wcnf>` through the shell, parses its "s/o/v" output
/// and recomputes the soft weight. proven_optimal mirrors "s OPTIMUM FOUND".
/// Throws Error if the command fails or the answer violates a hard clause.
SolveResult solve_external(const WcnfProblem& p, const std::string& command,
                           Seconds budget = kDefaultBudget);

/// All-False assignment, weighted; the repair baseline.
SolveResult all_false(const WcnfProblem& p);

}  // namespace partsmm
