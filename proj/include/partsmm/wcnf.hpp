#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partsmm/consistency.hpp"
#include "partsmm/model.hpp"

namespace partsmm {

/// DIMACS-signed literals; variables are 1-based.
using Clause = std::vector<int>;

struct SoftClause {
  Clause clause;
  std::uint64_t weight = 1;
  friend bool operator==(const SoftClause&, const SoftClause&) = default;
};

/// Weighted partial MaxSAT instance. When built by encode(), variable v stands
/// for var_statements[v - 1], every soft clause is a unit clause, and all
/// weights are >= 1.
struct WcnfProblem {
  std::size_t num_vars = 0;
  std::vector<Clause> hard;
  std::vector<SoftClause> soft;
  std::vector<Statement> var_statements;

  /// 1 + sum of soft weights.
  std::uint64_t top() const;
  std::uint64_t total_soft_weight() const;

  /// Throws ValidationError on zero or out-of-range literals or zero weights.
  void validate() const;

  friend bool operator==(const WcnfProblem&, const WcnfProblem&) = default;
};

inline constexpr std::int64_t kDefaultScale = 1000;

/// Two-sided unit soft clauses per statement: (+s) weighted round(p*scale),
/// (-s) weighted round((1-p)*scale), each dropped when its weight rounds to 0;
/// one hard clause per grounded implication. Variables follow the universe
/// enumeration order. Throws ValidationError if a confidence is outside
/// [0,1], the belief map misses universe statements, or names others.
WcnfProblem encode(const BeliefMap& beliefs, const Grounding& grounding,
                   std::int64_t scale = kDefaultScale);

/// The hard clause for one implication: (not a1 or ... or consequent).
Clause to_clause(const GroundedConstraint& c);

/// Fills statements absent from `beliefs` with `fill` over the universe.
BeliefMap fill_missing(const BeliefMap& beliefs, const StatementUniverse& u, double fill = 0.5);

/// Dense assignment (values[v-1] for variable v) to a statement assignment.
Assignment decode(const WcnfProblem& p, const std::vector<std::uint8_t>& values);

bool satisfies_hard(const WcnfProblem& p, const std::vector<std::uint8_t>& values);
std::uint64_t soft_weight(const WcnfProblem& p, const std::vector<std::uint8_t>& values);

/// Classic DIMACS WCNF: "p wcnf <vars> <clauses> <top>", hard clauses weighted
/// top first, then soft clauses, each terminated by 0. Variable names are
/// emitted as "c var <v> <statement>" comments when known.
std::string export_wcnf(const WcnfProblem& p);

/// Parses classic WCNF (weights >= top are hard) and the newer "h ..." form.
/// Restores var_statements from "c var" comments when every variable has one.
WcnfProblem parse_wcnf(std::string_view text);

struct SolverOutput {
  std::string status;                  // e.g. "OPTIMUM FOUND"; empty if absent
  std::optional<std::uint64_t> cost;   // from the last "o" line
  std::vector<std::uint8_t> values;    // values[v-1]; unmentioned variables are false
};

/// Parses solver stdout: "s", "o" and one or more "v" lines, where "v" holds
/// either signed literals or a single 0/1 string of length num_vars. Throws
/// ParseError with the byte offset of the offending token.
SolverOutput parse_solver_output(std::string_view text, std::size_t num_vars);

/// Assignment from a "v ..." solution text for problem `p`.
Assignment import_solution(std::string_view text, const WcnfProblem& p);

}  // namespace partsmm
