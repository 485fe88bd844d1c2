#pragma once

#include <cstdint>
#include <string>

#include "partsmm/consistency.hpp"
#include "partsmm/maxsat.hpp"
#include "partsmm/model.hpp"
#include "partsmm/wcnf.hpp"

namespace partsmm {

enum class Engine { Exact, Local, External };
Engine engine_from_string(std::string_view s);
std::string_view to_string(Engine e);

struct RepairConfig {
  Engine engine = Engine::Exact;
  std::int64_t scale = kDefaultScale;
  Seconds budget = kDefaultBudget;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 100000;
  std::string solver_cmd;
  bool allow_missing = false;
};

/// Beliefs over the full statement universe; missing entries become 0.5 when
/// allowed, otherwise ValidationError lists them.
BeliefMap complete_beliefs(const BeliefMap& beliefs, const StatementUniverse& u, bool allow_missing);

struct Repair {
  std::string entity;
  std::string model_id;
  Assignment raw;       // thresholded beliefs
  std::size_t ties = 0;
  Assignment repaired;  // MaxSAT solution
  ViolationReport raw_violations;
  ViolationReport repaired_violations;
  std::uint64_t satisfied_soft_weight = 0;
  std::uint64_t total_soft_weight = 0;
  bool proven_optimal = false;
  SolveStats stats;
};

/// Encodes `beliefs` against the full grounding of `model.parts` and solves.
Repair repair(const PartsMentalModel& model, const BeliefMap& beliefs, const RepairConfig& config);

/// Per-model solution document. Wall time is left out so that equal inputs
/// give byte-equal files.
std::string solution_to_json_text(const Repair& r, const RepairConfig& config);

struct Solution {
  std::string entity;
  std::string model_id;
  Assignment assignment;
};
Solution solution_from_json_text(std::string_view text, const std::string& origin = "<solution>");

}  // namespace partsmm
