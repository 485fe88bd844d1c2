#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partsmm/model.hpp"

namespace partsmm {

/// Inference rule that produced a label.
enum class Rule : std::uint8_t {
  Gold,                      // given in the input
  Symmetric,                 // (x r y) => (y r x), either polarity
  Inverse,                   // (x r y) => (y inv(r) x), either polarity
  Asymmetric,                // (x r y)=T => (y r x)=F
  AsymmetricInverse,         // (x r y)=T => (x inv(r) y)=F
  Transitive,                // (x r y)=T, (y r z)=T => (x r z)=T
  TransitiveContrapositive,  // one true premise and a false conclusion => false
};

std::string_view to_string(Rule rule);

struct Premise {
  Statement statement;
  bool label = false;
  friend bool operator==(const Premise&, const Premise&) = default;
};

struct Derivation {
  Rule rule = Rule::Gold;
  std::vector<Premise> premises;
  friend bool operator==(const Derivation&, const Derivation&) = default;
};

/// "rule(premise=T; premise=F)".
std::string to_string(const Derivation& d);

struct EnrichOptions {
  /// Also derive False labels through transitivity contrapositives.
  bool contrapositive = false;
  /// Randomize work-list and rule order. The fixed point is unchanged; only
  /// which derivation is recorded first may differ.
  std::optional<std::uint64_t> shuffle_seed;
};

struct Conflict {
  Statement statement;
  Derivation true_derivation;
  Derivation false_derivation;
};

struct EnrichmentResult {
  /// Closure of the input labels, minus statements derived both ways.
  LabelMap enriched;
  /// First derivation found for each enriched statement.
  std::map<Statement, Derivation> derivation;
  /// Statements derived both True and False, in enumeration order.
  std::vector<Conflict> conflicts;
};

/// Least fixed point of the symmetric / inverse / asymmetric / transitive
/// rules over `gold`. True labels feed every rule; False labels only cross the
/// biconditionals (symmetric, inverse) unless contrapositive reasoning is on.
/// Throws ValidationError if a gold statement is reflexive or names a part
/// outside `parts`.
EnrichmentResult enrich(const LabelMap& gold, const std::vector<std::string>& parts,
                        const EnrichOptions& options = {});

/// True when `d` licenses (`conclusion` = `label`) given its premises.
bool replay(const Derivation& d, const Statement& conclusion, bool label);

struct EnrichmentSummary {
  std::size_t models = 0;
  std::size_t failed = 0;
  std::size_t input_tuples = 0;
  std::size_t enriched_tuples = 0;
  std::size_t true_tuples = 0;
  std::size_t false_tuples = 0;
  std::size_t spatial_tuples = 0;
  std::size_t connectivity_tuples = 0;
  std::size_t functional_tuples = 0;
  std::size_t conflicts = 0;
  /// conflicts / (enriched_tuples + conflicts); 0 when both are zero.
  double conflict_rate = 0.0;
};

struct ModelEnrichment {
  std::string entity;
  std::string model_id;
  std::optional<EnrichmentResult> result;
  std::string error;
};

struct DatasetEnrichment {
  std::vector<ModelEnrichment> models;
  EnrichmentSummary summary;
};

/// Enriches every model; a failing model is reported, not fatal.
DatasetEnrichment enrich_dataset(const std::vector<PartsMentalModel>& models,
                                 const EnrichOptions& options = {}, std::size_t workers = 1);

/// CSV (entity, model_id, statement, true_trace, false_trace) of all conflicts.
std::string conflicts_csv(const DatasetEnrichment& d);

}  // namespace partsmm
