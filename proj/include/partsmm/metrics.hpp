#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "partsmm/model.hpp"

namespace partsmm {

inline constexpr std::array<int, 6> kAccuracyThresholds{50, 60, 70, 80, 90, 100};

/// Correct / total over gold statements; throws ValidationError listing any
/// gold statement without a prediction. An empty gold set scores 1.0.
double accuracy(const Assignment& pred, const LabelMap& gold);

/// Fraction of models whose accuracy is at least s/100. Throws on an empty
/// list or s outside [0,100].
double accuracy_at_s(std::span<const double> per_model_accuracy, double s);

/// One model's predictions aligned with its gold labels.
struct ModelEval {
  std::string entity;
  std::string model_id;
  Assignment pred;
  LabelMap gold;
  std::size_t ties = 0;
};

struct Tally {
  std::size_t correct = 0;
  std::size_t total = 0;
  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total); }
};

struct EntityScore {
  Tally tally;                  // pooled over the entity's models
  double mean_model_accuracy = 0.0;
  std::size_t models = 0;
};

struct ModelScore {
  std::string entity;
  std::string model_id;
  Tally tally;
};

struct EvalReport {
  std::size_t n_models = 0;
  std::size_t n_gold = 0;
  std::size_t correct = 0;
  double overall_accuracy = 0.0;  // micro: pooled over every gold statement
  double macro_accuracy = 0.0;    // mean of per-model accuracies
  std::map<Relation, Tally> per_relation;
  /// Inverse pairs pooled, keyed "a/b" in relation order; symmetric kinds keep their own name.
  std::map<std::string, Tally> per_relation_pair;
  std::map<std::string, EntityScore> per_entity;
  std::map<int, double> accuracy_at_s;
  double true_tuple_rate = 0.0;  // predicted True over gold statements
  double gold_true_rate = 0.0;
  std::size_t ties = 0;
  std::vector<ModelScore> per_model;
  std::vector<std::string> top_entities;
  std::vector<std::string> bottom_entities;
};

/// Aggregates aligned predictions. Every gold statement must be predicted.
EvalReport breakdowns(std::span<const ModelEval> models, std::size_t ranking_size = 20);

/// after - before for every headline number.
struct EvalDelta {
  double overall_accuracy = 0.0;
  double macro_accuracy = 0.0;
  double true_tuple_rate = 0.0;
  std::map<Relation, double> per_relation;
  std::map<int, double> accuracy_at_s;
  bool curve_dominates = false;  // after >= before at every threshold
};
EvalDelta compare(const EvalReport& before, const EvalReport& after);

std::string to_json_text(const EvalReport& r);
std::string per_relation_csv(const EvalReport& r);
std::string per_entity_csv(const EvalReport& r);
std::string accuracy_at_s_csv(const EvalReport& r);
std::string per_model_csv(const EvalReport& r);

/// Raw vs repaired comparison document: {"raw": ..., "repaired": ..., "delta": ...}.
std::string comparison_json_text(const EvalReport& raw, const EvalReport& repaired);

}  // namespace partsmm
