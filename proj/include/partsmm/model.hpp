#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "partsmm/ontology.hpp"

namespace partsmm {

/// A directed claim (subject, relation, object) about one entity's parts.
struct Statement {
  std::string subject;
  Relation relation = Relation::PartOf;
  std::string object;

  friend auto operator<=>(const Statement&, const Statement&) = default;
  friend bool operator==(const Statement&, const Statement&) = default;
};

/// "subject|relation|object", used in reports and error messages.
std::string to_string(const Statement& s);

using LabelMap = std::map<Statement, bool>;
using BeliefMap = std::map<Statement, double>;

struct LabeledStatement {
  Statement statement;
  bool label = false;
  friend bool operator==(const LabeledStatement&, const LabeledStatement&) = default;
};

struct BeliefEntry {
  Statement statement;
  double confidence = 0.5;
  friend bool operator==(const BeliefEntry&, const BeliefEntry&) = default;
};

/// A truth assignment over some statement universe.
struct Assignment {
  LabelMap truth;

  bool contains(const Statement& s) const { return truth.count(s) != 0; }
  bool at(const Statement& s) const { return truth.at(s); }
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Dense, index-addressable enumeration of every statement over a parts list
/// and a relation subset. Position of statement (parts[i], r, parts[j]) is
/// ((i * (n-1) + j') * |relations| + k) where j' skips i and k is r's position
/// in the relation subset.
class StatementUniverse {
 public:
  /// Throws ValidationError on fewer than two parts or duplicate names.
  explicit StatementUniverse(std::vector<std::string> parts,
                             std::vector<Relation> relations = {kAllRelations.begin(),
                                                                kAllRelations.end()});

  std::size_t size() const { return statements_.size(); }
  std::size_t part_count() const { return parts_.size(); }
  const std::vector<std::string>& parts() const { return parts_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<Statement>& statements() const { return statements_; }
  const Statement& at(std::size_t index) const { return statements_[index]; }

  bool has_relation(Relation r) const { return relation_pos_[index_of(r)] >= 0; }
  std::optional<std::size_t> part_index(const std::string& name) const;

  /// Index of (parts[subject], r, parts[object]); requires subject != object
  /// and r in the relation subset.
  std::size_t index(std::size_t subject, Relation r, std::size_t object) const;
  std::optional<std::size_t> find(const Statement& s) const;

 private:
  std::vector<std::string> parts_;
  std::vector<Relation> relations_;
  std::array<int, kRelationCount> relation_pos_{};
  std::unordered_map<std::string, std::size_t> part_pos_;
  std::vector<Statement> statements_;
};

/// All n(n-1)*14 statements over `parts`, pair-major in parts order, then
/// relation order. Duplicate or fewer than two part names are rejected.
std::vector<Statement> enumerate_statements(const std::vector<std::string>& parts);

/// One entity's mental model: parts, (partial) gold labels, (partial) beliefs.
/// Gold and belief lists keep file order; lookups go through the maps built
/// by gold_map() / belief_map().
struct PartsMentalModel {
  std::string entity;
  std::string model_id;
  std::vector<std::string> parts;
  std::vector<LabeledStatement> gold;
  std::vector<BeliefEntry> beliefs;

  LabelMap gold_map() const;
  BeliefMap belief_map() const;

  /// Throws ValidationError when a statement is reflexive, names an unknown
  /// part, appears twice in gold or beliefs, a confidence is outside [0,1], or
  /// parts repeat.
  void validate() const;

  friend bool operator==(const PartsMentalModel&, const PartsMentalModel&) = default;
};

std::vector<LabeledStatement> to_labeled(const LabelMap& labels);
std::vector<BeliefEntry> to_entries(const BeliefMap& beliefs);

/// JSON document: {entity, model_id, parts, gold:[{x,rln,y,label}],
/// beliefs:[{x,rln,y,p}]}.
PartsMentalModel model_from_json_text(std::string_view text, const std::string& origin = "<input>");
std::string model_to_json_text(const PartsMentalModel& m);

PartsMentalModel load_model(const std::string& path);
void save_model(const PartsMentalModel& m, const std::string& path);

/// Loads every *.json model in a directory, sorted by file name.
std::vector<PartsMentalModel> load_models(const std::string& path);

/// File-name-safe stem "<entity>__<model_id>".
std::string model_file_stem(const PartsMentalModel& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace partsmm
