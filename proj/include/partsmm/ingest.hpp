#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "partsmm/model.hpp"

namespace partsmm {

/// Counts gathered while reading an annotation release.
struct IngestSummary {
  std::size_t rows = 0;
  std::size_t models = 0;
  std::size_t entities = 0;
  std::size_t tuples = 0;
  std::size_t true_tuples = 0;
  std::size_t false_tuples = 0;
  std::size_t duplicate_rows = 0;
  std::size_t contradicting_rows = 0;  // same statement, other label; first kept
  std::size_t reflexive_rows = 0;      // subject == object; dropped
  std::map<Relation, std::size_t> per_relation;
  std::map<std::string, std::size_t> per_category;  // spatial / connectivity / functional

  double majority_baseline() const;  // max(True, False) share
};

struct IngestResult {
  std::vector<PartsMentalModel> models;  // sorted by (entity, model_id)
  IngestSummary summary;
};

/// Lower-cased, trimmed, inner whitespace collapsed.
std::string normalize_name(std::string_view s);

/// Parses a release table. Accepted layouts: CSV or TSV with a header row,
/// or JSON lines. Column names are matched case-insensitively against
/// aliases:
///   entity   everyday_thing, entity, object_name, thing
///   model    mm_id, model_id, turker, annotator, worker_id, assignment_id
///   subject  p1, part1, x, subject, head
///   relation rln, relation, r, predicate
///   object   p2, part2, y, object, tail
///   label    label, gold, truth, value, answer
///   parts    parts (optional; ';', '|' or ',' separated, or a JSON list)
/// Labels accept true/false, t/f, 1/0, yes/no.
IngestResult ingest_text(std::string_view text, std::string_view origin, char delimiter = 0);

/// A file, or every .csv/.tsv/.jsonl file in a directory (sorted, merged).
IngestResult ingest_path(const std::string& path);

std::string to_json_text(const IngestSummary& s);

}  // namespace partsmm
