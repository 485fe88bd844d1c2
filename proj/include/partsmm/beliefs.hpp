#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partsmm/model.hpp"

namespace partsmm {

/// Raw scores for the "True" and "False" answers to one probe. Either may be
/// a probability or any positive, commonly scaled quantity.
struct Scores {
  double score_true = 0.0;
  double score_false = 0.0;
};

/// score_true / (score_true + score_false); nullopt when the ratio is
/// undefined (non-finite, negative, or both zero).
std::optional<double> confidence_from_scores(double score_true, double score_false);

/// Raw-answer threshold; a confidence of exactly 0.5 answers True.
inline bool answer_from_confidence(double confidence) { return confidence >= 0.5; }

/// Outcome of scoring one statement.
struct ScoreResult {
  std::optional<Scores> scores;
  std::string error;
  int attempts = 1;
  /// ISO-8601 UTC time of the underlying response; empty for synthetic sources.
  std::string timestamp;
};

/// Anything that maps statements about an entity to a belief.
class BeliefSource {
 public:
  virtual ~BeliefSource() = default;

  virtual std::string name() const = 0;
  virtual ScoreResult score(std::string_view entity, const Statement& s) = 0;

  /// Results in input order. The default scores one statement at a time.
  virtual std::vector<ScoreResult> score_batch(std::string_view entity, std::span<const Statement> batch);

  /// Confidence in [0,1]; throws Error if the source cannot score `s`.
  double query(std::string_view entity, const Statement& s);
  std::vector<double> query_batch(std::string_view entity, std::span<const Statement> batch);
};

struct ProbeRecord {
  std::string entity;
  std::string model_id;
  Statement statement;
  std::string prompt;
  double score_true = 0.0;
  double score_false = 0.0;
  double confidence = 0.5;
  bool answer = true;
  std::string timestamp;
  bool failed = false;
  std::string error;
  int attempts = 1;

  friend bool operator==(const ProbeRecord&, const ProbeRecord&) = default;
};

/// One record per enumerated statement of `model`, in enumeration order.
/// Statements the source fails on are kept with failed = true.
std::vector<ProbeRecord> probe(BeliefSource& source, const PartsMentalModel& model);

/// Beliefs from successful records. With allow_missing, failed records get
/// 0.5; otherwise a failed record raises Error naming it.
BeliefMap beliefs_from_records(const std::vector<ProbeRecord>& records, bool allow_missing);

/// Thresholded raw answers; `ties` counts confidences exactly 0.5.
struct ThresholdedBeliefs {
  Assignment assignment;
  std::size_t ties = 0;
};
ThresholdedBeliefs threshold(const BeliefMap& beliefs);

/// JSON-lines codec, one record per line.
std::string to_jsonl(const ProbeRecord& r);
ProbeRecord probe_record_from_json(std::string_view line);
std::vector<ProbeRecord> read_probe_records(const std::string& path);
void append_probe_records(const std::string& path, const std::vector<ProbeRecord>& records);

/// p = 1 on gold-True, 0 on gold-False, 0.5 on unlabeled statements.
class GoldOracleSource : public BeliefSource {
 public:
  explicit GoldOracleSource(LabelMap gold) : gold_(std::move(gold)) {}
  std::string name() const override { return "gold"; }
  ScoreResult score(std::string_view entity, const Statement& s) override;

 private:
  LabelMap gold_;
};

/// Gold labels seen through noise: the correct side of 0.5 with probability
/// 1 - flip_prob, magnitude uniform in [0.55, 0.95]; unlabeled statements get
/// 0.5. Each statement's draw depends only on (seed, entity, statement), so
/// results do not depend on query order.
class NoisyOracleSource : public BeliefSource {
 public:
  NoisyOracleSource(LabelMap gold, double flip_prob, std::uint64_t seed);
  std::string name() const override;
  ScoreResult score(std::string_view entity, const Statement& s) override;

 private:
  LabelMap gold_;
  double flip_prob_;
  std::uint64_t seed_;
};

/// Uniform confidences in [0,1], fixed per (seed, entity, statement).
class RandomSource : public BeliefSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random:seed=" + std::to_string(seed_); }
  ScoreResult score(std::string_view entity, const Statement& s) override;

 private:
  std::uint64_t seed_;
};

/// Replays scores from a JSON-lines probe file; unknown statements fail.
class RecordedSource : public BeliefSource {
 public:
  explicit RecordedSource(const std::vector<ProbeRecord>& records);
  static std::unique_ptr<RecordedSource> from_file(const std::string& path);
  std::string name() const override { return "recorded"; }
  ScoreResult score(std::string_view entity, const Statement& s) override;

 private:
  std::map<std::pair<std::string, Statement>, ProbeRecord> records_;
};

/// Parsed form of a belief-source spec such as "noisy:flip=0.4,seed=7".
struct SourceSpec {
  std::string kind;
  std::map<std::string, std::string> params;
  std::string get(const std::string& key, const std::string& fallback) const;
};
SourceSpec parse_source_spec(std::string_view text);

/// Builds the source for one model. Kinds: gold, noisy (flip, seed), random
/// (seed), recorded (path), http (config). Synthetic seeds are mixed with the
/// model's file stem so every model gets its own stream.
std::unique_ptr<BeliefSource> make_source(const SourceSpec& spec, const PartsMentalModel& model);

}  // namespace partsmm
