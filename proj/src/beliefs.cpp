#include "partsmm/beliefs.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "partsmm/error.hpp"
#include "partsmm/hash.hpp"
#include "partsmm/http_source.hpp"

namespace partsmm {

using nlohmann::json;

std::optional<double> confidence_from_scores(double st, double sf) {
  if (!std::isfinite(st) || !std::isfinite(sf) || st < 0.0 || sf < 0.0) return std::nullopt;
  const double sum = st + sf;
  if (!(sum > 0.0) || !std::isfinite(sum)) return std::nullopt;
  return st / sum;
}

std::vector<ScoreResult> BeliefSource::score_batch(std::string_view entity,
                                                   std::span<const Statement> batch) {
  std::vector<ScoreResult> out;
  out.reserve(batch.size());
  for (const auto& s : batch) out.push_back(score(entity, s));
  return out;
}

double BeliefSource::query(std::string_view entity, const Statement& s) {
  ScoreResult r = score(entity, s);
  std::optional<double> c;
  if (r.scores) c = confidence_from_scores(r.scores->score_true, r.scores->score_false);
  if (!c) {
    throw Error(name() + " could not score " + to_string(s) + (r.error.empty() ? "" : ": " + r.error));
  }
  return *c;
}

std::vector<double> BeliefSource::query_batch(std::string_view entity, std::span<const Statement> batch) {
  std::vector<double> out;
  out.reserve(batch.size());
  auto results = score_batch(entity, batch);
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::optional<double> c;
    if (results[i].scores) c = confidence_from_scores(results[i].scores->score_true, results[i].scores->score_false);
    if (!c) throw Error(name() + " could not score " + to_string(batch[i]));
    out.push_back(*c);
  }
  return out;
}

std::vector<ProbeRecord> probe(BeliefSource& source, const PartsMentalModel& model) {
  const StatementUniverse u(model.parts);
  const auto results = source.score_batch(model.entity, u.statements());
  std::vector<ProbeRecord> out;
  out.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const ScoreResult& r = results[i];
    ProbeRecord rec;
    rec.entity = model.entity;
    rec.model_id = model.model_id;
    rec.statement = u.at(i);
    rec.prompt = surface_form(model.entity, rec.statement);
    rec.timestamp = r.timestamp;
    rec.attempts = r.attempts;
    rec.error = r.error;
    std::optional<double> c;
    if (r.scores) {
      rec.score_true = r.scores->score_true;
      rec.score_false = r.scores->score_false;
      c = confidence_from_scores(rec.score_true, rec.score_false);
    }
    if (c) {
      rec.confidence = *c;
      rec.answer = answer_from_confidence(*c);
    } else {
      rec.failed = true;
      rec.confidence = 0.5;
      rec.answer = true;
      if (rec.error.empty()) rec.error = "no usable score for either answer";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

BeliefMap beliefs_from_records(const std::vector<ProbeRecord>& records, bool allow_missing) {
  BeliefMap out;
  for (const auto& r : records) {
    if (r.failed) {
      if (!allow_missing) {
        throw Error("probe failed for " + r.entity + " " + to_string(r.statement) + ": " + r.error +
                    " (use --allow-missing to fill with 0.5)");
      }
      out[r.statement] = 0.5;
      continue;
    }
    out[r.statement] = r.confidence;
  }
  return out;
}

ThresholdedBeliefs threshold(const BeliefMap& beliefs) {
  ThresholdedBeliefs t;
  for (const auto& [s, p] : beliefs) {
    t.assignment.truth.emplace(s, answer_from_confidence(p));
    t.ties += p == 0.5;
  }
  return t;
}

std::string to_jsonl(const ProbeRecord& r) {
  nlohmann::ordered_json j;
  j["entity"] = r.entity;
  j["model_id"] = r.model_id;
  j["x"] = r.statement.subject;
  j["rln"] = std::string(to_string(r.statement.relation));
  j["y"] = r.statement.object;
  j["prompt"] = r.prompt;
  j["score_true"] = r.score_true;
  j["score_false"] = r.score_false;
  j["confidence"] = r.confidence;
  j["answer"] = r.answer;
  j["timestamp"] = r.timestamp;
  j["failed"] = r.failed;
  j["error"] = r.error;
  j["attempts"] = r.attempts;
  return j.dump() + "\n";
}

ProbeRecord probe_record_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("probe record: ") + e.what());
  }
  try {
    ProbeRecord r;
    r.entity = j.at("entity").get<std::string>();
    r.model_id = j.value("model_id", std::string());
    r.statement.subject = j.at("x").get<std::string>();
    r.statement.relation = relation_from_string(j.at("rln").get<std::string>());
    r.statement.object = j.at("y").get<std::string>();
    r.prompt = j.value("prompt", std::string());
    r.score_true = j.value("score_true", 0.0);
    r.score_false = j.value("score_false", 0.0);
    r.confidence = j.at("confidence").get<double>();
    r.answer = j.value("answer", answer_from_confidence(r.confidence));
    r.timestamp = j.value("timestamp", std::string());
    r.failed = j.value("failed", false);
    r.error = j.value("error", std::string());
    r.attempts = j.value("attempts", 1);
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("probe record: ") + e.what());
  }
}

std::vector<ProbeRecord> read_probe_records(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<ProbeRecord> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      out.push_back(probe_record_from_json(line));
    } catch (const Error& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void append_probe_records(const std::string& path, const std::vector<ProbeRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot append to " + path);
  for (const auto& r : records) out << to_jsonl(r);
}

ScoreResult GoldOracleSource::score(std::string_view, const Statement& s) {
  ScoreResult r;
  auto it = gold_.find(s);
  if (it == gold_.end()) {
    r.scores = Scores{0.5, 0.5};
  } else {
    r.scores = it->second ? Scores{1.0, 0.0} : Scores{0.0, 1.0};
  }
  return r;
}

namespace {
std::mt19937_64 statement_rng(std::uint64_t seed, std::string_view entity, const Statement& s) {
  std::string key(entity);
  key += '\x1f';
  key += to_string(s);
  return std::mt19937_64(combine_seed(seed, key));
}
}  // namespace

NoisyOracleSource::NoisyOracleSource(LabelMap gold, double flip_prob, std::uint64_t seed)
    : gold_(std::move(gold)), flip_prob_(flip_prob), seed_(seed) {
  if (!(flip_prob >= 0.0 && flip_prob <= 1.0)) {
    throw ValidationError("flip probability must be in [0,1], got " + std::to_string(flip_prob));
  }
}

std::string NoisyOracleSource::name() const {
  json j = flip_prob_;
  return "noisy:flip=" + j.dump() + ",seed=" + std::to_string(seed_);
}

ScoreResult NoisyOracleSource::score(std::string_view entity, const Statement& s) {
  ScoreResult r;
  auto it = gold_.find(s);
  if (it == gold_.end()) {
    r.scores = Scores{0.5, 0.5};
    return r;
  }
  auto rng = statement_rng(seed_, entity, s);
  const bool flipped = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < flip_prob_;
  const double magnitude = std::uniform_real_distribution<double>(0.55, 0.95)(rng);
  const bool says_true = it->second != flipped;
  const double p = says_true ? magnitude : 1.0 - magnitude;
  r.scores = Scores{p, 1.0 - p};
  return r;
}

ScoreResult RandomSource::score(std::string_view entity, const Statement& s) {
  auto rng = statement_rng(seed_, entity, s);
  const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  ScoreResult r;
  r.scores = Scores{p, 1.0 - p};
  return r;
}

RecordedSource::RecordedSource(const std::vector<ProbeRecord>& records) {
  for (const auto& r : records) records_[{r.entity, r.statement}] = r;
}

std::unique_ptr<RecordedSource> RecordedSource::from_file(const std::string& path) {
  return std::make_unique<RecordedSource>(read_probe_records(path));
}

ScoreResult RecordedSource::score(std::string_view entity, const Statement& s) {
  ScoreResult r;
  auto it = records_.find({std::string(entity), s});
  if (it == records_.end()) {
    r.error = "no recorded probe";
    return r;
  }
  const ProbeRecord& rec = it->second;
  r.timestamp = rec.timestamp;
  r.attempts = rec.attempts;
  if (rec.failed) {
    r.error = rec.error;
    return r;
  }
  r.scores = Scores{rec.score_true, rec.score_false};
  return r;
}

std::string SourceSpec::get(const std::string& key, const std::string& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

SourceSpec parse_source_spec(std::string_view text) {
  SourceSpec spec;
  auto colon = text.find(':');
  spec.kind = std::string(text.substr(0, colon));
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view kv = rest.substr(0, comma);
    auto eq = kv.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("belief source parameter '" + std::string(kv) + "' is not key=value");
    }
    spec.params[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

std::unique_ptr<BeliefSource> make_source(const SourceSpec& spec, const PartsMentalModel& model) {
  auto seed_for = [&](const std::string& fallback) {
    const std::uint64_t base = std::stoull(spec.get("seed", fallback));
    return combine_seed(base, model_file_stem(model));
  };
  if (spec.kind == "gold") return std::make_unique<GoldOracleSource>(model.gold_map());
  if (spec.kind == "noisy") {
    return std::make_unique<NoisyOracleSource>(model.gold_map(), std::stod(spec.get("flip", "0.4")),
                                               seed_for("0"));
  }
  if (spec.kind == "random") return std::make_unique<RandomSource>(seed_for("0"));
  if (spec.kind == "recorded") {
    const std::string path = spec.get("path", "");
    if (path.empty()) throw ValidationError("recorded belief source needs path=<file.jsonl>");
    return RecordedSource::from_file(path);
  }
  if (spec.kind == "http") {
    const std::string config = spec.get("config", "");
    if (config.empty()) throw ValidationError("http belief source needs config=<endpoint.json>");
    return std::make_unique<HttpLmSource>(HttpLmConfig::load(config));
  }
  throw ValidationError("unknown belief source '" + spec.kind +
                        "'; expected gold, noisy, random, recorded or http");
}

}  // namespace partsmm
