#include "partsmm/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "partsmm/csv.hpp"
#include "partsmm/error.hpp"

namespace partsmm {

using ojson = nlohmann::ordered_json;

namespace {

Tally score(const Assignment& pred, const LabelMap& gold) {
  Tally t;
  std::vector<std::string> missing;
  for (const auto& [s, label] : gold) {
    auto it = pred.truth.find(s);
    if (it == pred.truth.end()) {
      if (missing.size() < 10) missing.push_back(to_string(s));
      continue;
    }
    ++t.total;
    t.correct += it->second == label;
  }
  if (t.total != gold.size()) {
    std::string msg = "prediction missing for " + std::to_string(gold.size() - t.total) + " gold statement(s):";
    for (const auto& m : missing) msg += " " + m;
    throw ValidationError(msg);
  }
  return t;
}

std::string pair_key(Relation r) {
  const Relation inv = inverse_of(r);
  if (inv == r) return std::string(to_string(r));
  const Relation a = index_of(r) < index_of(inv) ? r : inv;
  const Relation b = a == r ? inv : r;
  return std::string(to_string(a)) + "/" + std::string(to_string(b));
}

std::string num(double v) { return nlohmann::json(v).dump(); }

ojson tally_json(const Tally& t) {
  return {{"correct", t.correct}, {"total", t.total}, {"accuracy", t.accuracy()}};
}

}  // namespace

double accuracy(const Assignment& pred, const LabelMap& gold) {
  if (gold.empty()) return 1.0;
  return score(pred, gold).accuracy();
}

double accuracy_at_s(std::span<const double> per_model_accuracy, double s) {
  if (per_model_accuracy.empty()) throw ValidationError("accuracy@s needs at least one model");
  if (!(s >= 0.0 && s <= 100.0)) throw ValidationError("accuracy@s threshold must be in [0,100]");
  const double cut = s / 100.0;
  // Tolerate rounding in the ratio: 7/10 must count at s = 70.
  const auto hits = std::count_if(per_model_accuracy.begin(), per_model_accuracy.end(),
                                  [&](double a) { return a + 1e-12 >= cut; });
  return static_cast<double>(hits) / static_cast<double>(per_model_accuracy.size());
}

EvalReport breakdowns(std::span<const ModelEval> models, std::size_t ranking_size) {
  EvalReport r;
  r.n_models = models.size();
  std::size_t predicted_true = 0, gold_true = 0;
  std::vector<double> model_acc;
  std::map<std::string, double> entity_acc_sum;

  for (const ModelEval& m : models) {
    ModelScore ms{m.entity, m.model_id, score(m.pred, m.gold)};
    for (const auto& [s, label] : m.gold) {
      const bool ok = m.pred.truth.at(s) == label;
      Tally& rel = r.per_relation[s.relation];
      ++rel.total;
      rel.correct += ok;
      Tally& pair = r.per_relation_pair[pair_key(s.relation)];
      ++pair.total;
      pair.correct += ok;
      predicted_true += m.pred.truth.at(s);
      gold_true += label;
    }
    r.n_gold += ms.tally.total;
    r.correct += ms.tally.correct;
    r.ties += m.ties;
    const double acc = ms.tally.total == 0 ? 1.0 : ms.tally.accuracy();
    model_acc.push_back(acc);
    EntityScore& e = r.per_entity[m.entity];
    e.tally.correct += ms.tally.correct;
    e.tally.total += ms.tally.total;
    ++e.models;
    entity_acc_sum[m.entity] += acc;
    r.per_model.push_back(std::move(ms));
  }

  if (r.n_gold > 0) {
    const auto n = static_cast<double>(r.n_gold);
    r.overall_accuracy = static_cast<double>(r.correct) / n;
    r.true_tuple_rate = static_cast<double>(predicted_true) / n;
    r.gold_true_rate = static_cast<double>(gold_true) / n;
  }
  if (!model_acc.empty()) {
    r.macro_accuracy = std::accumulate(model_acc.begin(), model_acc.end(), 0.0) /
                       static_cast<double>(model_acc.size());
    for (int s : kAccuracyThresholds) r.accuracy_at_s[s] = accuracy_at_s(model_acc, s);
  }
  for (auto& [name, e] : r.per_entity) e.mean_model_accuracy = entity_acc_sum[name] / static_cast<double>(e.models);

  std::vector<std::string> names;
  for (const auto& [name, e] : r.per_entity) names.push_back(name);
  std::stable_sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) {
    return r.per_entity[a].tally.accuracy() > r.per_entity[b].tally.accuracy();
  });
  const std::size_t k = std::min(ranking_size, names.size());
  r.top_entities.assign(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(k));
  r.bottom_entities.assign(names.rbegin(), names.rbegin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

EvalDelta compare(const EvalReport& before, const EvalReport& after) {
  EvalDelta d;
  d.overall_accuracy = after.overall_accuracy - before.overall_accuracy;
  d.macro_accuracy = after.macro_accuracy - before.macro_accuracy;
  d.true_tuple_rate = after.true_tuple_rate - before.true_tuple_rate;
  for (const auto& [rel, t] : after.per_relation) {
    auto it = before.per_relation.find(rel);
    if (it != before.per_relation.end()) d.per_relation[rel] = t.accuracy() - it->second.accuracy();
  }
  d.curve_dominates = !after.accuracy_at_s.empty();
  for (const auto& [s, v] : after.accuracy_at_s) {
    const double b = before.accuracy_at_s.count(s) ? before.accuracy_at_s.at(s) : 0.0;
    d.accuracy_at_s[s] = v - b;
    d.curve_dominates = d.curve_dominates && v >= b;
  }
  return d;
}

namespace {

ojson report_json(const EvalReport& r) {
  ojson j;
  j["n_models"] = r.n_models;
  j["n_gold"] = r.n_gold;
  j["correct"] = r.correct;
  j["micro_accuracy"] = r.overall_accuracy;
  j["macro_accuracy"] = r.macro_accuracy;
  j["true_tuple_rate"] = r.true_tuple_rate;
  j["gold_true_rate"] = r.gold_true_rate;
  j["ties"] = r.ties;
  ojson at = ojson::object();
  for (const auto& [s, v] : r.accuracy_at_s) at[std::to_string(s)] = v;
  j["accuracy_at_s"] = at;
  ojson rel = ojson::object();
  for (const auto& [k, t] : r.per_relation) rel[std::string(to_string(k))] = tally_json(t);
  j["per_relation"] = rel;
  ojson pairs = ojson::object();
  for (const auto& [k, t] : r.per_relation_pair) pairs[k] = tally_json(t);
  j["per_relation_pair"] = pairs;
  ojson ent = ojson::object();
  for (const auto& [k, e] : r.per_entity) {
    ojson x = tally_json(e.tally);
    x["models"] = e.models;
    x["mean_model_accuracy"] = e.mean_model_accuracy;
    ent[k] = x;
  }
  j["per_entity"] = ent;
  j["top_entities"] = r.top_entities;
  j["bottom_entities"] = r.bottom_entities;
  return j;
}

ojson delta_json(const EvalDelta& d) {
  ojson j;
  j["micro_accuracy"] = d.overall_accuracy;
  j["macro_accuracy"] = d.macro_accuracy;
  j["true_tuple_rate"] = d.true_tuple_rate;
  ojson at = ojson::object();
  for (const auto& [s, v] : d.accuracy_at_s) at[std::to_string(s)] = v;
  j["accuracy_at_s"] = at;
  j["curve_dominates"] = d.curve_dominates;
  ojson rel = ojson::object();
  for (const auto& [k, v] : d.per_relation) rel[std::string(to_string(k))] = v;
  j["per_relation"] = rel;
  return j;
}

}  // namespace

std::string to_json_text(const EvalReport& r) { return report_json(r).dump(2) + "\n"; }

std::string comparison_json_text(const EvalReport& raw, const EvalReport& repaired) {
  ojson j;
  j["raw"] = report_json(raw);
  j["repaired"] = report_json(repaired);
  j["delta"] = delta_json(compare(raw, repaired));
  return j.dump(2) + "\n";
}

std::string per_relation_csv(const EvalReport& r) {
  std::string out = "relation,correct,total,accuracy\n";
  for (const auto& [k, t] : r.per_relation) {
    out += csv_row({to_string(k), std::to_string(t.correct), std::to_string(t.total), num(t.accuracy())});
  }
  return out;
}

std::string per_entity_csv(const EvalReport& r) {
  std::string out = "entity,models,correct,total,accuracy,mean_model_accuracy\n";
  for (const auto& [k, e] : r.per_entity) {
    out += csv_row({k, std::to_string(e.models), std::to_string(e.tally.correct),
                    std::to_string(e.tally.total), num(e.tally.accuracy()), num(e.mean_model_accuracy)});
  }
  return out;
}

std::string accuracy_at_s_csv(const EvalReport& r) {
  std::string out = "s,fraction_of_models\n";
  for (const auto& [s, v] : r.accuracy_at_s) out += csv_row({std::to_string(s), num(v)});
  return out;
}

std::string per_model_csv(const EvalReport& r) {
  std::string out = "entity,model_id,correct,total,accuracy\n";
  for (const auto& m : r.per_model) {
    out += csv_row({m.entity, m.model_id, std::to_string(m.tally.correct), std::to_string(m.tally.total),
                    num(m.tally.accuracy())});
  }
  return out;
}

}  // namespace partsmm
