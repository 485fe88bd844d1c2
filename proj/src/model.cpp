#include "partsmm/model.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "partsmm/error.hpp"

namespace partsmm {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(const Statement& s) {
  return s.subject + "|" + std::string(to_string(s.relation)) + "|" + s.object;
}

StatementUniverse::StatementUniverse(std::vector<std::string> parts, std::vector<Relation> relations)
    : parts_(std::move(parts)), relations_(std::move(relations)) {
  if (parts_.size() < 2) {
    throw ValidationError("a statement universe needs at least 2 parts, got " +
                          std::to_string(parts_.size()));
  }
  if (relations_.empty()) throw ValidationError("a statement universe needs at least 1 relation");
  relation_pos_.fill(-1);
  for (std::size_t k = 0; k < relations_.size(); ++k) {
    auto& slot = relation_pos_[index_of(relations_[k])];
    if (slot >= 0) {
      throw ValidationError("duplicate relation '" + std::string(to_string(relations_[k])) + "'");
    }
    slot = static_cast<int>(k);
  }
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (!part_pos_.emplace(parts_[i], i).second) {
      throw ValidationError("duplicate part name '" + parts_[i] + "'");
    }
  }
  const std::size_t n = parts_.size();
  statements_.reserve(n * (n - 1) * relations_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (Relation r : relations_) statements_.push_back({parts_[i], r, parts_[j]});
    }
  }
}

std::optional<std::size_t> StatementUniverse::part_index(const std::string& name) const {
  auto it = part_pos_.find(name);
  if (it == part_pos_.end()) return std::nullopt;
  return it->second;
}

std::size_t StatementUniverse::index(std::size_t subject, Relation r, std::size_t object) const {
  const std::size_t n = parts_.size();
  const std::size_t j = object < subject ? object : object - 1;
  return (subject * (n - 1) + j) * relations_.size() +
         static_cast<std::size_t>(relation_pos_[index_of(r)]);
}

std::optional<std::size_t> StatementUniverse::find(const Statement& s) const {
  if (!has_relation(s.relation)) return std::nullopt;
  auto x = part_index(s.subject);
  auto y = part_index(s.object);
  if (!x || !y || *x == *y) return std::nullopt;
  return index(*x, s.relation, *y);
}

std::vector<Statement> enumerate_statements(const std::vector<std::string>& parts) {
  return StatementUniverse(parts).statements();
}

LabelMap PartsMentalModel::gold_map() const {
  LabelMap out;
  for (const auto& g : gold) out.emplace(g.statement, g.label);
  return out;
}

BeliefMap PartsMentalModel::belief_map() const {
  BeliefMap out;
  for (const auto& b : beliefs) out.emplace(b.statement, b.confidence);
  return out;
}

void PartsMentalModel::validate() const {
  std::set<std::string> names;
  for (const auto& p : parts) {
    if (p.empty()) throw ValidationError(entity + ": empty part name");
    if (!names.insert(p).second) throw ValidationError(entity + ": duplicate part name '" + p + "'");
  }
  auto check = [&](const Statement& s, const char* where) {
    if (s.subject == s.object) {
      throw ValidationError(std::string(where) + ": reflexive statement " + to_string(s));
    }
    for (const auto* name : {&s.subject, &s.object}) {
      if (!names.count(*name)) {
        throw ValidationError(std::string(where) + ": statement " + to_string(s) +
                              " references unknown part '" + *name + "'");
      }
    }
  };
  std::set<Statement> seen;
  for (const auto& g : gold) {
    check(g.statement, "gold");
    if (!seen.insert(g.statement).second) {
      throw ValidationError("gold: duplicate statement " + to_string(g.statement));
    }
  }
  seen.clear();
  for (const auto& b : beliefs) {
    check(b.statement, "beliefs");
    if (!seen.insert(b.statement).second) {
      throw ValidationError("beliefs: duplicate statement " + to_string(b.statement));
    }
    if (!(b.confidence >= 0.0 && b.confidence <= 1.0)) {
      throw ValidationError("beliefs: confidence " + std::to_string(b.confidence) + " of " +
                            to_string(b.statement) + " is outside [0,1]");
    }
  }
  if (parts.size() < 2 && (!gold.empty() || !beliefs.empty())) {
    throw ValidationError(entity + ": statements require at least 2 parts");
  }
}

std::vector<LabeledStatement> to_labeled(const LabelMap& labels) {
  std::vector<LabeledStatement> out;
  out.reserve(labels.size());
  for (const auto& [s, v] : labels) out.push_back({s, v});
  return out;
}

std::vector<BeliefEntry> to_entries(const BeliefMap& beliefs) {
  std::vector<BeliefEntry> out;
  out.reserve(beliefs.size());
  for (const auto& [s, p] : beliefs) out.push_back({s, p});
  return out;
}

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) throw ParseError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

Statement statement_from(const json& rec, const std::string& path) {
  if (!rec.is_object()) throw ParseError(path + ": expected an object");
  Statement s;
  s.subject = string_field(rec, "x", path);
  std::string rln = string_field(rec, "rln", path);
  s.object = string_field(rec, "y", path);
  auto r = parse_relation(rln);
  if (!r) {
    throw ParseError(path + ".rln: unknown relation '" + rln +
                     "'; valid kinds: " + valid_relation_names());
  }
  s.relation = *r;
  return s;
}

nlohmann::ordered_json statement_json(const Statement& s) {
  return nlohmann::ordered_json{{"x", s.subject}, {"rln", std::string(to_string(s.relation))}, {"y", s.object}};
}

}  // namespace

PartsMentalModel model_from_json_text(std::string_view text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError(origin + ": expected a JSON object");
  PartsMentalModel m;
  m.entity = string_field(doc, "entity", origin);
  m.model_id = doc.contains("model_id") ? string_field(doc, "model_id", origin) : "";
  const json& parts = field(doc, "parts", origin);
  if (!parts.is_array()) throw ParseError(origin + ".parts: expected an array");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].is_string()) {
      throw ParseError(origin + ".parts[" + std::to_string(i) + "]: expected a string");
    }
    m.parts.push_back(parts[i].get<std::string>());
  }
  if (auto it = doc.find("gold"); it != doc.end()) {
    if (!it->is_array()) throw ParseError(origin + ".gold: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = origin + ".gold[" + std::to_string(i) + "]";
      const json& rec = (*it)[i];
      Statement s = statement_from(rec, path);
      const json& label = field(rec, "label", path);
      if (!label.is_boolean()) throw ParseError(path + ".label: expected true/false");
      m.gold.push_back({std::move(s), label.get<bool>()});
    }
  }
  if (auto it = doc.find("beliefs"); it != doc.end()) {
    if (!it->is_array()) throw ParseError(origin + ".beliefs: expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = origin + ".beliefs[" + std::to_string(i) + "]";
      const json& rec = (*it)[i];
      Statement s = statement_from(rec, path);
      const json& p = field(rec, "p", path);
      if (!p.is_number()) throw ParseError(path + ".p: expected a number");
      m.beliefs.push_back({std::move(s), p.get<double>()});
    }
  }
  try {
    m.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  return m;
}

std::string model_to_json_text(const PartsMentalModel& m) {
  using ojson = nlohmann::ordered_json;
  ojson gold = ojson::array();
  for (const auto& g : m.gold) {
    ojson rec = statement_json(g.statement);
    rec["label"] = g.label;
    gold.push_back(std::move(rec));
  }
  ojson beliefs = ojson::array();
  for (const auto& b : m.beliefs) {
    ojson rec = statement_json(b.statement);
    rec["p"] = b.confidence;
    beliefs.push_back(std::move(rec));
  }
  ojson doc = ojson::object();
  doc["entity"] = m.entity;
  doc["model_id"] = m.model_id;
  doc["parts"] = m.parts;
  doc["gold"] = std::move(gold);
  doc["beliefs"] = std::move(beliefs);
  return doc.dump(1) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

PartsMentalModel load_model(const std::string& path) {
  return model_from_json_text(read_file(path), path);
}

void save_model(const PartsMentalModel& m, const std::string& path) {
  write_file(path, model_to_json_text(m));
}

std::vector<PartsMentalModel> load_models(const std::string& path) {
  if (!fs::is_directory(path)) return {load_model(path)};
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(path)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<PartsMentalModel> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_model(f.string()));
  return out;
}

std::string model_file_stem(const PartsMentalModel& m) {
  auto clean = [](const std::string& s) {
    std::string out;
    for (unsigned char c : s) {
      out += std::isalnum(c) || c == '-' || c == '.' ? static_cast<char>(c) : '_';
    }
    return out;
  };
  return m.model_id.empty() ? clean(m.entity) : clean(m.entity) + "__" + clean(m.model_id);
}

}  // namespace partsmm
