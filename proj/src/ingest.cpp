#include "partsmm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <optional>
#include <set>

#include "json.hpp"
#include "partsmm/error.hpp"

namespace partsmm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Column { kEntity, kModel, kSubject, kRelation, kObject, kLabel, kParts, kColumnCount };

const std::vector<std::vector<std::string>> kAliases = {
    {"everyday_thing", "entity", "object_name", "thing"},
    {"mm_id", "model_id", "turker", "annotator", "worker_id", "assignment_id"},
    {"p1", "part1", "x", "subject", "head"},
    {"rln", "relation", "r", "predicate"},
    {"p2", "part2", "y", "object", "tail"},
    {"label", "gold", "truth", "value", "answer"},
    {"parts"},
};
const char* kColumnNames[] = {"entity", "model", "subject", "relation", "object", "label", "parts"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<bool> parse_label(std::string_view raw) {
  const std::string v = normalize_name(raw);
  if (v == "true" || v == "t" || v == "1" || v == "yes" || v == "y") return true;
  if (v == "false" || v == "f" || v == "0" || v == "no" || v == "n") return false;
  return std::nullopt;
}

// RFC 4180 records; quoted fields may contain the delimiter and newlines.
std::vector<std::vector<std::string>> split_records(std::string_view text, char delim) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = any = true;
    } else if (c == delim) {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> split_parts(std::string_view raw) {
  std::vector<std::string> out;
  const std::string_view trimmed = raw.substr(std::min(raw.size(), raw.find_first_not_of(" \t")));
  if (!trimmed.empty() && trimmed.front() == '[') {
    try {
      for (const auto& p : json::parse(trimmed)) out.push_back(normalize_name(p.get<std::string>()));
      return out;
    } catch (const json::exception&) {
      // fall through: bracketed but not JSON
    }
  }
  char sep = ',';
  if (raw.find(';') != std::string_view::npos) sep = ';';
  else if (raw.find('|') != std::string_view::npos) sep = '|';
  std::size_t start = 0;
  std::string_view body = raw;
  if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  while (start <= body.size()) {
    auto end = body.find(sep, start);
    if (end == std::string_view::npos) end = body.size();
    std::string name = normalize_name(body.substr(start, end - start));
    if (name.size() >= 2 && (name.front() == '\'' || name.front() == '"')) name = name.substr(1, name.size() - 2);
    if (!name.empty()) out.push_back(name);
    start = end + 1;
  }
  return out;
}

struct Row {
  std::string entity, model, subject, relation, object, label, parts;
  std::size_t line = 0;
};

struct Builder {
  struct Draft {
    PartsMentalModel model;
    std::set<std::string> part_set;
    LabelMap labels;
  };
  std::map<std::pair<std::string, std::string>, Draft> drafts;
  IngestSummary summary;

  void add_part(Draft& d, const std::string& p) {
    if (d.part_set.insert(p).second) d.model.parts.push_back(p);
  }

  void add(const Row& r, std::string_view origin) {
    ++summary.rows;
    auto where = [&] { return std::string(origin) + ":" + std::to_string(r.line); };
    const std::string entity = normalize_name(r.entity);
    if (entity.empty()) throw ParseError(where() + ": empty entity");
    const std::string model_id = r.model.empty() ? "0" : normalize_name(r.model);
    Draft& d = drafts[{entity, model_id}];
    d.model.entity = entity;
    d.model.model_id = model_id;
    if (!r.parts.empty()) {
      for (const auto& p : split_parts(r.parts)) add_part(d, p);
    }
    const auto rel = parse_relation(r.relation);
    if (!rel) {
      throw ParseError(where() + ": unknown relation '" + r.relation + "'; valid kinds: " + valid_relation_names());
    }
    const auto label = parse_label(r.label);
    if (!label) throw ParseError(where() + ": unreadable label '" + r.label + "'");
    Statement s{normalize_name(r.subject), *rel, normalize_name(r.object)};
    if (s.subject.empty() || s.object.empty()) throw ParseError(where() + ": empty part name");
    if (s.subject == s.object) {
      ++summary.reflexive_rows;
      return;
    }
    add_part(d, s.subject);
    add_part(d, s.object);
    auto [it, inserted] = d.labels.emplace(s, *label);
    if (!inserted) {
      ++(it->second == *label ? summary.duplicate_rows : summary.contradicting_rows);
      return;
    }
    d.model.gold.push_back({s, *label});
  }

  IngestResult finish() {
    IngestResult out;
    std::set<std::string> entities;
    for (auto& [key, d] : drafts) {
      if (d.model.parts.size() < 2) continue;
      entities.insert(d.model.entity);
      for (const auto& g : d.model.gold) {
        ++summary.tuples;
        ++(g.label ? summary.true_tuples : summary.false_tuples);
        ++summary.per_relation[g.statement.relation];
        ++summary.per_category[std::string(to_string(properties(g.statement.relation).category))];
      }
      out.models.push_back(std::move(d.model));
    }
    summary.models = out.models.size();
    summary.entities = entities.size();
    out.summary = summary;
    return out;
  }
};

std::array<int, kColumnCount> map_header(const std::vector<std::string>& names, std::string_view origin) {
  std::array<int, kColumnCount> idx;
  idx.fill(-1);
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    for (const auto& alias : kAliases[c]) {
      for (std::size_t i = 0; i < names.size() && idx[c] < 0; ++i) {
        if (normalize_name(names[i]) == alias) idx[c] = static_cast<int>(i);
      }
      if (idx[c] >= 0) break;
    }
  }
  for (int c : {kEntity, kSubject, kRelation, kObject, kLabel}) {
    if (idx[c] < 0) {
      std::string msg = std::string(origin) + ": no column for " + kColumnNames[c] + "; accepted names:";
      for (const auto& a : kAliases[c]) msg += " " + a;
      throw ParseError(msg);
    }
  }
  return idx;
}

void ingest_delimited(std::string_view text, std::string_view origin, char delim, Builder& b) {
  auto records = split_records(text, delim);
  if (records.empty()) return;
  const auto idx = map_header(records.front(), origin);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    auto get = [&](int c) -> std::string {
      const int k = idx[c];
      return k >= 0 && static_cast<std::size_t>(k) < rec.size() ? rec[k] : std::string();
    };
    Row r{get(kEntity), get(kModel), get(kSubject), get(kRelation), get(kObject), get(kLabel), get(kParts), i + 1};
    b.add(r, origin);
  }
}

void ingest_jsonl(std::string_view text, std::string_view origin, Builder& b) {
  std::size_t pos = 0, line = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    if (raw.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string(origin) + ":" + std::to_string(line) + ": " + e.what());
    }
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    const auto idx = map_header(keys, origin);
    auto get = [&](int c) -> std::string {
      if (idx[c] < 0) return {};
      const json& v = j.at(keys[idx[c]]);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
      return v.dump();
    };
    b.add({get(kEntity), get(kModel), get(kSubject), get(kRelation), get(kObject), get(kLabel), get(kParts), line},
          origin);
  }
}

void ingest_into(std::string_view text, std::string_view origin, char delimiter, Builder& b) {
  if (delimiter == 0) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
      ingest_jsonl(text, origin, b);
      return;
    }
    const std::string_view header = text.substr(0, text.find('\n'));
    delimiter = header.find('\t') != std::string_view::npos ? '\t' : ',';
  }
  ingest_delimited(text, origin, delimiter, b);
}

}  // namespace

double IngestSummary::majority_baseline() const {
  if (tuples == 0) return 0.0;
  return static_cast<double>(std::max(true_tuples, false_tuples)) / static_cast<double>(tuples);
}

std::string normalize_name(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

IngestResult ingest_text(std::string_view text, std::string_view origin, char delimiter) {
  Builder b;
  ingest_into(text, origin, delimiter, b);
  return b.finish();
}

IngestResult ingest_path(const std::string& path) {
  Builder b;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
      const std::string ext = lower(e.path().extension().string());
      if (e.is_regular_file() && (ext == ".csv" || ext == ".tsv" || ext == ".jsonl")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError(path + ": no .csv, .tsv or .jsonl files");
    for (const auto& f : files) ingest_into(read_file(f.string()), f.string(), 0, b);
  } else {
    ingest_into(read_file(path), path, 0, b);
  }
  return b.finish();
}

std::string to_json_text(const IngestSummary& s) {
  nlohmann::ordered_json j;
  j["rows"] = s.rows;
  j["models"] = s.models;
  j["entities"] = s.entities;
  j["tuples"] = s.tuples;
  j["true_tuples"] = s.true_tuples;
  j["false_tuples"] = s.false_tuples;
  j["majority_baseline"] = s.majority_baseline();
  j["duplicate_rows"] = s.duplicate_rows;
  j["contradicting_rows"] = s.contradicting_rows;
  j["reflexive_rows"] = s.reflexive_rows;
  nlohmann::ordered_json rel = nlohmann::ordered_json::object();
  for (const auto& [r, n] : s.per_relation) rel[std::string(to_string(r))] = n;
  j["per_relation"] = rel;
  nlohmann::ordered_json cat = nlohmann::ordered_json::object();
  for (const auto& [c, n] : s.per_category) cat[c] = n;
  j["per_category"] = cat;
  return j.dump(2) + "\n";
}

}  // namespace partsmm
