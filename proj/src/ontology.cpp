#include "partsmm/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "partsmm/error.hpp"
#include "partsmm/model.hpp"

namespace partsmm {
namespace {

constexpr auto S = RelationCategory::SpatialOrientation;

// Indexed by Relation.
const std::array<RelationProps, kRelationCount> kProps = {{
    // symmetric, asymmetric, transitive, inverse, category
    {false, true, false, Relation::HasPart, S},
    {false, true, false, Relation::PartOf, S},
    {false, true, true, Relation::Contains, S},
    {false, true, true, Relation::Inside, S},
    {false, true, true, Relation::Behind, S},
    {false, true, true, Relation::InFrontOf, S},
    {false, true, true, Relation::Below, S},
    {false, true, true, Relation::Above, S},
    {false, true, true, Relation::SurroundedBy, S},
    {false, true, true, Relation::Surrounds, S},
    {true, false, false, Relation::NextTo, S},
    {true, false, false, Relation::DirectlyConnectedTo, RelationCategory::Connectivity},
    {false, true, false, Relation::RequiredBy, RelationCategory::Functional},
    {false, true, false, Relation::Requires, RelationCategory::Functional},
}};

constexpr std::array<std::string_view, kRelationCount> kNames = {
    "part of", "has part",     "inside",    "contains",      "in front of",
    "behind",  "above",        "below",     "surrounds",     "surrounded by",
    "next to", "directly connected to", "requires", "required by",
};

constexpr std::string_view kBuiltinPhrases =
    "# Surface phrases for statement probes.\n"
    "# version: 1\n"
    "part of\tis part of\n"
    "has part\thas part\n"
    "inside\tis inside\n"
    "contains\tcontains\n"
    "in front of\tis in front of\n"
    "behind\tis behind\n"
    "above\tis above\n"
    "below\tis below\n"
    "surrounds\tsurrounds\n"
    "surrounded by\tis surrounded by\n"
    "next to\tis next to\n"
    "directly connected to\tis directly connected to\n"
    "requires\trequires\n"
    "required by\tis required by\n";

// Entities whose spoken form disagrees with the leading-letter rule.
const std::map<std::string, std::string_view, std::less<>> kArticleOverrides = {
    {"hour glass", "an"}, {"hourglass", "an"}, {"honest", "an"},
    {"unicycle", "a"},    {"uniform", "a"},    {"university", "a"},
    {"ukulele", "a"},     {"one", "a"},        {"european", "a"},
    {"usb drive", "a"},   {"utensil", "a"},    {"user manual", "a"},
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

const RelationProps& properties(Relation r) { return kProps[index_of(r)]; }

Relation inverse_of(Relation r) { return kProps[index_of(r)].inverse; }

std::string_view to_string(Relation r) { return kNames[index_of(r)]; }

std::optional<Relation> parse_relation(std::string_view text) {
  std::string norm = lower(trim(text));
  std::replace(norm.begin(), norm.end(), '_', ' ');
  std::replace(norm.begin(), norm.end(), '-', ' ');
  for (Relation r : kAllRelations) {
    if (kNames[index_of(r)] == norm) return r;
  }
  return std::nullopt;
}

std::string valid_relation_names() {
  std::string out;
  for (Relation r : kAllRelations) {
    if (!out.empty()) out += ", ";
    out += to_string(r);
  }
  return out;
}

Relation relation_from_string(std::string_view text) {
  if (auto r = parse_relation(text)) return *r;
  throw ValidationError("unknown relation '" + std::string(text) +
                        "'; valid kinds: " + valid_relation_names());
}

const PhraseTable& PhraseTable::builtin() {
  static const PhraseTable table = PhraseTable::parse(kBuiltinPhrases);
  return table;
}

PhraseTable PhraseTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open phrase table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

PhraseTable PhraseTable::parse(std::string_view text) {
  PhraseTable table;
  std::array<bool, kRelationCount> seen{};
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      auto v = t.find("version:");
      if (v != std::string::npos) table.version_ = std::stoi(t.substr(v + 8));
      continue;
    }
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("phrase table line " + std::to_string(line_no) +
                       ": expected 'relation<TAB>phrase'");
    }
    Relation r = relation_from_string(line.substr(0, tab));
    if (seen[index_of(r)]) {
      throw ParseError("phrase table line " + std::to_string(line_no) + ": duplicate entry for '" +
                       std::string(to_string(r)) + "'");
    }
    seen[index_of(r)] = true;
    table.phrases_[index_of(r)] = trim(line.substr(tab + 1));
  }
  for (Relation r : kAllRelations) {
    if (!seen[index_of(r)]) {
      throw ParseError("phrase table is missing '" + std::string(to_string(r)) + "'");
    }
  }
  return table;
}

std::string PhraseTable::plural_phrase(Relation r) const {
  const std::string& p = phrase(r);
  auto sp = p.find(' ');
  std::string head = p.substr(0, sp);
  std::string rest = sp == std::string::npos ? "" : p.substr(sp);
  if (head == "is") return "are" + rest;
  if (head == "has") return "have" + rest;
  if (head.size() > 1 && head.back() == 's') head.pop_back();
  return head + rest;
}

std::string_view article_for(std::string_view entity) {
  std::string key = lower(trim(entity));
  auto it = kArticleOverrides.find(key);
  if (it != kArticleOverrides.end()) return it->second;
  if (!key.empty() && std::string_view("aeiou").find(key.front()) != std::string_view::npos) {
    return "an";
  }
  return "a";
}

bool looks_plural(std::string_view noun) {
  std::string w = lower(trim(noun));
  // Only the head (last word) of a compound carries number.
  auto sp = w.find_last_of(' ');
  if (sp != std::string::npos) w = w.substr(sp + 1);
  if (w.size() < 3 || w.back() != 's') return false;
  for (std::string_view suffix : {"ss", "us", "is", "ous"}) {
    if (w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return false;
    }
  }
  return true;
}

std::string surface_form(std::string_view entity, const Statement& s, const PhraseTable& table) {
  std::string out = "Judge whether this statement is true or false: In ";
  out += article_for(entity);
  out += ' ';
  out += entity;
  out += ", ";
  out += s.subject;
  out += ' ';
  out += looks_plural(s.subject) ? table.plural_phrase(s.relation) : table.phrase(s.relation);
  out += " the ";
  out += s.object;
  out += '.';
  return out;
}

std::string_view to_string(RelationCategory c) {
  switch (c) {
    case RelationCategory::SpatialOrientation: return "spatial";
    case RelationCategory::Connectivity: return "connectivity";
    case RelationCategory::Functional: return "functional";
  }
  return "";
}

}  // namespace partsmm
