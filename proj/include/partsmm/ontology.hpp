#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace partsmm {

/// The relation vocabulary, in the canonical listing order. The enumerator
/// value doubles as the relation's position in statement enumeration.
enum class Relation : std::uint8_t {
  PartOf,
  HasPart,
  Inside,
  Contains,
  InFrontOf,
  Behind,
  Above,
  Below,
  Surrounds,
  SurroundedBy,
  NextTo,
  DirectlyConnectedTo,
  Requires,
  RequiredBy,
};

inline constexpr std::size_t kRelationCount = 14;

inline constexpr std::array<Relation, kRelationCount> kAllRelations = {
    Relation::PartOf,      Relation::HasPart,      Relation::Inside,
    Relation::Contains,    Relation::InFrontOf,    Relation::Behind,
    Relation::Above,       Relation::Below,        Relation::Surrounds,
    Relation::SurroundedBy, Relation::NextTo,      Relation::DirectlyConnectedTo,
    Relation::Requires,    Relation::RequiredBy,
};

enum class RelationCategory : std::uint8_t { SpatialOrientation, Connectivity, Functional };

struct RelationProps {
  bool symmetric = false;
  bool asymmetric = false;
  bool transitive = false;
  Relation inverse = Relation::PartOf;
  RelationCategory category = RelationCategory::SpatialOrientation;
};

constexpr std::size_t index_of(Relation r) { return static_cast<std::size_t>(r); }

const RelationProps& properties(Relation r);
Relation inverse_of(Relation r);

/// Canonical name, e.g. "surrounded by".
std::string_view to_string(Relation r);
/// "spatial", "connectivity" or "functional".
std::string_view to_string(RelationCategory c);

/// Accepts the canonical name, case-insensitively, with '_' or '-' standing in
/// for spaces ("surrounded_by", "Directly-Connected-To").
std::optional<Relation> parse_relation(std::string_view text);

/// Same as parse_relation but throws ValidationError listing the valid kinds.
Relation relation_from_string(std::string_view text);

/// Comma-separated list of the 14 canonical names.
std::string valid_relation_names();

struct Statement;

/// Verb phrases used to render statements as natural-language probes.
///
/// The data file has one `relation<TAB>phrase` entry per line; blank lines and
/// lines starting with '#' are ignored. A `# version: N` comment sets the
/// table version. Every relation must be present exactly once.
class PhraseTable {
 public:
  /// Built-in table, identical to data/phrases.tsv.
  static const PhraseTable& builtin();
  static PhraseTable load(const std::string& path);
  static PhraseTable parse(std::string_view text);

  const std::string& phrase(Relation r) const { return phrases_[index_of(r)]; }
  int version() const { return version_; }

  /// Verb agreement for a plural subject: "is above" -> "are above",
  /// "has part" -> "have part", "surrounds" -> "surround".
  std::string plural_phrase(Relation r) const;

 private:
  std::array<std::string, kRelationCount> phrases_;
  int version_ = 1;
};

/// Article selection ("a"/"an") for an entity name. The override table wins
/// over the leading-vowel rule.
std::string_view article_for(std::string_view entity);

/// True when `noun` reads as a plural ("roots", "branches") under a suffix
/// heuristic; "glass", "bus" and "cactus" stay singular.
bool looks_plural(std::string_view noun);

/// "Judge whether this statement is true or false: In a/an <entity>,
/// <subject> <phrase> the <object>."
std::string surface_form(std::string_view entity, const Statement& s,
                         const PhraseTable& table = PhraseTable::builtin());

}  // namespace partsmm
