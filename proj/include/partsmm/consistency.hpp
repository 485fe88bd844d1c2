#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "partsmm/model.hpp"

namespace partsmm {

enum class Family : std::uint8_t { Symmetric, Asymmetric, Inverse, Transitive };

inline constexpr std::array<Family, 4> kAllFamilies = {Family::Symmetric, Family::Asymmetric,
                                                       Family::Inverse, Family::Transitive};

std::string_view to_string(Family f);

/// A statement (by universe index) with a polarity.
struct Literal {
  std::uint32_t var = 0;
  bool positive = true;
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// One implication antecedent => consequent. Biconditionals are split into two
/// implications sharing a `group`; every other constraint has its own group.
struct GroundedConstraint {
  Family family = Family::Symmetric;
  std::vector<Literal> antecedent;
  Literal consequent;
  std::uint32_t group = 0;
};

struct Grounding {
  StatementUniverse universe;
  std::vector<GroundedConstraint> constraints;
  std::size_t group_count = 0;
};

/// Instantiates the four constraint families over every statement of the
/// universe, family-major then relation then part order:
///   symmetric  (x r y) => (y r x) for each ordered pair, r symmetric
///   asymmetric (x r y) => not (y r x) for each ordered pair, r asymmetric
///   inverse    (x r y) <=> (y inv(r) x) as two implications, r not self-inverse
///   transitive (x r y), (y r z) => (x r z) over ordered triples of distinct parts
/// Inverse constraints need both r and inv(r) in the relation subset.
Grounding ground(StatementUniverse universe);
Grounding ground(const std::vector<std::string>& parts);

/// "A|above|B & B|above|C => A|above|C".
std::string describe(const GroundedConstraint& c, const StatementUniverse& u);

struct FamilyCounts {
  std::size_t fired = 0;
  std::size_t violations = 0;
  double tau = 0.0;
  /// Same counts where an implication group (a split biconditional) counts
  /// once: fired if any member fires, violated if any member is violated.
  std::size_t group_fired = 0;
  std::size_t group_violations = 0;
  double group_tau = 0.0;
};

struct ViolationReport {
  std::array<FamilyCounts, 4> families{};
  std::size_t fired = 0;
  std::size_t violations = 0;
  double micro_tau = 0.0;
  double macro_tau = 0.0;

  const FamilyCounts& family(Family f) const { return families[static_cast<std::size_t>(f)]; }
  FamilyCounts& family(Family f) { return families[static_cast<std::size_t>(f)]; }

  /// Adds another report's counts and recomputes the ratios.
  void merge(const ViolationReport& other);
  void finalize();
};

/// Dense variant: truth[i] is the value of universe statement i.
ViolationReport conditional_violation(std::span<const std::uint8_t> truth, const Grounding& g);

/// Throws ValidationError listing the statements `a` does not cover.
ViolationReport conditional_violation(const Assignment& a, const Grounding& g);

/// Dense truth vector for `a` over `u`; missing statements take `fill` or, if
/// `fill` is negative, raise ValidationError listing them.
std::vector<std::uint8_t> densify(const Assignment& a, const StatementUniverse& u, int fill = -1);

std::string to_json_text(const ViolationReport& r);
std::string to_csv(const ViolationReport& r);

}  // namespace partsmm
