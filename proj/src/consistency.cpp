#include "partsmm/consistency.hpp"

#include "json.hpp"
#include "partsmm/csv.hpp"
#include "partsmm/error.hpp"

namespace partsmm {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Symmetric: return "symmetric";
    case Family::Asymmetric: return "asymmetric";
    case Family::Inverse: return "inverse";
    case Family::Transitive: return "transitive";
  }
  return "?";
}

Grounding ground(const std::vector<std::string>& parts) {
  return ground(StatementUniverse(parts));
}

Grounding ground(StatementUniverse universe) {
  Grounding g{std::move(universe), {}, 0};
  const StatementUniverse& u = g.universe;
  const std::size_t n = u.part_count();
  auto lit = [&](std::size_t x, Relation r, std::size_t y, bool pos) {
    return Literal{static_cast<std::uint32_t>(u.index(x, r, y)), pos};
  };
  auto emit = [&](Family f, std::vector<Literal> ante, Literal cons, std::uint32_t group) {
    g.constraints.push_back({f, std::move(ante), cons, group});
  };
  std::uint32_t group = 0;

  for (Relation r : u.relations()) {
    if (!properties(r).symmetric) continue;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        emit(Family::Symmetric, {lit(x, r, y, true)}, lit(y, r, x, true), group);
        emit(Family::Symmetric, {lit(y, r, x, true)}, lit(x, r, y, true), group);
        ++group;
      }
    }
  }
  for (Relation r : u.relations()) {
    if (!properties(r).asymmetric) continue;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        emit(Family::Asymmetric, {lit(x, r, y, true)}, lit(y, r, x, false), group++);
      }
    }
  }
  for (Relation r : u.relations()) {
    const Relation inv = inverse_of(r);
    if (inv == r || index_of(inv) < index_of(r) || !u.has_relation(inv)) continue;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        emit(Family::Inverse, {lit(x, r, y, true)}, lit(y, inv, x, true), group);
        emit(Family::Inverse, {lit(y, inv, x, true)}, lit(x, r, y, true), group);
        ++group;
      }
    }
  }
  for (Relation r : u.relations()) {
    if (!properties(r).transitive) continue;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (y == x) continue;
        for (std::size_t z = 0; z < n; ++z) {
          if (z == x || z == y) continue;
          emit(Family::Transitive, {lit(x, r, y, true), lit(y, r, z, true)}, lit(x, r, z, true),
               group++);
        }
      }
    }
  }
  g.group_count = group;
  return g;
}

std::string describe(const GroundedConstraint& c, const StatementUniverse& u) {
  auto show = [&](Literal l) {
    return (l.positive ? "" : "not ") + to_string(u.at(l.var));
  };
  std::string out;
  for (std::size_t i = 0; i < c.antecedent.size(); ++i) {
    if (i) out += " & ";
    out += show(c.antecedent[i]);
  }
  return out + " => " + show(c.consequent);
}

namespace {
double ratio(std::size_t num, std::size_t den) {
  return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}
}  // namespace

void ViolationReport::finalize() {
  fired = violations = 0;
  double sum = 0.0;
  for (auto& f : families) {
    f.tau = ratio(f.violations, f.fired);
    f.group_tau = ratio(f.group_violations, f.group_fired);
    fired += f.fired;
    violations += f.violations;
    sum += f.tau;
  }
  micro_tau = ratio(violations, fired);
  macro_tau = sum / static_cast<double>(families.size());
}

void ViolationReport::merge(const ViolationReport& other) {
  for (std::size_t i = 0; i < families.size(); ++i) {
    families[i].fired += other.families[i].fired;
    families[i].violations += other.families[i].violations;
    families[i].group_fired += other.families[i].group_fired;
    families[i].group_violations += other.families[i].group_violations;
  }
  finalize();
}

ViolationReport conditional_violation(std::span<const std::uint8_t> truth, const Grounding& g) {
  if (truth.size() != g.universe.size()) {
    throw ValidationError("assignment covers " + std::to_string(truth.size()) +
                          " statements, universe has " + std::to_string(g.universe.size()));
  }
  ViolationReport report;
  auto holds = [&](Literal l) { return (truth[l.var] != 0) == l.positive; };
  // Constraints of one group are contiguous.
  std::size_t i = 0;
  const auto& cs = g.constraints;
  while (i < cs.size()) {
    const std::uint32_t group = cs[i].group;
    FamilyCounts& fc = report.family(cs[i].family);
    bool any_fired = false, any_violated = false;
    for (; i < cs.size() && cs[i].group == group; ++i) {
      bool fired = true;
      for (Literal l : cs[i].antecedent) fired = fired && holds(l);
      if (!fired) continue;
      any_fired = true;
      ++fc.fired;
      if (!holds(cs[i].consequent)) {
        ++fc.violations;
        any_violated = true;
      }
    }
    fc.group_fired += any_fired;
    fc.group_violations += any_violated;
  }
  report.finalize();
  return report;
}

std::vector<std::uint8_t> densify(const Assignment& a, const StatementUniverse& u, int fill) {
  std::vector<std::uint8_t> dense(u.size(), 0);
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto it = a.truth.find(u.at(i));
    if (it != a.truth.end()) {
      dense[i] = it->second;
    } else if (fill >= 0) {
      dense[i] = static_cast<std::uint8_t>(fill != 0);
    } else {
      missing.push_back(to_string(u.at(i)));
    }
  }
  if (!missing.empty()) {
    std::string msg = "assignment is missing " + std::to_string(missing.size()) + " statement(s):";
    const std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) msg += " " + missing[i];
    if (shown < missing.size()) msg += " ...";
    throw ValidationError(msg);
  }
  return dense;
}

ViolationReport conditional_violation(const Assignment& a, const Grounding& g) {
  return conditional_violation(densify(a, g.universe), g);
}

std::string to_json_text(const ViolationReport& r) {
  nlohmann::ordered_json doc;
  for (Family f : kAllFamilies) {
    const FamilyCounts& c = r.family(f);
    doc["families"][std::string(to_string(f))] = {
        {"violations", c.violations},     {"fired", c.fired},
        {"tau", c.tau},                   {"group_violations", c.group_violations},
        {"group_fired", c.group_fired},   {"group_tau", c.group_tau}};
  }
  doc["violations"] = r.violations;
  doc["fired"] = r.fired;
  doc["micro_tau"] = r.micro_tau;
  doc["macro_tau"] = r.macro_tau;
  return doc.dump(2) + "\n";
}

std::string to_csv(const ViolationReport& r) {
  std::string out = "family,violations,fired,tau,group_violations,group_fired,group_tau\n";
  auto num = [](double v) {
    nlohmann::json j = v;
    return j.dump();
  };
  for (Family f : kAllFamilies) {
    const FamilyCounts& c = r.family(f);
    out += csv_row({to_string(f), std::to_string(c.violations), std::to_string(c.fired),
                    num(c.tau), std::to_string(c.group_violations), std::to_string(c.group_fired),
                    num(c.group_tau)});
  }
  out += csv_row({"micro", std::to_string(r.violations), std::to_string(r.fired), num(r.micro_tau),
                  "", "", ""});
  out += csv_row({"macro", "", "", num(r.macro_tau), "", "", ""});
  return out;
}

}  // namespace partsmm
