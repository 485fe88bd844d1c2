#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the plain data types (Statement, Relation, WcnfProblem).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "partsmm/model.hpp"
#include "partsmm/wcnf.hpp"

namespace oracle {

using partsmm::Relation;
using partsmm::Statement;

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"part of",  "has part",     "inside",  "contains",
                                          "in front of", "behind",   "above",   "below",
                                          "surrounds", "surrounded by", "next to", "directly connected to",
                                          "requires", "required by"};
  return n;
}

inline Relation rel(const std::string& name) {
  auto it = std::find(names().begin(), names().end(), name);
  return static_cast<Relation>(it - names().begin());
}

inline bool symmetric(Relation r) { return r == rel("next to") || r == rel("directly connected to"); }
inline bool transitive(Relation r) {
  static const std::set<std::string> t{"inside", "contains", "in front of", "behind",
                                       "above",  "below",    "surrounds",   "surrounded by"};
  return t.count(names()[static_cast<int>(r)]) != 0;
}
inline Relation inverse(Relation r) {
  static const std::map<std::string, std::string> pairs{
      {"part of", "has part"},   {"inside", "contains"},           {"in front of", "behind"},
      {"above", "below"},        {"surrounds", "surrounded by"},   {"requires", "required by"}};
  const std::string& n = names()[static_cast<int>(r)];
  for (const auto& [a, b] : pairs) {
    if (n == a) return rel(b);
    if (n == b) return rel(a);
  }
  return r;
}

struct Lit {
  Statement s;
  bool positive;
};

struct Implication {
  int family;  // 0 symmetric, 1 asymmetric, 2 inverse, 3 transitive
  std::vector<Statement> antecedent;
  Lit consequent;
};

/// All implications over `parts` restricted to `relations`.
inline std::vector<Implication> implications(const std::vector<std::string>& parts,
                                             const std::vector<Relation>& relations) {
  std::vector<Implication> out;
  auto in = [&](Relation r) { return std::find(relations.begin(), relations.end(), r) != relations.end(); };
  for (Relation r : relations) {
    for (const auto& x : parts) {
      for (const auto& y : parts) {
        if (x == y) continue;
        if (symmetric(r)) out.push_back({0, {{x, r, y}}, {{y, r, x}, true}});
        else out.push_back({1, {{x, r, y}}, {{y, r, x}, false}});
        const Relation inv = inverse(r);
        if (inv != r && in(inv)) out.push_back({2, {{x, r, y}}, {{y, inv, x}, true}});
        if (transitive(r)) {
          for (const auto& z : parts) {
            if (z == x || z == y) continue;
            out.push_back({3, {{x, r, y}, {y, r, z}}, {{x, r, z}, true}});
          }
        }
      }
    }
  }
  return out;
}

struct Tau {
  std::array<std::size_t, 4> fired{};
  std::array<std::size_t, 4> violated{};
};

inline Tau tau(const std::map<Statement, bool>& truth, const std::vector<Implication>& cs) {
  Tau t;
  for (const auto& c : cs) {
    bool fires = true;
    for (const auto& a : c.antecedent) fires = fires && truth.at(a);
    if (!fires) continue;
    ++t.fired[c.family];
    if (truth.at(c.consequent.s) != c.consequent.positive) ++t.violated[c.family];
  }
  return t;
}

/// Forward closure by repeated full sweeps until nothing changes. Labels
/// derived both ways are dropped and returned in `conflicts`.
inline std::map<Statement, bool> closure(const std::map<Statement, bool>& gold, const std::vector<std::string>& parts,
                                         std::set<Statement>* conflicts = nullptr) {
  std::set<Statement> t, f;
  for (const auto& [s, v] : gold) (v ? t : f).insert(s);
  for (bool changed = true; changed;) {
    changed = false;
    auto add = [&](std::set<Statement>& set, Statement s) { changed = set.insert(std::move(s)).second || changed; };
    for (const auto& s : std::set<Statement>(t)) {
      add(t, {s.object, inverse(s.relation), s.subject});
      if (symmetric(s.relation)) {
        add(t, {s.object, s.relation, s.subject});
      } else {
        add(f, {s.object, s.relation, s.subject});
        add(f, {s.subject, inverse(s.relation), s.object});
      }
      if (transitive(s.relation)) {
        for (const auto& z : parts) {
          if (z != s.subject && z != s.object && t.count({s.object, s.relation, z})) add(t, {s.subject, s.relation, z});
        }
      }
    }
    for (const auto& s : std::set<Statement>(f)) {
      add(f, {s.object, inverse(s.relation), s.subject});
      if (symmetric(s.relation)) add(f, {s.object, s.relation, s.subject});
    }
  }
  std::map<Statement, bool> out;
  for (const auto& s : t) {
    if (f.count(s)) {
      if (conflicts) conflicts->insert(s);
    } else {
      out[s] = true;
    }
  }
  for (const auto& s : f) {
    if (!t.count(s)) out[s] = false;
  }
  return out;
}

inline bool satisfies(const partsmm::WcnfProblem& p, std::uint64_t mask) {
  for (const auto& c : p.hard) {
    bool ok = false;
    for (int l : c) {
      const bool v = (mask >> (std::abs(l) - 1)) & 1u;
      ok = ok || (l > 0) == v;
    }
    if (!ok) return false;
  }
  return true;
}

inline std::uint64_t weight(const partsmm::WcnfProblem& p, std::uint64_t mask) {
  std::uint64_t w = 0;
  for (const auto& s : p.soft) {
    bool ok = false;
    for (int l : s.clause) ok = ok || (l > 0) == static_cast<bool>((mask >> (std::abs(l) - 1)) & 1u);
    if (ok) w += s.weight;
  }
  return w;
}

/// Best feasible weight by plain bitmask enumeration.
inline std::uint64_t best_weight(const partsmm::WcnfProblem& p) {
  std::uint64_t best = 0;
  bool any = false;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << p.num_vars); ++m) {
    if (!satisfies(p, m)) continue;
    best = std::max(best, weight(p, m));
    any = true;
  }
  return any ? best : 0;
}

/// Best weight for problems with unit soft clauses whose hard clauses split
/// into small variable-connected components: each component is enumerated
/// on its own and the optima add up.
inline std::uint64_t best_weight_by_components(const partsmm::WcnfProblem& p) {
  const std::size_t n = p.num_vars;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& c : p.hard) {
    for (std::size_t i = 1; i < c.size(); ++i) parent[find(std::abs(c[i]) - 1)] = find(std::abs(c[0]) - 1);
  }
  std::map<std::size_t, std::vector<int>> comps;
  for (std::size_t v = 0; v < n; ++v) comps[find(v)].push_back(static_cast<int>(v + 1));
  std::uint64_t total = 0;
  for (const auto& [root, vars] : comps) {
    if (vars.size() > 22) throw std::runtime_error("component too large for enumeration");
    partsmm::WcnfProblem sub;
    sub.num_vars = vars.size();
    std::map<int, int> local;
    for (std::size_t i = 0; i < vars.size(); ++i) local[vars[i]] = static_cast<int>(i + 1);
    auto map_clause = [&](const partsmm::Clause& c) {
      partsmm::Clause out;
      for (int l : c) out.push_back(l > 0 ? local.at(l) : -local.at(-l));
      return out;
    };
    for (const auto& c : p.hard) {
      if (local.count(std::abs(c[0]))) sub.hard.push_back(map_clause(c));
    }
    for (const auto& s : p.soft) {
      if (s.clause.size() != 1) throw std::runtime_error("non-unit soft clause");
      if (local.count(std::abs(s.clause[0]))) sub.soft.push_back({map_clause(s.clause), s.weight});
    }
    total += best_weight(sub);
  }
  return total;
}

}  // namespace oracle
