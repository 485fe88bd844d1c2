#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "partsmm/consistency.hpp"
#include "partsmm/error.hpp"

using namespace partsmm;

namespace {

std::vector<std::string> parts(std::size_t n) {
  std::vector<std::string> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back("p" + std::to_string(i));
  return p;
}

std::size_t count(const Grounding& g, Family f) {
  return static_cast<std::size_t>(
      std::count_if(g.constraints.begin(), g.constraints.end(), [&](const auto& c) { return c.family == f; }));
}

Assignment all_false(const StatementUniverse& u) {
  Assignment a;
  for (const auto& s : u.statements()) a.truth[s] = false;
  return a;
}

}  // namespace

TEST(Ground, ClosedFormCounts) {
  for (std::size_t n = 2; n <= 14; ++n) {
    const Grounding g = ground(parts(n));
    const std::size_t pairs = n * (n - 1);
    EXPECT_EQ(count(g, Family::Symmetric), 2 * pairs) << n;
    EXPECT_EQ(count(g, Family::Asymmetric), 12 * pairs) << n;
    EXPECT_EQ(count(g, Family::Inverse), 12 * pairs) << n;
    EXPECT_EQ(count(g, Family::Transitive), 8 * pairs * (n - 2)) << n;
  }
}

TEST(Ground, TransitivePerRelation) {
  const Grounding g3 = ground(StatementUniverse(parts(3), {Relation::Above}));
  EXPECT_EQ(count(g3, Family::Transitive), 6u);
  const Grounding g14 = ground(StatementUniverse(parts(14), {Relation::Above}));
  EXPECT_EQ(count(g14, Family::Transitive), 2184u);
}

TEST(Ground, MatchesReferenceGrounding) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto p = parts(n);
    const Grounding g = ground(p);
    const auto ref = oracle::implications(p, {kAllRelations.begin(), kAllRelations.end()});
    auto key = [](int fam, std::vector<Statement> ante, const Statement& s, bool pos) {
      std::sort(ante.begin(), ante.end());
      std::string k = std::to_string(fam);
      for (const auto& a : ante) k += "&" + to_string(a);
      return k + "=>" + (pos ? "" : "!") + to_string(s);
    };
    std::multiset<std::string> got, want;
    for (const auto& c : g.constraints) {
      std::vector<Statement> ante;
      for (const auto& l : c.antecedent) {
        EXPECT_TRUE(l.positive);
        ante.push_back(g.universe.at(l.var));
      }
      got.insert(key(static_cast<int>(c.family), ante, g.universe.at(c.consequent.var), c.consequent.positive));
    }
    for (const auto& c : ref) want.insert(key(c.family, c.antecedent, c.consequent.s, c.consequent.positive));
    EXPECT_EQ(got, want) << "n=" << n;
  }
}

TEST(Ground, AboveBelowExample) {
  const Grounding g = ground(StatementUniverse({"A", "B"}, {Relation::Above, Relation::Below}));
  const auto& u = g.universe;
  const auto ab = *u.find({"A", Relation::Above, "B"});
  const auto bb = *u.find({"B", Relation::Below, "A"});
  const auto ba = *u.find({"B", Relation::Above, "A"});
  auto has = [&](Family f, std::uint32_t from, std::uint32_t to, bool positive) {
    return std::any_of(g.constraints.begin(), g.constraints.end(), [&](const GroundedConstraint& c) {
      return c.family == f && c.antecedent.size() == 1 && c.antecedent[0].var == from &&
             c.consequent.var == to && c.consequent.positive == positive;
    });
  };
  EXPECT_TRUE(has(Family::Inverse, ab, bb, true));
  EXPECT_TRUE(has(Family::Inverse, bb, ab, true));
  EXPECT_TRUE(has(Family::Asymmetric, ab, ba, false));
  EXPECT_FALSE(describe(g.constraints.front(), u).empty());
}

TEST(Tau, AllFalseFiresNothing) {
  const Grounding g = ground(parts(4));
  const auto r = conditional_violation(all_false(g.universe), g);
  EXPECT_EQ(r.fired, 0u);
  EXPECT_EQ(r.micro_tau, 0.0);
  EXPECT_EQ(r.macro_tau, 0.0);
}

TEST(Tau, AsymmetricPair) {
  const Grounding g = ground(StatementUniverse({"A", "B"}, {Relation::Above, Relation::Below}));
  Assignment a = all_false(g.universe);
  a.truth[{"A", Relation::Above, "B"}] = true;
  a.truth[{"B", Relation::Above, "A"}] = true;
  const auto r = conditional_violation(a, g);
  EXPECT_EQ(r.family(Family::Asymmetric).fired, 2u);
  EXPECT_EQ(r.family(Family::Asymmetric).violations, 2u);
  EXPECT_DOUBLE_EQ(r.family(Family::Asymmetric).tau, 1.0);
  // Both inverse implications out of the True statements fire and fail.
  EXPECT_EQ(r.family(Family::Inverse).fired, 2u);
  EXPECT_EQ(r.family(Family::Inverse).violations, 2u);
  EXPECT_EQ(r.family(Family::Inverse).group_fired, 2u);
  EXPECT_EQ(r.fired, 4u);
  EXPECT_DOUBLE_EQ(r.micro_tau, 1.0);
  EXPECT_DOUBLE_EQ(r.macro_tau, 0.5);
}

TEST(Tau, MatchesReferenceOnRandomAssignments) {
  std::mt19937_64 rng(3);
  const auto p = parts(4);
  const Grounding g = ground(p);
  const auto ref = oracle::implications(p, {kAllRelations.begin(), kAllRelations.end()});
  for (int trial = 0; trial < 30; ++trial) {
    Assignment a;
    const double density = 0.05 + 0.1 * (trial % 5);
    for (const auto& s : g.universe.statements()) a.truth[s] = std::bernoulli_distribution(density)(rng);
    const auto got = conditional_violation(a, g);
    const auto want = oracle::tau(a.truth, ref);
    std::size_t fired = 0, violated = 0;
    double macro = 0;
    for (Family f : kAllFamilies) {
      const auto i = static_cast<std::size_t>(f);
      EXPECT_EQ(got.family(f).fired, want.fired[i]);
      EXPECT_EQ(got.family(f).violations, want.violated[i]);
      fired += want.fired[i];
      violated += want.violated[i];
      macro += want.fired[i] ? static_cast<double>(want.violated[i]) / static_cast<double>(want.fired[i]) : 0.0;
    }
    EXPECT_EQ(got.fired, fired);
    EXPECT_DOUBLE_EQ(got.micro_tau, fired ? static_cast<double>(violated) / static_cast<double>(fired) : 0.0);
    EXPECT_DOUBLE_EQ(got.macro_tau, macro / 4.0);
  }
}

TEST(Tau, PermutationInvariant) {
  std::mt19937_64 rng(8);
  const auto p = parts(5);
  auto q = p;
  std::shuffle(q.begin(), q.end(), rng);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < p.size(); ++i) rename[p[i]] = q[i];
  const Grounding g = ground(p);
  for (int trial = 0; trial < 10; ++trial) {
    Assignment a, b;
    for (const auto& s : g.universe.statements()) {
      const bool v = std::bernoulli_distribution(0.3)(rng);
      a.truth[s] = v;
      b.truth[{rename[s.subject], s.relation, rename[s.object]}] = v;
    }
    const auto ra = conditional_violation(a, g), rb = conditional_violation(b, g);
    EXPECT_EQ(ra.fired, rb.fired);
    EXPECT_EQ(ra.violations, rb.violations);
    EXPECT_EQ(to_json_text(ra), to_json_text(rb));
  }
}

TEST(Tau, MissingStatementsListed) {
  const Grounding g = ground(parts(3));
  Assignment a = all_false(g.universe);
  a.truth.erase({"p0", Relation::Above, "p1"});
  try {
    conditional_violation(a, g);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("p0|above|p1"), std::string::npos) << e.what();
  }
  const auto dense = densify(a, g.universe, 0);
  EXPECT_EQ(dense.size(), g.universe.size());
}

TEST(Tau, Serialization) {
  const Grounding g = ground(StatementUniverse({"A", "B"}, {Relation::Above, Relation::Below}));
  Assignment a = all_false(g.universe);
  a.truth[{"A", Relation::Above, "B"}] = true;
  const auto r = conditional_violation(a, g);
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,violations,fired,tau,group_violations,group_fired,group_tau");
  EXPECT_NE(to_json_text(r).find("\"micro_tau\""), std::string::npos);
}
