#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "partsmm/enrich.hpp"
#include "partsmm/error.hpp"

using namespace partsmm;

namespace {

LabelMap random_gold(std::mt19937_64& rng, const std::vector<std::string>& parts, std::size_t count) {
  const auto all = enumerate_statements(parts);
  LabelMap g;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (std::size_t i = 0; i < count; ++i) g[all[pick(rng)]] = std::bernoulli_distribution(0.7)(rng);
  return g;
}

const std::vector<std::string> kParts{"a", "b", "c", "d", "e"};

}  // namespace

TEST(Enrich, InverseOfTrue) {
  const auto r = enrich({{{"trunk", Relation::Above, "roots"}, true}}, {"trunk", "roots"});
  EXPECT_TRUE(r.enriched.at({"roots", Relation::Below, "trunk"}));
  EXPECT_FALSE(r.enriched.at({"roots", Relation::Above, "trunk"}));
  EXPECT_FALSE(r.enriched.at({"trunk", Relation::Below, "roots"}));
  EXPECT_TRUE(r.conflicts.empty());
}

TEST(Enrich, AsymmetryGivesFalse) {
  const auto r = enrich({{{"A", Relation::Above, "B"}, true}}, {"A", "B"});
  EXPECT_FALSE(r.enriched.at({"B", Relation::Above, "A"}));
  EXPECT_EQ(r.enriched.size(), 4u);
}

TEST(Enrich, SymmetricBothPolarities) {
  const auto r = enrich({{{"a", Relation::NextTo, "b"}, true}, {{"a", Relation::DirectlyConnectedTo, "b"}, false}},
                        {"a", "b"});
  EXPECT_TRUE(r.enriched.at({"b", Relation::NextTo, "a"}));
  EXPECT_FALSE(r.enriched.at({"b", Relation::DirectlyConnectedTo, "a"}));
  EXPECT_EQ(r.enriched.size(), 4u);
}

TEST(Enrich, FalseDoesNotCrossTransitivityByDefault) {
  const LabelMap g{{{"a", Relation::Inside, "b"}, true}, {{"a", Relation::Inside, "c"}, false}};
  const auto plain = enrich(g, {"a", "b", "c"});
  EXPECT_FALSE(plain.enriched.count({"b", Relation::Inside, "c"}));
  EnrichOptions o;
  o.contrapositive = true;
  const auto contra = enrich(g, {"a", "b", "c"}, o);
  EXPECT_FALSE(contra.enriched.at({"b", Relation::Inside, "c"}));
  EXPECT_FALSE(contra.enriched.at({"c", Relation::Contains, "b"}));
}

TEST(Enrich, TransitiveChain) {
  const auto r = enrich({{{"a", Relation::Inside, "b"}, true}, {{"b", Relation::Inside, "c"}, true},
                         {{"c", Relation::Inside, "d"}, true}},
                        {"a", "b", "c", "d"});
  EXPECT_TRUE(r.enriched.at({"a", Relation::Inside, "d"}));
  EXPECT_TRUE(r.enriched.at({"d", Relation::Contains, "a"}));
  EXPECT_FALSE(r.enriched.at({"d", Relation::Inside, "a"}));
}

TEST(Enrich, GuitarConflict) {
  const LabelMap g{{{"neck", Relation::PartOf, "fingerboard"}, true}, {{"fingerboard", Relation::PartOf, "neck"}, true}};
  const auto r = enrich(g, {"neck", "fingerboard"});
  ASSERT_FALSE(r.conflicts.empty());
  std::set<Statement> conflicted;
  for (const auto& c : r.conflicts) {
    conflicted.insert(c.statement);
    EXPECT_TRUE(replay(c.true_derivation, c.statement, true));
    EXPECT_TRUE(replay(c.false_derivation, c.statement, false));
    EXPECT_FALSE(r.enriched.count(c.statement));
  }
  const std::set<Statement> expected{{"neck", Relation::PartOf, "fingerboard"},
                                     {"fingerboard", Relation::PartOf, "neck"},
                                     {"neck", Relation::HasPart, "fingerboard"},
                                     {"fingerboard", Relation::HasPart, "neck"}};
  EXPECT_EQ(conflicted, expected);
}

TEST(Enrich, EmptyGold) {
  const auto r = enrich({}, {"a", "b"});
  EXPECT_TRUE(r.enriched.empty());
  EXPECT_TRUE(r.conflicts.empty());
}

TEST(Enrich, RejectsBadStatements) {
  EXPECT_THROW(enrich({{{"a", Relation::Above, "a"}, true}}, {"a", "b"}), ValidationError);
  EXPECT_THROW(enrich({{{"a", Relation::Above, "z"}, true}}, {"a", "b"}), ValidationError);
}

TEST(Enrich, MatchesSweepOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_gold(rng, kParts, 1 + trial % 25);
    std::set<Statement> oracle_conflicts;
    const auto expected = oracle::closure(g, kParts, &oracle_conflicts);
    const auto r = enrich(g, kParts);
    EXPECT_EQ(r.enriched, expected) << "trial " << trial;
    std::set<Statement> got;
    for (const auto& c : r.conflicts) got.insert(c.statement);
    EXPECT_EQ(got, oracle_conflicts) << "trial " << trial;
  }
}

TEST(Enrich, IdempotentAndConfluent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_gold(rng, kParts, 3 + trial % 10);
    const auto base = enrich(g, kParts);
    if (base.conflicts.empty()) EXPECT_EQ(enrich(base.enriched, kParts).enriched, base.enriched);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      EnrichOptions o;
      o.shuffle_seed = seed * 1000 + static_cast<std::uint64_t>(trial);
      const auto shuffled = enrich(g, kParts, o);
      EXPECT_EQ(shuffled.enriched, base.enriched);
      EXPECT_EQ(shuffled.conflicts.size(), base.conflicts.size());
    }
  }
}

TEST(Enrich, ReenrichingAfterConflictOnlyAdds) {
  // a behind c is labeled False but derivable as True; after exclusion the
  // True side comes back from the surviving labels.
  const LabelMap g{{{"a", Relation::Behind, "c"}, false},
                   {{"b", Relation::InFrontOf, "a"}, true},
                   {{"b", Relation::Behind, "c"}, true}};
  const auto base = enrich(g, kParts);
  ASSERT_FALSE(base.conflicts.empty());
  EXPECT_FALSE(base.enriched.count({"a", Relation::Behind, "c"}));
  const auto again = enrich(base.enriched, kParts);
  EXPECT_TRUE(again.conflicts.empty());
  EXPECT_TRUE(again.enriched.at({"a", Relation::Behind, "c"}));
  for (const auto& [s, v] : base.enriched) EXPECT_EQ(again.enriched.at(s), v);
}

TEST(Enrich, DerivationsReplay) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_gold(rng, kParts, 6);
    const auto r = enrich(g, kParts);
    for (const auto& [s, label] : r.enriched) {
      const Derivation& d = r.derivation.at(s);
      EXPECT_TRUE(replay(d, s, label)) << to_string(s);
      for (const auto& p : d.premises) {
        const bool known = g.count(p.statement) || r.enriched.count(p.statement);
        EXPECT_TRUE(known || std::any_of(r.conflicts.begin(), r.conflicts.end(),
                                         [&](const Conflict& c) { return c.statement == p.statement; }));
      }
    }
  }
}

TEST(Enrich, Monotone) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_gold(rng, kParts, 5);
    const auto before = enrich(g, kParts);
    const auto extra = random_gold(rng, kParts, 1);
    g.insert(extra.begin(), extra.end());
    const auto after = enrich(g, kParts);
    std::set<Statement> conflicted;
    for (const auto& c : after.conflicts) conflicted.insert(c.statement);
    for (const auto& [s, v] : before.enriched) {
      if (conflicted.count(s)) continue;
      ASSERT_TRUE(after.enriched.count(s)) << to_string(s);
      EXPECT_EQ(after.enriched.at(s), v);
    }
  }
}

TEST(Enrich, ConflictFreeResultIsConsistent) {
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_gold(rng, kParts, 4);
    const auto r = enrich(g, kParts);
    if (!r.conflicts.empty()) continue;
    ++checked;
    for (const auto& [s, v] : g) EXPECT_EQ(r.enriched.at(s), v);
    // Any rule whose premises are labeled True has its conclusion labeled.
    const auto cs = oracle::implications(kParts, {kAllRelations.begin(), kAllRelations.end()});
    for (const auto& c : cs) {
      bool fires = true, known = r.enriched.count(c.consequent.s) != 0;
      for (const auto& a : c.antecedent) {
        auto it = r.enriched.find(a);
        fires = fires && it != r.enriched.end() && it->second;
      }
      if (fires) {
        ASSERT_TRUE(known);
        EXPECT_EQ(r.enriched.at(c.consequent.s), c.consequent.positive);
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(EnrichDataset, SummaryAndFailures) {
  PartsMentalModel ok;
  ok.entity = "tree";
  ok.model_id = "1";
  ok.parts = {"trunk", "roots"};
  ok.gold = {{{"trunk", Relation::Above, "roots"}, true}};
  PartsMentalModel guitar;
  guitar.entity = "guitar";
  guitar.model_id = "2";
  guitar.parts = {"neck", "fingerboard"};
  guitar.gold = {{{"neck", Relation::PartOf, "fingerboard"}, true}, {{"fingerboard", Relation::PartOf, "neck"}, true}};
  PartsMentalModel bad = ok;
  bad.model_id = "3";
  bad.gold = {{{"trunk", Relation::Above, "leaf"}, true}};

  const auto d = enrich_dataset({ok, guitar, bad}, {}, 2);
  EXPECT_EQ(d.summary.models, 3u);
  EXPECT_EQ(d.summary.failed, 1u);
  EXPECT_FALSE(d.models[2].error.empty());
  EXPECT_EQ(d.summary.conflicts, 4u);
  EXPECT_EQ(d.summary.input_tuples, 4u);
  EXPECT_EQ(d.summary.enriched_tuples, 4u);
  EXPECT_EQ(d.summary.true_tuples, 2u);
  EXPECT_EQ(d.summary.false_tuples, 2u);
  EXPECT_DOUBLE_EQ(d.summary.conflict_rate, 4.0 / 8.0);
  const std::string csv = conflicts_csv(d);
  EXPECT_NE(csv.find("guitar"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}
