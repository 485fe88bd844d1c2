#include <gtest/gtest.h>

#include <random>

#include "partsmm/consistency.hpp"
#include "partsmm/error.hpp"
#include "partsmm/wcnf.hpp"

using namespace partsmm;

namespace {

BeliefMap uniform_beliefs(const StatementUniverse& u, std::mt19937_64& rng) {
  BeliefMap b;
  for (const auto& s : u.statements()) b[s] = std::uniform_real_distribution<double>(0, 1)(rng);
  return b;
}

std::uint64_t weight_of(const WcnfProblem& p, int literal) {
  std::uint64_t w = 0;
  for (const auto& s : p.soft) {
    if (s.clause == Clause{literal}) w += s.weight;
  }
  return w;
}

}  // namespace

TEST(Encode, TwoSidedUnitSofts) {
  const Grounding g = ground(StatementUniverse({"a", "b"}, {Relation::NextTo}));
  BeliefMap b{{{"a", Relation::NextTo, "b"}, 0.5}, {{"b", Relation::NextTo, "a"}, 0.8004}};
  const WcnfProblem p = encode(b, g, 1000);
  EXPECT_EQ(p.num_vars, 2u);
  EXPECT_EQ(weight_of(p, 1), 500u);
  EXPECT_EQ(weight_of(p, -1), 500u);
  EXPECT_EQ(weight_of(p, 2), 800u);
  EXPECT_EQ(weight_of(p, -2), 200u);
  EXPECT_EQ(p.hard.size(), 2u);
  EXPECT_EQ(p.var_statements[0], (Statement{"a", Relation::NextTo, "b"}));
}

TEST(Encode, DropsZeroWeights) {
  const Grounding g = ground(StatementUniverse({"a", "b"}, {Relation::NextTo}));
  const WcnfProblem p = encode({{{"a", Relation::NextTo, "b"}, 1.0}, {{"b", Relation::NextTo, "a"}, 0.0004}}, g);
  EXPECT_EQ(p.soft.size(), 2u);
  EXPECT_EQ(weight_of(p, 1), 1000u);
  EXPECT_EQ(weight_of(p, -2), 1000u);
  for (const auto& s : p.soft) EXPECT_GE(s.weight, 1u);
}

TEST(Encode, HardClausesFromImplications) {
  const Grounding g = ground(StatementUniverse({"a", "b", "c"}, {Relation::Above}));
  std::mt19937_64 rng(1);
  const WcnfProblem p = encode(uniform_beliefs(g.universe, rng), g);
  ASSERT_EQ(p.hard.size(), g.constraints.size());
  for (std::size_t i = 0; i < p.hard.size(); ++i) EXPECT_EQ(p.hard[i], to_clause(g.constraints[i]));
  const auto& c = g.constraints.back();
  ASSERT_EQ(c.family, Family::Transitive);
  EXPECT_EQ(to_clause(c), (Clause{-static_cast<int>(c.antecedent[0].var + 1), -static_cast<int>(c.antecedent[1].var + 1),
                                  static_cast<int>(c.consequent.var + 1)}));
}

TEST(Encode, Errors) {
  const Grounding g = ground(StatementUniverse({"a", "b"}, {Relation::NextTo}));
  EXPECT_THROW(encode({{{"a", Relation::NextTo, "b"}, 1.5}, {{"b", Relation::NextTo, "a"}, 0.5}}, g), ValidationError);
  EXPECT_THROW(encode({{{"a", Relation::NextTo, "b"}, 0.5}}, g), ValidationError);
  EXPECT_THROW(encode({{{"a", Relation::NextTo, "b"}, 0.5}, {{"b", Relation::NextTo, "a"}, 0.5},
                       {{"a", Relation::Above, "b"}, 0.5}},
                      g),
               ValidationError);
  const BeliefMap filled = fill_missing({{{"a", Relation::NextTo, "b"}, 0.9}}, g.universe);
  EXPECT_EQ(filled.size(), 2u);
  EXPECT_EQ(filled.at({"b", Relation::NextTo, "a"}), 0.5);
}

TEST(Encode, WeightsReconstructConfidence) {
  const Grounding g = ground(std::vector<std::string>{"a", "b", "c"});
  std::mt19937_64 rng(2);
  const BeliefMap b = uniform_beliefs(g.universe, rng);
  const WcnfProblem p = encode(b, g, 1000);
  for (std::size_t v = 0; v < p.num_vars; ++v) {
    const int lit = static_cast<int>(v + 1);
    const double pos = static_cast<double>(weight_of(p, lit)), neg = static_cast<double>(weight_of(p, -lit));
    EXPECT_NEAR(pos / 1000.0, b.at(p.var_statements[v]), 0.5 / 1000.0 + 1e-12);
    EXPECT_NEAR((pos + neg) / 1000.0, 1.0, 1.0 / 1000.0 + 1e-12);
  }
  const auto a = decode(p, std::vector<std::uint8_t>(p.num_vars, 1));
  EXPECT_EQ(a.truth.size(), g.universe.size());
}

TEST(Wcnf, ExportHeaderAndTop) {
  WcnfProblem p;
  p.num_vars = 1;
  p.hard = {{1}};
  p.soft = {{{-1}, 5}};
  EXPECT_EQ(p.top(), 6u);
  const std::string text = export_wcnf(p);
  EXPECT_EQ(text, "p wcnf 1 2 6\n6 1 0\n5 -1 0\n");
}

TEST(Wcnf, RoundTripAndByteStable) {
  const Grounding g = ground(std::vector<std::string>{"a", "b", "c"});
  std::mt19937_64 rng(3);
  const WcnfProblem p = encode(uniform_beliefs(g.universe, rng), g);
  const std::string text = export_wcnf(p);
  EXPECT_EQ(export_wcnf(p), text);
  const WcnfProblem back = parse_wcnf(text);
  EXPECT_EQ(back, p);
  EXPECT_EQ(export_wcnf(back), text);
}

TEST(Wcnf, ParseNewFormat) {
  const WcnfProblem p = parse_wcnf("c comment\nh 1 2 0\n3 -1 0\n4 -2 0\n");
  EXPECT_EQ(p.num_vars, 2u);
  EXPECT_EQ(p.hard.size(), 1u);
  EXPECT_EQ(p.soft.size(), 2u);
}

TEST(Wcnf, ParseErrors) {
  EXPECT_THROW(parse_wcnf("p wcnf 1 2 6\n6 1 0\n"), ParseError);
  EXPECT_THROW(parse_wcnf("p wcnf 1 1 6\n6 2 0\n"), Error);
  EXPECT_THROW(parse_wcnf("p wcnf 1 1 6\n6 x 0\n"), ParseError);
}

TEST(SolverOutput, LiteralAndBinaryForms) {
  const auto a = parse_solver_output("c hi\ns OPTIMUM FOUND\no 12\nv 1 -2 3 0\n", 3);
  EXPECT_EQ(a.status, "OPTIMUM FOUND");
  EXPECT_EQ(a.cost, 12u);
  EXPECT_EQ(a.values, (std::vector<std::uint8_t>{1, 0, 1}));
  const auto b = parse_solver_output("s OPTIMUM FOUND\nv 101\n", 3);
  EXPECT_EQ(b.values, (std::vector<std::uint8_t>{1, 0, 1}));
}

TEST(SolverOutput, ErrorsCarryOffset) {
  try {
    parse_solver_output("s OPTIMUM FOUND\nv 1 -7 0\n", 3);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("at byte 20"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_solver_output("v 1 x 0\n", 3), ParseError);
}

TEST(SolverOutput, ImportSolution) {
  const Grounding g = ground(StatementUniverse({"a", "b"}, {Relation::NextTo}));
  const WcnfProblem p = encode({{{"a", Relation::NextTo, "b"}, 0.9}, {{"b", Relation::NextTo, "a"}, 0.9}}, g);
  const Assignment a = import_solution("v 1 2 0\n", p);
  EXPECT_TRUE(a.at({"a", Relation::NextTo, "b"}));
  EXPECT_TRUE(satisfies_hard(p, {1, 1}));
  EXPECT_FALSE(satisfies_hard(p, {1, 0}));
  EXPECT_EQ(soft_weight(p, {1, 1}), 1800u);
}
