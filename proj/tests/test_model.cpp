#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "partsmm/error.hpp"
#include "partsmm/model.hpp"

using namespace partsmm;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> parts(std::size_t n) {
  std::vector<std::string> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back("p" + std::to_string(i));
  return p;
}

fs::path temp_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("partsmm_model_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_statements({"shell", "shell membrane", "egg white", "yolk", "air cell"}).size(), 280u);
  EXPECT_EQ(enumerate_statements(parts(2)).size(), 28u);
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto all = enumerate_statements(parts(n));
    EXPECT_EQ(all.size(), n * (n - 1) * 14);
    const std::set<Statement> unique(all.begin(), all.end());
    EXPECT_EQ(unique.size(), all.size());
    for (const auto& s : all) {
      EXPECT_NE(s.subject, s.object);
      EXPECT_TRUE(unique.count({s.object, s.relation, s.subject}));
    }
  }
}

TEST(Enumerate, OrderIsPairMajorThenRelation) {
  const auto all = enumerate_statements({"a", "b", "c"});
  EXPECT_EQ(all[0], (Statement{"a", Relation::PartOf, "b"}));
  EXPECT_EQ(all[13], (Statement{"a", Relation::RequiredBy, "b"}));
  EXPECT_EQ(all[14], (Statement{"a", Relation::PartOf, "c"}));
  EXPECT_EQ(all[28], (Statement{"b", Relation::PartOf, "a"}));
}

TEST(Enumerate, RejectsBadParts) {
  EXPECT_THROW(enumerate_statements({"a"}), ValidationError);
  EXPECT_THROW(enumerate_statements({"a", "b", "a"}), ValidationError);
}

TEST(Universe, IndexMatchesEnumeration) {
  const StatementUniverse u(parts(5));
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(u.find(u.at(i)), i);
    const auto& s = u.at(i);
    EXPECT_EQ(u.index(*u.part_index(s.subject), s.relation, *u.part_index(s.object)), i);
  }
  EXPECT_FALSE(u.find({"p0", Relation::Above, "zz"}).has_value());
}

TEST(Universe, RelationSubset) {
  const StatementUniverse u({"a", "b", "c"}, {Relation::Above, Relation::Below});
  EXPECT_EQ(u.size(), 12u);
  EXPECT_TRUE(u.has_relation(Relation::Below));
  EXPECT_FALSE(u.has_relation(Relation::NextTo));
  EXPECT_FALSE(u.find({"a", Relation::NextTo, "b"}).has_value());
}

TEST(ModelJson, RoundTripKeepsOrder) {
  PartsMentalModel m;
  m.entity = "egg";
  m.model_id = "a1";
  m.parts = {"shell", "yolk", "egg white"};
  m.gold = {{{"yolk", Relation::Inside, "shell"}, true}, {{"shell", Relation::Inside, "yolk"}, false}};
  m.beliefs = {{{"shell", Relation::Surrounds, "yolk"}, 0.9}, {{"yolk", Relation::Surrounds, "shell"}, 0.125}};
  const auto dir = temp_dir("roundtrip");
  const std::string path = (dir / "egg.json").string();
  save_model(m, path);
  EXPECT_EQ(load_model(path), m);
  EXPECT_EQ(model_to_json_text(load_model(path)), model_to_json_text(m));
}

TEST(ModelJson, MinimalFile) {
  const auto m = model_from_json_text(
      R"({"entity":"egg","parts":["yolk","shell"],"gold":[{"x":"yolk","rln":"inside","y":"shell","label":true}]})");
  EXPECT_EQ(m.gold.size(), 1u);
  EXPECT_TRUE(m.beliefs.empty());
}

TEST(ModelJson, Errors) {
  auto message = [](const std::string& text) {
    try {
      model_from_json_text(text, "f.json");
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string reflexive =
      message(R"({"entity":"egg","parts":["yolk","shell"],"gold":[{"x":"yolk","rln":"above","y":"yolk","label":true}]})");
  EXPECT_NE(reflexive.find("reflexive"), std::string::npos) << reflexive;

  const std::string unknown_rel =
      message(R"({"entity":"egg","parts":["yolk","shell"],"gold":[{"x":"yolk","rln":"beside","y":"shell","label":true}]})");
  EXPECT_NE(unknown_rel.find("surrounded by"), std::string::npos) << unknown_rel;
  EXPECT_NE(unknown_rel.find("gold[0]"), std::string::npos) << unknown_rel;

  const std::string unknown_part =
      message(R"({"entity":"egg","parts":["yolk","shell"],"gold":[{"x":"yolk","rln":"above","y":"air cell","label":true}]})");
  EXPECT_NE(unknown_part.find("air cell"), std::string::npos) << unknown_part;

  const std::string bad_p =
      message(R"({"entity":"egg","parts":["yolk","shell"],"beliefs":[{"x":"yolk","rln":"above","y":"shell","p":1.5}]})");
  EXPECT_FALSE(bad_p.empty());

  const std::string syntax = message("{\n\"entity\": \"egg\",\n  oops }");
  EXPECT_NE(syntax.find("line"), std::string::npos) << syntax;

  const std::string dup = message(
      R"({"entity":"egg","parts":["yolk","shell"],"gold":[{"x":"yolk","rln":"above","y":"shell","label":true},{"x":"yolk","rln":"above","y":"shell","label":false}]})");
  EXPECT_FALSE(dup.empty());
}

TEST(ModelJson, LoadDirectorySorted) {
  const auto dir = temp_dir("dir");
  for (const std::string id : {"b", "a", "c"}) {
    PartsMentalModel m;
    m.entity = "kite";
    m.model_id = id;
    m.parts = {"string", "sail"};
    save_model(m, (dir / (model_file_stem(m) + ".json")).string());
  }
  const auto all = load_models(dir.string());
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].model_id, "a");
  EXPECT_EQ(all[2].model_id, "c");
}

TEST(ModelJson, FileStemIsSafe) {
  PartsMentalModel m;
  m.entity = "coffee maker";
  m.model_id = "w/1";
  EXPECT_EQ(model_file_stem(m).find_first_of(" /"), std::string::npos);
}
