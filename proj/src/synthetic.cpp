#include "partsmm/synthetic.hpp"

#include <algorithm>
#include <array>

#include "partsmm/enrich.hpp"
#include "partsmm/error.hpp"
#include "partsmm/hash.hpp"

namespace partsmm {

namespace {

constexpr std::array<const char*, 24> kPartNames{
    "handle", "base",  "lid",   "wheel", "frame",  "seat",  "screen", "button",
    "cable",  "panel", "door",  "roof",  "strap",  "blade", "spring", "motor",
    "light",  "knob",  "hinge", "pedal", "chain",  "lens",  "window", "shell"};

constexpr std::array<const char*, 12> kEntities{
    "lamp", "bicycle", "kettle", "camera", "chair", "toaster",
    "radio", "stroller", "blender", "scooter", "printer", "clock"};

bool chance(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

// parent[i] is an earlier index or -1.
std::vector<int> random_forest(std::size_t n, double link, std::mt19937_64& rng) {
  std::vector<int> parent(n, -1);
  for (std::size_t i = 1; i < n; ++i) {
    if (chance(rng, link)) parent[i] = std::uniform_int_distribution<int>(0, static_cast<int>(i) - 1)(rng);
  }
  return parent;
}

bool is_ancestor(const std::vector<int>& parent, std::size_t a, std::size_t x) {
  for (int p = parent[x]; p >= 0; p = parent[static_cast<std::size_t>(p)]) {
    if (static_cast<std::size_t>(p) == a) return true;
  }
  return false;
}

}  // namespace

LabelMap random_world(const std::vector<std::string>& parts, std::mt19937_64& rng) {
  const std::size_t n = parts.size();
  std::vector<int> height(n), depth(n);
  for (auto& h : height) h = std::uniform_int_distribution<int>(0, 2)(rng);
  for (auto& d : depth) d = std::uniform_int_distribution<int>(0, 2)(rng);
  // Shuffled positions so forests are not biased toward the first parts.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  const auto containment = random_forest(n, 0.4, rng);
  const auto surrounding = random_forest(n, 0.3, rng);
  const auto assembly = random_forest(n, 0.5, rng);
  std::vector<std::vector<bool>> next(n, std::vector<bool>(n)), connected(n, std::vector<bool>(n)),
      requires_(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      next[i][j] = next[j][i] = chance(rng, 0.35);
      connected[i][j] = connected[j][i] = chance(rng, 0.3);
      if (chance(rng, 0.2)) {
        (rank[i] < rank[j] ? requires_[i][j] : requires_[j][i]) = true;
      }
    }
  }

  LabelMap world;
  for (const Statement& s : enumerate_statements(parts)) {
    const auto x = static_cast<std::size_t>(std::find(parts.begin(), parts.end(), s.subject) - parts.begin());
    const auto y = static_cast<std::size_t>(std::find(parts.begin(), parts.end(), s.object) - parts.begin());
    const std::size_t rx = rank[x], ry = rank[y];
    bool v = false;
    switch (s.relation) {
      case Relation::PartOf: v = assembly[rx] == static_cast<int>(ry); break;
      case Relation::HasPart: v = assembly[ry] == static_cast<int>(rx); break;
      case Relation::Inside: v = is_ancestor(containment, ry, rx); break;
      case Relation::Contains: v = is_ancestor(containment, rx, ry); break;
      case Relation::InFrontOf: v = depth[x] < depth[y]; break;
      case Relation::Behind: v = depth[x] > depth[y]; break;
      case Relation::Above: v = height[x] > height[y]; break;
      case Relation::Below: v = height[x] < height[y]; break;
      case Relation::Surrounds: v = is_ancestor(surrounding, rx, ry); break;
      case Relation::SurroundedBy: v = is_ancestor(surrounding, ry, rx); break;
      case Relation::NextTo: v = next[x][y]; break;
      case Relation::DirectlyConnectedTo: v = connected[x][y]; break;
      case Relation::Requires: v = requires_[x][y]; break;
      case Relation::RequiredBy: v = requires_[y][x]; break;
    }
    world.emplace(s, v);
  }
  return world;
}

PartsMentalModel synthetic_model(std::uint64_t seed, std::size_t index, const SyntheticOptions& options) {
  if (options.min_parts < 2 || options.max_parts < options.min_parts || options.max_parts > kPartNames.size()) {
    throw ValidationError("synthetic part range must satisfy 2 <= min <= max <= " +
                          std::to_string(kPartNames.size()));
  }
  std::mt19937_64 rng(combine_seed(seed, "synthetic-model-" + std::to_string(index)));
  const std::size_t n = std::uniform_int_distribution<std::size_t>(options.min_parts, options.max_parts)(rng);
  std::vector<std::string> names(kPartNames.begin(), kPartNames.end());
  std::shuffle(names.begin(), names.end(), rng);
  names.resize(n);

  PartsMentalModel m;
  m.entity = kEntities[index % kEntities.size()];
  m.model_id = "s" + std::to_string(seed) + "-" + std::to_string(index);
  m.parts = names;

  const LabelMap world = random_world(names, rng);
  LabelMap annotations;
  for (const auto& [s, v] : world) {
    if (chance(rng, v ? options.true_rate : options.false_rate)) annotations.emplace(s, v);
  }
  const EnrichmentResult e = enrich(annotations, names);
  if (!e.conflicts.empty()) throw Error("synthetic world produced an enrichment conflict");
  m.gold = to_labeled(e.enriched);
  return m;
}

std::vector<PartsMentalModel> synthetic_dataset(std::uint64_t seed, std::size_t count,
                                                const SyntheticOptions& options) {
  std::vector<PartsMentalModel> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(synthetic_model(seed, i, options));
  return out;
}

BeliefMap random_beliefs(const std::vector<std::string>& parts, std::mt19937_64& rng) {
  BeliefMap out;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Statement& s : enumerate_statements(parts)) out.emplace(s, u(rng));
  return out;
}

}  // namespace partsmm
