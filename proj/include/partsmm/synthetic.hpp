#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "partsmm/model.hpp"

namespace partsmm {

/// A complete truth assignment over every statement of `parts` that satisfies
/// all grounded constraints. Built from hidden structure: heights (above),
/// depths (in front of), two containment forests (inside, surrounds), a
/// parent map (part of), random undirected graphs (next to, directly
/// connected to) and a DAG (requires).
LabelMap random_world(const std::vector<std::string>& parts, std::mt19937_64& rng);

struct SyntheticOptions {
  std::size_t min_parts = 4;
  std::size_t max_parts = 8;
  /// Chance that a True (resp. False) world statement is annotated before
  /// enrichment.
  double true_rate = 0.3;
  double false_rate = 0.05;
};

/// Mental model whose gold is the enrichment of a random sample of a random
/// world, so it is internally consistent. Beliefs are left empty.
PartsMentalModel synthetic_model(std::uint64_t seed, std::size_t index, const SyntheticOptions& options = {});

std::vector<PartsMentalModel> synthetic_dataset(std::uint64_t seed, std::size_t count,
                                                const SyntheticOptions& options = {});

/// Uniform confidences over every statement of `parts`.
BeliefMap random_beliefs(const std::vector<std::string>& parts, std::mt19937_64& rng);

}  // namespace partsmm
