#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tetot/data_model.hpp"

namespace tetot {

struct SyntheticFixture {
  EmbeddingSet source;
  std::vector<EmbeddingSet> targets;  // one per shift level, labeled
  ClassifierHead head;
  std::vector<double> true_accuracies;  // head accuracy on each target
};

/// Labeled Gaussian class clusters standing in for a trained encoder + head.
///
/// The source has K isotropic clusters with means on a sphere of radius 3;
/// the head is the nearest-mean (equal-prior LDA) rule for those clusters.
/// Target k translates every cluster by shift_levels[k] along one fixed
/// random direction and inflates the within-class spread by
/// (1 + 0.1 * shift_levels[k]). Accuracies are recomputed from the generated
/// targets, never stored approximations.
///
/// Requires dim >= 2, num_classes >= 2, n_per_domain >= 50.
SyntheticFixture generate_synthetic_fixture(std::size_t dim, std::size_t num_classes,
                                            std::span<const double> shift_levels,
                                            std::size_t n_per_domain, std::uint64_t seed);

}  // namespace tetot
