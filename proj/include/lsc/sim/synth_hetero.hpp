#pragma once

#include <cstdint>
#include <vector>

#include "lsc/graph/hetero_graph.hpp"

namespace lsc {

// Planted-cluster generator with node types "A" and "B" and relations
// A__interacts__A, B__interacts__B and A__binds__B (plus rev_binds).
struct SynthHeteroOptions {
  std::size_t num_a = 300;
  std::size_t num_b = 200;
  std::size_t num_clusters = 4;
  std::size_t features_a = 16;
  std::size_t features_b = 8;
  // Expected within-cluster / cross-cluster degree per relation.
  double aa_in = 8.0, aa_out = 0.5;
  double bb_in = 6.0, bb_out = 0.5;
  double ab_in = 4.0, ab_out = 0.3;
  // Standard deviation of Gaussian noise added to one-hot cluster features.
  double feature_noise_a = 0.6;
  double feature_noise_b = 1.5;
};

struct SynthHetero {
  HeteroGraph clean;
  // clean with B__interacts__B perturbed by inject_noise over all B nodes.
  HeteroGraph noisy;
  std::vector<int> cluster_a;
  std::vector<int> cluster_b;
};

inline const RelationKey kBBRelation{"B", "interacts", "B"};
inline const RelationKey kAARelation{"A", "interacts", "A"};
inline const RelationKey kABRelation{"A", "binds", "B"};

// Requires num_a, num_b >= 10.
SynthHetero synth_hetero(std::size_t num_a, std::size_t num_b, std::uint64_t seed, double noise_rate);
SynthHetero synth_hetero(const SynthHeteroOptions& options, std::uint64_t seed, double noise_rate);

}  // namespace lsc
