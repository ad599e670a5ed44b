#pragma once

#include <vector>

#include "lsc/graph/graph.hpp"
#include "lsc/tensor/ops.hpp"

namespace lsc {

// Directed messages src -> dst, grouped by ascending destination, derived
// from an adjacency whose row d lists the sources sending to d.
struct MessageIndex {
  std::size_t num_src = 0;
  std::size_t num_dst = 0;
  std::vector<Index> src;
  std::vector<Index> dst;
  // 1 / in-degree(dst) per message (mean aggregation).
  std::vector<double> mean_weight;
  // 1 / sqrt(deg(src) * deg(dst)) per message (symmetric normalization);
  // only meaningful for square adjacencies.
  std::vector<double> sym_weight;

  static MessageIndex from_adjacency(const Adjacency& adj, std::size_t num_src);
  std::size_t size() const noexcept { return src.size(); }
};

}  // namespace lsc
