#pragma once

#include "lsc/graph/graph.hpp"

namespace lsc {

// |A ∩ B| / |A ∪ B| over the supports (value > 0) of two feature rows;
// 0 when both rows are empty.
double jaccard_similarity(const Tensor& features, NodeId u, NodeId v);

// Edges whose endpoint similarity exceeds `threshold`.
EdgeSet jaccard_filter_edges(const Tensor& features, const EdgeSet& edges, double threshold);

Graph jaccard_filter(const Graph& g, double threshold);

}  // namespace lsc
