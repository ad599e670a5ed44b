#include "lsc/train/jaccard.hpp"

#include <algorithm>
#include <iterator>

#include "lsc/core/error.hpp"

namespace lsc {
namespace {

std::vector<std::uint32_t> support(const Tensor& features, NodeId row) {
  const std::size_t f = features.dim(1);
  const auto v = features.values().subspan(static_cast<std::size_t>(row) * f, f);
  std::vector<std::uint32_t> s;
  for (std::size_t j = 0; j < f; ++j) {
    if (v[j] > 0.0) {
      s.push_back(static_cast<std::uint32_t>(j));
    }
  }
  return s;
}

double similarity(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

void check_row(const Tensor& features, NodeId row) {
  if (features.rank() != 2 || row >= features.dim(0)) {
    throw IndexError("node " + std::to_string(row) + " outside feature matrix " + shape_string(features.shape()));
  }
}

}  // namespace

double jaccard_similarity(const Tensor& features, NodeId u, NodeId v) {
  check_row(features, u);
  check_row(features, v);
  return similarity(support(features, u), support(features, v));
}

EdgeSet jaccard_filter_edges(const Tensor& features, const EdgeSet& edges, double threshold) {
  if (edges.empty()) {
    return edges;
  }
  check_row(features, static_cast<NodeId>(edges.node_bound() - 1));
  std::vector<std::vector<std::uint32_t>> supports(edges.node_bound());
  std::vector<char> built(edges.node_bound(), 0);
  auto get = [&](NodeId n) -> const std::vector<std::uint32_t>& {
    if (!built[n]) {
      supports[n] = support(features, n);
      built[n] = 1;
    }
    return supports[n];
  };
  std::vector<Edge> kept;
  for (const auto& e : edges) {
    if (similarity(get(e.u), get(e.v)) > threshold) {
      kept.push_back(e);
    }
  }
  return EdgeSet::from_edges(std::move(kept));
}

Graph jaccard_filter(const Graph& g, double threshold) {
  return with_edges(g, jaccard_filter_edges(g.features(), g.edges(), threshold));
}

}  // namespace lsc
