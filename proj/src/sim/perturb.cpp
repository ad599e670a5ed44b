#include "lsc/sim/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "lsc/core/error.hpp"
#include "lsc/sim/counts.hpp"

namespace lsc {

Decomposition decompose(const Graph& g, const DecompositionSpec& spec) {
  if (!(spec.target_ratio > 0.0 && spec.target_ratio <= 1.0)) {
    throw ValidationError("target ratio must lie in (0, 1], got " + std::to_string(spec.target_ratio));
  }
  const std::size_t n = g.num_nodes();
  const auto k = static_cast<std::size_t>(std::llround(spec.target_ratio * static_cast<double>(n)));
  if (k == 0) {
    throw ValidationError("target ratio " + std::to_string(spec.target_ratio) + " selects no nodes out of " +
                          std::to_string(n));
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(spec.seed, "decompose");
  rng.shuffle(std::span<NodeId>(order));
  order.resize(k);
  std::sort(order.begin(), order.end());

  Decomposition d;
  d.target_nodes = std::move(order);
  d.target_edges = induced_edges(g, d.target_nodes);
  d.reg_edges = edge_difference(g.edges(), d.target_edges);
  d.reg_graph = with_edges(g, d.reg_edges);
  return d;
}

std::vector<Edge> sample_non_edges(std::span<const NodeId> nodes, const EdgeSet& excluded, std::size_t count,
                                   Rng& rng) {
  if (count == 0) {
    return {};
  }
  const std::size_t k = nodes.size();
  const std::size_t bound = std::max<std::size_t>(excluded.node_bound(),
                                                  k == 0 ? 0 : *std::max_element(nodes.begin(), nodes.end()) + 1);
  std::vector<char> member(bound, 0);
  for (const auto v : nodes) {
    if (member[v]) {
      throw ValidationError("node list contains duplicate node " + std::to_string(v));
    }
    member[v] = 1;
  }
  std::size_t inside = 0;
  for (const auto& e : excluded) {
    inside += (member[e.u] && member[e.v]) ? 1 : 0;
  }
  const std::size_t total = k < 2 ? 0 : k * (k - 1) / 2;
  const std::size_t available = total - inside;
  if (count > available) {
    throw ValidationError("requested " + std::to_string(count) + " non-edges but only " +
                          std::to_string(available) + " exist among " + std::to_string(k) + " nodes");
  }

  std::vector<Edge> out;
  out.reserve(count);
  if (available <= 2 * count) {
    // Dense case: enumerate candidates and take a uniform prefix.
    std::vector<Edge> candidates;
    candidates.reserve(available);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const Edge e{std::min(nodes[i], nodes[j]), std::max(nodes[i], nodes[j])};
        if (!excluded.contains(e.u, e.v)) {
          candidates.push_back(e);
        }
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
      std::swap(candidates[i], candidates[j]);
      out.push_back(candidates[i]);
    }
  } else {
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(count * 2);
    while (out.size() < count) {
      const auto a = nodes[rng.below(k)];
      const auto b = nodes[rng.below(k)];
      if (a == b) {
        continue;
      }
      const Edge e{std::min(a, b), std::max(a, b)};
      if (excluded.contains(e.u, e.v)) {
        continue;
      }
      const std::uint64_t key = (std::uint64_t{e.u} << 32) | e.v;
      if (chosen.insert(key).second) {
        out.push_back(e);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet inject_noise(std::span<const NodeId> target_nodes, const EdgeSet& target_edges,
                     const PerturbationSpec& spec) {
  if (!(spec.rate >= 0.0) || !std::isfinite(spec.rate)) {
    throw ValidationError("perturbation rate must be non-negative, got " + std::to_string(spec.rate));
  }
  const std::size_t count = floor_count(spec.rate, target_edges.size());
  if (count == 0) {
    return target_edges;
  }
  Rng rng(spec.seed, "inject_noise");
  auto injected = sample_non_edges(target_nodes, target_edges, count, rng);
  return edge_union(target_edges, EdgeSet::from_edges(std::move(injected)));
}

}  // namespace lsc
