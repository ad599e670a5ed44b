#include "lsc/sim/synth_hetero.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "lsc/core/error.hpp"
#include "lsc/core/rng.hpp"
#include "lsc/sim/perturb.hpp"

namespace lsc {
namespace {

std::vector<int> assign_clusters(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<int> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = static_cast<int>(i % k);
  }
  rng.shuffle(std::span<int>(c));
  return c;
}

std::vector<std::size_t> cluster_sizes(const std::vector<int>& c, std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (const int v : c) {
    ++sizes[static_cast<std::size_t>(v)];
  }
  return sizes;
}

// Bernoulli edge per unordered pair, probability chosen so the expected
// within/cross-cluster degree matches deg_in/deg_out.
EdgeSet planted_edges(const std::vector<int>& c, std::size_t k, double deg_in, double deg_out, Rng& rng) {
  const std::size_t n = c.size();
  const auto sizes = cluster_sizes(c, k);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = sizes[static_cast<std::size_t>(c[i])];
    const double p_in = s > 1 ? std::min(1.0, deg_in / static_cast<double>(s - 1)) : 0.0;
    const double p_out = n > s ? std::min(1.0, deg_out / static_cast<double>(n - s)) : 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = c[i] == c[j] ? p_in : p_out;
      if (rng.uniform() < p) {
        edges.push_back(Edge{static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  return EdgeSet::from_edges(std::move(edges));
}

std::vector<std::pair<NodeId, NodeId>> planted_bipartite(const std::vector<int>& ca, const std::vector<int>& cb,
                                                         std::size_t k, double deg_in, double deg_out, Rng& rng) {
  const auto sizes_b = cluster_sizes(cb, k);
  const std::size_t nb = cb.size();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const auto s = sizes_b[static_cast<std::size_t>(ca[i])];
    const double p_in = s > 0 ? std::min(1.0, deg_in / static_cast<double>(s)) : 0.0;
    const double p_out = nb > s ? std::min(1.0, deg_out / static_cast<double>(nb - s)) : 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      const double p = ca[i] == cb[j] ? p_in : p_out;
      if (rng.uniform() < p) {
        pairs.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
      }
    }
  }
  return pairs;
}

Tensor cluster_features(const std::vector<int>& c, std::size_t dim, double noise, Rng& rng) {
  std::vector<double> v(c.size() * dim);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t f = 0; f < dim; ++f) {
      const double signal = static_cast<std::size_t>(c[i]) % dim == f ? 1.0 : 0.0;
      v[i * dim + f] = signal + noise * rng.normal();
    }
  }
  return Tensor::from_values({c.size(), dim}, std::move(v));
}

}  // namespace

SynthHetero synth_hetero(const SynthHeteroOptions& o, std::uint64_t seed, double noise_rate) {
  if (o.num_a < 10 || o.num_b < 10) {
    throw ValidationError("synthetic hetero graph needs at least 10 nodes per type");
  }
  if (o.num_clusters == 0 || o.num_clusters > std::min(o.num_a, o.num_b)) {
    throw ValidationError("cluster count must be in [1, min(num_a, num_b)]");
  }
  if (o.features_a == 0 || o.features_b == 0) {
    throw ValidationError("feature dimensions must be positive");
  }
  const std::size_t k = o.num_clusters;

  Rng cluster_rng(seed, "synth/clusters");
  SynthHetero out;
  out.cluster_a = assign_clusters(o.num_a, k, cluster_rng);
  out.cluster_b = assign_clusters(o.num_b, k, cluster_rng);

  Rng edge_rng(seed, "synth/edges");
  const EdgeSet aa = planted_edges(out.cluster_a, k, o.aa_in, o.aa_out, edge_rng);
  const EdgeSet bb = planted_edges(out.cluster_b, k, o.bb_in, o.bb_out, edge_rng);
  auto ab = planted_bipartite(out.cluster_a, out.cluster_b, k, o.ab_in, o.ab_out, edge_rng);

  Rng feat_rng(seed, "synth/features");
  Tensor xa = cluster_features(out.cluster_a, o.features_a, o.feature_noise_a, feat_rng);
  Tensor xb = cluster_features(out.cluster_b, o.features_b, o.feature_noise_b, feat_rng);

  HeteroGraph& g = out.clean;
  g.add_node_type("A", std::move(xa));
  g.add_node_type("B", std::move(xb));
  g.add_undirected_relation(kAARelation.src, kAARelation.name, aa);
  g.add_undirected_relation(kBBRelation.src, kBBRelation.name, bb);
  g.add_bipartite_relation(kABRelation.src, kABRelation.name, kABRelation.dst, std::move(ab));

  std::vector<NodeId> b_nodes(o.num_b);
  std::iota(b_nodes.begin(), b_nodes.end(), NodeId{0});
  const EdgeSet noisy_bb = inject_noise(b_nodes, bb, PerturbationSpec{noise_rate, derive_seed(seed, "synth/noise")});
  out.noisy = g.with_undirected_relation(kBBRelation, noisy_bb);
  return out;
}

SynthHetero synth_hetero(std::size_t num_a, std::size_t num_b, std::uint64_t seed, double noise_rate) {
  SynthHeteroOptions o;
  o.num_a = num_a;
  o.num_b = num_b;
  return synth_hetero(o, seed, noise_rate);
}

}  // namespace lsc
