#pragma once

// On-disk dataset bundles (UTF-8, LF line endings, 0-based indices).
//
// Homogeneous bundle directory:
//   meta.json     {"num_nodes":N,"num_features":F,"num_classes":C}
//   edges.tsv     src<TAB>dst          undirected; duplicates/reversals merged
//   features.tsv  node<TAB>feature<TAB>value   sparse triplets, zeros omitted
//   labels.tsv    node<TAB>class
//
// Heterogeneous bundle directory:
//   node_types.json          {"types":[{"name":..,"num_nodes":..,"num_features":..}]}
//   features_<type>.tsv      sparse triplets per node type
//   rel_<src>__<name>__<dst>.tsv   src<TAB>dst, one file per relation
// A same-type relation file is read as undirected; a cross-type file also
// creates the reverse relation rev_<name>.

#include <filesystem>
#include <variant>

#include "lsc/graph/graph.hpp"
#include "lsc/graph/hetero_graph.hpp"

namespace lsc {

using BundleContents = std::variant<Graph, HeteroGraph>;

// Dispatches on the presence of node_types.json.
BundleContents load_bundle(const std::filesystem::path& dir);
Graph load_graph_bundle(const std::filesystem::path& dir);
HeteroGraph load_hetero_bundle(const std::filesystem::path& dir);

void write_bundle(const Graph& g, const std::filesystem::path& dir);
void write_bundle(const HeteroGraph& g, const std::filesystem::path& dir);

}  // namespace lsc
