#pragma once

// Reader for the LINQS citation format used by the original Planetoid
// sources: <name>.content lines "paper_id feat_1 .. feat_F class_label" and
// <name>.cites lines "cited_id citing_id", whitespace separated.

#include <filesystem>
#include <string>
#include <vector>

#include "lsc/graph/graph.hpp"

namespace lsc {

struct LinqsDataset {
  Graph graph;
  std::vector<std::string> paper_ids;    // node i <-> paper_ids[i], in .content order
  std::vector<std::string> class_names;  // sorted; class c <-> class_names[c]
  std::size_t dropped_citations = 0;     // self-citations or unknown paper ids
};

// Expects exactly one *.content and one *.cites file in `dir`.
LinqsDataset load_linqs(const std::filesystem::path& dir);

}  // namespace lsc
