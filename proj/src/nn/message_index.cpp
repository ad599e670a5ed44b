#include "lsc/nn/message_index.hpp"

#include <cmath>

namespace lsc {

MessageIndex MessageIndex::from_adjacency(const Adjacency& adj, std::size_t num_src) {
  MessageIndex m;
  m.num_src = num_src;
  m.num_dst = adj.num_nodes();
  const std::size_t e = adj.num_entries();
  m.src.reserve(e);
  m.dst.reserve(e);
  m.mean_weight.reserve(e);
  const bool square = num_src == m.num_dst;
  if (square) {
    m.sym_weight.reserve(e);
  }
  for (std::size_t d = 0; d < m.num_dst; ++d) {
    const double deg_d = static_cast<double>(adj.degree(d));
    for (const auto s : adj.neighbors(d)) {
      m.src.push_back(static_cast<Index>(s));
      m.dst.push_back(static_cast<Index>(d));
      m.mean_weight.push_back(1.0 / deg_d);
      if (square) {
        m.sym_weight.push_back(1.0 / std::sqrt(deg_d * static_cast<double>(adj.degree(s))));
      }
    }
  }
  return m;
}

}  // namespace lsc
