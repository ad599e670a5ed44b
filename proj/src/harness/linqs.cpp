#include "lsc/harness/linqs.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "lsc/core/error.hpp"

namespace lsc {
namespace {

std::filesystem::path find_one(const std::filesystem::path& dir, const std::string& ext) {
  if (!std::filesystem::is_directory(dir)) {
    throw ParseError(dir.string() + ": not a directory");
  }
  std::vector<std::filesystem::path> hits;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ext) {
      hits.push_back(entry.path());
    }
  }
  if (hits.size() != 1) {
    throw ParseError(dir.string() + ": expected one *" + ext + " file, found " + std::to_string(hits.size()));
  }
  return hits.front();
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) {
    out.push_back(t);
  }
  return out;
}

}  // namespace

LinqsDataset load_linqs(const std::filesystem::path& dir) {
  const auto content = find_one(dir, ".content");
  const auto cites = find_one(dir, ".cites");

  LinqsDataset out;
  std::unordered_map<std::string, NodeId> index;
  std::vector<std::string> class_of;
  std::vector<double> values;
  std::size_t num_features = 0;
  {
    std::ifstream in(content);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto t = tokens(line);
      if (t.empty()) {
        continue;
      }
      const auto where = content.string() + ":" + std::to_string(lineno) + ": ";
      if (t.size() < 3) {
        throw ParseError(where + "expected id, features and label");
      }
      if (num_features == 0) {
        num_features = t.size() - 2;
      } else if (t.size() - 2 != num_features) {
        throw ParseError(where + "expected " + std::to_string(num_features) + " features, got " +
                         std::to_string(t.size() - 2));
      }
      if (!index.emplace(t.front(), static_cast<NodeId>(out.paper_ids.size())).second) {
        throw ParseError(where + "duplicate paper id " + t.front());
      }
      out.paper_ids.push_back(t.front());
      for (std::size_t j = 1; j + 1 < t.size(); ++j) {
        try {
          values.push_back(std::stod(t[j]));
        } catch (const std::exception&) {
          throw ParseError(where + "invalid feature value '" + t[j] + "'");
        }
      }
      class_of.push_back(t.back());
    }
  }
  if (out.paper_ids.empty()) {
    throw ParseError(content.string() + ": no nodes");
  }

  out.class_names = class_of;
  std::sort(out.class_names.begin(), out.class_names.end());
  out.class_names.erase(std::unique(out.class_names.begin(), out.class_names.end()), out.class_names.end());
  std::vector<int> labels;
  for (const auto& c : class_of) {
    labels.push_back(static_cast<int>(std::lower_bound(out.class_names.begin(), out.class_names.end(), c) -
                                      out.class_names.begin()));
  }

  std::vector<Edge> edges;
  {
    std::ifstream in(cites);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto t = tokens(line);
      if (t.empty()) {
        continue;
      }
      if (t.size() != 2) {
        throw ParseError(cites.string() + ":" + std::to_string(lineno) + ": expected two paper ids");
      }
      const auto a = index.find(t[0]);
      const auto b = index.find(t[1]);
      if (a == index.end() || b == index.end() || a->second == b->second) {
        ++out.dropped_citations;
        continue;
      }
      edges.push_back(Edge{a->second, b->second});
    }
  }

  const std::size_t n = out.paper_ids.size();
  out.graph = Graph(n, Tensor::from_values({n, num_features}, std::move(values)), EdgeSet::from_edges(edges),
                    std::move(labels), out.class_names.size());
  return out;
}

}  // namespace lsc
