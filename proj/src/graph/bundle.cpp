#include "lsc/graph/bundle.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "lsc/core/error.hpp"

namespace lsc {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void fail(const fs::path& file, std::size_t line, const std::string& what) {
  throw ParseError(file.string() + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ParseError(file.string() + ": missing or unreadable file");
  }
  return in;
}

std::ofstream open_output(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(file.string() + ": cannot open for writing");
  }
  return out;
}

// Splits one TSV record into exactly `expected` fields.
std::vector<std::string_view> split_fields(std::string_view line, std::size_t expected, const fs::path& file,
                                           std::size_t lineno) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) {
      break;
    }
    start = tab + 1;
  }
  if (fields.size() != expected) {
    fail(file, lineno, "expected " + std::to_string(expected) + " tab-separated fields, got " +
                           std::to_string(fields.size()));
  }
  return fields;
}

std::uint64_t parse_index(std::string_view text, const fs::path& file, std::size_t lineno) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(file, lineno, "invalid index '" + std::string(text) + "'");
  }
  return value;
}

double parse_value(std::string_view text, const fs::path& file, std::size_t lineno) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(file, lineno, "invalid number '" + std::string(text) + "'");
  }
  return value;
}

std::string format_value(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Calls fn(fields, lineno) for every non-empty line.
template <typename Fn>
void for_each_record(const fs::path& file, std::size_t expected_fields, Fn fn) {
  auto in = open_input(file);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    fn(split_fields(line, expected_fields, file, lineno), lineno);
  }
}

json read_json(const fs::path& file) {
  auto in = open_input(file);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(file.string() + ":1: " + e.what());
  }
}

std::size_t json_count(const json& j, const char* key, const fs::path& file) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw ParseError(file.string() + ":1: missing non-negative integer '" + key + "'");
  }
  return j[key].get<std::size_t>();
}

Tensor read_features(const fs::path& file, std::size_t num_nodes, std::size_t num_features) {
  std::vector<double> values(num_nodes * num_features, 0.0);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for_each_record(file, 3, [&](const auto& f, std::size_t lineno) {
    const auto node = parse_index(f[0], file, lineno);
    const auto feat = parse_index(f[1], file, lineno);
    const double value = parse_value(f[2], file, lineno);
    if (node >= num_nodes) {
      fail(file, lineno, "node " + std::to_string(node) + " out of range [0," + std::to_string(num_nodes) + ")");
    }
    if (feat >= num_features) {
      fail(file, lineno,
           "feature " + std::to_string(feat) + " out of range [0," + std::to_string(num_features) + ")");
    }
    if (!seen.emplace(node, feat).second) {
      fail(file, lineno, "duplicate feature entry");
    }
    values[node * num_features + feat] = value;
  });
  return Tensor::from_values({num_nodes, num_features}, std::move(values));
}

std::vector<std::pair<NodeId, NodeId>> read_pairs(const fs::path& file, std::size_t n_src, std::size_t n_dst,
                                                  bool reject_self_loops) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for_each_record(file, 2, [&](const auto& f, std::size_t lineno) {
    const auto a = parse_index(f[0], file, lineno);
    const auto b = parse_index(f[1], file, lineno);
    if (a >= n_src || b >= n_dst) {
      fail(file, lineno, "edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    }
    if (reject_self_loops && a == b) {
      fail(file, lineno, "self-loop " + std::to_string(a) + " is not allowed");
    }
    pairs.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  });
  return pairs;
}

void write_features(const Tensor& features, const fs::path& file) {
  auto out = open_output(file);
  const std::size_t n = features.dim(0);
  const std::size_t f = features.dim(1);
  const auto v = features.values();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      if (v[i * f + j] != 0.0) {
        out << i << '\t' << j << '\t' << format_value(v[i * f + j]) << '\n';
      }
    }
  }
}

void write_pairs(const std::vector<std::pair<NodeId, NodeId>>& pairs, const fs::path& file) {
  auto out = open_output(file);
  for (const auto& [a, b] : pairs) {
    out << a << '\t' << b << '\n';
  }
}

}  // namespace

Graph load_graph_bundle(const fs::path& dir) {
  const auto meta_file = dir / "meta.json";
  const json meta = read_json(meta_file);
  const std::size_t n = json_count(meta, "num_nodes", meta_file);
  const std::size_t f = json_count(meta, "num_features", meta_file);
  const std::size_t c = json_count(meta, "num_classes", meta_file);

  Tensor features = read_features(dir / "features.tsv", n, f);
  const auto pairs = read_pairs(dir / "edges.tsv", n, n, true);

  std::vector<int> labels(n, -1);
  const auto label_file = dir / "labels.tsv";
  for_each_record(label_file, 2, [&](const auto& fields, std::size_t lineno) {
    const auto node = parse_index(fields[0], label_file, lineno);
    const auto cls = parse_index(fields[1], label_file, lineno);
    if (node >= n) {
      fail(label_file, lineno, "node " + std::to_string(node) + " out of range");
    }
    if (cls >= c) {
      fail(label_file, lineno, "class " + std::to_string(cls) + " out of range [0," + std::to_string(c) + ")");
    }
    if (labels[node] != -1) {
      fail(label_file, lineno, "node " + std::to_string(node) + " is labeled twice");
    }
    labels[node] = static_cast<int>(cls);
  });

  return Graph(n, std::move(features), EdgeSet::from_pairs(pairs), std::move(labels), c);
}

HeteroGraph load_hetero_bundle(const fs::path& dir) {
  const auto types_file = dir / "node_types.json";
  const json doc = read_json(types_file);
  if (!doc.contains("types") || !doc["types"].is_array()) {
    throw ParseError(types_file.string() + ":1: missing 'types' array");
  }
  HeteroGraph g;
  for (const auto& t : doc["types"]) {
    if (!t.contains("name") || !t["name"].is_string()) {
      throw ParseError(types_file.string() + ":1: node type without a name");
    }
    const auto name = t["name"].get<std::string>();
    const std::size_t n = json_count(t, "num_nodes", types_file);
    const std::size_t f = json_count(t, "num_features", types_file);
    g.add_node_type(name, read_features(dir / ("features_" + name + ".tsv"), n, f));
  }

  std::vector<fs::path> rel_files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto fname = entry.path().filename().string();
    if (fname.rfind("rel_", 0) == 0 && entry.path().extension() == ".tsv") {
      rel_files.push_back(entry.path());
    }
  }
  std::sort(rel_files.begin(), rel_files.end());
  for (const auto& file : rel_files) {
    const auto stem = file.stem().string().substr(4);
    const auto first = stem.find("__");
    const auto last = stem.rfind("__");
    if (first == std::string::npos || first == last) {
      throw ParseError(file.string() + ":0: file name must be rel_<src>__<name>__<dst>.tsv");
    }
    const RelationKey key{stem.substr(0, first), stem.substr(first + 2, last - first - 2), stem.substr(last + 2)};
    if (!g.has_node_type(key.src) || !g.has_node_type(key.dst)) {
      throw ParseError(file.string() + ":0: relation references an unknown node type");
    }
    const auto pairs =
        read_pairs(file, g.node_type(key.src).num_nodes, g.node_type(key.dst).num_nodes, key.src == key.dst);
    if (key.src == key.dst) {
      g.add_undirected_relation(key.src, key.name, EdgeSet::from_pairs(pairs));
    } else {
      g.add_bipartite_relation(key.src, key.name, key.dst, pairs);
    }
  }
  return g;
}

BundleContents load_bundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw ParseError(dir.string() + ": bundle directory does not exist");
  }
  if (fs::exists(dir / "node_types.json")) {
    return load_hetero_bundle(dir);
  }
  return load_graph_bundle(dir);
}

void write_bundle(const Graph& g, const fs::path& dir) {
  fs::create_directories(dir);
  {
    auto out = open_output(dir / "meta.json");
    const json meta = {{"num_nodes", g.num_nodes()}, {"num_features", g.num_features()},
                       {"num_classes", g.num_classes()}};
    out << meta.dump() << '\n';
  }
  {
    auto out = open_output(dir / "edges.tsv");
    for (const auto& e : g.edges()) {
      out << e.u << '\t' << e.v << '\n';
    }
  }
  write_features(g.features(), dir / "features.tsv");
  {
    auto out = open_output(dir / "labels.tsv");
    for (std::size_t i = 0; i < g.labels().size(); ++i) {
      if (g.labels()[i] >= 0) {
        out << i << '\t' << g.labels()[i] << '\n';
      }
    }
  }
}

void write_bundle(const HeteroGraph& g, const fs::path& dir) {
  fs::create_directories(dir);
  json types = json::array();
  for (const auto& [name, t] : g.node_types()) {
    types.push_back({{"name", name}, {"num_nodes", t.num_nodes}, {"num_features", t.features.dim(1)}});
    write_features(t.features, dir / ("features_" + name + ".tsv"));
  }
  {
    auto out = open_output(dir / "node_types.json");
    out << json{{"types", types}}.dump() << '\n';
  }
  for (const auto& [key, rel] : g.relations()) {
    if (rel.is_reverse) {
      continue;
    }
    if (key.src == key.dst) {
      std::vector<std::pair<NodeId, NodeId>> canonical;
      for (const auto& e : g.undirected_edges(key)) {
        canonical.emplace_back(e.u, e.v);
      }
      write_pairs(canonical, dir / ("rel_" + key.str() + ".tsv"));
    } else {
      write_pairs(rel.pairs, dir / ("rel_" + key.str() + ".tsv"));
    }
  }
}

}  // namespace lsc
