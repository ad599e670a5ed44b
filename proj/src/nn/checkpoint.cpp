#include "lsc/nn/checkpoint.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "lsc/core/error.hpp"

namespace lsc {
using nlohmann::json;

void save_checkpoint(std::span<const NamedParameter> params, const std::filesystem::path& file) {
  json doc = json::object();
  for (const auto& p : params) {
    const auto v = p.tensor.values();
    doc[p.path] = {{"shape", p.tensor.shape()}, {"values", std::vector<double>(v.begin(), v.end())}};
  }
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(file.string() + ": cannot open for writing");
  }
  out << doc.dump() << '\n';
}

std::map<std::string, Tensor> load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw ParseError(file.string() + ": missing or unreadable checkpoint");
  }
  std::map<std::string, Tensor> out;
  try {
    const json doc = json::parse(in);
    for (const auto& [path, entry] : doc.items()) {
      auto shape = entry.at("shape").get<Shape>();
      auto values = entry.at("values").get<std::vector<double>>();
      if (values.size() != shape_numel(shape)) {
        throw ParseError(file.string() + ": parameter '" + path + "' has " + std::to_string(values.size()) +
                         " values for shape " + shape_string(shape));
      }
      out.emplace(path, Tensor::from_values(std::move(shape), std::move(values)));
    }
  } catch (const json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  return out;
}

void load_into(std::span<const NamedParameter> params, const std::map<std::string, Tensor>& checkpoint) {
  for (const auto& p : params) {
    const auto it = checkpoint.find(p.path);
    if (it == checkpoint.end()) {
      throw ValidationError("checkpoint lacks parameter '" + p.path + "'");
    }
    if (it->second.shape() != p.tensor.shape()) {
      throw DimensionError("checkpoint shape " + shape_string(it->second.shape()) + " for '" + p.path +
                           "' does not match " + shape_string(p.tensor.shape()));
    }
    Tensor handle = p.tensor;
    std::copy(it->second.values().begin(), it->second.values().end(), handle.mutable_values().begin());
  }
}

}  // namespace lsc
