#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include "lsc/nn/parameter.hpp"

namespace lsc {

// JSON object {"<path>": {"shape": [...], "values": [...]}, ...}. Doubles are
// written in shortest round-trip form, so save/load is bit-exact.
void save_checkpoint(std::span<const NamedParameter> params, const std::filesystem::path& file);
std::map<std::string, Tensor> load_checkpoint(const std::filesystem::path& file);

// Copies checkpoint values into matching parameters. Every parameter must be
// present with an identical shape.
void load_into(std::span<const NamedParameter> params, const std::map<std::string, Tensor>& checkpoint);

}  // namespace lsc
