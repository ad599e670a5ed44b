#pragma once

// Experiment configuration: a flat "key = value" text file. Blank lines and
// lines starting with '#' are ignored; lists are comma-separated. Unknown or
// repeated keys are rejected. Relative paths resolve against the directory
// holding the config file.
//
//   data              bundle directory (not needed for a synthetic hetero run)
//   dataset           name written to records (default: data directory name)
//   output            JSONL results file
//   task              node-classification | link-prediction
//   variant           one or more of lscgnn, full-only, target-only, reg-only, gcn, lsc-jaccard
//   target_ratio      list in (0, 1]
//   perturb_rate      list >= 0
//   lambda_grid       list >= 0
//   seeds             count N (seeds 0..N-1) or a bracketed list, e.g. [3,7]
//   epochs lr hidden latent layers reg_layers jaccard_threshold
//   selection         auc | loss
//   target_loss       bce | softmax
//   target_relation   hetero target, src__name__dst
//   backend           auto | scalar | avx2

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lsc/graph/hetero_graph.hpp"
#include "lsc/simd/kernels.hpp"
#include "lsc/train/config.hpp"

namespace lsc {

struct RunConfig {
  std::filesystem::path data;
  std::string dataset;
  std::filesystem::path output = "results.jsonl";
  std::vector<Variant> variants{Variant::kLscGnn};
  std::vector<double> target_ratios{0.7};
  std::vector<double> perturb_rates{0.0};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::optional<RelationKey> target_relation;
  std::optional<simd::Backend> backend;  // empty = best available
  // Seed, variant and lambda are per cell; the rest applies to every run.
  TrainConfig train;
  // Keys present in the file, so commands can tell defaults from explicit values.
  std::set<std::string> explicit_keys;

  bool has(std::string_view key) const { return explicit_keys.count(std::string(key)) != 0; }
};

// Desk-scale defaults: 300 epochs, 5 seeds.
RunConfig default_run_config();

// Throws ConfigError with "<origin>:<line>: ..." on any schema violation.
RunConfig parse_run_config(std::string_view text, const std::string& origin = "<config>",
                           const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& file);

std::vector<double> parse_double_list(std::string_view text, std::string_view what);
RelationKey parse_relation_key(std::string_view text);

}  // namespace lsc
