#pragma once

#include <cstdint>
#include <optional>
#include <ostream>

#include "lsc/graph/graph.hpp"
#include "lsc/graph/hetero_graph.hpp"
#include "lsc/harness/results.hpp"
#include "lsc/harness/run_config.hpp"

namespace lsc {

struct ExperimentSummary {
  std::size_t trained = 0;   // run records written by this invocation
  std::size_t reused = 0;    // cells found complete in the log
  std::size_t selected = 0;  // selected records written
  std::size_t failed = 0;    // error records written

  bool ok() const noexcept { return failed == 0; }
};

// Node classification over ratio x rate x seed x variant x lambda. Variants
// without a regularizer train once with lambda 0. After a variant's grid
// completes for a seed, a "selected" record repeats the run record of the
// lambda chosen on validation. Failing cells produce error records and do
// not stop the sweep. Progress lines go to `progress` when non-null.
ExperimentSummary run_node_experiment(const RunConfig& cfg, const Graph& g, ResultLog& log,
                                      std::ostream* progress = nullptr);

struct SyntheticSpec {
  std::size_t num_a = 0;
  std::size_t num_b = 0;
  double noise = 0.0;
};

// Parses "nA,nB,noise".
SyntheticSpec parse_synthetic_spec(std::string_view text);

// Link prediction on a hetero target relation. With `synthetic`, each seed
// draws its own planted-cluster graph and the record's perturb_rate is the
// generator noise; otherwise noise is injected into the bundle's target
// relation at every configured perturb_rate. Variants default to
// target-only, full-only and lscgnn, hidden/latent to 32/64.
ExperimentSummary run_hetero_experiment(const RunConfig& cfg, const std::optional<HeteroGraph>& bundle,
                                        const std::optional<SyntheticSpec>& synthetic, ResultLog& log,
                                        std::ostream* progress = nullptr);

}  // namespace lsc
