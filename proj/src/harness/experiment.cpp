#include "lsc/harness/experiment.hpp"

#include <chrono>
#include <functional>
#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>

#include "lsc/core/error.hpp"
#include "lsc/sim/perturb.hpp"
#include "lsc/sim/synth_hetero.hpp"
#include "lsc/train/link_task.hpp"
#include "lsc/train/node_task.hpp"

namespace lsc {
namespace {

struct CellOutcome {
  std::size_t best_epoch = 0;
  double val = 0.0;
  double test = 0.0;
  std::optional<double> accuracy;
};

// Trains one (variant, lambda) cell of a prepared group.
using CellTrainer = std::function<CellOutcome(Variant, double)>;

class ScopedBackendChoice {
 public:
  explicit ScopedBackendChoice(const std::optional<simd::Backend>& b) {
    if (b) {
      guard_.emplace(*b);
    }
  }

 private:
  std::optional<simd::ScopedBackend> guard_;
};

std::vector<double> grid_for(const RunConfig& cfg, Variant v) {
  return uses_regularizer(v) ? cfg.train.lambda_grid : std::vector<double>{0.0};
}

void report(std::ostream* progress, const ExperimentRecord& r, const char* tag) {
  if (!progress) {
    return;
  }
  std::ostringstream line;
  line << '[' << tag << "] " << r.dataset << " ratio=" << r.target_ratio << " rate=" << r.perturb_rate << ' '
       << r.variant << " lambda=" << r.lambda << " seed=" << r.seed;
  if (r.kind == RecordKind::kError) {
    line << " error: " << r.error;
  } else {
    line << std::fixed << std::setprecision(4) << " epoch=" << r.best_epoch << " val=" << r.val_metric
         << " test=" << r.test_metric << std::setprecision(1) << " (" << r.wall_seconds << " s)";
  }
  *progress << line.str() << std::endl;
}

// One (dataset, ratio, rate, seed) group: every variant and lambda. `setup`
// builds the trainer; its failure turns every cell of the group into an
// error record.
void run_group(const RunConfig& cfg, const ExperimentRecord& base, const std::function<CellTrainer()>& setup,
               ResultLog& log, ExperimentSummary& summary, std::ostream* progress) {
  std::optional<CellTrainer> trainer;
  std::string setup_error;

  for (const Variant v : cfg.variants) {
    std::vector<ExperimentRecord> runs;
    bool complete = true;
    for (const double lambda : grid_for(cfg, v)) {
      ExperimentRecord r = base;
      r.kind = RecordKind::kRun;
      r.variant = std::string(variant_name(v));
      r.lambda = lambda;
      if (const auto* done = log.find(cell_key(r))) {
        runs.push_back(*done);
        ++summary.reused;
        continue;
      }
      if (!trainer && setup_error.empty()) {
        try {
          trainer = setup();
        } catch (const Error& e) {
          setup_error = e.what();
        }
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        if (!trainer) {
          throw ValidationError(setup_error);
        }
        const CellOutcome out = (*trainer)(v, lambda);
        r.best_epoch = out.best_epoch;
        r.val_metric = out.val;
        r.test_metric = out.test;
        r.test_accuracy = out.accuracy;
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        runs.push_back(r);
        ++summary.trained;
      } catch (const Error& e) {
        r.kind = RecordKind::kError;
        r.error = e.what();
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        complete = false;
        ++summary.failed;
      }
      log.append(r);
      report(progress, r, "run");
    }
    if (!complete) {
      continue;
    }
    const double chosen = select_lambda(runs);
    for (const auto& r : runs) {
      if (r.lambda == chosen) {
        ExperimentRecord s = r;
        s.kind = RecordKind::kSelected;
        if (!log.find(cell_key(s))) {
          log.append(s);
          ++summary.selected;
          report(progress, s, "selected");
        }
        break;
      }
    }
  }
}

}  // namespace

ExperimentSummary run_node_experiment(const RunConfig& cfg, const Graph& g, ResultLog& log, std::ostream* progress) {
  if (cfg.train.task != Task::kNodeClassification) {
    throw ConfigError("run/sweep handle node classification; use the hetero command for link prediction");
  }
  const ScopedBackendChoice backend(cfg.backend);
  ExperimentSummary summary;
  for (const double ratio : cfg.target_ratios) {
    for (const double rate : cfg.perturb_rates) {
      for (const std::uint64_t seed : cfg.seeds) {
        ExperimentRecord base;
        base.dataset = cfg.dataset;
        base.target_ratio = ratio;
        base.perturb_rate = rate;
        base.seed = seed;
        auto setup = [&]() -> CellTrainer {
          auto sim = std::make_shared<NodeSimulation>(simulate_nodes(g, ratio, rate, seed));
          return [&cfg, &g, sim, seed](Variant v, double lambda) {
            TrainConfig t = cfg.train;
            t.seed = seed;
            t.variant = v;
            NodeModel model(t, g.num_features(), g.num_classes(), uses_regularizer(v));
            const NodeInputs inputs = wire_node_variant(g, *sim, v, t.jaccard_threshold);
            const NodeTrainResult res = train_node_classifier(model, inputs, g, *sim, t, lambda);
            return CellOutcome{res.best_epoch, res.val_metric, res.test_metric, res.test_accuracy};
          };
        };
        run_group(cfg, base, setup, log, summary, progress);
      }
    }
  }
  return summary;
}

SyntheticSpec parse_synthetic_spec(std::string_view text) {
  const auto values = parse_double_list(text, "synthetic");
  if (values.size() != 3) {
    throw ConfigError("--synthetic expects nA,nB,noise");
  }
  auto count = [](double v, const char* what) {
    if (v < 1.0 || v != std::floor(v)) {
      throw ConfigError(std::string("--synthetic: ") + what + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  };
  if (values[2] < 0.0) {
    throw ConfigError("--synthetic: noise must be non-negative");
  }
  return SyntheticSpec{count(values[0], "nA"), count(values[1], "nB"), values[2]};
}

ExperimentSummary run_hetero_experiment(const RunConfig& cfg_in, const std::optional<HeteroGraph>& bundle,
                                        const std::optional<SyntheticSpec>& synthetic, ResultLog& log,
                                        std::ostream* progress) {
  if (bundle.has_value() == synthetic.has_value()) {
    throw ConfigError("hetero needs exactly one of a bundle or a synthetic spec");
  }
  RunConfig cfg = cfg_in;
  cfg.train.task = Task::kLinkPrediction;
  if (!cfg.has("variant")) {
    cfg.variants = {Variant::kTargetOnly, Variant::kFullOnly, Variant::kLscGnn};
  }
  if (!cfg.has("hidden")) {
    cfg.train.hidden = 32;
  }
  if (!cfg.has("latent")) {
    cfg.train.latent = 64;
  }
  const RelationKey target = cfg.target_relation.value_or(kBBRelation);
  if (synthetic && cfg.has("perturb_rate")) {
    throw ConfigError("perturb_rate conflicts with --synthetic; the generator noise is the perturbation");
  }
  const std::vector<double> rates = synthetic ? std::vector<double>{synthetic->noise} : cfg.perturb_rates;
  const std::string dataset = synthetic ? (cfg.dataset.empty() ? "synthetic" : cfg.dataset) : cfg.dataset;

  const ScopedBackendChoice backend(cfg.backend);
  ExperimentSummary summary;
  for (const double rate : rates) {
    for (const std::uint64_t seed : cfg.seeds) {
      ExperimentRecord base;
      base.dataset = dataset;
      // The whole target relation is observed; there is no node decomposition.
      base.target_ratio = 1.0;
      base.perturb_rate = rate;
      base.seed = seed;
      auto setup = [&]() -> CellTrainer {
        std::shared_ptr<LinkSimulation> sim;
        if (synthetic) {
          const SynthHetero s = synth_hetero(synthetic->num_a, synthetic->num_b, seed, synthetic->noise);
          sim = std::make_shared<LinkSimulation>(simulate_links(s.clean, s.noisy, target, seed));
        } else {
          if (!bundle->find_relation(target) || target.src != target.dst) {
            throw ConfigError("bundle has no same-type relation " + target.str());
          }
          std::vector<NodeId> nodes(bundle->node_type(target.src).num_nodes);
          for (std::size_t i = 0; i < nodes.size(); ++i) {
            nodes[i] = static_cast<NodeId>(i);
          }
          const EdgeSet noisy_edges =
              inject_noise(nodes, bundle->undirected_edges(target), PerturbationSpec{rate, seed});
          const HeteroGraph noisy = bundle->with_undirected_relation(target, noisy_edges);
          sim = std::make_shared<LinkSimulation>(simulate_links(*bundle, noisy, target, seed));
        }
        return [&cfg, sim, seed](Variant v, double lambda) {
          TrainConfig t = cfg.train;
          t.seed = seed;
          t.variant = v;
          LinkModel model = make_link_model(*sim, t);
          const LinkTrainResult res = train_link_predictor(model, *sim, t, lambda);
          return CellOutcome{res.best_epoch, res.val_metric, res.test_metric, std::nullopt};
        };
      };
      run_group(cfg, base, setup, log, summary, progress);
    }
  }
  return summary;
}

}  // namespace lsc
