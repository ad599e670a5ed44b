#include "lsc/harness/cli.hpp"

#include <CLI11.hpp>
#include <fstream>

#include "lsc/core/error.hpp"
#include "lsc/graph/bundle.hpp"
#include "lsc/harness/experiment.hpp"
#include "lsc/harness/linqs.hpp"
#include "lsc/harness/table.hpp"

namespace lsc {
namespace {

struct Options {
  std::string config;
  std::string out;
  std::string in;
  std::string rates;
  std::string ratios;
  std::string synthetic;
};

RunConfig load_with_output(const Options& o) {
  RunConfig cfg = load_run_config(o.config);
  if (!o.out.empty()) {
    cfg.output = o.out;
  }
  return cfg;
}

Graph load_node_data(const RunConfig& cfg) {
  if (cfg.data.empty()) {
    throw ConfigError("config needs a 'data' bundle directory");
  }
  return load_graph_bundle(cfg.data);
}

int finish(const ExperimentSummary& s, const RunConfig& cfg, std::ostream& out) {
  out << "trained " << s.trained << ", reused " << s.reused << ", selected " << s.selected << ", failed "
      << s.failed << " -> " << cfg.output.string() << '\n';
  return s.ok() ? kExitOk : kExitCellFailed;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_with_output(o);
  const Graph g = load_node_data(cfg);
  ResultLog log(cfg.output, false);
  return finish(run_node_experiment(cfg, g, log, &err), cfg, out);
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load_with_output(o);
  if (!o.rates.empty()) {
    cfg.perturb_rates = parse_double_list(o.rates, "--rates");
  }
  if (!o.ratios.empty()) {
    cfg.target_ratios = parse_double_list(o.ratios, "--ratios");
  }
  const Graph g = load_node_data(cfg);
  ResultLog log(cfg.output, true);
  return finish(run_node_experiment(cfg, g, log, &err), cfg, out);
}

int cmd_table(const Options& o, std::ostream& out) {
  const auto records = read_records(o.in);
  const ResultTable t = build_table(records);
  out << render_text(t);
  if (!o.out.empty()) {
    std::ofstream csv(o.out, std::ios::binary);
    if (!csv) {
      throw ValidationError("cannot write " + o.out);
    }
    csv << render_csv(t);
  }
  return kExitOk;
}

int cmd_hetero(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_with_output(o);
  std::optional<SyntheticSpec> synthetic;
  std::optional<HeteroGraph> bundle;
  if (!o.synthetic.empty()) {
    synthetic = parse_synthetic_spec(o.synthetic);
  } else if (cfg.data.empty()) {
    throw ConfigError("hetero needs a 'data' bundle or --synthetic nA,nB,noise");
  } else {
    bundle = load_hetero_bundle(cfg.data);
  }
  ResultLog log(cfg.output, false);
  return finish(run_hetero_experiment(cfg, bundle, synthetic, log, &err), cfg, out);
}

int cmd_convert(const Options& o, std::ostream& out) {
  const LinqsDataset d = load_linqs(o.in);
  write_bundle(d.graph, o.out);
  out << d.graph.num_nodes() << " nodes, " << d.graph.num_edges() << " edges, " << d.graph.num_features()
      << " features, " << d.graph.num_classes() << " classes";
  if (d.dropped_citations > 0) {
    out << " (" << d.dropped_citations << " citations dropped)";
  }
  out << " -> " << o.out << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Latent-space constrained GNN experiments"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Train every cell of a config; overwrites the output file");
  run->add_option("--config", o.config, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", o.out, "results JSONL (overrides 'output')");

  auto* sweep = app.add_subcommand("sweep", "Cross product over ratios and rates; resumes an existing output");
  sweep->add_option("--config", o.config, "config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--rates", o.rates, "perturbation rates, e.g. 0,0.05,0.1");
  sweep->add_option("--ratios", o.ratios, "target ratios, e.g. 0.5,0.7,0.9");
  sweep->add_option("--out", o.out, "results JSONL (overrides 'output')");

  auto* table = app.add_subcommand("table", "Aggregate selected records into mean±std cells");
  table->add_option("--in", o.in, "results JSONL")->required()->check(CLI::ExistingFile);
  table->add_option("--out", o.out, "CSV file to write");

  auto* hetero = app.add_subcommand("hetero", "Link prediction on a hetero bundle or synthetic graph");
  hetero->add_option("--config", o.config, "config file")->required()->check(CLI::ExistingFile);
  hetero->add_option("--synthetic", o.synthetic, "nA,nB,noise for the planted-cluster generator");
  hetero->add_option("--out", o.out, "results JSONL (overrides 'output')");

  auto* convert = app.add_subcommand("convert-planetoid", "Convert LINQS .content/.cites files to a bundle");
  convert->add_option("--in", o.in, "directory with <name>.content and <name>.cites")->required();
  convert->add_option("--out", o.out, "bundle directory to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (*run) return cmd_run(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*table) return cmd_table(o, out);
    if (*hetero) return cmd_hetero(o, out, err);
    return cmd_convert(o, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCellFailed;
  }
}

}  // namespace lsc
