// lakeprune: containment detection and retention planning for tabular lakes.
//
// Exit codes: 0 success, 1 rejected input, 2 internal failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lakeprune/content_prune.hpp"
#include "lakeprune/errors.hpp"
#include "lakeprune/graph_updates.hpp"
#include "lakeprune/lake.hpp"
#include "lakeprune/optimizer.hpp"
#include "lakeprune/oracle.hpp"
#include "lakeprune/pipeline.hpp"
#include "lakeprune/synthgen.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace lakeprune;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_run_log(const fs::path& anchor, const std::string& command, ordered_json params,
                   uint64_t seed, const OpCounters* counters,
                   const std::vector<std::string>& artifacts) {
  fs::path dir = fs::is_directory(anchor)
                     ? anchor
                     : (anchor.has_parent_path() ? anchor.parent_path() : fs::path("."));
  ordered_json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["params"] = std::move(params);
  j["seed"] = seed;
  j["counters"] = counters ? counters->to_json() : ordered_json(nullptr);
  j["artifacts"] = artifacts;
  const fs::path file = dir / "run.json";
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write run log: " + file.string());
  out << j.dump(2) << "\n";
}

Stage stage_from_flag(const std::string& flag) {
  if (flag == "sgb") return Stage::Schema;
  if (flag == "mmp") return Stage::MinMax;
  if (flag == "clp") return Stage::Content;
  throw InvalidArgument("unknown stage: " + flag + " (expected sgb, mmp, or clp)");
}

struct PipelineFlags {
  std::string lake;
  std::string stop_after = "clp";
  uint32_t clp_s = 4;
  uint32_t clp_t = 10;
  uint64_t seed = 0;
  int threads = 1;
  bool uniform = false;
  bool both_sides = false;

  void attach(CLI::App* sub, bool with_lake = true) {
    if (with_lake) {
      sub->add_option("--lake", lake, "lake root directory")->required();
    }
    sub->add_option("--stop-after", stop_after, "last stage to run: sgb, mmp, clp")
        ->check(CLI::IsMember({"sgb", "mmp", "clp"}));
    sub->add_option("--clp-s", clp_s, "content-check search columns per edge");
    sub->add_option("--clp-t", clp_t, "content-check sampled rows per edge");
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--threads", threads, "content-check worker threads")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--uniform", uniform, "uniform row sampling instead of filtered");
    sub->add_flag("--both-sides", both_sides, "filter the parent side of membership checks too");
  }

  PipelineParams params() const {
    PipelineParams p;
    p.stop_after = stage_from_flag(stop_after);
    p.clp.max_filter_columns = clp_s;
    p.clp.max_sample_rows = clp_t;
    p.clp.seed = seed;
    p.clp.sampling = uniform ? ClpSampling::Uniform : ClpSampling::Filtered;
    p.clp.mode = both_sides ? ClpMode::BothSides : ClpMode::ChildOnly;
    p.threads = threads;
    return p;
  }

  ordered_json to_json() const {
    ordered_json j;
    j["stop_after"] = stop_after;
    j["clp_s"] = clp_s;
    j["clp_t"] = clp_t;
    j["threads"] = threads;
    j["uniform"] = uniform;
    j["both_sides"] = both_sides;
    return j;
  }
};

void print_counters_brief(const OpCounters& c) {
  std::cout << "edges: sgb=" << c.edges_schema << " mmp=" << c.edges_minmax
            << " clp=" << c.edges_content << "\n";
  std::cout << "rows scanned: " << c.rows_scanned << "\n";
}

int run_ingest(const std::string& lake_dir, const std::string& source, const std::string& name,
               uint64_t partition_rows) {
  Lake lake(lake_dir);
  const DatasetHandle& h = lake.ingest(source, name, partition_rows);
  std::cout << "ingested " << name << ": " << h.total_rows << " rows, " << h.columns.size()
            << " columns, " << h.partitions.size() << " partitions\n";
  ordered_json params;
  params["source"] = source;
  params["name"] = name;
  params["partition_rows"] = partition_rows;
  write_run_log(lake_dir, "ingest", std::move(params), 0, nullptr, {lake_dir});
  return 0;
}

int run_synth(const std::string& lake_dir, const std::string& spec_file,
              std::optional<uint64_t> seed, const std::string& lineage_file) {
  GenSpec spec;
  if (!spec_file.empty()) spec = load_gen_spec(spec_file);
  if (seed) spec.seed = *seed;

  Lake lake(lake_dir);
  GenResult result = generate(lake, spec);
  std::cout << "generated " << result.names.size() << " tables ("
            << result.lineage.size() << " derivations)\n";
  std::vector<std::string> artifacts{lake_dir};
  if (!lineage_file.empty()) {
    save_lineage(lineage_file, result.lineage);
    artifacts.push_back(lineage_file);
  }
  ordered_json params;
  params["roots"] = spec.roots;
  params["tables"] = spec.tables;
  params["zipf_exponent"] = spec.zipf_exponent;
  params["root_rows"] = {spec.root_rows_min, spec.root_rows_max};
  params["root_columns"] = {spec.root_cols_min, spec.root_cols_max};
  params["op_mix"] = {{"filter_sample", spec.op_mix.filter_sample},
                      {"add_rows", spec.op_mix.add_rows},
                      {"add_columns", spec.op_mix.add_columns},
                      {"add_noise", spec.op_mix.add_noise},
                      {"compose", spec.op_mix.compose}};
  write_run_log(lake_dir, "synth", std::move(params), spec.seed, nullptr, artifacts);
  return 0;
}

int run_pipeline_cmd(const PipelineFlags& flags, const std::string& out,
                     const std::string& clusters_out, const std::string& sgb_out,
                     const std::string& mmp_out) {
  Lake lake(flags.lake);
  PipelineResult result = run_pipeline(lake, flags.params());

  save_graph(out, result.final_graph());
  std::vector<std::string> artifacts{out};
  if (!clusters_out.empty()) {
    save_clusters(clusters_out, result.clusters);
    artifacts.push_back(clusters_out);
  }
  if (!sgb_out.empty()) {
    save_graph(sgb_out, result.schema_graph);
    artifacts.push_back(sgb_out);
  }
  if (!mmp_out.empty() && result.minmax_graph) {
    save_graph(mmp_out, *result.minmax_graph);
    artifacts.push_back(mmp_out);
  }
  print_counters_brief(result.counters);
  write_run_log(out, "pipeline", flags.to_json(), flags.seed, &result.counters, artifacts);
  return 0;
}

int run_truth(const std::string& lake_dir, const std::string& out, const std::string& schema_out) {
  Lake lake(lake_dir);
  OpCounters counters;
  ContainmentGraph schema_truth = ground_truth_schema(lake, counters);
  std::vector<ContainmentReport> reports = ground_truth_content(lake, schema_truth, counters);
  save_truth_jsonl(out, reports);

  uint64_t full = 0;
  for (const auto& r : reports) full += r.cm == 1.0;
  std::cout << "schema-contained pairs: " << reports.size() << " (fully contained: " << full
            << ")\n";
  std::cout << "nominal row ops: " << counters.nominal_row_ops << "\n";

  std::vector<std::string> artifacts{out};
  if (!schema_out.empty()) {
    save_graph(schema_out, schema_truth);
    artifacts.push_back(schema_out);
  }
  ordered_json params;
  params["lake"] = lake_dir;
  write_run_log(out, "truth", std::move(params), 0, &counters, artifacts);
  return 0;
}

int run_evaluate(const std::string& truth_file, const std::vector<std::string>& graph_files,
                 const std::string& out) {
  std::vector<ContainmentReport> truth = load_truth_jsonl(truth_file);
  ordered_json rows = ordered_json::array();
  for (const auto& file : graph_files) {
    ContainmentGraph g = load_graph(file);
    EvalSummary s = evaluate(g, truth);
    std::cout << stage_name(g.stage_label) << " " << file << ": correct=" << s.correct
              << " incorrect=" << s.incorrect_lt1 << " not_detected=" << s.not_detected << "\n";
    ordered_json row;
    row["graph"] = file;
    row["stage"] = std::string(stage_name(g.stage_label));
    row["correct"] = s.correct;
    row["incorrect_lt1"] = s.incorrect_lt1;
    row["not_detected"] = s.not_detected;
    rows.push_back(std::move(row));
  }
  std::vector<std::string> artifacts = graph_files;
  if (!out.empty()) {
    std::ofstream o(out, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write summary: " + out);
    ordered_json j;
    j["truth"] = truth_file;
    j["graphs"] = std::move(rows);
    o << j.dump(2) << "\n";
    artifacts.push_back(out);
  }
  ordered_json params;
  params["truth"] = truth_file;
  write_run_log(out.empty() ? truth_file : out, "evaluate", std::move(params), 0, nullptr,
                artifacts);
  return 0;
}

int run_clp_grid(const PipelineFlags& flags, const std::string& truth_file,
                 const std::vector<uint32_t>& s_values, const std::vector<uint32_t>& t_values,
                 const std::string& out) {
  Lake lake(flags.lake);
  std::vector<ContainmentReport> truth = load_truth_jsonl(truth_file);

  PipelineParams base = flags.params();
  base.stop_after = Stage::MinMax;
  PipelineResult prefix = run_pipeline(lake, base);
  const ContainmentGraph& mmp_graph = *prefix.minmax_graph;
  const EvalSummary mmp_eval = evaluate(mmp_graph, truth);

  std::cout << "s\tt\tcorrect\tincorrect\tnot_detected\trows_scanned\n";
  ordered_json cells = ordered_json::array();
  for (uint32_t s : s_values) {
    for (uint32_t t : t_values) {
      PipelineParams p = flags.params();
      p.clp.max_filter_columns = s;
      p.clp.max_sample_rows = t;
      OpCounters counters;
      const uint64_t before = lake.rows_scanned();
      ContainmentGraph clp = content_prune(mmp_graph, lake, p.clp, counters, p.threads);
      const uint64_t scanned = lake.rows_scanned() - before;
      EvalSummary e = evaluate(clp, truth);
      std::cout << s << "\t" << t << "\t" << e.correct << "\t" << e.incorrect_lt1 << "\t"
                << e.not_detected << "\t" << scanned << "\n";
      ordered_json cell;
      cell["s"] = s;
      cell["t"] = t;
      cell["correct"] = e.correct;
      cell["incorrect_lt1"] = e.incorrect_lt1;
      cell["not_detected"] = e.not_detected;
      cell["rows_scanned"] = scanned;
      cell["incorrect_at_mmp"] = mmp_eval.incorrect_lt1;
      cells.push_back(std::move(cell));
    }
  }
  std::vector<std::string> artifacts;
  if (!out.empty()) {
    std::ofstream o(out, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write grid: " + out);
    ordered_json j;
    j["cells"] = std::move(cells);
    o << j.dump(2) << "\n";
    artifacts.push_back(out);
  }
  ordered_json params = flags.to_json();
  params["truth"] = truth_file;
  write_run_log(out.empty() ? truth_file : out, "clp-grid", std::move(params), flags.seed,
                &prefix.counters, artifacts);
  return 0;
}

int run_optimize(const std::string& graph_file, const std::string& econ_file,
                 const std::string& cost_file, const std::string& transforms_file,
                 const std::string& out, bool force_exhaustive) {
  ContainmentGraph graph = load_graph(graph_file);
  EconMap econ = load_economics(econ_file);
  CostModel cost = cost_file.empty() ? CostModel{} : load_cost_model(cost_file);
  std::vector<TransformLabel> labels = load_transforms(transforms_file);

  AnnotateResult annotated = annotate_edges(graph, labels, econ, cost);
  std::vector<std::string> nodes(graph.nodes.begin(), graph.nodes.end());
  SolveStats stats;
  RetentionPlan plan =
      optimize_retention(nodes, econ, annotated.edges, cost, force_exhaustive, &stats);
  save_plan(plan, out);

  std::cout << "objective: " << plan.objective << "\n";
  std::cout << "retained " << plan.retained.size() << ", deleted " << plan.deleted.size()
            << " (edges used " << annotated.edges.size() << ", dropped "
            << annotated.dropped_unlabeled << " unlabeled, " << annotated.dropped_latency
            << " over latency)\n";

  ordered_json params;
  params["graph"] = graph_file;
  params["econ"] = econ_file;
  params["cost"] = cost_file;
  params["transforms"] = transforms_file;
  params["force_exhaustive"] = force_exhaustive;
  params["line_components"] = stats.line_components;
  params["bnb_nodes_explored"] = stats.bnb_nodes_explored;
  params["dyn_ops"] = stats.dyn_ops;
  write_run_log(out, "optimize", std::move(params), 0, nullptr, {out});
  return 0;
}

int run_savings(const std::string& plan_file, const std::string& econ_file,
                const std::string& cost_file, double horizon,
                std::optional<double> accesses_per_week, const std::string& out) {
  RetentionPlan plan = load_plan(plan_file);
  EconMap econ = load_economics(econ_file);
  CostModel cost = cost_file.empty() ? CostModel{} : load_cost_model(cost_file);
  SavingsReport report = savings_report(plan, econ, cost, horizon, accesses_per_week);

  std::cout << "deleted datasets: " << report.deleted_count << "\n";
  std::cout << "storage saved: " << report.storage_saved << "\n";
  std::cout << "maintenance saved: " << report.maintenance_saved << "\n";
  std::cout << "reconstruction cost: " << report.reconstruction_cost << "\n";
  std::cout << "net savings: " << report.net_savings << "\n";
  std::cout << "row scans avoided: " << report.row_scan_savings << "\n";

  std::vector<std::string> artifacts;
  if (!out.empty()) {
    save_savings(report, out);
    artifacts.push_back(out);
  }
  ordered_json params;
  params["plan"] = plan_file;
  params["econ"] = econ_file;
  params["cost"] = cost_file;
  params["horizon_periods"] = horizon;
  if (accesses_per_week) params["accesses_per_week"] = *accesses_per_week;
  write_run_log(out.empty() ? plan_file : out, "savings", std::move(params), 0, nullptr,
                artifacts);
  return 0;
}

int run_update(const std::string& verb, const PipelineFlags& flags, const std::string& graph_file,
               const std::string& clusters_file, const std::string& name,
               const std::string& kind_name) {
  Lake lake(flags.lake);
  PipelineState state;
  state.graph = load_graph(graph_file);
  state.clusters = load_clusters(clusters_file, lake);

  UpdateReport report;
  if (verb == "add") {
    report = add_dataset(state, lake, name, flags.params());
  } else if (verb == "mutate") {
    report = mutate_dataset(state, lake, name, mutation_kind_from_name(kind_name), flags.params());
  } else {
    report = remove_dataset(state, name);
  }
  save_graph(graph_file, state.graph);
  save_clusters(clusters_file, state.clusters);
  std::cout << "pairs examined: " << report.pairs_examined << "\n";
  std::cout << "edges now: " << state.graph.edge_count() << "\n";

  ordered_json params = flags.to_json();
  params["name"] = name;
  if (verb == "mutate") params["kind"] = kind_name;
  write_run_log(graph_file, "update-" + verb, std::move(params), flags.seed, &report.counters,
                {graph_file, clusters_file});
  return 0;
}

int run_bench_opt(const std::vector<int>& n_values, const std::vector<double>& probs,
                  uint64_t seed, int trials, const std::string& out) {
  std::ofstream o;
  if (!out.empty()) {
    o.open(out, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write bench output: " + out);
  }
  std::cout << "n\tp\tseed\tedges\tobjective\tbnb_nodes\tdyn_ops\tlines\twall_ms\n";
  for (int n : n_values) {
    for (double p : probs) {
      for (int trial = 0; trial < trials; ++trial) {
        const uint64_t trial_seed = seed + static_cast<uint64_t>(trial);
        BenchRecord record = random_graph_harness(n, p, trial_seed);
        std::cout << n << "\t" << p << "\t" << trial_seed << "\t" << record.edges << "\t"
                  << record.objective << "\t" << record.bnb_nodes_explored << "\t"
                  << record.dyn_ops << "\t" << record.line_components << "\t" << record.wall_ms
                  << "\n";
        if (o) {
          ordered_json j;
          j["n"] = record.nodes;
          j["edge_prob"] = p;
          j["seed"] = trial_seed;
          j["edges"] = record.edges;
          j["objective"] = record.objective;
          j["bnb_nodes_explored"] = record.bnb_nodes_explored;
          j["dyn_ops"] = record.dyn_ops;
          j["line_components"] = record.line_components;
          o << j.dump() << "\n";
        }
      }
    }
  }
  ordered_json params;
  params["trials"] = trials;
  write_run_log(out.empty() ? fs::path(".") : fs::path(out), "bench-opt", std::move(params), seed,
                nullptr, out.empty() ? std::vector<std::string>{} : std::vector<std::string>{out});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"containment pruning and retention planning for tabular data lakes"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "load a delimited text file or directory");
  std::string ingest_lake, ingest_source, ingest_name;
  uint64_t ingest_partition_rows = Lake::kDefaultPartitionRows;
  ingest->add_option("--lake", ingest_lake, "lake root directory")->required();
  ingest->add_option("--source", ingest_source, "file or directory to load")->required();
  ingest->add_option("--name", ingest_name, "dataset name")->required();
  ingest->add_option("--partition-rows", ingest_partition_rows, "rows per partition")
      ->check(CLI::PositiveNumber);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic lake with known lineage");
  std::string synth_lake, synth_spec, synth_lineage;
  uint64_t synth_seed = 0;
  synth->add_option("--lake", synth_lake, "lake root directory (must be empty)")->required();
  synth->add_option("--spec", synth_spec, "generator spec json");
  auto* synth_seed_opt = synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--lineage", synth_lineage, "write the derivation answer key here");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "build the containment graph stage by stage");
  PipelineFlags pipeline_flags;
  pipeline_flags.attach(pipeline);
  std::string pipeline_out, pipeline_clusters, pipeline_sgb, pipeline_mmp;
  pipeline->add_option("--out", pipeline_out, "final graph json")->required();
  pipeline->add_option("--clusters", pipeline_clusters, "cluster sidecar json");
  pipeline->add_option("--sgb-out", pipeline_sgb, "schema-stage graph json");
  pipeline->add_option("--mmp-out", pipeline_mmp, "statistics-stage graph json");

  // truth
  auto* truth = app.add_subcommand("truth", "exact containment for every candidate pair");
  std::string truth_lake, truth_out, truth_schema_out;
  truth->add_option("--lake", truth_lake, "lake root directory")->required();
  truth->add_option("--out", truth_out, "containment reports jsonl")->required();
  truth->add_option("--schema-out", truth_schema_out, "schema-level truth graph json");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "score stage graphs against exact truth");
  std::string eval_truth, eval_out;
  std::vector<std::string> eval_graphs;
  evaluate_cmd->add_option("--truth", eval_truth, "containment reports jsonl")->required();
  evaluate_cmd->add_option("--graph", eval_graphs, "graph json (repeatable)")->required();
  evaluate_cmd->add_option("--out", eval_out, "summary json");

  // clp-grid
  auto* grid = app.add_subcommand("clp-grid", "sweep content-check effort against exact truth");
  PipelineFlags grid_flags;
  grid_flags.attach(grid);
  std::string grid_truth, grid_out;
  std::vector<uint32_t> grid_s{1, 4, 8};
  std::vector<uint32_t> grid_t{5, 10, 30};
  grid->add_option("--truth", grid_truth, "containment reports jsonl")->required();
  grid->add_option("--s", grid_s, "search column counts")->delimiter(',');
  grid->add_option("--t", grid_t, "sample row counts")->delimiter(',');
  grid->add_option("--out", grid_out, "grid json");

  // optimize
  auto* optimize = app.add_subcommand("optimize", "choose a minimum-cost retain/delete plan");
  std::string opt_graph, opt_econ, opt_cost, opt_transforms, opt_out;
  bool opt_force = false;
  optimize->add_option("--graph", opt_graph, "containment graph json")->required();
  optimize->add_option("--econ", opt_econ, "per-dataset economics json")->required();
  optimize->add_option("--cost", opt_cost, "cost model (key = value lines)");
  optimize->add_option("--transforms", opt_transforms, "edge transform labels json")->required();
  optimize->add_option("--out", opt_out, "plan json")->required();
  optimize->add_flag("--force-exhaustive", opt_force,
                     "skip the linear path solver, use branch and bound everywhere");

  // savings
  auto* savings = app.add_subcommand("savings", "project a plan's savings over a horizon");
  std::string sav_plan, sav_econ, sav_cost, sav_out;
  double sav_horizon = 0.0;
  double sav_apw = 0.0;
  savings->add_option("--plan", sav_plan, "plan json")->required();
  savings->add_option("--econ", sav_econ, "per-dataset economics json")->required();
  savings->add_option("--cost", sav_cost, "cost model (key = value lines)");
  savings->add_option("--horizon", sav_horizon, "periods to project")->required();
  auto* sav_apw_opt =
      savings->add_option("--accesses-per-week", sav_apw, "override per-dataset access rates");
  savings->add_option("--out", sav_out, "savings json");

  // update
  auto* update = app.add_subcommand("update", "maintain a graph incrementally");
  update->require_subcommand(1);
  struct UpdateArgs {
    PipelineFlags flags;
    std::string graph, clusters, name, kind;
  };
  UpdateArgs upd;
  auto attach_update = [&upd](CLI::App* sub) {
    upd.flags.attach(sub);
    sub->add_option("--graph", upd.graph, "graph json, rewritten in place")->required();
    sub->add_option("--clusters", upd.clusters, "cluster sidecar json, rewritten in place")
        ->required();
    sub->add_option("--name", upd.name, "dataset name")->required();
  };
  auto* upd_add = update->add_subcommand("add", "track a newly ingested dataset");
  attach_update(upd_add);
  auto* upd_mutate = update->add_subcommand("mutate", "re-check after a dataset changed");
  attach_update(upd_mutate);
  upd_mutate
      ->add_option("--kind", upd.kind,
                   "rows_added, columns_added, rows_removed, or columns_removed")
      ->required()
      ->check(CLI::IsMember({"rows_added", "columns_added", "rows_removed", "columns_removed"}));
  auto* upd_remove = update->add_subcommand("remove", "stop tracking a dataset");
  // remove needs no sampling knobs, but shares the state files
  attach_update(upd_remove);

  // bench-opt
  auto* bench = app.add_subcommand("bench-opt", "time the planner on random graphs");
  std::vector<int> bench_n{8, 10, 12};
  std::vector<double> bench_p{0.1, 0.3};
  uint64_t bench_seed = 1;
  int bench_trials = 3;
  std::string bench_out;
  bench->add_option("--n", bench_n, "node counts")->delimiter(',');
  bench->add_option("--edge-prob", bench_p, "edge probabilities")->delimiter(',');
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--trials", bench_trials, "seeds per combination")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "records jsonl");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Normalize CLI11's per-error codes to the documented contract: help is
    // success, every rejected command line is 1.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) {
      return run_ingest(ingest_lake, ingest_source, ingest_name, ingest_partition_rows);
    }
    if (synth->parsed()) {
      std::optional<uint64_t> seed;
      if (*synth_seed_opt) seed = synth_seed;
      return run_synth(synth_lake, synth_spec, seed, synth_lineage);
    }
    if (pipeline->parsed()) {
      return run_pipeline_cmd(pipeline_flags, pipeline_out, pipeline_clusters, pipeline_sgb,
                              pipeline_mmp);
    }
    if (truth->parsed()) return run_truth(truth_lake, truth_out, truth_schema_out);
    if (evaluate_cmd->parsed()) return run_evaluate(eval_truth, eval_graphs, eval_out);
    if (grid->parsed()) return run_clp_grid(grid_flags, grid_truth, grid_s, grid_t, grid_out);
    if (optimize->parsed()) {
      return run_optimize(opt_graph, opt_econ, opt_cost, opt_transforms, opt_out, opt_force);
    }
    if (savings->parsed()) {
      std::optional<double> apw;
      if (*sav_apw_opt) apw = sav_apw;
      return run_savings(sav_plan, sav_econ, sav_cost, sav_horizon, apw, sav_out);
    }
    if (update->parsed()) {
      const std::string verb = upd_add->parsed() ? "add" : upd_mutate->parsed() ? "mutate" : "remove";
      return run_update(verb, upd.flags, upd.graph, upd.clusters, upd.name, upd.kind);
    }
    if (bench->parsed()) {
      return run_bench_opt(bench_n, bench_p, bench_seed, bench_trials, bench_out);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
