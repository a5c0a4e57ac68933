#include "bagel/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>

#include "CLI11.hpp"
#include "json.hpp"

#include "bagel/cli/bench.hpp"
#include "bagel/cli/io.hpp"
#include "bagel/engine/search.hpp"
#include "bagel/errors.hpp"
#include "bagel/prior_nmf/problem.hpp"
#include "bagel/smart_design/experiment.hpp"
#include "bagel/smart_design/scripted.hpp"

namespace bagel::cli {
namespace {

using nlohmann::json;

std::string yes_no(bool b) { return b ? "true" : "false"; }

double millis(engine::Duration d) { return std::chrono::duration<double, std::milli>(d).count(); }

json trace_json(const engine::TraceRecord& r, std::optional<std::size_t> fold) {
  json rec;
  if (fold) rec["fold"] = *fold;
  rec["id"] = r.id;
  rec["depth"] = r.depth;
  rec["trail"] = r.trail;
  rec["loss"] = r.loss ? json(*r.loss) : json(nullptr);
  rec["status"] = engine::to_string(r.status);
  return rec;
}

json stats_json(const engine::SearchStats& s) {
  return {{"nodes_opened", s.nodes_opened}, {"nodes_pruned", s.nodes_pruned},
          {"nodes_failed", s.nodes_failed}, {"leaves", s.leaves},
          {"completed", s.completed},       {"warnings", s.warnings}};
}

engine::SearchOptions search_options(const SolveConfig& c, engine::Pruning pruning) {
  if (!(c.timeout_s > 0.0)) throw ValidationError("--timeout-s must be positive");
  if (c.node_cap && *c.node_cap == 0) throw ValidationError("--node-cap must be at least 1");
  engine::SearchOptions o;
  o.stop.wall_clock_budget =
      std::chrono::duration_cast<engine::Duration>(std::chrono::duration<double>(c.timeout_s));
  o.stop.node_budget = c.node_cap;
  o.strategy = c.strategy;
  o.pruning = pruning;
  return o;
}

json config_json(const SolveConfig& c, engine::Pruning pruning) {
  json j = {{"timeout_s", c.timeout_s},
            {"strategy", engine::to_string(c.strategy)},
            {"pruning", engine::to_string(pruning)},
            {"folds", c.folds},
            {"iters", c.iters},
            {"restarts", c.restarts}};
  j["node_cap"] = c.node_cap ? json(*c.node_cap) : json(nullptr);
  return j;
}

SolveReport solve_smart(const smart_design::SmartDesignInstance& inst, const std::string& id,
                        const SolveConfig& c, json& meta) {
  const auto pruning = c.pruning.value_or(engine::Pruning::Exact);
  smart_design::ExperimentSettings settings;
  settings.folds = c.folds;
  settings.search = search_options(c, pruning);
  SolveReport report;
  std::size_t searches = 0;
  if (c.trace) {
    settings.search.on_node = [&](const engine::TraceRecord& r) {
      if (r.id == 0) ++searches;  // every fold's search closes its root first
      report.trace += trace_json(r, searches - 1).dump() + "\n";
    };
  }
  const auto rows = smart_design::run_experiment(inst, settings);
  report.header = {"instance_id", "method", "fold", "train_loss", "test_loss",
                   "tightness",   "nodes",  kWallColumn, "completed"};
  json folds = json::array();
  for (const auto& r : rows) {
    report.rows.push_back({id, smart_design::to_string(r.method), std::to_string(r.fold),
                           format_double(r.train_loss), format_double(r.test_loss),
                           format_double(r.tightness), std::to_string(r.nodes), format_double(r.wall_ms),
                           yes_no(r.completed)});
    if (r.method == smart_design::Method::Bagel) {
      folds.push_back({{"fold", r.fold}, {"nodes_opened", r.nodes}, {"completed", r.completed}});
    }
  }
  meta["config"] = config_json(c, pruning);
  meta["searches"] = folds;
  return report;
}

SolveReport solve_nmf(const prior_nmf::NmfInstance& inst, const std::string& id, const SolveConfig& c,
                      json& meta) {
  const auto pruning = c.pruning.value_or(engine::Pruning::Heuristic);
  const prior_nmf::TrainSettings train{c.iters, c.restarts};
  auto options = search_options(c, pruning);
  SolveReport report;
  if (c.trace) {
    options.on_node = [&](const engine::TraceRecord& r) {
      report.trace += trace_json(r, std::nullopt).dump() + "\n";
    };
  }
  const auto result = prior_nmf::solve_prior_nmf(inst, train, options);

  std::string planted_loss, recovery;
  if (inst.planted && inst.planted->topics.size() == inst.k) {
    planted_loss = format_double(prior_nmf::train_planted_leaf(inst, train).trained.loss);
  }
  if (inst.planted && result.best) {
    recovery = format_double(prior_nmf::nmf_topic_recovery(result.best->topics, inst.planted->topics));
  }
  report.header = {"instance_id", "best_loss", "planted_loss", "recovery", "nodes", kWallColumn, "completed"};
  report.rows.push_back({id, result.best ? format_double(result.best->loss) : std::string(), planted_loss,
                         recovery, std::to_string(result.stats.nodes_opened),
                         format_double(millis(result.stats.wall_time)), yes_no(result.stats.completed)});
  meta["config"] = config_json(c, pruning);
  meta["searches"] = json::array({stats_json(result.stats)});
  if (result.best) meta["best_topics"] = result.best->topics;
  return report;
}

SolveReport solve_scripted(const ScriptedSpec& spec, const std::string& id, const SolveConfig& c,
                           json& meta) {
  const auto pruning = c.pruning.value_or(engine::Pruning::Exact);
  smart_design::ScriptedDesignProblem problem(constraints::BudgetConstraint(spec.weights, spec.bound),
                                              spec.losses);
  auto options = search_options(c, pruning);
  SolveReport report;
  if (c.trace) {
    options.on_node = [&](const engine::TraceRecord& r) {
      report.trace += trace_json(r, std::nullopt).dump() + "\n";
    };
  }
  const auto result = engine::bagel_search(problem, options);
  std::string u;
  if (result.best) {
    for (int v : result.best->solution) u += std::to_string(v);
  }
  report.header = {"instance_id", "best_loss", "best_u", "nodes", kWallColumn, "completed"};
  report.rows.push_back({id, result.best ? format_double(result.best->loss) : std::string(), u,
                         std::to_string(result.stats.nodes_opened),
                         format_double(millis(result.stats.wall_time)), yes_no(result.stats.completed)});
  meta["config"] = config_json(c, pruning);
  meta["searches"] = json::array({stats_json(result.stats)});
  return report;
}

// Generator flags shared by `generate` and `solve`.
struct GeneratorFlags {
  std::vector<CLI::Option*> options;
  bool any_set() const {
    for (auto* o : options)
      if (o->count() > 0) return true;
    return false;
  }
};

GeneratorFlags add_generator_flags(CLI::App& sub, GenerateConfig& g) {
  GeneratorFlags f;
  auto& s = g.smart;
  auto& n = g.nmf;
  f.options.push_back(sub.add_option("--features", s.features, "smart-design: feature count n"));
  f.options.push_back(sub.add_option("--samples", s.samples, "smart-design: sample count m"));
  f.options.push_back(sub.add_option("--cost", s.cost_percent, "smart-design: budget as a fraction of total weight"));
  f.options.push_back(sub.add_option("--components", s.components, "smart-design: component count (0 = min(n, 8))"));
  f.options.push_back(sub.add_option("--words", n.words, "prior-nmf: vocabulary size"));
  f.options.push_back(sub.add_option("--true-topics", n.true_topics, "prior-nmf: planted topic count"));
  f.options.push_back(sub.add_option("--false-topics", n.false_topics, "prior-nmf: decoy topic count"));
  f.options.push_back(sub.add_option("--docs", n.docs, "prior-nmf: document count"));
  f.options.push_back(sub.add_option("--sparsity", n.sparsity, "prior-nmf: sparsity of W* and H*"));
  f.options.push_back(sub.add_option("--novelty", n.novelty, "prior-nmf: true topics left out of the database"));
  f.options.push_back(sub.add_option("--noise", s.noise_factor, "relative noise level"));
  return f;
}

void add_solver_flags(CLI::App& sub, SolveConfig& c, std::string& strategy, std::string& pruning) {
  sub.add_option("--timeout-s", c.timeout_s, "wall-clock budget per search in seconds")->capture_default_str();
  sub.add_option("--node-cap", c.node_cap, "node budget per search");
  sub.add_option("--strategy", strategy, "dfs or best-first")->capture_default_str();
  sub.add_option("--pruning", pruning, "exact, heuristic or off (default depends on the problem)");
  sub.add_option("--folds", c.folds, "smart-design: cross-validation folds")->capture_default_str();
  sub.add_option("--iters", c.iters, "prior-nmf: multiplicative updates per node")->capture_default_str();
  sub.add_option("--restarts", c.restarts, "prior-nmf: training restarts per node")->capture_default_str();
}

void finish_solver_flags(SolveConfig& c, const std::string& strategy, const std::string& pruning) {
  c.strategy = engine::parse_strategy(strategy);
  if (!pruning.empty()) c.pruning = engine::parse_pruning(pruning);
}

void check_problem(const std::string& problem) {
  if (problem != "smart-design" && problem != "prior-nmf" && problem != "scripted") {
    throw ValidationError("unknown problem '" + problem + "' (expected smart-design, prior-nmf or scripted)");
  }
}

void append_meta(const std::filesystem::path& path, const std::string& doc) {
  json runs = json::array();
  if (std::filesystem::exists(path)) {
    try {
      runs = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
      throw IoError(path.string() + " is not a metadata document: " + e.what());
    }
    if (!runs.is_array()) throw IoError(path.string() + " is not a metadata document");
  }
  runs.push_back(json::parse(doc));
  write_file_atomic(path, runs.dump(2) + "\n");
}

}  // namespace

std::uint64_t effective_seed(std::uint64_t fallback) {
  const char* env = std::getenv("BAGEL_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  const std::string text(env);
  if (text.find_first_not_of("0123456789") != std::string::npos || text.size() > 20) {
    throw ValidationError("BAGEL_SEED must be a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw ValidationError("BAGEL_SEED out of range: '" + text + "'");
  }
}

Instance generate_instance(const GenerateConfig& config) {
  if (config.problem == "smart-design") {
    return smart_design::sd_generate_instance(config.smart).instance;
  }
  if (config.problem == "prior-nmf") {
    return prior_nmf::nmf_generate_instance(config.nmf);
  }
  throw ValidationError("cannot generate instances for problem '" + config.problem + "'");
}

SolveReport solve_instance(const Instance& inst, const SolveConfig& config) {
  const std::string id = instance_id(inst);
  json meta = {{"command", "solve"}, {"problem", problem_name(inst)}, {"instance_id", id}};
  SolveReport report;
  if (const auto* sd = std::get_if<smart_design::SmartDesignInstance>(&inst)) {
    report = solve_smart(*sd, id, config, meta);
  } else if (const auto* nmf = std::get_if<prior_nmf::NmfInstance>(&inst)) {
    report = solve_nmf(*nmf, id, config, meta);
  } else {
    report = solve_scripted(std::get<ScriptedSpec>(inst), id, config, meta);
  }
  meta["rows"] = report.rows.size();
  report.meta = meta.dump();
  return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branch, generate and learn: constrained learning by tree search", "bagel"};
  app.require_subcommand(1);

  GenerateConfig gen;
  std::uint64_t seed = 0;
  std::string out_path;

  auto* generate = app.add_subcommand("generate", "write a synthetic instance file");
  generate->add_option("--problem", gen.problem, "smart-design or prior-nmf")->capture_default_str();
  generate->add_option("--seed", seed, "generator seed (BAGEL_SEED overrides)");
  generate->add_option("--out", out_path, "instance file (stdout when omitted)");
  add_generator_flags(*generate, gen);

  SolveConfig solve_cfg;
  std::string problem, instance_path, trace_path, strategy = "dfs", pruning;
  auto* solve = app.add_subcommand("solve", "run BaGeL (and baselines) on one instance");
  solve->add_option("--problem", problem, "smart-design, prior-nmf or scripted");
  solve->add_option("--instance", instance_path, "instance file; otherwise one is generated");
  solve->add_option("--seed", seed, "generator seed when no instance file is given (BAGEL_SEED overrides)");
  solve->add_option("--out", out_path, "results CSV, appended to (stdout when omitted)");
  solve->add_option("--trace", trace_path, "newline-delimited JSON node trace");
  auto solve_gen_flags = add_generator_flags(*solve, gen);
  add_solver_flags(*solve, solve_cfg, strategy, pruning);

  BenchConfig bench_cfg;
  std::string bench_strategy = "dfs", bench_pruning;
  auto* bench = app.add_subcommand("bench", "sweep a parameter grid; resumable");
  bench->add_option("--problem", bench_cfg.problem, "smart-design or prior-nmf")->capture_default_str();
  bench->add_option("--seed", bench_cfg.base_seed, "first seed (BAGEL_SEED overrides)");
  bench->add_option("--seeds", bench_cfg.seeds, "seeds per grid cell")->capture_default_str();
  bench->add_option("--out", bench_cfg.out_dir, "output directory")->required();
  bench->add_option("--jobs", bench_cfg.jobs, "worker threads")->capture_default_str();
  bench->add_option("--features", bench_cfg.features)->delimiter(',');
  bench->add_option("--samples", bench_cfg.samples)->delimiter(',');
  bench->add_option("--cost", bench_cfg.cost)->delimiter(',');
  bench->add_option("--words", bench_cfg.words)->delimiter(',');
  bench->add_option("--true-topics", bench_cfg.true_topics)->delimiter(',');
  bench->add_option("--false-topics", bench_cfg.false_topics)->delimiter(',');
  bench->add_option("--docs", bench_cfg.docs)->delimiter(',');
  bench->add_option("--sparsity", bench_cfg.sparsity)->delimiter(',');
  add_solver_flags(*bench, bench_cfg.solve, bench_strategy, bench_pruning);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitValidation;
    }

    if (generate->parsed()) {
      if (gen.problem != "smart-design" && gen.problem != "prior-nmf") {
        throw ValidationError("generate: unknown problem '" + gen.problem + "'");
      }
      gen.smart.seed = gen.nmf.seed = effective_seed(seed);
      gen.nmf.noise_factor = generate->count("--noise") ? gen.smart.noise_factor : gen.nmf.noise_factor;
      for (const auto& w : gen.problem == "smart-design" ? smart_design::grid_warnings(gen.smart)
                                                         : prior_nmf::grid_warnings(gen.nmf)) {
        err << "warning: " << w << "\n";
      }
      const std::string text = serialize_instance(generate_instance(gen));
      const std::string digest = sha256_hex(text);
      if (out_path.empty()) {
        out << text;
        err << digest << "  -\n";
      } else {
        write_file_atomic(out_path, text);
        out << digest << "  " << out_path << "\n";
      }
      return kExitOk;
    }

    if (solve->parsed()) {
      finish_solver_flags(solve_cfg, strategy, pruning);
      solve_cfg.trace = !trace_path.empty();
      Instance inst;
      if (!instance_path.empty()) {
        if (solve_gen_flags.any_set()) {
          throw ValidationError("give either --instance or generator flags, not both");
        }
        inst = parse_instance(read_file(instance_path));
        if (!problem.empty()) {
          check_problem(problem);
          if (problem != problem_name(inst)) {
            throw ValidationError("--problem " + problem + " does not match the instance (" +
                                  problem_name(inst) + ")");
          }
        }
      } else {
        gen.problem = problem.empty() ? "smart-design" : problem;
        check_problem(gen.problem);
        gen.smart.seed = gen.nmf.seed = effective_seed(seed);
        gen.nmf.noise_factor = solve->count("--noise") ? gen.smart.noise_factor : gen.nmf.noise_factor;
        inst = generate_instance(gen);
      }
      const auto report = solve_instance(inst, solve_cfg);
      if (out_path.empty()) {
        out << csv_line(report.header);
        for (const auto& r : report.rows) out << csv_line(r);
      } else {
        append_csv(out_path, report.header, report.rows);
        append_meta(std::filesystem::path(out_path + ".meta.json"), report.meta);
        out << "wrote " << report.rows.size() << " rows to " << out_path << "\n";
      }
      if (!trace_path.empty()) write_file_atomic(trace_path, report.trace);
      return kExitOk;
    }

    if (bench->parsed()) {
      finish_solver_flags(bench_cfg.solve, bench_strategy, bench_pruning);
      bench_cfg.base_seed = effective_seed(bench_cfg.base_seed);
      const auto summary = run_bench(bench_cfg, err);
      out << "cells: " << summary.cells << " computed: " << summary.computed
          << " reused: " << summary.reused << " failed: " << summary.failed << "\n";
      return summary.failed == 0 ? kExitOk : kExitValidation;
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace bagel::cli
