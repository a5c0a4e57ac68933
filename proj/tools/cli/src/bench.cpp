#include "bagel/cli/bench.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "bagel/cli/io.hpp"
#include "bagel/errors.hpp"

namespace bagel::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Task {
  GenerateConfig gen;
  std::vector<std::string> prefix;  // grid columns + seed
  std::string key;
};

struct Outcome {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool reused = false;
  std::string error;
};

template <class T>
std::vector<T> or_default(const std::vector<T>& axis, T fallback) {
  return axis.empty() ? std::vector<T>{fallback} : axis;
}

json solver_json(const SolveConfig& c) {
  json j = {{"timeout_s", c.timeout_s}, {"strategy", engine::to_string(c.strategy)},
            {"folds", c.folds},         {"iters", c.iters},
            {"restarts", c.restarts}};
  j["node_cap"] = c.node_cap ? json(*c.node_cap) : json(nullptr);
  j["pruning"] = c.pruning ? json(engine::to_string(*c.pruning)) : json(nullptr);
  return j;
}

std::vector<std::string> prefix_columns(const std::string& problem) {
  if (problem == "smart-design") return {"features", "samples", "cost_percent", "seed"};
  return {"words", "true_topics", "false_topics", "docs", "sparsity", "seed"};
}

std::vector<Task> expand(const BenchConfig& c) {
  std::vector<Task> tasks;
  const json solver = solver_json(c.solve);
  auto add = [&](GenerateConfig gen, std::vector<std::string> grid, json cell) {
    for (std::size_t s = 0; s < c.seeds; ++s) {
      const std::uint64_t seed = c.base_seed + s;
      gen.smart.seed = gen.nmf.seed = seed;
      auto prefix = grid;
      prefix.push_back(std::to_string(seed));
      const json keydoc = {{"problem", c.problem}, {"cell", cell}, {"seed", seed}, {"solver", solver}};
      tasks.push_back({gen, std::move(prefix), sha256_hex(keydoc.dump()).substr(0, 16)});
    }
  };
  if (c.problem == "smart-design") {
    const smart_design::SmartDesignParams d;
    for (auto f : or_default(c.features, d.features))
      for (auto m : or_default(c.samples, d.samples))
        for (auto cost : or_default(c.cost, d.cost_percent)) {
          GenerateConfig gen;
          gen.problem = c.problem;
          gen.smart.features = f;
          gen.smart.samples = m;
          gen.smart.cost_percent = cost;
          add(gen, {std::to_string(f), std::to_string(m), format_double(cost)},
              {{"features", f}, {"samples", m}, {"cost_percent", cost}});
        }
  } else if (c.problem == "prior-nmf") {
    const prior_nmf::NmfParams d;
    for (auto w : or_default(c.words, d.words))
      for (auto tt : or_default(c.true_topics, d.true_topics))
        for (auto ft : or_default(c.false_topics, d.false_topics))
          for (auto m : or_default(c.docs, d.docs))
            for (auto sp : or_default(c.sparsity, d.sparsity)) {
              GenerateConfig gen;
              gen.problem = c.problem;
              gen.nmf.words = w;
              gen.nmf.true_topics = tt;
              gen.nmf.false_topics = ft;
              gen.nmf.docs = m;
              gen.nmf.sparsity = sp;
              add(gen,
                  {std::to_string(w), std::to_string(tt), std::to_string(ft), std::to_string(m),
                   format_double(sp)},
                  {{"words", w}, {"true_topics", tt}, {"false_topics", ft}, {"docs", m}, {"sparsity", sp}});
            }
  } else {
    throw ValidationError("bench: unknown problem '" + c.problem + "'");
  }
  return tasks;
}

Outcome run_task(const Task& task, const BenchConfig& c, const fs::path& cells) {
  Outcome out;
  const fs::path file = cells / (task.key + ".csv");
  if (fs::exists(file)) {
    auto table = parse_csv(read_file(file));
    out.header = std::move(table.header);
    out.rows = std::move(table.rows);
    out.reused = true;
    return out;
  }
  try {
    const auto report = solve_instance(generate_instance(task.gen), c.solve);
    out.header = prefix_columns(c.problem);
    out.header.insert(out.header.end(), report.header.begin(), report.header.end());
    std::string text = csv_line(out.header);
    for (const auto& r : report.rows) {
      auto row = task.prefix;
      row.insert(row.end(), r.begin(), r.end());
      text += csv_line(row);
      out.rows.push_back(std::move(row));
    }
    write_file_atomic(file, text);
    fs::remove(cells / (task.key + ".error.txt"));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    out.error = e.what();
    write_file_atomic(cells / (task.key + ".error.txt"), out.error + "\n");
  }
  return out;
}

// Means per group of key columns, in order of first appearance.
std::string summarize(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows,
                      const std::vector<std::string>& keys, const std::vector<std::string>& values) {
  auto col = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ContractError("summary column missing: " + name);
  };
  std::vector<std::size_t> key_idx, val_idx;
  for (const auto& k : keys) key_idx.push_back(col(k));
  for (const auto& v : values) val_idx.push_back(col(v));
  const std::size_t done_idx = col("completed");

  struct Acc {
    std::size_t runs = 0, completed = 0;
    std::vector<double> sum;
    std::vector<std::size_t> count;
  };
  std::vector<std::vector<std::string>> order;
  std::map<std::vector<std::string>, Acc> groups;
  for (const auto& r : rows) {
    std::vector<std::string> key;
    for (auto i : key_idx) key.push_back(r[i]);
    auto [it, fresh] = groups.try_emplace(key);
    if (fresh) {
      order.push_back(key);
      it->second.sum.assign(values.size(), 0.0);
      it->second.count.assign(values.size(), 0);
    }
    auto& acc = it->second;
    ++acc.runs;
    acc.completed += r[done_idx] == "true";
    for (std::size_t v = 0; v < val_idx.size(); ++v) {
      if (r[val_idx[v]].empty()) continue;
      acc.sum[v] += parse_double(r[val_idx[v]]);
      ++acc.count[v];
    }
  }
  std::vector<std::string> out_header = keys;
  out_header.push_back("runs");
  for (const auto& v : values) out_header.push_back("mean_" + v);
  out_header.push_back("completed_fraction");
  std::string text = csv_line(out_header);
  for (const auto& key : order) {
    const auto& acc = groups.at(key);
    auto line = key;
    line.push_back(std::to_string(acc.runs));
    for (std::size_t v = 0; v < values.size(); ++v) {
      line.push_back(acc.count[v] ? format_double(acc.sum[v] / static_cast<double>(acc.count[v])) : "");
    }
    line.push_back(format_double(static_cast<double>(acc.completed) / static_cast<double>(acc.runs)));
    text += csv_line(line);
  }
  return text;
}

}  // namespace

BenchSummary run_bench(const BenchConfig& c, std::ostream& log) {
  if (c.seeds == 0) throw ValidationError("--seeds must be at least 1");
  if (c.jobs == 0) throw ValidationError("--jobs must be at least 1");
  if (c.out_dir.empty()) throw ValidationError("bench needs --out");
  const auto tasks = expand(c);
  const fs::path dir(c.out_dir);
  const fs::path cells = dir / "cells";
  std::error_code ec;
  fs::create_directories(cells, ec);
  if (ec) throw IoError("cannot create " + cells.string() + ": " + ec.message());

  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  std::exception_ptr io_failure;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        outcomes[i] = run_task(tasks[i], c, cells);
      } catch (...) {
        std::lock_guard lock(log_mutex);
        if (!io_failure) io_failure = std::current_exception();
        return;
      }
      if (!outcomes[i].error.empty()) {
        std::lock_guard lock(log_mutex);
        log << "cell " << tasks[i].key << " failed: " << outcomes[i].error << "\n";
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < std::min(c.jobs, tasks.size()); ++j) pool.emplace_back(worker);
  }
  if (io_failure) std::rethrow_exception(io_failure);

  BenchSummary summary;
  summary.cells = tasks.size();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string failures = csv_line({"key", "error"});
  json failed = json::array();
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.error.empty()) {
      ++summary.failed;
      std::string flat = o.error;
      for (char& ch : flat)
        if (ch == ',' || ch == '\n') ch = ';';
      failures += csv_line({tasks[i].key, flat});
      failed.push_back({{"key", tasks[i].key}, {"error", o.error}});
      continue;
    }
    o.reused ? ++summary.reused : ++summary.computed;
    if (header.empty()) header = o.header;
    if (o.header != header) throw IoError("cell " + tasks[i].key + " has an unexpected header");
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
  }

  if (header.empty()) {
    header = prefix_columns(c.problem);
  }
  std::string all = csv_line(header);
  for (const auto& r : rows) all += csv_line(r);
  write_file_atomic(dir / "rows.csv", all);

  if (!rows.empty()) {
    auto keys = prefix_columns(c.problem);
    keys.pop_back();  // average over seeds
    std::vector<std::string> values;
    if (c.problem == "smart-design") {
      keys.push_back("method");
      values = {"train_loss", "test_loss", "tightness", "nodes", "wall_ms"};
    } else {
      values = {"best_loss", "planted_loss", "recovery", "nodes", "wall_ms"};
    }
    write_file_atomic(dir / "summary.csv", summarize(header, rows, keys, values));
  }
  write_file_atomic(dir / "failures.csv", failures);

  const json meta = {{"command", "bench"},          {"problem", c.problem},
                     {"base_seed", c.base_seed},    {"seeds", c.seeds},
                     {"solver", solver_json(c.solve)}, {"cells", summary.cells},
                     {"computed", summary.computed}, {"reused", summary.reused},
                     {"failed", failed}};
  write_file_atomic(dir / "bench.meta.json", meta.dump(2) + "\n");
  return summary;
}

}  // namespace bagel::cli
