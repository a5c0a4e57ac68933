#ifndef BAGEL_CLI_BENCH_HPP
#define BAGEL_CLI_BENCH_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bagel/cli/commands.hpp"

namespace bagel::cli {

/// Grid sweep. Empty axes fall back to the generator defaults.
struct BenchConfig {
  std::string problem = "smart-design";
  std::uint64_t base_seed = 0;
  std::size_t seeds = 1;
  std::string out_dir;
  std::size_t jobs = 1;

  std::vector<std::size_t> features, samples;
  std::vector<double> cost;
  std::vector<std::size_t> words, true_topics, false_topics, docs;
  std::vector<double> sparsity;

  SolveConfig solve;
};

struct BenchSummary {
  std::size_t cells = 0;  // (grid point, seed) pairs
  std::size_t computed = 0;
  std::size_t reused = 0;
  std::size_t failed = 0;
};

/// Runs every (grid point, seed). Each finished pair is stored under
/// out_dir/cells/<key>.csv, keyed by a hash of its parameters and solver
/// settings, and reused on later runs. Writes rows.csv (all rows, grid order),
/// summary.csv (means per grid point and method), failures.csv and
/// bench.meta.json.
BenchSummary run_bench(const BenchConfig& config, std::ostream& log);

}  // namespace bagel::cli

#endif  // BAGEL_CLI_BENCH_HPP
