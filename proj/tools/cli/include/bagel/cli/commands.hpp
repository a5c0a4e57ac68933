#ifndef BAGEL_CLI_COMMANDS_HPP
#define BAGEL_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bagel/cli/documents.hpp"
#include "bagel/engine/node.hpp"
#include "bagel/prior_nmf/instance.hpp"
#include "bagel/smart_design/instance.hpp"

namespace bagel::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

struct GenerateConfig {
  std::string problem = "smart-design";  // or "prior-nmf"
  smart_design::SmartDesignParams smart;
  prior_nmf::NmfParams nmf;
};

/// Seeds from BAGEL_SEED when set, otherwise `fallback`. Throws
/// ValidationError for a malformed value.
std::uint64_t effective_seed(std::uint64_t fallback);

Instance generate_instance(const GenerateConfig& config);

struct SolveConfig {
  double timeout_s = 600.0;
  std::optional<std::size_t> node_cap;
  engine::Strategy strategy = engine::Strategy::DepthFirst;
  /// Unset picks the problem default: heuristic for prior-nmf, exact otherwise.
  std::optional<engine::Pruning> pruning;
  std::size_t folds = 5;
  std::size_t iters = 1000;
  std::size_t restarts = 1;
  bool trace = false;
};

struct SolveReport {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string meta;   // JSON document describing the run
  std::string trace;  // newline-delimited JSON, one record per closed node
};

/// Columns whose values depend on timing and nothing else.
inline constexpr const char* kWallColumn = "wall_ms";

SolveReport solve_instance(const Instance& inst, const SolveConfig& config);

/// Entry point of the `bagel` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bagel::cli

#endif  // BAGEL_CLI_COMMANDS_HPP
