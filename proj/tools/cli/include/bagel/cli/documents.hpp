#ifndef BAGEL_CLI_DOCUMENTS_HPP
#define BAGEL_CLI_DOCUMENTS_HPP

#include <map>
#include <string>
#include <variant>

#include "bagel/numerics/matrix.hpp"
#include "bagel/prior_nmf/instance.hpp"
#include "bagel/smart_design/instance.hpp"

namespace bagel::cli {

/// Search-trace replay: a budget plus a table of node losses keyed by trail.
struct ScriptedSpec {
  numerics::Vector weights;
  double bound = 0.0;
  std::map<std::string, double> losses;
};

using Instance = std::variant<smart_design::SmartDesignInstance, prior_nmf::NmfInstance, ScriptedSpec>;

std::string problem_name(const Instance& inst);

/// Canonical JSON text of an instance (compact, one trailing newline). Equal
/// instances give byte-identical text.
std::string serialize_instance(const Instance& inst);

/// Parses and validates an instance document. Throws IoError for text that is
/// not JSON and ValidationError for JSON that is not a valid instance.
Instance parse_instance(const std::string& text);

/// First 16 hex digits of the SHA-256 of the canonical text.
std::string instance_id(const Instance& inst);

}  // namespace bagel::cli

#endif  // BAGEL_CLI_DOCUMENTS_HPP
