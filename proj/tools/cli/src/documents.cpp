#include "bagel/cli/documents.hpp"

#include "json.hpp"

#include "bagel/cli/io.hpp"
#include "bagel/errors.hpp"

namespace bagel::cli {
namespace {

using nlohmann::json;
constexpr int kFormatVersion = 1;

json row_major(const numerics::Matrix& m) { return json(m.raw()); }

numerics::Matrix read_matrix(const json& data, std::size_t rows, std::size_t cols, const char* what) {
  auto values = data.get<std::vector<double>>();
  if (values.size() != rows * cols) {
    throw ValidationError(std::string(what) + " holds " + std::to_string(values.size()) +
                          " values, expected " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  return numerics::Matrix(rows, cols, std::move(values));
}

json to_json(const smart_design::SmartDesignInstance& inst) {
  json comps = json::array();
  for (const auto& c : inst.components) comps.push_back({{"size", c.input_size}, {"weight", c.weight}});
  return {{"format", "bagel-instance"},
          {"version", kFormatVersion},
          {"problem", "smart-design"},
          {"seed", inst.seed},
          {"components", comps},
          {"B", inst.bound},
          {"strict_budget", inst.strict_budget},
          {"noise_sigma", inst.noise_sigma},
          {"rows", inst.x.rows()},
          {"cols", inst.x.cols()},
          {"X", row_major(inst.x)},
          {"y", inst.y.raw()}};
}

json to_json(const prior_nmf::NmfInstance& inst) {
  json db = json::array();
  for (const auto& t : inst.db.topics()) {
    std::vector<int> bits;
    for (double v : t) bits.push_back(v == 1.0 ? 1 : 0);
    db.push_back(bits);
  }
  json doc = {{"format", "bagel-instance"},
              {"version", kFormatVersion},
              {"problem", "prior-nmf"},
              {"seed", inst.seed},
              {"n", inst.a.rows()},
              {"m", inst.a.cols()},
              {"k", inst.k},
              {"noise_sigma", inst.noise_sigma},
              {"db", db},
              {"A", row_major(inst.a)}};
  doc["planted"] = inst.planted ? json(inst.planted->topics) : json(nullptr);
  return doc;
}

json to_json(const ScriptedSpec& spec) {
  return {{"format", "bagel-instance"},
          {"version", kFormatVersion},
          {"problem", "scripted"},
          {"weights", spec.weights.raw()},
          {"B", spec.bound},
          {"losses", spec.losses}};
}

smart_design::SmartDesignInstance smart_from_json(const json& doc) {
  std::vector<constraints::Component> comps;
  for (const auto& c : doc.at("components")) {
    comps.push_back({c.at("size").get<std::size_t>(), c.at("weight").get<double>()});
  }
  const auto rows = doc.at("rows").get<std::size_t>();
  const auto cols = doc.at("cols").get<std::size_t>();
  auto x = read_matrix(doc.at("X"), rows, cols, "X");
  numerics::Vector y(doc.at("y").get<std::vector<double>>());
  return smart_design::SmartDesignInstance::make(std::move(x), std::move(y), std::move(comps),
                                                 doc.at("B").get<double>(),
                                                 doc.value("noise_sigma", 0.0),
                                                 doc.value("seed", std::uint64_t{0}),
                                                 doc.value("strict_budget", true));
}

prior_nmf::NmfInstance nmf_from_json(const json& doc) {
  const auto n = doc.at("n").get<std::size_t>();
  const auto m = doc.at("m").get<std::size_t>();
  std::vector<numerics::Vector> topics;
  for (const auto& row : doc.at("db")) {
    const auto bits = row.get<std::vector<double>>();
    topics.emplace_back(bits);
  }
  prior_nmf::TopicDB db(n, std::move(topics));
  std::optional<prior_nmf::PlantedModel> planted;
  if (doc.contains("planted") && !doc.at("planted").is_null()) {
    planted = prior_nmf::PlantedModel{doc.at("planted").get<std::vector<std::size_t>>(), {}, {}};
  }
  return prior_nmf::NmfInstance::make(read_matrix(doc.at("A"), n, m, "A"), doc.at("k").get<std::size_t>(),
                                      std::move(db), std::move(planted),
                                      doc.value("noise_sigma", 0.0), doc.value("seed", std::uint64_t{0}));
}

ScriptedSpec scripted_from_json(const json& doc) {
  ScriptedSpec spec;
  spec.weights = numerics::Vector(doc.at("weights").get<std::vector<double>>());
  spec.bound = doc.at("B").get<double>();
  spec.losses = doc.at("losses").get<std::map<std::string, double>>();
  constraints::BudgetConstraint check(spec.weights, spec.bound);  // validates weights
  return spec;
}

}  // namespace

std::string problem_name(const Instance& inst) {
  switch (inst.index()) {
    case 0:
      return "smart-design";
    case 1:
      return "prior-nmf";
    default:
      return "scripted";
  }
}

std::string serialize_instance(const Instance& inst) {
  const json doc = std::visit([](const auto& v) { return to_json(v); }, inst);
  return doc.dump() + "\n";
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != "bagel-instance") {
      throw ValidationError("not a bagel instance document");
    }
    if (doc.value("version", 0) != kFormatVersion) {
      throw ValidationError("unsupported instance format version");
    }
    const auto problem = doc.at("problem").get<std::string>();
    if (problem == "smart-design") return smart_from_json(doc);
    if (problem == "prior-nmf") return nmf_from_json(doc);
    if (problem == "scripted") return scripted_from_json(doc);
    throw ValidationError("unknown problem '" + problem + "'");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed instance: ") + e.what());
  }
}

std::string instance_id(const Instance& inst) { return sha256_hex(serialize_instance(inst)).substr(0, 16); }

}  // namespace bagel::cli
