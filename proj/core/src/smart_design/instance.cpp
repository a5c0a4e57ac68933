#include "bagel/smart_design/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "bagel/errors.hpp"
#include "bagel/numerics/rng.hpp"

namespace bagel::smart_design {
namespace {

constexpr std::size_t kFeatureGrid[] = {10, 20, 40, 70, 100, 130, 150, 180, 200, 225, 250, 300, 350};
constexpr std::size_t kSampleGrid[] = {100, 400, 700, 1000, 1500, 3000, 7000, 10000};
constexpr double kCostGrid[] = {0.90, 0.80, 0.60, 0.30};

template <class T, std::size_t N>
bool in_grid(const T (&grid)[N], T value) {
  return std::find(std::begin(grid), std::end(grid), value) != std::end(grid);
}

// Largest-remainder split of `extra` units proportional to `shares`.
std::vector<std::size_t> apportion(std::size_t extra, const std::vector<double>& shares) {
  const double total = std::accumulate(shares.begin(), shares.end(), 0.0);
  std::vector<std::size_t> out(shares.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t used = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    const double exact = static_cast<double>(extra) * shares[i] / total;
    out[i] = static_cast<std::size_t>(std::floor(exact));
    used += out[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; used < extra; ++r, ++used) out[remainders[r % remainders.size()].second]++;
  return out;
}

}  // namespace

SmartDesignInstance SmartDesignInstance::make(Matrix x, Vector y, std::vector<Component> components,
                                              double bound, double noise_sigma, std::uint64_t seed,
                                              bool strict_budget) {
  SmartDesignInstance inst;
  if (x.rows() != y.size()) throw DimensionError("SmartDesignInstance: |y| != rows(X)");
  if (!(bound > 0.0)) throw ValidationError("SmartDesignInstance: bound must be positive");
  std::size_t offset = 0;
  for (const auto& c : components) {
    if (c.input_size == 0) throw ValidationError("SmartDesignInstance: component of size 0");
    if (c.weight < 0.0) throw ValidationError("SmartDesignInstance: negative component weight");
    inst.offsets.push_back({offset, offset + c.input_size});
    offset += c.input_size;
  }
  if (offset != x.cols()) {
    throw DimensionError("SmartDesignInstance: component sizes sum to " + std::to_string(offset) +
                         " but X has " + std::to_string(x.cols()) + " columns");
  }
  inst.x = std::move(x);
  inst.y = std::move(y);
  inst.components = std::move(components);
  inst.bound = bound;
  inst.strict_budget = strict_budget;
  inst.noise_sigma = noise_sigma;
  inst.seed = seed;
  return inst;
}

Vector SmartDesignInstance::weights() const {
  Vector w(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) w[i] = components[i].weight;
  return w;
}

constraints::BudgetConstraint SmartDesignInstance::budget() const {
  return constraints::BudgetConstraint(weights(), bound, strict_budget);
}

SmartDesignInstance SmartDesignInstance::with_rows(std::span<const std::size_t> rows) const {
  SmartDesignInstance out = *this;
  out.x = numerics::select_rows(x, rows);
  out.y = numerics::select(y, rows);
  return out;
}

Vector expand_mask(std::span<const int> u, std::span<const FeatureRange> offsets,
                   std::size_t features) {
  if (u.size() != offsets.size()) throw DimensionError("expand_mask: |u| != component count");
  Vector mask(features);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = offsets[i].begin; j < offsets[i].end; ++j) mask[j] = u[i] != 0 ? 1.0 : 0.0;
  }
  return mask;
}

void validate(const SmartDesignParams& p) {
  if (p.features == 0) throw ValidationError("features must be positive");
  if (p.samples == 0) throw ValidationError("samples must be positive");
  if (!(p.cost_percent > 0.0 && p.cost_percent <= 1.0)) {
    throw ValidationError("cost-percent must lie in (0, 1], got " + std::to_string(p.cost_percent));
  }
  if (p.components > p.features) {
    throw ValidationError("more components than features (" + std::to_string(p.components) + " > " +
                          std::to_string(p.features) + ")");
  }
  if (p.components > constraints::kMaxEnumeratedComponents) {
    throw ValidationError("at most " + std::to_string(constraints::kMaxEnumeratedComponents) +
                          " components are supported");
  }
  if (p.noise_factor < 0.0) throw ValidationError("noise factor must be non-negative");
}

std::vector<std::string> grid_warnings(const SmartDesignParams& p) {
  std::vector<std::string> out;
  if (!in_grid(kFeatureGrid, p.features)) {
    out.push_back("features=" + std::to_string(p.features) + " is outside the reference grid");
  }
  if (!in_grid(kSampleGrid, p.samples)) {
    out.push_back("samples=" + std::to_string(p.samples) + " is outside the reference grid");
  }
  if (!in_grid(kCostGrid, p.cost_percent)) {
    std::ostringstream msg;
    msg << "cost-percent=" << p.cost_percent << " is outside the reference grid";
    out.push_back(msg.str());
  }
  return out;
}

GeneratedSmartDesign sd_generate_instance(const SmartDesignParams& params) {
  validate(params);
  numerics::Rng rng(params.seed);
  const std::size_t d = params.features;
  const std::size_t m = params.samples;
  const std::size_t k =
      params.components != 0 ? params.components : std::min(d, kDefaultMaxComponents);

  std::vector<double> shares(k);
  for (auto& s : shares) s = rng.uniform_open_closed();
  const auto extra = apportion(d - k, shares);

  std::vector<Component> components(k);
  double total_weight = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    components[i].input_size = 1 + extra[i];
    components[i].weight = rng.uniform(1.0, 10.0);
    total_weight += components[i].weight;
  }
  const double bound = params.cost_percent * total_weight;

  // Planted support: greedy over a random component order, keeping what fits.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  std::vector<int> planted(k, 0);
  double used = 0.0;
  for (std::size_t i : order) {
    if (used + components[i].weight < bound) {
      planted[i] = 1;
      used += components[i].weight;
    }
  }

  Vector theta(d);
  {
    std::size_t offset = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < components[i].input_size; ++j, ++offset) {
        const double v = rng.normal();
        theta[offset] = planted[i] != 0 ? v : 0.0;
      }
    }
  }

  std::vector<double> xs(m * d);
  for (auto& v : xs) v = rng.normal();
  Matrix x(m, d, std::move(xs));

  const Vector signal = numerics::multiply(x, theta);
  const double mean = std::accumulate(signal.begin(), signal.end(), 0.0) / static_cast<double>(m);
  double var = 0.0;
  for (double s : signal) var += (s - mean) * (s - mean);
  const double spread = std::sqrt(var / static_cast<double>(m));
  const double sigma = params.noise_factor * (spread > 0.0 ? spread : 1.0);

  Vector y(m);
  for (std::size_t r = 0; r < m; ++r) y[r] = signal[r] + sigma * rng.normal();

  auto inst = SmartDesignInstance::make(std::move(x), std::move(y), std::move(components), bound,
                                        sigma, params.seed);
  return {std::move(inst), std::move(theta), std::move(planted)};
}

}  // namespace bagel::smart_design
