#include "bagel/prior_nmf/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "bagel/errors.hpp"
#include "bagel/numerics/rng.hpp"

namespace bagel::prior_nmf {
namespace {

constexpr std::size_t kWordGrid[] = {20, 30, 50, 75, 100, 150};
constexpr std::size_t kTrueGrid[] = {4, 5, 6, 7, 8};
constexpr std::size_t kFalseGrid[] = {2, 3, 5, 10};
constexpr std::size_t kDocGrid[] = {50, 100, 150, 200, 250, 300};

template <std::size_t N>
bool in_grid(const std::size_t (&grid)[N], std::size_t v) {
  return std::find(std::begin(grid), std::end(grid), v) != std::end(grid);
}

std::size_t topic_size(const NmfParams& p) {
  const auto s = static_cast<std::size_t>(std::llround((1.0 - p.sparsity) * static_cast<double>(p.words)));
  return std::min(p.words, std::max<std::size_t>(2, s));
}

// log C(n, r), to bound how many distinct topics a size allows.
double log_binomial(std::size_t n, std::size_t r) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(r) + 1) -
         std::lgamma(static_cast<double>(n - r) + 1);
}

// A strictly positive planted value in (0.1, 1].
double positive(numerics::Rng& rng) { return 0.1 + 0.9 * rng.uniform_open_closed(); }

}  // namespace

TopicDB::TopicDB(std::size_t n_words, std::vector<Vector> topics)
    : n_words_(n_words), topics_(std::move(topics)) {
  std::set<std::vector<double>> seen;
  for (std::size_t j = 0; j < topics_.size(); ++j) {
    const auto& t = topics_[j];
    if (t.size() != n_words_) throw DimensionError("TopicDB: topic length != n_words");
    bool any = false;
    for (double v : t) {
      if (v != 0.0 && v != 1.0) throw DomainError("TopicDB: topics must be binary");
      any = any || v == 1.0;
    }
    if (!any) throw ValidationError("TopicDB: topic " + std::to_string(j) + " has no word");
    if (!seen.insert(t.raw()).second) {
      throw ValidationError("TopicDB: topic " + std::to_string(j) + " duplicates another topic");
    }
  }
}

NmfInstance NmfInstance::make(Matrix a, std::size_t k, TopicDB db,
                              std::optional<PlantedModel> planted, double noise_sigma,
                              std::uint64_t seed) {
  if (k == 0) throw ValidationError("NmfInstance: k must be at least 1");
  if (k > db.size()) {
    throw ValidationError("NmfInstance: k = " + std::to_string(k) + " exceeds the " +
                          std::to_string(db.size()) + " database topics");
  }
  if (a.rows() != db.n_words()) throw DimensionError("NmfInstance: rows(A) != database word count");
  for (double v : a.values()) {
    if (v < 0.0) throw DomainError("NmfInstance: A must be non-negative");
  }
  if (planted) {
    for (std::size_t t : planted->topics) {
      if (t >= db.size()) throw ValidationError("NmfInstance: planted topic index out of range");
    }
  }
  NmfInstance inst;
  inst.a = std::move(a);
  inst.k = k;
  inst.db = std::move(db);
  inst.planted = std::move(planted);
  inst.noise_sigma = noise_sigma;
  inst.seed = seed;
  return inst;
}

void validate(const NmfParams& p) {
  if (p.words < 2) throw ValidationError("words must be at least 2");
  if (p.docs == 0) throw ValidationError("docs must be positive");
  if (!(p.sparsity > 0.0 && p.sparsity < 1.0)) throw ValidationError("sparsity must lie in (0, 1)");
  if (p.true_topics < kMinTopicsPerDoc) {
    throw ValidationError("each document mixes " + std::to_string(kMinTopicsPerDoc) +
                          " topics, so at least that many true topics are needed (got " +
                          std::to_string(p.true_topics) + ")");
  }
  if (p.novelty > p.true_topics) throw ValidationError("novelty exceeds the true topic count");
  if (p.novelty > p.false_topics) {
    throw ValidationError("novelty exceeds the false topic count; k would exceed the database size");
  }
  if (p.noise_factor < 0.0) throw ValidationError("noise factor must be non-negative");
  const double needed = static_cast<double>(p.true_topics + p.false_topics);
  if (log_binomial(p.words, topic_size(p)) < std::log(needed)) {
    throw ValidationError("too few words to draw " + std::to_string(p.true_topics + p.false_topics) +
                          " distinct topics");
  }
}

std::vector<std::string> grid_warnings(const NmfParams& p) {
  std::vector<std::string> out;
  auto check = [&](bool ok, const char* name, std::size_t v) {
    if (!ok) out.push_back(std::string(name) + "=" + std::to_string(v) + " is outside the reference grid");
  };
  check(in_grid(kWordGrid, p.words), "words", p.words);
  check(in_grid(kTrueGrid, p.true_topics), "true-topics", p.true_topics);
  check(in_grid(kFalseGrid, p.false_topics), "false-topics", p.false_topics);
  check(in_grid(kDocGrid, p.docs), "docs", p.docs);
  return out;
}

NmfInstance nmf_generate_instance(const NmfParams& params) {
  validate(params);
  numerics::Rng rng(params.seed);
  const std::size_t n = params.words;
  const std::size_t m = params.docs;
  const std::size_t kt = params.true_topics;
  const std::size_t total = params.true_topics + params.false_topics;
  const std::size_t size = topic_size(params);

  // Topics 0..kt-1 are true, the rest false.
  std::vector<Vector> topics;
  std::set<std::vector<double>> seen;
  std::vector<std::size_t> words(n);
  while (topics.size() < total) {
    std::iota(words.begin(), words.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(words));
    Vector t(n);
    for (std::size_t i = 0; i < size; ++i) t[words[i]] = 1.0;
    if (seen.insert(t.raw()).second) topics.push_back(std::move(t));
  }

  Matrix w(n, kt);
  for (std::size_t c = 0; c < kt; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      if (topics[c][r] == 1.0) w(r, c) = positive(rng);
    }
  }

  Matrix h(kt, m);
  const double keep = 1.0 - params.sparsity;
  std::vector<std::size_t> rows(kt);
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t active = 0;
    for (std::size_t r = 0; r < kt; ++r) {
      if (rng.uniform() < keep) {
        h(r, c) = positive(rng);
        ++active;
      }
    }
    if (active < kMinTopicsPerDoc) {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
      rng.shuffle(std::span<std::size_t>(rows));
      for (std::size_t r : rows) {
        if (active >= kMinTopicsPerDoc) break;
        if (h(r, c) == 0.0) {
          h(r, c) = positive(rng);
          ++active;
        }
      }
    }
  }

  const Matrix clean = numerics::multiply(w, h);
  double mean = 0.0;
  for (double v : clean.values()) mean += v;
  mean /= static_cast<double>(clean.values().size());
  const double sigma = params.noise_factor * mean;
  std::vector<double> noisy(clean.values().begin(), clean.values().end());
  for (auto& v : noisy) v = std::max(0.0, v + sigma * rng.normal());
  Matrix a(n, m, std::move(noisy));

  // Database: drop the first `novelty` true topics, then shuffle.
  std::vector<std::size_t> members;
  for (std::size_t j = params.novelty; j < total; ++j) members.push_back(j);
  rng.shuffle(std::span<std::size_t>(members));
  std::vector<Vector> db_topics;
  std::vector<std::size_t> position(total, total);
  for (std::size_t p = 0; p < members.size(); ++p) {
    db_topics.push_back(topics[members[p]]);
    position[members[p]] = p;
  }

  PlantedModel planted;
  for (std::size_t c = 0; c < kt; ++c) {
    if (position[c] < total) planted.topics.push_back(position[c]);
  }
  planted.w = std::move(w);
  planted.h = std::move(h);

  return NmfInstance::make(std::move(a), kt, TopicDB(n, std::move(db_topics)), std::move(planted),
                           sigma, params.seed);
}

}  // namespace bagel::prior_nmf
