#ifndef BAGEL_PRIOR_NMF_INSTANCE_HPP
#define BAGEL_PRIOR_NMF_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bagel/numerics/matrix.hpp"

namespace bagel::prior_nmf {

using numerics::Matrix;
using numerics::Vector;

/// Prior topic database: binary word-membership vectors, pairwise distinct and
/// each containing at least one word.
class TopicDB {
 public:
  TopicDB() = default;
  TopicDB(std::size_t n_words, std::vector<Vector> topics);

  std::size_t n_words() const { return n_words_; }
  std::size_t size() const { return topics_.size(); }
  const Vector& operator[](std::size_t j) const { return topics_[j]; }
  const std::vector<Vector>& topics() const { return topics_; }

 private:
  std::size_t n_words_ = 0;
  std::vector<Vector> topics_;
};

struct PlantedModel {
  std::vector<std::size_t> topics;  // db index used by column i of W*
  std::optional<Matrix> w;
  std::optional<Matrix> h;
};

/// Document matrix A (words x documents) to factor into k topics drawn from db.
struct NmfInstance {
  Matrix a;
  std::size_t k = 0;
  TopicDB db;
  std::optional<PlantedModel> planted;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  /// Checks k in [1, |db|], A >= 0 and rows(A) = db.n_words.
  static NmfInstance make(Matrix a, std::size_t k, TopicDB db,
                          std::optional<PlantedModel> planted = std::nullopt,
                          double noise_sigma = 0.0, std::uint64_t seed = 0);
};

struct NmfParams {
  std::size_t words = 20;
  std::size_t true_topics = 4;
  std::size_t false_topics = 2;
  std::size_t docs = 50;
  double sparsity = 0.8;
  std::uint64_t seed = 0;
  /// Noise standard deviation relative to mean(W* H*).
  double noise_factor = 0.05;
  /// True topics left out of the database.
  std::size_t novelty = 0;
};

inline constexpr std::size_t kMinTopicsPerDoc = 2;

void validate(const NmfParams& params);
std::vector<std::string> grid_warnings(const NmfParams& params);

/// Deterministic planted instance.
///
/// Topics (true and false, pairwise distinct) each hold
/// max(2, round((1 - sparsity) * words)) words. W* column i is positive on
/// every word of true topic i, H* keeps each entry with probability
/// 1 - sparsity and at least two topics per document, and
/// A = max(0, W* H* + N(0, sigma^2)). The database is the true topics minus
/// `novelty` of them plus the false topics, in shuffled order.
NmfInstance nmf_generate_instance(const NmfParams& params);

}  // namespace bagel::prior_nmf

#endif  // BAGEL_PRIOR_NMF_INSTANCE_HPP
