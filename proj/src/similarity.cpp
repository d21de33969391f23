#include "reasoner/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "reasoner/error.hpp"

namespace reasoner {

EmbeddingVector::EmbeddingVector(std::vector<double> values)
    : data_(std::make_shared<const std::vector<double>>(std::move(values))) {}

bool EmbeddingVector::is_zero() const noexcept {
  const auto v = values();
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

bool operator==(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.data_ == b.data_) return true;
  const auto va = a.values();
  const auto vb = b.values();
  return std::equal(va.begin(), va.end(), vb.begin(), vb.end());
}

bool is_merge_marker(std::string_view symbol) noexcept {
  return symbol == kMergeMarker || symbol == "MERGED";
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cosine of vectors with dimensions " +
                    std::to_string(a.dimension()) + " and " +
                    std::to_string(b.dimension()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

namespace {

double scaled_cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  return std::clamp(0.5 * (cosine(a, b) + 1.0), 0.0, 1.0);
}

}  // namespace

double hybrid_similarity(const SymbolWithEmbedding& a,
                         const SymbolWithEmbedding& b) {
  const bool both_have_embeddings =
      a.embedding.has_value() && b.embedding.has_value();
  if (is_merge_marker(a.symbol) || is_merge_marker(b.symbol)) {
    return both_have_embeddings ? scaled_cosine(*a.embedding, *b.embedding)
                                : 0.0;
  }
  if (a.symbol == b.symbol) return 1.0;
  if (both_have_embeddings) return scaled_cosine(*a.embedding, *b.embedding);
  return 0.0;
}

double exact_similarity(const SymbolWithEmbedding& a,
                        const SymbolWithEmbedding& b) {
  return a.symbol == b.symbol ? 1.0 : 0.0;
}

EmbeddingVector average_embeddings(std::span<const EmbeddingVector> vectors) {
  std::vector<std::size_t> ones(vectors.size(), 1);
  return weighted_average(vectors, ones);
}

EmbeddingVector weighted_average(std::span<const EmbeddingVector> vectors,
                                 std::span<const std::size_t> weights) {
  if (vectors.empty()) {
    throw Error(ErrorCode::EmptyInput, "cannot average zero embeddings");
  }
  if (weights.size() != vectors.size()) {
    throw Error(ErrorCode::InvalidConfig, "one weight per vector required");
  }
  const std::size_t dim = vectors.front().dimension();
  std::vector<double> sum(dim, 0.0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dimension() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "averaging vectors of dimensions " + std::to_string(dim) +
                      " and " + std::to_string(vectors[i].dimension()));
    }
    const auto v = vectors[i].values();
    for (std::size_t d = 0; d < dim; ++d) {
      sum[d] += static_cast<double>(weights[i]) * v[d];
    }
    total += weights[i];
  }
  for (auto& x : sum) x /= static_cast<double>(total);
  return EmbeddingVector(std::move(sum));
}

}  // namespace reasoner
