#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reasoner {

/// Dense embedding vector. Copies share the underlying storage, so literals
/// and tree nodes can carry embeddings by value.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values);

  std::size_t dimension() const noexcept { return data_ ? data_->size() : 0; }
  std::span<const double> values() const noexcept {
    return data_ ? std::span<const double>(*data_) : std::span<const double>();
  }
  double operator[](std::size_t i) const { return (*data_)[i]; }
  bool empty() const noexcept { return dimension() == 0; }
  bool is_zero() const noexcept;

  /// Identity of the shared storage, used for cheap hashing.
  const void* identity() const noexcept { return data_.get(); }

  friend bool operator==(const EmbeddingVector& a, const EmbeddingVector& b);

 private:
  std::shared_ptr<const std::vector<double>> data_;
};

/// A predicate or constant as seen by unification.
struct SymbolWithEmbedding {
  std::string symbol;
  std::optional<EmbeddingVector> embedding;

  friend bool operator==(const SymbolWithEmbedding&,
                         const SymbolWithEmbedding&) = default;
};

/// Label of merge nodes and of the predicate they produce in logic.
inline constexpr std::string_view kMergeMarker = "MERGE";

/// Accepts both spellings seen in the literature ("MERGE", "MERGED").
bool is_merge_marker(std::string_view symbol) noexcept;

/// Cosine similarity in [-1, 1]. A zero vector has cosine 0 with anything.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Hybrid string/embedding similarity in [0, 1].
///
/// Merge markers only ever match through their embeddings. Otherwise equal
/// symbols score 1, and unequal symbols fall back to the scaled cosine
/// (cos + 1) / 2 when both sides carry embeddings, 0 when they do not.
double hybrid_similarity(const SymbolWithEmbedding& a,
                         const SymbolWithEmbedding& b);

/// 1 on exact symbol equality, 0 otherwise. Embeddings are ignored.
double exact_similarity(const SymbolWithEmbedding& a,
                        const SymbolWithEmbedding& b);

using SimilarityFn = std::function<double(const SymbolWithEmbedding&,
                                          const SymbolWithEmbedding&)>;

/// Elementwise arithmetic mean.
EmbeddingVector average_embeddings(std::span<const EmbeddingVector> vectors);

/// Mean weighted by positive integer counts; used when a region that already
/// contains merge nodes is collapsed again.
EmbeddingVector weighted_average(std::span<const EmbeddingVector> vectors,
                                 std::span<const std::size_t> weights);

}  // namespace reasoner
