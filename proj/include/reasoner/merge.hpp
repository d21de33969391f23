#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reasoner/amr.hpp"

namespace reasoner {

enum class Bound { Inclusive, Strict };

struct MergeConfig {
  /// Largest number of embeddings one merge node may average.
  std::size_t max_merge_width = 6;
  /// Shallowest depth a collapsed node may sit at (root is depth 0).
  std::size_t min_merge_depth = 1;
  /// Inclusive: width <= max, depth >= min. Strict: width < max, depth > min.
  Bound width_bound = Bound::Inclusive;
  Bound depth_bound = Bound::Inclusive;
  /// Enumeration stops after this many trees (original included).
  std::size_t max_variants = 10000;

  void validate() const;
};

/// Why a merge is not allowed, or nullopt when it is. Config checks are
/// skipped when `config` is null.
std::optional<std::string> merge_violation(const AmrTree& tree, NodeId target,
                                           const MergeConfig* config);

bool is_valid_merge(const AmrTree& tree, NodeId target,
                    const MergeConfig& config);

/// Collapses `target` and its descendants into one merge node carrying the
/// mean of their embeddings. Throws InvalidMerge when the collapse would
/// drop a negation or split a coreference, NoEmbeddings when nothing in the
/// region has an embedding.
AmrTree apply_merge(const AmrTree& tree, NodeId target);
/// Same, also enforcing the width and depth limits of `config`.
AmrTree apply_merge(const AmrTree& tree, NodeId target,
                    const MergeConfig& config);

/// Number of embeddings a collapse of `target` would average.
std::size_t merge_width(const AmrTree& tree, NodeId target);

struct MergeTreeSet {
  AmrTree original;
  /// Distinct trees with at least one merge node, in discovery order.
  std::vector<AmrTree> variants;
  /// Per variant, labels of every node folded into its merge nodes.
  std::vector<std::vector<std::string>> provenance;
  /// True when enumeration stopped at MergeConfig::max_variants.
  bool capped = false;

  /// Number of trees including the original.
  std::size_t size() const noexcept { return variants.size() + 1; }
  /// Index 0 is the original.
  const AmrTree& at(std::size_t i) const {
    return i == 0 ? original : variants.at(i - 1);
  }
};

/// Every tree reachable from `tree` by zero or more valid merges, each
/// isomorphism class once. Depth-first over preorder targets, so output
/// order is reproducible.
MergeTreeSet enumerate_merge_trees(const AmrTree& tree,
                                   const MergeConfig& config);

/// 1 - (minNodes - 1) / (maxNodes - 1) over the merge set.
double collapsability(const MergeTreeSet& merges);
double collapsability(const AmrTree& tree, const MergeConfig& config);

/// Sum of merge widths in a tree; 0 for unmerged trees.
std::size_t total_merge_width(const AmrTree& tree);

}  // namespace reasoner
