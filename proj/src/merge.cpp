#include "reasoner/merge.hpp"

#include <algorithm>
#include <unordered_set>

#include "reasoner/error.hpp"

namespace reasoner {

void MergeConfig::validate() const {
  if (max_merge_width < 1) {
    throw Error(ErrorCode::InvalidConfig, "max_merge_width must be >= 1");
  }
  if (max_variants < 1) {
    throw Error(ErrorCode::InvalidConfig, "max_variants must be >= 1");
  }
}

namespace {

struct Region {
  std::vector<NodeId> nodes;
  std::vector<bool> inside;
};

Region collect_region(const AmrTree& tree, NodeId target) {
  Region r;
  r.nodes = tree.subtree(target);
  r.inside.assign(tree.size(), false);
  for (NodeId id : r.nodes) r.inside[id] = true;
  return r;
}

std::size_t region_width(const AmrTree& tree, const Region& region) {
  std::size_t width = 0;
  for (NodeId id : region.nodes) {
    const AmrNode& n = tree.node(id);
    if (n.kind == NodeKind::Merge) {
      width += n.width;
    } else if (n.embedding) {
      ++width;
    }
  }
  return width;
}

std::optional<std::string> structural_violation(const AmrTree& tree,
                                                const Region& region) {
  for (NodeId id : region.nodes) {
    if (const auto pe = tree.parent_edge(id);
        pe && region.inside[tree.edge(*pe).source] &&
        tree.is_negation_edge(*pe)) {
      return std::string("collapse would remove a negation");
    }
    const AmrNode& n = tree.node(id);
    if (n.kind == NodeKind::Coreference) {
      const auto referent = tree.instance_for(n.label);
      if (referent && !region.inside[*referent]) {
        return "coreference " + n.label + " would lose its instance";
      }
    } else if (n.kind == NodeKind::Instance) {
      for (NodeId ref : tree.coreferences_of(id)) {
        if (!region.inside[ref]) {
          return "instance " + n.label + " is coreferenced outside the region";
        }
      }
    }
  }
  return std::nullopt;
}

bool within(std::size_t value, std::size_t limit, Bound bound, bool upper) {
  if (upper) return bound == Bound::Inclusive ? value <= limit : value < limit;
  return bound == Bound::Inclusive ? value >= limit : value > limit;
}

}  // namespace

std::size_t merge_width(const AmrTree& tree, NodeId target) {
  return region_width(tree, collect_region(tree, target));
}

std::optional<std::string> merge_violation(const AmrTree& tree, NodeId target,
                                           const MergeConfig* config) {
  if (target >= tree.size() || tree.node(target).kind != NodeKind::Instance) {
    return std::string("merge target must be an instance node");
  }
  const Region region = collect_region(tree, target);
  if (auto why = structural_violation(tree, region)) return why;
  const std::size_t width = region_width(tree, region);
  if (width == 0) return std::string("no embeddings in the collapsed region");
  if (config) {
    if (!within(width, config->max_merge_width, config->width_bound, true)) {
      return "merge width " + std::to_string(width) + " exceeds limit " +
             std::to_string(config->max_merge_width);
    }
    if (!within(tree.depth(target), config->min_merge_depth,
                config->depth_bound, false)) {
      return "depth " + std::to_string(tree.depth(target)) +
             " is shallower than the minimum merge depth " +
             std::to_string(config->min_merge_depth);
    }
  }
  return std::nullopt;
}

bool is_valid_merge(const AmrTree& tree, NodeId target,
                    const MergeConfig& config) {
  return !merge_violation(tree, target, &config);
}

namespace {

AmrTree collapse(const AmrTree& tree, NodeId target) {
  const Region region = collect_region(tree, target);

  std::vector<EmbeddingVector> vectors;
  std::vector<std::size_t> weights;
  AmrNode merged;
  merged.kind = NodeKind::Merge;
  merged.label = std::string(kMergeMarker);
  for (NodeId id : region.nodes) {
    const AmrNode& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::Merge:
        vectors.push_back(*n.embedding);
        weights.push_back(n.width);
        merged.collapsed.insert(merged.collapsed.end(), n.collapsed.begin(),
                                n.collapsed.end());
        break;
      case NodeKind::Instance:
      case NodeKind::Constant:
        if (n.embedding) {
          vectors.push_back(*n.embedding);
          weights.push_back(1);
        }
        merged.collapsed.push_back(n.label);
        break;
      case NodeKind::Coreference:
        break;
    }
  }
  merged.embedding = weighted_average(vectors, weights);
  for (std::size_t w : weights) merged.width += w;

  // Renumber survivors in preorder; the merge node takes the target's slot.
  std::vector<std::optional<NodeId>> remap(tree.size());
  std::vector<AmrNode> nodes;
  for (NodeId id : tree.preorder()) {
    if (id == target) {
      remap[id] = nodes.size();
      nodes.push_back(merged);
    } else if (!region.inside[id]) {
      remap[id] = nodes.size();
      nodes.push_back(tree.node(id));
    }
  }
  std::vector<Edge> edges;
  for (NodeId id : tree.preorder()) {
    if (region.inside[id] && id != target) continue;
    if (const auto pe = tree.parent_edge(id)) {
      Edge e = tree.edge(*pe);
      e.source = *remap[e.source];
      e.target = *remap[e.target];
      edges.push_back(std::move(e));
    }
  }
  return AmrTree(std::move(nodes), std::move(edges));
}

}  // namespace

AmrTree apply_merge(const AmrTree& tree, NodeId target) {
  if (auto why = merge_violation(tree, target, nullptr)) {
    const bool empty = why->rfind("no embeddings", 0) == 0;
    throw Error(empty ? ErrorCode::NoEmbeddings : ErrorCode::InvalidMerge,
                *why);
  }
  return collapse(tree, target);
}

AmrTree apply_merge(const AmrTree& tree, NodeId target,
                    const MergeConfig& config) {
  if (auto why = merge_violation(tree, target, &config)) {
    const bool empty = why->rfind("no embeddings", 0) == 0;
    throw Error(empty ? ErrorCode::NoEmbeddings : ErrorCode::InvalidMerge,
                *why);
  }
  return collapse(tree, target);
}

std::size_t total_merge_width(const AmrTree& tree) {
  std::size_t total = 0;
  for (const AmrNode& n : tree.nodes()) {
    if (n.kind == NodeKind::Merge) total += n.width;
  }
  return total;
}

namespace {

std::vector<std::string> provenance_of(const AmrTree& tree) {
  std::vector<std::string> labels;
  for (NodeId id : tree.preorder()) {
    const AmrNode& n = tree.node(id);
    if (n.kind == NodeKind::Merge) {
      labels.insert(labels.end(), n.collapsed.begin(), n.collapsed.end());
    }
  }
  return labels;
}

class Enumerator {
 public:
  Enumerator(const MergeConfig& config, MergeTreeSet& out)
      : config_(config), out_(out) {}

  void run() {
    seen_.insert(canonical_key(out_.original));
    explore(out_.original);
  }

 private:
  void explore(const AmrTree& tree) {
    for (NodeId target : tree.preorder()) {
      if (out_.capped) return;
      if (tree.node(target).kind != NodeKind::Instance) continue;
      if (!is_valid_merge(tree, target, config_)) continue;
      AmrTree merged = collapse(tree, target);
      if (!seen_.insert(canonical_key(merged)).second) continue;
      if (out_.size() >= config_.max_variants) {
        out_.capped = true;
        return;
      }
      out_.provenance.push_back(provenance_of(merged));
      out_.variants.push_back(std::move(merged));
      // Copy: the vector may reallocate while exploring deeper.
      const AmrTree next = out_.variants.back();
      explore(next);
    }
  }

  const MergeConfig& config_;
  MergeTreeSet& out_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

MergeTreeSet enumerate_merge_trees(const AmrTree& tree,
                                   const MergeConfig& config) {
  config.validate();
  if (tree.count(NodeKind::Merge) != 0) {
    throw Error(ErrorCode::InvalidMerge,
                "enumeration starts from an unmerged tree");
  }
  MergeTreeSet out{tree, {}, {}, false};
  Enumerator(config, out).run();
  return out;
}

double collapsability(const MergeTreeSet& merges) {
  std::size_t min_nodes = merges.original.size();
  std::size_t max_nodes = merges.original.size();
  for (const AmrTree& t : merges.variants) {
    min_nodes = std::min(min_nodes, t.size());
    max_nodes = std::max(max_nodes, t.size());
  }
  if (max_nodes <= 1) {
    throw Error(ErrorCode::UndefinedCollapsability,
                "collapsability of a single-node tree is undefined");
  }
  return 1.0 - static_cast<double>(min_nodes - 1) /
                   static_cast<double>(max_nodes - 1);
}

double collapsability(const AmrTree& tree, const MergeConfig& config) {
  if (tree.size() <= 1) {
    throw Error(ErrorCode::UndefinedCollapsability,
                "collapsability of a single-node tree is undefined");
  }
  return collapsability(enumerate_merge_trees(tree, config));
}

}  // namespace reasoner
