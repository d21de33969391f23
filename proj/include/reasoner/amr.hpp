#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reasoner/similarity.hpp"

namespace reasoner {

enum class NodeKind { Instance, Constant, Coreference, Merge };

const char* to_string(NodeKind kind);

using NodeId = std::size_t;

/// Node metadata. Which fields are meaningful depends on `kind`:
/// Instance uses label/predicate/embedding, Constant uses label/embedding/
/// quoted, Coreference uses label only, Merge uses label/embedding/width/
/// collapsed.
struct AmrNode {
  NodeKind kind = NodeKind::Instance;
  std::string label;
  std::string predicate;
  std::optional<EmbeddingVector> embedding;
  std::size_t width = 0;
  bool quoted = false;
  std::vector<std::string> collapsed;

  static AmrNode instance(std::string label, std::string predicate);
  static AmrNode constant(std::string label, bool quoted = false);
  static AmrNode coreference(std::string label);
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  std::string role;
  /// Set by normalize_inverse_roles: `role` holds the base role and logic
  /// generation swaps the arguments.
  bool inverted = false;

  /// Role as written in Penman (base role plus "-of" when inverted).
  std::string surface_role() const;
};

/// Rooted AMR tree. Immutable once built; the constructor checks the tree
/// invariants and throws Error(InvalidTree) on violation.
class AmrTree {
 public:
  AmrTree(std::vector<AmrNode> nodes, std::vector<Edge> edges);

  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return root_; }
  const AmrNode& node(NodeId id) const { return nodes_.at(id); }
  std::span<const AmrNode> nodes() const noexcept { return nodes_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  /// Indices into edges() of the outgoing edges of `id`, in document order.
  std::span<const std::size_t> child_edges(NodeId id) const {
    return children_.at(id);
  }
  /// Index of the single incoming edge; empty for the root.
  std::optional<std::size_t> parent_edge(NodeId id) const;
  std::size_t depth(NodeId id) const { return depth_.at(id); }
  std::size_t max_depth() const;

  /// Depth-first, parent before children, children in edge order.
  std::vector<NodeId> preorder() const;
  /// `id` followed by all of its descendants, in preorder.
  std::vector<NodeId> subtree(NodeId id) const;

  /// Instance node defining variable `label`, if any.
  std::optional<NodeId> instance_for(std::string_view label) const;
  std::vector<NodeId> coreferences_of(NodeId instance) const;

  std::size_t count(NodeKind kind) const;
  /// Number of `:polarity` edges pointing at the constant `-`.
  std::size_t negation_count() const;
  bool is_negation_edge(std::size_t edge_index) const;

 private:
  std::vector<AmrNode> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::size_t> depth_;
  NodeId root_ = 0;
};

/// Parses one Penman-notation AMR into a tree. Repeated variables become
/// coreference nodes. Surface alignment markers (`~e.3`) are dropped.
AmrTree parse_penman(std::string_view text);

/// Serializes back to Penman. With `indent` the output uses the usual
/// one-role-per-line layout, otherwise a single line.
std::string to_penman(const AmrTree& tree, bool indent = true);

/// Removes OntoNotes sense suffixes (`go-02` -> `go`) from instance
/// predicates. Idempotent.
AmrTree strip_frame_numbers(const AmrTree& tree);
std::string strip_frame_number(std::string_view predicate);

/// Rewrites `:X-of` edges to base role `:X` with the inverted flag set.
AmrTree normalize_inverse_roles(const AmrTree& tree);
/// True for roles that denote an inverse relation (`:ARG0-of`), false for
/// real roles that happen to end in "-of" (`:consist-of`).
bool is_inverse_role(std::string_view role);

/// True when frames are stripped and no inverse role remains.
bool is_normalized(const AmrTree& tree);

/// Root-to-node path: segments `role.k` joined by '/', where k counts the
/// preceding siblings with the same surface role. The root has path "".
std::string node_path(const AmrTree& tree, NodeId id);
std::optional<NodeId> resolve_path(const AmrTree& tree, std::string_view path);

/// Structure, labels, predicates and merge widths; embeddings excluded.
/// Equal keys mean isomorphic trees.
std::string canonical_key(const AmrTree& tree);

/// Parse output plus token alignments and contextual token embeddings.
struct AlignedAmrDocument {
  std::string id;
  std::string text;
  std::string penman;
  std::vector<std::string> tokens;
  std::map<std::string, std::vector<std::size_t>> node_alignments;
  std::vector<std::vector<float>> token_embeddings;

  std::size_t embedding_dimension() const {
    return token_embeddings.empty() ? 0 : token_embeddings.front().size();
  }
};

AlignedAmrDocument parse_document(std::string_view json_text);
AlignedAmrDocument read_document(const std::string& path);
std::string to_json(const AlignedAmrDocument& doc);

/// Checks every document invariant (parseable Penman, resolvable paths,
/// token indices in range, one finite non-zero row per token, constant
/// dimension). Throws Error on the first violation.
void validate_document(const AlignedAmrDocument& doc);

/// Gives every aligned instance/constant node the mean of its tokens'
/// vectors. Coreference nodes and polarity `-` constants never get one.
AmrTree attach_embeddings(const AmrTree& tree, const AlignedAmrDocument& doc);

/// parse -> strip frames -> normalize roles -> attach embeddings.
AmrTree load_tree(const AlignedAmrDocument& doc);

}  // namespace reasoner
