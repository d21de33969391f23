#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reasoner/logic.hpp"
#include "reasoner/similarity.hpp"

namespace reasoner {

using Substitution = std::map<std::string, Term>;

struct ProverConfig {
  /// Unification succeeds only when its similarity is strictly above this.
  double similarity_threshold = 0.925;
  std::size_t max_proof_depth = 12;
  std::size_t max_resolvent_width = 20;
  /// Clauses expanded before the search gives up.
  std::size_t max_expansions = 200000;

  void validate() const;
};

struct UnifyResult {
  Substitution substitution;
  double similarity = 0.0;
};

/// Similarity-gated unification of two atoms (polarity is ignored).
///
/// The predicate similarity seeds the score; constant/constant argument
/// pairs fold their similarity in with min; a variable binds to whatever it
/// meets at no cost. Fails unless the final score is above the threshold.
/// Throws ArityMismatch for atoms of different arity.
std::optional<UnifyResult> unify(const Literal& a, const Literal& b,
                                 const Substitution& substitution,
                                 const ProverConfig& config,
                                 const SimilarityFn& similarity);

Term apply(const Substitution& s, const Term& term);
Literal apply(const Substitution& s, const Literal& literal);
Clause apply(const Substitution& s, const Clause& clause);

/// Fully resolves every binding so no bound variable appears in a range.
/// Throws MalformedLogic on a cyclic variable chain.
Substitution normalize(const Substitution& s);

struct Resolvent {
  Clause clause;
  double similarity = 0.0;
  Substitution substitution;
  std::size_t left_literal = 0;
  std::size_t right_literal = 0;
};

/// All binary resolvents of two clauses on complementary literal pairs
/// whose atoms unify above the threshold. Variables of `right` that clash
/// with `left` are renamed first.
std::vector<Resolvent> resolve(const Clause& left, const Clause& right,
                               const ProverConfig& config,
                               const SimilarityFn& similarity);

struct ProofStep {
  Clause left;   ///< current clause of the refutation
  Clause right;  ///< input clause, variables renamed apart
  /// Index into the knowledge base, or kb.size() for the negated goal.
  std::size_t input_index = 0;
  std::size_t left_literal = 0;
  std::size_t right_literal = 0;
  double similarity = 0.0;
  Substitution substitution;
  Clause resolvent;
};

struct Proof {
  std::vector<ProofStep> steps;
  /// Minimum over the step similarities.
  double similarity = 0.0;
  Substitution final_substitution;
};

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t generated = 0;
  /// Some branch was cut by the depth, width or expansion caps, so "no
  /// proof" only means none within the caps.
  bool cap_hit = false;
};

struct ProveResult {
  std::optional<Proof> proof;
  SearchStats stats;
};

/// Refutation by linear input resolution from the negated goal. Best-first
/// on the running minimum similarity, so the first empty clause reached is
/// a maximum-similarity proof within the caps. Ties go to the clause with
/// fewer literals left, then fewer steps, then the earlier-generated clause.
/// A ground literal is resolved first when there is one; otherwise only
/// literals sharing variables with the first literal are selected. Branches
/// whose best reachable score is not above the threshold, or that cannot
/// finish within the depth cap, are cut.
ProveResult prove(std::span<const Clause> kb, const Literal& goal,
                  const ProverConfig& config, const SimilarityFn& similarity);

/// Replays a proof step by step: each resolvent must be the resolution of
/// its parents under the recorded unifier, steps must chain, the score must
/// be the minimum step similarity, and the last resolvent must be empty.
bool verify_proof(const Proof& proof, const ProverConfig& config,
                  const SimilarityFn& similarity, std::string* why = nullptr);

std::string to_string(const Substitution& s);
/// Human-readable step table.
std::string format_proof(const Proof& proof);

}  // namespace reasoner
