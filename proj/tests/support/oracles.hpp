#pragma once

// Reference implementations used only by the tests. They share data types
// with the library but none of its algorithms.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reasoner/amr.hpp"
#include "reasoner/logic.hpp"
#include "reasoner/merge.hpp"
#include "reasoner/similarity.hpp"

namespace oracle {

std::string data_path(const std::string& relative);

// ---- merges -------------------------------------------------------------

/// AMR tree as explicit node and edge sets, merged by set algebra:
/// N' = (N \ J) u {m}, edges into J redirected to m, edges inside J dropped.
struct SetTree {
  struct Node {
    reasoner::NodeKind kind;
    std::string label;
    std::string predicate;
    std::vector<double> embedding;  // empty when absent
    std::size_t width = 0;
  };
  struct Arc {
    int source, target;
    std::string role;  // surface role
  };
  std::map<int, Node> nodes;
  std::vector<Arc> arcs;
  int next_id = 0;

  static SetTree from(const reasoner::AmrTree& tree);
  int root() const;
  std::vector<int> region(int target) const;  // target plus descendants
  std::size_t depth(int id) const;
  std::size_t negations() const;
  std::string key() const;
};

struct MergeLimits {
  std::size_t max_width = 6;
  std::size_t min_depth = 1;
};

std::optional<SetTree> merge(const SetTree& t, int target,
                             const MergeLimits& limits);

/// Every distinct tree reachable through valid merges, original included.
std::vector<SetTree> enumerate(const SetTree& t, const MergeLimits& limits);

double collapsability(const std::vector<SetTree>& trees);

/// Random Penman tree with `max_nodes` nodes at most. Includes constants,
/// polarity negations and coreferences.
std::string random_penman(std::mt19937_64& rng, std::size_t max_nodes);

/// Gives each instance/constant node except polarity `-` an embedding with
/// probability `p`.
reasoner::AmrTree with_random_embeddings(const reasoner::AmrTree& tree,
                                         std::mt19937_64& rng, double p,
                                         std::size_t dim = 4);

// ---- proofs -------------------------------------------------------------

/// Best min-step similarity over every input-resolution refutation of at
/// most `max_depth` steps, selecting any literal at any step. Negative when
/// there is none.
double best_refutation(const std::vector<reasoner::Clause>& kb,
                       const reasoner::Literal& goal, double tau,
                       std::size_t max_depth,
                       const reasoner::SimilarityFn& similarity);

struct RandomKb {
  std::vector<reasoner::Clause> kb;
  reasoner::Literal goal;
};

/// Up to eight clauses of one to three literals over four predicates with
/// correlated embeddings, so similarities spread over roughly (0.6, 1].
RandomKb random_kb(std::mt19937_64& rng);

/// Complete ground resolution (Herbrand expansion + saturation) with exact
/// symbol equality. True when kb plus the negated goal is unsatisfiable.
bool entails(const std::vector<reasoner::Clause>& kb,
             const reasoner::Literal& goal);

struct Problem {
  std::string name;
  bool provable = false;  // as labelled in the suite file
  std::vector<reasoner::Clause> kb;
  reasoner::Literal goal;
};

/// Reads the block format of data/classical_suite.txt.
std::vector<Problem> load_problems(const std::string& path);

// ---- formulas -----------------------------------------------------------

/// Equal up to a bijective renaming of variables and the order of
/// conjuncts.
bool alpha_equivalent(const reasoner::Formula& a, const reasoner::Formula& b);

reasoner::Formula as_formula(const reasoner::Implication& implication);
reasoner::Formula as_formula(const std::vector<reasoner::Literal>& facts);

}  // namespace oracle
