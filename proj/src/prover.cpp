#include "reasoner/prover.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "reasoner/error.hpp"

namespace reasoner {

void ProverConfig::validate() const {
  if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "threshold must lie in [0, 1]");
  }
  if (max_proof_depth < 1 || max_resolvent_width < 1 || max_expansions < 1) {
    throw Error(ErrorCode::InvalidConfig, "prover caps must be positive");
  }
}

namespace {

const Term& walk(const Substitution& s, const Term& term) {
  const Term* cur = &term;
  std::size_t hops = 0;
  while (const auto* v = std::get_if<Variable>(cur)) {
    const auto it = s.find(v->name);
    if (it == s.end()) break;
    cur = &it->second;
    if (++hops > s.size()) {
      throw Error(ErrorCode::MalformedLogic,
                  "cyclic substitution through " + v->name);
    }
  }
  return *cur;
}

}  // namespace

Term apply(const Substitution& s, const Term& term) { return walk(s, term); }

Literal apply(const Substitution& s, const Literal& literal) {
  Literal out = literal;
  for (Term& t : out.args) t = walk(s, t);
  return out;
}

Clause apply(const Substitution& s, const Clause& clause) {
  std::vector<Literal> lits;
  lits.reserve(clause.size());
  for (const Literal& l : clause.literals()) lits.push_back(apply(s, l));
  return Clause(std::move(lits));
}

Substitution normalize(const Substitution& s) {
  Substitution out;
  for (const auto& [var, term] : s) out.emplace(var, walk(s, term));
  for (const auto& [var, term] : out) {
    if (const auto* v = std::get_if<Variable>(&term); v && v->name == var) {
      throw Error(ErrorCode::MalformedLogic, "variable bound to itself: " + var);
    }
  }
  return out;
}

std::optional<UnifyResult> unify(const Literal& a, const Literal& b,
                                 const Substitution& substitution,
                                 const ProverConfig& config,
                                 const SimilarityFn& similarity) {
  if (a.args.size() != b.args.size()) {
    throw Error(ErrorCode::ArityMismatch,
                to_string(a) + " vs " + to_string(b));
  }
  const double tau = config.similarity_threshold;
  double sim = similarity(a.predicate, b.predicate);
  if (!(sim > tau)) return std::nullopt;

  Substitution s = substitution;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Term t1 = walk(s, a.args[i]);
    const Term t2 = walk(s, b.args[i]);
    const auto* v1 = std::get_if<Variable>(&t1);
    const auto* v2 = std::get_if<Variable>(&t2);
    if (!v1 && !v2) {
      sim = std::min(sim, similarity(as_symbol(std::get<Constant>(t1)),
                                     as_symbol(std::get<Constant>(t2))));
      if (!(sim > tau)) return std::nullopt;
    } else if (v1) {
      if (v2 && v1->name == v2->name) continue;
      s[v1->name] = t2;
    } else {
      s[v2->name] = t1;
    }
  }
  return UnifyResult{normalize(s), sim};
}

namespace {

void collect_variables(const Clause& c, std::set<std::string>& out) {
  for (const Literal& l : c.literals()) {
    for (const Term& t : l.args) {
      if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
    }
  }
}

Clause rename_variables(const Clause& c, const std::string& suffix,
                        const std::set<std::string>* only) {
  std::vector<Literal> lits;
  for (Literal l : c.literals()) {
    for (Term& t : l.args) {
      if (auto* v = std::get_if<Variable>(&t)) {
        if (!only || only->count(v->name)) v->name += suffix;
      }
    }
    lits.push_back(std::move(l));
  }
  return Clause(std::move(lits));
}

Clause resolvent_of(const Clause& left, std::size_t i, const Clause& right,
                    std::size_t j, const Substitution& s) {
  std::vector<Literal> lits;
  lits.reserve(left.size() + right.size());
  for (std::size_t k = 0; k < left.size(); ++k) {
    if (k != i) lits.push_back(apply(s, left[k]));
  }
  for (std::size_t k = 0; k < right.size(); ++k) {
    if (k != j) lits.push_back(apply(s, right[k]));
  }
  return Clause(std::move(lits));
}

bool complementary(const Literal& a, const Literal& b) {
  return a.positive != b.positive && a.args.size() == b.args.size();
}

}  // namespace

std::vector<Resolvent> resolve(const Clause& left, const Clause& right,
                               const ProverConfig& config,
                               const SimilarityFn& similarity) {
  std::set<std::string> lv, rv, clash;
  collect_variables(left, lv);
  collect_variables(right, rv);
  std::set_intersection(lv.begin(), lv.end(), rv.begin(), rv.end(),
                        std::inserter(clash, clash.begin()));
  const Clause renamed =
      clash.empty() ? right : rename_variables(right, "#r", &clash);

  std::vector<Resolvent> out;
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < renamed.size(); ++j) {
      if (!complementary(left[i], renamed[j])) continue;
      auto u = unify(left[i], renamed[j], {}, config, similarity);
      if (!u) continue;
      Clause c = resolvent_of(left, i, renamed, j, u->substitution);
      const auto dup = std::find_if(out.begin(), out.end(), [&](const Resolvent& r) {
        return r.clause == c;
      });
      if (dup != out.end()) {
        if (u->similarity > dup->similarity) {
          *dup = Resolvent{std::move(c), u->similarity, std::move(u->substitution), i, j};
        }
        continue;
      }
      out.push_back(Resolvent{std::move(c), u->similarity,
                              std::move(u->substitution), i, j});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct SearchNode {
  Clause clause;
  double score = 1.0;
  /// Upper bound on the score of any refutation continuing from here.
  double bound = 1.0;
  std::size_t depth = 0;
  std::size_t sequence = 0;
  std::shared_ptr<const SearchNode> parent;
  std::optional<ProofStep> step;
};

using NodePtr = std::shared_ptr<const SearchNode>;

struct NodeOrder {
  bool operator()(const NodePtr& a, const NodePtr& b) const {
    if (a->bound != b->bound) return a->bound < b->bound;
    if (a->clause.size() != b->clause.size()) {
      return a->clause.size() > b->clause.size();
    }
    if (a->depth != b->depth) return a->depth > b->depth;
    return a->sequence > b->sequence;
  }
};

/// Clause key with variables numbered by first appearance; embeddings are
/// keyed by storage identity.
std::string clause_key(const Clause& c) {
  std::map<std::string, std::size_t> vars;
  std::ostringstream out;
  auto emb = [&](const std::optional<EmbeddingVector>& e) {
    if (e) out << '@' << e->identity();
  };
  for (const Literal& l : c.literals()) {
    out << (l.positive ? '+' : '-') << l.predicate.symbol;
    emb(l.predicate.embedding);
    out << '(';
    for (const Term& t : l.args) {
      if (const auto* v = std::get_if<Variable>(&t)) {
        const auto [it, _] = vars.emplace(v->name, vars.size());
        out << '?' << it->second;
      } else {
        const auto& k = std::get<Constant>(t);
        out << '\'' << k.symbol << '\'';
        emb(k.embedding);
      }
      out << ',';
    }
    out << ')';
  }
  return out.str();
}

/// Literals linked to literal 0 through shared variables. Steps on
/// variable-disjoint literals commute without changing any step similarity,
/// so resolving only this group loses no proof and no score.
std::vector<bool> first_group(const Clause& c) {
  std::vector<bool> in(c.size(), false);
  if (c.empty()) return in;
  std::set<std::string> vars;
  auto absorb = [&](const Literal& l) {
    for (const Term& t : l.args) {
      if (const auto* v = std::get_if<Variable>(&t)) vars.insert(v->name);
    }
  };
  auto touches = [&](const Literal& l) {
    return std::any_of(l.args.begin(), l.args.end(), [&](const Term& t) {
      const auto* v = std::get_if<Variable>(&t);
      return v && vars.count(v->name);
    });
  };
  in[0] = true;
  absorb(c[0]);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (!in[i] && touches(c[i])) {
        in[i] = true;
        absorb(c[i]);
        grew = true;
      }
    }
  }
  return in;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [var, term] : first) out.emplace(var, walk(second, term));
  for (const auto& [var, term] : second) out.emplace(var, term);
  return out;
}

Proof assemble(const NodePtr& goal) {
  Proof proof;
  for (const SearchNode* n = goal.get(); n && n->step; n = n->parent.get()) {
    proof.steps.push_back(*n->step);
  }
  std::reverse(proof.steps.begin(), proof.steps.end());
  proof.similarity = 1.0;
  for (const ProofStep& s : proof.steps) {
    proof.similarity = std::min(proof.similarity, s.similarity);
    proof.final_substitution = compose(proof.final_substitution, s.substitution);
  }
  return proof;
}

}  // namespace

namespace {

/// Literals the search may resolve next: the first ground literal if there
/// is one, else the first variable-linked group.
std::vector<bool> selectable_literals(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& args = c[i].args;
    if (std::none_of(args.begin(), args.end(), is_variable)) {
      std::vector<bool> only(c.size(), false);
      only[i] = true;
      return only;
    }
  }
  return first_group(c);
}

/// Every literal must still be resolved, and binding more variables can
/// only lower a unification score, so the best partner each literal has now
/// bounds any completion. Zero when some literal has no partner left.
double completion_bound(const Clause& c, double score,
                        const std::vector<Clause>& inputs,
                        const ProverConfig& config,
                        const SimilarityFn& similarity) {
  double bound = score;
  for (const Literal& l : c.literals()) {
    double best = 0.0;
    for (const Clause& in : inputs) {
      for (const Literal& m : in.literals()) {
        if (!complementary(l, m)) continue;
        if (const auto u = unify(l, m, {}, config, similarity)) {
          best = std::max(best, u->similarity);
        }
      }
      if (best >= bound) break;
    }
    bound = std::min(bound, best);
    if (!(bound > config.similarity_threshold)) return 0.0;
  }
  return bound;
}

/// Whether some substitution could make the two literals identical, and so
/// let clause deduplication fold them into one.
bool may_merge(const Literal& a, const Literal& b) {
  if (a.positive != b.positive || !(a.predicate == b.predicate) ||
      a.args.size() != b.args.size()) {
    return false;
  }
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Term t1 = walk(s, a.args[i]);
    const Term t2 = walk(s, b.args[i]);
    const auto* v1 = std::get_if<Variable>(&t1);
    const auto* v2 = std::get_if<Variable>(&t2);
    if (!v1 && !v2) {
      if (!(t1 == t2)) return false;
    } else if (v1) {
      if (v2 && v1->name == v2->name) continue;
      s[v1->name] = t2;
    } else {
      s[v2->name] = t1;
    }
  }
  return true;
}

/// Each step removes one literal. Literals that can never become identical
/// each need their own step, so any such set bounds the steps still needed.
std::size_t steps_needed(const Clause& c) {
  std::vector<const Literal*> apart;
  for (const Literal& l : c.literals()) {
    if (std::none_of(apart.begin(), apart.end(),
                     [&](const Literal* o) { return may_merge(l, *o); })) {
      apart.push_back(&l);
    }
  }
  return apart.size();
}

}  // namespace

ProveResult prove(std::span<const Clause> kb, const Literal& goal,
                  const ProverConfig& config, const SimilarityFn& similarity) {
  config.validate();
  std::vector<Clause> inputs(kb.begin(), kb.end());
  inputs.push_back(Clause({goal.complement()}));
  std::vector<Clause> probe;
  for (const Clause& c : inputs) probe.push_back(rename_variables(c, "#b", nullptr));

  ProveResult result;
  std::priority_queue<NodePtr, std::vector<NodePtr>, NodeOrder> frontier;
  std::unordered_map<std::string, std::pair<double, std::size_t>> best;
  std::size_t sequence = 0;

  auto root = std::make_shared<SearchNode>();
  root->clause = inputs.back();
  root->bound = completion_bound(root->clause, 1.0, probe, config, similarity);
  root->sequence = sequence++;
  if (!(root->bound > config.similarity_threshold)) return result;
  best.emplace(clause_key(root->clause), std::make_pair(1.0, std::size_t{0}));
  frontier.push(root);

  while (!frontier.empty()) {
    NodePtr node = frontier.top();
    frontier.pop();
    if (node->clause.empty()) {
      result.proof = assemble(node);
      return result;
    }
    if (result.stats.expanded >= config.max_expansions) {
      result.stats.cap_hit = true;
      break;
    }
    ++result.stats.expanded;
    const std::size_t depth = node->depth + 1;
    const std::string suffix = "#" + std::to_string(depth);
    const std::vector<bool> selectable = selectable_literals(node->clause);

    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const Clause input = rename_variables(inputs[k], suffix, nullptr);
      for (std::size_t i = 0; i < node->clause.size(); ++i) {
        if (!selectable[i]) continue;
        for (std::size_t j = 0; j < input.size(); ++j) {
          if (!complementary(node->clause[i], input[j])) continue;
          auto u = unify(node->clause[i], input[j], {}, config, similarity);
          if (!u) continue;
          Clause res = resolvent_of(node->clause, i, input, j, u->substitution);
          if (depth + steps_needed(res) > config.max_proof_depth ||
              res.size() > config.max_resolvent_width) {
            result.stats.cap_hit = true;
            continue;
          }
          const double score = std::min(node->score, u->similarity);
          const std::string key = clause_key(res);
          const auto seen = best.find(key);
          if (seen != best.end() && seen->second.first >= score &&
              seen->second.second <= depth) {
            continue;
          }
          const double bound = completion_bound(res, score, probe, config, similarity);
          if (!(bound > config.similarity_threshold)) continue;
          if (seen == best.end() || score > seen->second.first) {
            best[key] = {score, depth};
          }
          auto child = std::make_shared<SearchNode>();
          child->step = ProofStep{node->clause, input,        k, i, j,
                                  u->similarity, u->substitution, res};
          child->clause = std::move(res);
          child->score = score;
          child->bound = bound;
          child->depth = depth;
          child->sequence = sequence++;
          child->parent = node;
          ++result.stats.generated;
          frontier.push(std::move(child));
        }
      }
    }
  }
  return result;
}

bool verify_proof(const Proof& proof, const ProverConfig& config,
                  const SimilarityFn& similarity, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (proof.steps.empty()) return fail("proof has no steps");
  double min_sim = 1.0;
  for (std::size_t k = 0; k < proof.steps.size(); ++k) {
    const ProofStep& s = proof.steps[k];
    const std::string at = "step " + std::to_string(k + 1) + ": ";
    if (k > 0 && !(s.left == proof.steps[k - 1].resolvent)) {
      return fail(at + "left parent is not the previous resolvent");
    }
    if (s.left_literal >= s.left.size() || s.right_literal >= s.right.size()) {
      return fail(at + "literal index out of range");
    }
    const Literal& a = s.left[s.left_literal];
    const Literal& b = s.right[s.right_literal];
    if (!complementary(a, b)) return fail(at + "literals are not complementary");
    const auto u = unify(a, b, {}, config, similarity);
    if (!u) return fail(at + "literals do not unify");
    if (u->similarity != s.similarity) return fail(at + "similarity differs");
    if (u->substitution != s.substitution) return fail(at + "unifier differs");
    if (!(resolvent_of(s.left, s.left_literal, s.right, s.right_literal,
                       s.substitution) == s.resolvent)) {
      return fail(at + "resolvent is not the resolution of its parents");
    }
    min_sim = std::min(min_sim, s.similarity);
  }
  if (!proof.steps.back().resolvent.empty()) {
    return fail("last resolvent is not empty");
  }
  if (min_sim != proof.similarity) {
    return fail("proof similarity is not the minimum step similarity");
  }
  return true;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  for (const auto& [var, term] : s) {
    if (out.size() > 1) out += ", ";
    out += var + "/" + to_string(term);
  }
  return out + "}";
}

std::string format_proof(const Proof& proof) {
  std::ostringstream out;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", proof.similarity);
  out << "proof similarity " << buf << ", " << proof.steps.size()
      << " steps\n";
  for (std::size_t k = 0; k < proof.steps.size(); ++k) {
    const ProofStep& s = proof.steps[k];
    std::snprintf(buf, sizeof buf, "%.6f", s.similarity);
    out << "step " << (k + 1) << "\n"
        << "  left:       " << to_string(s.left) << "\n"
        << "  right:      " << to_string(s.right) << "\n"
        << "  unified:    " << to_string(s.left[s.left_literal]) << "  ~  "
        << to_string(s.right[s.right_literal]) << "\n"
        << "  similarity: " << buf << "\n"
        << "  subst:      " << to_string(s.substitution) << "\n"
        << "  resolvent:  " << to_string(s.resolvent) << "\n";
  }
  return out.str();
}

}  // namespace reasoner
