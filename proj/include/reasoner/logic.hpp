#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reasoner/amr.hpp"
#include "reasoner/similarity.hpp"

namespace reasoner {

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Constant {
  std::string symbol;
  std::optional<EmbeddingVector> embedding;
  bool quoted = false;
  friend bool operator==(const Constant&, const Constant&) = default;
};

/// No function symbols: a term is a variable or a constant.
using Term = std::variant<Variable, Constant>;

inline bool is_variable(const Term& t) {
  return std::holds_alternative<Variable>(t);
}
SymbolWithEmbedding as_symbol(const Constant& c);

struct Literal {
  bool positive = true;
  SymbolWithEmbedding predicate;
  std::vector<Term> args;

  Literal complement() const;
  /// Role predicates are written with a leading ':' and are binary.
  bool is_role() const { return predicate.symbol.starts_with(':'); }

  friend bool operator==(const Literal&, const Literal&) = default;
};

Literal make_literal(std::string predicate, std::vector<Term> args,
                     bool positive = true);

/// Disjunction of literals; duplicates are dropped on construction, first
/// occurrence wins. Variables are implicitly universally quantified.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  std::size_t size() const noexcept { return literals_.size(); }
  bool empty() const noexcept { return literals_.empty(); }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

struct Formula {
  enum class Kind { Atom, And, Not, Exists, Implies };

  Kind kind = Kind::Atom;
  Literal atom;                   // Atom
  std::vector<Formula> children;  // And: conjuncts; Not/Exists: body;
                                  // Implies: antecedent, consequent
  std::string variable;           // Exists

  static Formula make_atom(Literal literal);
  static Formula make_and(std::vector<Formula> conjuncts);
  static Formula make_not(Formula body);
  static Formula make_exists(std::string variable, Formula body);
  static Formula make_implies(Formula antecedent, Formula consequent);
};

enum class Verdict { Good, NotGood, Bad, NotBad };

const char* to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);
/// The verdict predicate symbol: "GOOD" or "BAD".
std::string verdict_symbol(Verdict v);
bool verdict_negated(Verdict v);

/// ROT logical form: antecedent conjunction implies one verdict literal.
struct Implication {
  std::vector<Literal> antecedent;
  Literal consequent;
  Verdict verdict = Verdict::Good;
};

/// Maps verdict concepts (rude, good, ...) to GOOD/BAD, plus the modal
/// concepts whose :ARG1 holds the body of a GOOD verdict.
class VerdictLexicon {
 public:
  struct Entry {
    bool bad = false;
    bool negated = false;
  };

  static VerdictLexicon defaults();
  static VerdictLexicon from_json(std::string_view json_text);
  static VerdictLexicon load(const std::string& path);

  void add(std::string name, bool bad, bool negated = false);
  void add_modal(std::string name);

  std::optional<Entry> lookup(std::string_view name) const;
  bool is_modal(std::string_view name) const;

  const std::map<std::string, Entry, std::less<>>& entries() const {
    return entries_;
  }
  const std::set<std::string, std::less<>>& modals() const { return modals_; }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
  std::set<std::string, std::less<>> modals_;
};

/// Existentially quantified conjunction of concept and role literals.
/// Coreferenced instances are quantified at the outermost level; a
/// `:polarity -` edge negates its node's whole existential scope.
/// Throws UnnormalizedTree unless frames are stripped and inverse roles
/// normalized.
Formula amr_to_formula(const AmrTree& tree);

/// Variable name a tree node gets in generated logic (uppercase label; merge
/// nodes are numbered). Constant names for grounded facts are the lowercase
/// form plus an optional suffix.
std::map<NodeId, std::string> variable_names(const AmrTree& tree);

/// Rule-of-thumb transform: drop quantifiers, cut the verdict concept and the
/// edge linking it to the body, and conclude GOOD/BAD of the body node.
Implication rot_to_implication(const AmrTree& tree,
                               const VerdictLexicon& lexicon);

/// Situation transform: every instance becomes a fresh constant carrying
/// the node embedding; `constant_suffix` is appended to constant names.
std::vector<Literal> sst_to_facts(const AmrTree& tree,
                                  std::string_view constant_suffix = {});

/// A1 & ... & An -> C  becomes  {!A1, ..., !An, C}.
std::vector<Clause> to_clauses(const Implication& implication);
/// Each fact becomes a unit clause.
std::vector<Clause> to_clauses(const std::vector<Literal>& facts);

/// Literal count of the unmerged conversion (concept + role literals).
std::size_t logic_term_count(const AmrTree& tree);

// Text notation: `!` negation, `&` conjunction, `|` disjunction, `->`
// implication, `exists X.`; uppercase-initial terms are variables, other
// terms are constants, quoted strings are constants.

std::string to_string(const Term& term);
std::string to_string(const Literal& literal);
std::string to_string(const Clause& clause);
std::string to_string(const Formula& formula);
std::string to_string(const Implication& implication);

Term parse_term(std::string_view text);
Literal parse_literal(std::string_view text);
Formula parse_formula(std::string_view text);
/// Accepts `l1 | l2 | ...`, `a & b -> c`, or `[]` for the empty clause.
Clause parse_clause(std::string_view text);
/// One clause per non-blank line; `#` starts a comment.
std::vector<Clause> parse_clauses(std::string_view text);

/// Attaches embeddings to every predicate and constant whose symbol is a
/// key of `table`.
void attach_symbol_embeddings(
    std::vector<Clause>& clauses,
    const std::map<std::string, EmbeddingVector, std::less<>>& table);
Literal attach_symbol_embeddings(
    Literal literal,
    const std::map<std::string, EmbeddingVector, std::less<>>& table);

}  // namespace reasoner
