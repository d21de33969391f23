#include "reasoner/logic.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "reasoner/error.hpp"

namespace reasoner {

SymbolWithEmbedding as_symbol(const Constant& c) {
  return SymbolWithEmbedding{c.symbol, c.embedding};
}

Literal Literal::complement() const {
  Literal out = *this;
  out.positive = !positive;
  return out;
}

Literal make_literal(std::string predicate, std::vector<Term> args,
                     bool positive) {
  return Literal{positive, SymbolWithEmbedding{std::move(predicate), {}},
                 std::move(args)};
}

Clause::Clause(std::vector<Literal> literals) {
  literals_.reserve(literals.size());
  for (auto& lit : literals) {
    if (std::find(literals_.begin(), literals_.end(), lit) == literals_.end()) {
      literals_.push_back(std::move(lit));
    }
  }
}

Formula Formula::make_atom(Literal literal) {
  Formula f;
  f.kind = Kind::Atom;
  f.atom = std::move(literal);
  return f;
}

Formula Formula::make_and(std::vector<Formula> conjuncts) {
  Formula f;
  f.kind = Kind::And;
  f.children = std::move(conjuncts);
  return f;
}

Formula Formula::make_not(Formula body) {
  Formula f;
  f.kind = Kind::Not;
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::make_exists(std::string variable, Formula body) {
  Formula f;
  f.kind = Kind::Exists;
  f.variable = std::move(variable);
  f.children.push_back(std::move(body));
  return f;
}

Formula Formula::make_implies(Formula antecedent, Formula consequent) {
  Formula f;
  f.kind = Kind::Implies;
  f.children.push_back(std::move(antecedent));
  f.children.push_back(std::move(consequent));
  return f;
}

// ---------------------------------------------------------------------------
// Verdicts

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Good: return "GOOD";
    case Verdict::NotGood: return "!GOOD";
    case Verdict::Bad: return "BAD";
    case Verdict::NotBad: return "!BAD";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  if (s == "GOOD") return Verdict::Good;
  if (s == "!GOOD") return Verdict::NotGood;
  if (s == "BAD") return Verdict::Bad;
  if (s == "!BAD") return Verdict::NotBad;
  return std::nullopt;
}

std::string verdict_symbol(Verdict v) {
  return v == Verdict::Good || v == Verdict::NotGood ? "GOOD" : "BAD";
}

bool verdict_negated(Verdict v) {
  return v == Verdict::NotGood || v == Verdict::NotBad;
}

VerdictLexicon VerdictLexicon::defaults() {
  VerdictLexicon lex;
  for (const char* c :
       {"good", "expect", "recommend", "okay", "ok", "fine", "reasonable",
        "right", "nice", "kind", "polite", "important", "acceptable",
        "appropriate", "normal", "understandable", "allow", "helpful",
        "responsible", "considerate", "thoughtful", "courteous", "healthy",
        "generous", "respectful", "fair"}) {
    lex.add(c, false);
  }
  for (const char* c :
       {"bad", "rude", "wrong", "inappropriate", "unacceptable", "mean",
        "selfish", "harmful", "hurtful", "unfair", "disrespectful",
        "irresponsible", "gross", "cruel", "dangerous", "unkind", "weird",
        "immoral", "illegal", "shameful", "offensive"}) {
    lex.add(c, true);
  }
  for (const char* c : {"recommend", "obligate", "possible", "expect"}) {
    lex.add_modal(c);
  }
  return lex;
}

VerdictLexicon VerdictLexicon::from_json(std::string_view json_text) {
  using nlohmann::json;
  VerdictLexicon lex;
  try {
    const json j = json::parse(json_text);
    for (const auto& [name, spec] : j.at("verdicts").items()) {
      const std::string verdict = spec.at("verdict").get<std::string>();
      if (verdict != "GOOD" && verdict != "BAD") {
        throw Error(ErrorCode::InvalidConfig,
                    "verdict for '" + name + "' must be GOOD or BAD");
      }
      lex.add(name, verdict == "BAD", spec.value("negated", false));
    }
    if (j.contains("modals")) {
      for (const auto& m : j.at("modals")) lex.add_modal(m.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig,
                std::string("verdict lexicon: ") + e.what());
  }
  return lex;
}

VerdictLexicon VerdictLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

void VerdictLexicon::add(std::string name, bool bad, bool negated) {
  entries_[std::move(name)] = Entry{bad, negated};
}

void VerdictLexicon::add_modal(std::string name) {
  modals_.insert(std::move(name));
}

std::optional<VerdictLexicon::Entry> VerdictLexicon::lookup(
    std::string_view name) const {
  const auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool VerdictLexicon::is_modal(std::string_view name) const {
  return modals_.find(name) != modals_.end();
}

// ---------------------------------------------------------------------------
// AMR -> logic

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool has_negation_child(const AmrTree& tree, NodeId id) {
  const auto kids = tree.child_edges(id);
  return std::any_of(kids.begin(), kids.end(),
                     [&](std::size_t ei) { return tree.is_negation_edge(ei); });
}

void require_normalized(const AmrTree& tree) {
  if (!is_normalized(tree)) {
    throw Error(ErrorCode::UnnormalizedTree,
                "strip frame numbers and normalize inverse roles first");
  }
}

/// Maps tree nodes to terms; instance-like nodes share one term with their
/// coreferences.
class TermNamer {
 public:
  TermNamer(const AmrTree& tree, bool ground, std::string_view suffix)
      : tree_(tree), ground_(ground) {
    const auto names = variable_names(tree);
    for (const auto& [id, name] : names) {
      names_[id] = ground ? lower(name) + std::string(suffix) : name;
    }
  }

  Term term(NodeId id) const {
    const AmrNode& n = tree_.node(id);
    if (n.kind == NodeKind::Constant) {
      return Constant{n.label, n.embedding, n.quoted};
    }
    NodeId owner = id;
    if (n.kind == NodeKind::Coreference) owner = *tree_.instance_for(n.label);
    const std::string& name = names_.at(owner);
    if (!ground_) return Variable{name};
    return Constant{name, tree_.node(owner).embedding, false};
  }

  Literal concept_literal(NodeId id, bool positive = true) const {
    const AmrNode& n = tree_.node(id);
    const std::string& pred =
        n.kind == NodeKind::Merge ? n.label : n.predicate;
    return Literal{positive, SymbolWithEmbedding{pred, n.embedding},
                   {term(id)}};
  }

  Literal role(const Edge& e) const {
    Term src = term(e.source);
    Term dst = term(e.target);
    if (e.inverted) std::swap(src, dst);
    return make_literal(e.role, {std::move(src), std::move(dst)});
  }

 private:
  const AmrTree& tree_;
  bool ground_;
  std::map<NodeId, std::string> names_;
};

bool is_entity(const AmrNode& n) {
  return n.kind == NodeKind::Instance || n.kind == NodeKind::Merge;
}

/// Depth-first literal list: concept, then per child its role literal and
/// subtree. A :polarity - edge negates its node's concept literal.
void flatten(const AmrTree& tree, const TermNamer& namer, NodeId id,
             bool under_negation, std::vector<Literal>& out) {
  const bool negated = has_negation_child(tree, id);
  if (negated && under_negation) {
    throw Error(ErrorCode::NegationUnsupported,
                "negation nested inside a negated scope at node " +
                    tree.node(id).label);
  }
  out.push_back(namer.concept_literal(id, !negated));
  for (std::size_t ei : tree.child_edges(id)) {
    if (tree.is_negation_edge(ei)) continue;
    const Edge& e = tree.edge(ei);
    out.push_back(namer.role(e));
    if (is_entity(tree.node(e.target))) {
      flatten(tree, namer, e.target, under_negation || negated, out);
    }
  }
}

class FormulaBuilder {
 public:
  explicit FormulaBuilder(const AmrTree& tree)
      : tree_(tree), namer_(tree, false, {}), hoisted_(tree.size(), false) {
    for (NodeId id : tree.preorder()) {
      if (id != tree.root() && tree.node(id).kind == NodeKind::Instance &&
          !tree.coreferences_of(id).empty() && !has_negation_child(tree, id)) {
        hoisted_[id] = true;
      }
    }
  }

  Formula build() {
    Formula body = scope(tree_.root(), std::nullopt);
    const auto order = tree_.preorder();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (!hoisted_[*it]) continue;
      std::vector<Formula> conj{Formula::make_atom(namer_.concept_literal(*it))};
      append_children(*it, conj);
      conj.push_back(std::move(body));
      body = Formula::make_exists(name_of(*it), Formula::make_and(std::move(conj)));
    }
    return body;
  }

 private:
  std::string name_of(NodeId id) const {
    return std::get<Variable>(namer_.term(id)).name;
  }

  Formula scope(NodeId id, std::optional<Literal> link) {
    std::vector<Formula> conj;
    if (link) conj.push_back(Formula::make_atom(std::move(*link)));
    conj.push_back(Formula::make_atom(namer_.concept_literal(id)));
    append_children(id, conj);
    Formula f = Formula::make_exists(name_of(id), Formula::make_and(std::move(conj)));
    if (has_negation_child(tree_, id)) f = Formula::make_not(std::move(f));
    return f;
  }

  void append_children(NodeId id, std::vector<Formula>& conj) {
    for (std::size_t ei : tree_.child_edges(id)) {
      if (tree_.is_negation_edge(ei)) continue;
      const Edge& e = tree_.edge(ei);
      const AmrNode& child = tree_.node(e.target);
      Literal link = namer_.role(e);
      if (is_entity(child) && !hoisted_[e.target]) {
        conj.push_back(scope(e.target, std::move(link)));
      } else {
        conj.push_back(Formula::make_atom(std::move(link)));
      }
    }
  }

  const AmrTree& tree_;
  TermNamer namer_;
  std::vector<bool> hoisted_;
};

std::optional<std::size_t> find_body_edge(const AmrTree& tree, bool arg1_only) {
  std::optional<std::size_t> fallback;
  for (std::size_t ei : tree.child_edges(tree.root())) {
    const Edge& e = tree.edge(ei);
    if (e.inverted || !e.role.starts_with(":ARG")) continue;
    if (e.role == ":ARG1") return ei;
    if (!arg1_only && !fallback) fallback = ei;
  }
  return fallback;
}

}  // namespace

std::map<NodeId, std::string> variable_names(const AmrTree& tree) {
  std::map<NodeId, std::string> names;
  std::set<std::string> used;
  std::size_t merges = 0;
  for (NodeId id : tree.preorder()) {
    const AmrNode& n = tree.node(id);
    std::string base;
    if (n.kind == NodeKind::Instance) {
      base = upper(n.label);
    } else if (n.kind == NodeKind::Merge) {
      base = "M" + std::to_string(++merges);
    } else {
      continue;
    }
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    names[id] = name;
  }
  return names;
}

Formula amr_to_formula(const AmrTree& tree) {
  require_normalized(tree);
  return FormulaBuilder(tree).build();
}

Implication rot_to_implication(const AmrTree& tree,
                               const VerdictLexicon& lexicon) {
  require_normalized(tree);
  const AmrNode& root = tree.node(tree.root());
  if (root.kind != NodeKind::Instance) {
    throw Error(ErrorCode::VerdictUnmapped, "root is not an instance node");
  }
  const auto entry = lexicon.lookup(root.predicate);
  const bool modal = lexicon.is_modal(root.predicate);
  if (!entry && !modal) {
    throw Error(ErrorCode::VerdictUnmapped,
                "no verdict for root concept '" + root.predicate + "'");
  }
  const auto body_edge = find_body_edge(tree, !entry && modal);
  if (!body_edge) {
    throw Error(ErrorCode::MissingBody,
                "root '" + root.predicate + "' has no argument edge");
  }
  NodeId body = tree.edge(*body_edge).target;
  if (tree.node(body).kind == NodeKind::Coreference) {
    body = *tree.instance_for(tree.node(body).label);
  }
  if (!is_entity(tree.node(body))) {
    throw Error(ErrorCode::MissingBody, "verdict argument is a constant");
  }

  const bool bad = entry ? entry->bad : false;
  bool negated = entry ? entry->negated : false;
  if (has_negation_child(tree, tree.root())) negated = !negated;

  const TermNamer namer(tree, false, {});
  Implication out;
  flatten(tree, namer, body, false, out.antecedent);
  out.verdict = bad ? (negated ? Verdict::NotBad : Verdict::Bad)
                    : (negated ? Verdict::NotGood : Verdict::Good);
  out.consequent =
      make_literal(verdict_symbol(out.verdict), {namer.term(body)}, !negated);
  return out;
}

std::vector<Literal> sst_to_facts(const AmrTree& tree,
                                  std::string_view constant_suffix) {
  require_normalized(tree);
  const TermNamer namer(tree, true, constant_suffix);
  std::vector<Literal> out;
  flatten(tree, namer, tree.root(), false, out);
  return out;
}

std::vector<Clause> to_clauses(const Implication& implication) {
  std::vector<Literal> lits;
  lits.reserve(implication.antecedent.size() + 1);
  for (const Literal& a : implication.antecedent) lits.push_back(a.complement());
  lits.push_back(implication.consequent);
  return {Clause(std::move(lits))};
}

std::vector<Clause> to_clauses(const std::vector<Literal>& facts) {
  std::vector<Clause> out;
  out.reserve(facts.size());
  for (const Literal& f : facts) out.emplace_back(std::vector<Literal>{f});
  return out;
}

std::size_t logic_term_count(const AmrTree& tree) {
  std::size_t count = 0;
  std::vector<const Formula*> stack;
  const Formula f = amr_to_formula(tree);
  stack.push_back(&f);
  while (!stack.empty()) {
    const Formula* cur = stack.back();
    stack.pop_back();
    if (cur->kind == Formula::Kind::Atom) ++count;
    for (const Formula& c : cur->children) stack.push_back(&c);
  }
  return count;
}

// ---------------------------------------------------------------------------
// Text notation

namespace {

bool is_special(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
         c == '!' || c == '&' || c == '|' || c == ',' || c == '"' || c == '#';
}

bool needs_quotes(std::string_view s) {
  if (s.empty() || std::isupper(static_cast<unsigned char>(s[0]))) return true;
  if (s.find("->") != std::string_view::npos) return true;
  return std::any_of(s.begin(), s.end(), is_special);
}

std::string quote_symbol(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string unary(const Formula& f);

std::string print(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return to_string(f.atom);
    case Formula::Kind::Not:
      return "!" + unary(f.children[0]);
    case Formula::Kind::Exists:
      return "exists " + f.variable + "." + unary(f.children[0]);
    case Formula::Kind::And: {
      std::string out;
      for (const Formula& c : f.children) {
        if (!out.empty()) out += " & ";
        out += c.kind == Formula::Kind::And && c.children.size() > 1
                   ? "(" + print(c) + ")"
                   : unary(c);
      }
      return out;
    }
    case Formula::Kind::Implies:
      return print(f.children[0]) + " -> " + unary(f.children[1]);
  }
  return {};
}

std::string unary(const Formula& f) {
  if (f.kind == Formula::Kind::And && f.children.size() == 1) {
    return unary(f.children[0]);
  }
  if ((f.kind == Formula::Kind::And && f.children.size() != 1) ||
      f.kind == Formula::Kind::Implies) {
    return "(" + print(f) + ")";
  }
  return print(f);
}

class LogicParser {
 public:
  explicit LogicParser(std::string_view text) : s_(text) {}

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  void expect_end() {
    if (!at_end()) fail("trailing input");
  }

  bool match(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!match(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos_, tok.size()) == tok;
  }

  Formula implication() {
    Formula a = conjunction();
    if (match("->")) return Formula::make_implies(std::move(a), conjunction());
    return a;
  }

  Formula conjunction() {
    std::vector<Formula> items{unit()};
    while (match("&")) items.push_back(unit());
    if (items.size() == 1) return std::move(items.front());
    return Formula::make_and(std::move(items));
  }

  Formula unit() {
    if (match("!")) return Formula::make_not(unit());
    if (keyword("exists")) {
      std::string var = name(true);
      expect(".");
      return Formula::make_exists(std::move(var), unit());
    }
    if (match("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    return Formula::make_atom(atom(true));
  }

  Literal literal() {
    const bool negated = match("!");
    return atom(!negated);
  }

  Literal atom(bool positive) {
    std::string pred = name(false);
    expect("(");
    std::vector<Term> args;
    if (!match(")")) {
      do {
        args.push_back(term());
      } while (match(","));
      expect(")");
    }
    return make_literal(std::move(pred), std::move(args), positive);
  }

  Term term() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '"') {
      return Constant{string_literal(), std::nullopt, true};
    }
    std::string n = name(false);
    if (std::isupper(static_cast<unsigned char>(n[0]))) return Variable{n};
    return Constant{n, std::nullopt, false};
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::MalformedLogic,
                what + " at offset " + std::to_string(pos_) + " in '" +
                    std::string(s_) + "'");
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
    }
  }

  bool keyword(std::string_view kw) {
    skip();
    if (s_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t after = pos_ + kw.size();
    if (after >= s_.size() || !std::isspace(static_cast<unsigned char>(s_[after]))) {
      return false;
    }
    pos_ = after;
    return true;
  }

  std::string name(bool stop_at_dot) {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !is_special(s_[pos_])) {
      if (s_[pos_] == '-' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') break;
      if (stop_at_dot && s_[pos_] == '.') break;
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string string_literal() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out.push_back(s_[pos_++]);
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect_literals(const Formula& f, bool positive, std::vector<Literal>& out,
                      const LogicParser& p) {
  switch (f.kind) {
    case Formula::Kind::Atom: {
      Literal l = f.atom;
      l.positive = l.positive == positive;
      out.push_back(std::move(l));
      return;
    }
    case Formula::Kind::Not:
      collect_literals(f.children[0], !positive, out, p);
      return;
    case Formula::Kind::And:
      for (const Formula& c : f.children) collect_literals(c, positive, out, p);
      return;
    default:
      p.fail("only literals may appear in a clause");
  }
}

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

}  // namespace

std::string to_string(const Term& term) {
  if (const auto* v = std::get_if<Variable>(&term)) return v->name;
  const auto& c = std::get<Constant>(term);
  return c.quoted || needs_quotes(c.symbol) ? quote_symbol(c.symbol) : c.symbol;
}

std::string to_string(const Literal& literal) {
  std::string out = literal.positive ? "" : "!";
  out += literal.predicate.symbol + "(";
  for (std::size_t i = 0; i < literal.args.size(); ++i) {
    if (i) out += ",";
    out += to_string(literal.args[i]);
  }
  return out + ")";
}

std::string to_string(const Clause& clause) {
  if (clause.empty()) return "[]";
  std::string out;
  for (const Literal& l : clause.literals()) {
    if (!out.empty()) out += " | ";
    out += to_string(l);
  }
  return out;
}

std::string to_string(const Formula& formula) { return print(formula); }

std::string to_string(const Implication& implication) {
  std::string out;
  for (const Literal& l : implication.antecedent) {
    if (!out.empty()) out += " & ";
    out += to_string(l);
  }
  return out + " -> " + to_string(implication.consequent);
}

Term parse_term(std::string_view text) {
  LogicParser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

Literal parse_literal(std::string_view text) {
  LogicParser p(text);
  Literal l = p.literal();
  p.expect_end();
  return l;
}

Formula parse_formula(std::string_view text) {
  LogicParser p(text);
  Formula f = p.implication();
  p.expect_end();
  return f;
}

Clause parse_clause(std::string_view text) {
  LogicParser p(text);
  if (p.match("[]")) {
    p.expect_end();
    return Clause{};
  }
  std::vector<Literal> lits{p.literal()};
  if (p.peek("&") || p.peek("->")) {
    Formula f = parse_formula(text);
    std::vector<Literal> out;
    if (f.kind == Formula::Kind::Implies) {
      collect_literals(f.children[0], false, out, p);
      collect_literals(f.children[1], true, out, p);
      if (out.empty() || f.children[1].kind == Formula::Kind::And) {
        p.fail("implication must conclude a single literal");
      }
    } else {
      p.fail("a conjunction is not a clause");
    }
    return Clause(std::move(out));
  }
  while (p.match("|")) lits.push_back(p.literal());
  p.expect_end();
  return Clause(std::move(lits));
}

std::vector<Clause> parse_clauses(std::string_view text) {
  std::vector<Clause> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const std::string line = strip_comment(
        text.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                        : nl - start));
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      out.push_back(parse_clause(line));
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

Literal attach_symbol_embeddings(
    Literal literal,
    const std::map<std::string, EmbeddingVector, std::less<>>& table) {
  if (const auto it = table.find(literal.predicate.symbol); it != table.end()) {
    literal.predicate.embedding = it->second;
  }
  for (Term& t : literal.args) {
    if (auto* c = std::get_if<Constant>(&t)) {
      if (const auto it = table.find(c->symbol); it != table.end()) {
        c->embedding = it->second;
      }
    }
  }
  return literal;
}

void attach_symbol_embeddings(
    std::vector<Clause>& clauses,
    const std::map<std::string, EmbeddingVector, std::less<>>& table) {
  for (Clause& clause : clauses) {
    std::vector<Literal> lits;
    for (const Literal& l : clause.literals()) {
      lits.push_back(attach_symbol_embeddings(l, table));
    }
    clause = Clause(std::move(lits));
  }
}

}  // namespace reasoner
