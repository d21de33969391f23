#include "reasoner/amr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "reasoner/error.hpp"

namespace reasoner {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Instance: return "instance";
    case NodeKind::Constant: return "constant";
    case NodeKind::Coreference: return "coreference";
    case NodeKind::Merge: return "merge";
  }
  return "unknown";
}

AmrNode AmrNode::instance(std::string label, std::string predicate) {
  AmrNode n;
  n.kind = NodeKind::Instance;
  n.label = std::move(label);
  n.predicate = std::move(predicate);
  return n;
}

AmrNode AmrNode::constant(std::string label, bool quoted) {
  AmrNode n;
  n.kind = NodeKind::Constant;
  n.label = std::move(label);
  n.quoted = quoted;
  return n;
}

AmrNode AmrNode::coreference(std::string label) {
  AmrNode n;
  n.kind = NodeKind::Coreference;
  n.label = std::move(label);
  return n;
}

std::string Edge::surface_role() const {
  return inverted ? role + "-of" : role;
}

// ---------------------------------------------------------------------------
// AmrTree

AmrTree::AmrTree(std::vector<AmrNode> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.empty()) throw Error(ErrorCode::InvalidTree, "tree has no nodes");
  const std::size_t n = nodes_.size();
  children_.assign(n, {});
  parent_.assign(n, std::nullopt);
  depth_.assign(n, 0);

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.source >= n || e.target >= n) {
      throw Error(ErrorCode::InvalidTree, "edge endpoint out of range");
    }
    if (e.role.size() < 2 || e.role.front() != ':') {
      throw Error(ErrorCode::InvalidTree, "bad role '" + e.role + "'");
    }
    if (nodes_[e.source].kind != NodeKind::Instance) {
      throw Error(ErrorCode::InvalidTree,
                  "edge " + e.role + " leaves a non-instance node");
    }
    if (parent_[e.target]) {
      throw Error(ErrorCode::InvalidTree, "node with two incoming edges");
    }
    parent_[e.target] = i;
    children_[e.source].push_back(i);
  }

  std::optional<NodeId> root;
  for (NodeId id = 0; id < n; ++id) {
    if (!parent_[id]) {
      if (root) throw Error(ErrorCode::InvalidTree, "more than one root");
      root = id;
    }
  }
  if (!root) throw Error(ErrorCode::InvalidTree, "no root (cycle)");
  root_ = *root;

  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{root_};
  seen[root_] = true;
  std::size_t visited = 0;
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    ++visited;
    for (std::size_t ei : children_[id]) {
      const NodeId child = edges_[ei].target;
      if (seen[child]) throw Error(ErrorCode::InvalidTree, "cycle");
      seen[child] = true;
      depth_[child] = depth_[id] + 1;
      stack.push_back(child);
    }
  }
  if (visited != n) {
    throw Error(ErrorCode::InvalidTree, "nodes unreachable from the root");
  }

  std::unordered_map<std::string, std::size_t> instances;
  for (const AmrNode& node : nodes_) {
    if (node.kind == NodeKind::Instance) {
      if (node.label.empty()) {
        throw Error(ErrorCode::InvalidTree, "instance without a variable");
      }
      if (!instances.emplace(node.label, 0).second) {
        throw Error(ErrorCode::DuplicateInstanceLabel,
                    "variable '" + node.label + "' defined twice");
      }
    }
    if (node.kind == NodeKind::Merge &&
        (node.width == 0 || !node.embedding)) {
      throw Error(ErrorCode::InvalidTree,
                  "merge node needs width >= 1 and an embedding");
    }
  }
  for (const AmrNode& node : nodes_) {
    if (node.kind == NodeKind::Coreference && !instances.count(node.label)) {
      throw Error(ErrorCode::DanglingCoreference,
                  "'" + node.label + "' refers to no instance");
    }
  }
}

std::optional<std::size_t> AmrTree::parent_edge(NodeId id) const {
  return parent_.at(id);
}

std::size_t AmrTree::max_depth() const {
  return *std::max_element(depth_.begin(), depth_.end());
}

std::vector<NodeId> AmrTree::preorder() const { return subtree(root_); }

std::vector<NodeId> AmrTree::subtree(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    const NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& kids = children_[cur];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      stack.push_back(edges_[*it].target);
    }
  }
  return out;
}

std::optional<NodeId> AmrTree::instance_for(std::string_view label) const {
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].kind == NodeKind::Instance && nodes_[id].label == label) {
      return id;
    }
  }
  return std::nullopt;
}

std::vector<NodeId> AmrTree::coreferences_of(NodeId instance) const {
  std::vector<NodeId> out;
  const std::string& label = nodes_.at(instance).label;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].kind == NodeKind::Coreference && nodes_[id].label == label) {
      out.push_back(id);
    }
  }
  return out;
}

std::size_t AmrTree::count(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(),
                    [kind](const AmrNode& n) { return n.kind == kind; }));
}

bool AmrTree::is_negation_edge(std::size_t edge_index) const {
  const Edge& e = edges_.at(edge_index);
  const AmrNode& target = nodes_[e.target];
  return e.role == ":polarity" && target.kind == NodeKind::Constant &&
         target.label == "-";
}

std::size_t AmrTree::negation_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (is_negation_edge(i)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Penman reader

namespace {

enum class TokenType { LParen, RParen, Slash, Role, String, Symbol, End };

struct Token {
  TokenType type;
  std::string text;
  std::size_t offset;
};

class PenmanLexer {
 public:
  explicit PenmanLexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    if (pos_ >= text_.size()) return {TokenType::End, "", pos_};
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') { ++pos_; return {TokenType::LParen, "(", start}; }
    if (c == ')') { ++pos_; return {TokenType::RParen, ")", start}; }
    if (c == '/') { ++pos_; return {TokenType::Slash, "/", start}; }
    if (c == '"') return {TokenType::String, read_string(), start};
    std::string sym = read_symbol();
    if (sym.empty()) fail("unexpected character", start);
    if (sym.front() == ':') return {TokenType::Role, sym, start};
    return {TokenType::Symbol, sym, start};
  }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw Error(ErrorCode::MalformedPenman,
                what + " at offset " + std::to_string(at));
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
           c == ')' || c == '"' || c == '/';
  }

  // Drops a trailing surface alignment such as "~e.4".
  void skip_alignment() {
    if (pos_ < text_.size() && text_[pos_] == '~') {
      while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    }
  }

  std::string read_symbol() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_]) &&
           text_[pos_] != '~') {
      ++pos_;
    }
    std::string sym(text_.substr(start, pos_ - start));
    skip_alignment();
    return sym;
  }

  std::string read_string() {
    const std::size_t start = pos_;
    ++pos_;
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) fail("unterminated string", start);
    ++pos_;
    skip_alignment();
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool looks_like_variable(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

class PenmanParser {
 public:
  explicit PenmanParser(std::string_view text) : lexer_(text) { advance(); }

  AmrTree parse() {
    if (tok_.type != TokenType::LParen) {
      lexer_.fail("expected '('", tok_.offset);
    }
    parse_node();
    if (tok_.type != TokenType::End) {
      lexer_.fail("trailing input", tok_.offset);
    }
    resolve_bare_symbols();
    return AmrTree(std::move(nodes_), std::move(edges_));
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  void expect(TokenType type, const char* what) {
    if (tok_.type != type) {
      lexer_.fail(std::string("expected ") + what, tok_.offset);
    }
    advance();
  }

  NodeId parse_node() {
    expect(TokenType::LParen, "'('");
    if (tok_.type != TokenType::Symbol) {
      lexer_.fail("expected variable", tok_.offset);
    }
    std::string var = tok_.text;
    advance();
    expect(TokenType::Slash, "'/'");
    if (tok_.type != TokenType::Symbol && tok_.type != TokenType::String) {
      lexer_.fail("expected concept", tok_.offset);
    }
    std::string concept_name = tok_.text;
    advance();
    if (!defined_.insert(var).second) {
      throw Error(ErrorCode::DuplicateInstanceLabel,
                  "variable '" + var + "' defined twice");
    }
    const NodeId id = nodes_.size();
    nodes_.push_back(AmrNode::instance(std::move(var), std::move(concept_name)));

    while (tok_.type == TokenType::Role) {
      std::string role = tok_.text;
      advance();
      NodeId child;
      if (tok_.type == TokenType::LParen) {
        child = parse_node();
      } else if (tok_.type == TokenType::String) {
        child = nodes_.size();
        nodes_.push_back(AmrNode::constant(tok_.text, true));
        advance();
      } else if (tok_.type == TokenType::Symbol) {
        child = nodes_.size();
        nodes_.push_back(AmrNode::constant(tok_.text, false));
        bare_.push_back(child);
        advance();
      } else {
        lexer_.fail("expected value after " + role, tok_.offset);
      }
      edges_.push_back(Edge{id, child, std::move(role), false});
    }
    expect(TokenType::RParen, "')'");
    return id;
  }

  // A bare symbol naming a defined variable is a coreference; anything else
  // is a constant, unless it is shaped like a variable that was never
  // defined.
  void resolve_bare_symbols() {
    for (NodeId id : bare_) {
      AmrNode& node = nodes_[id];
      if (defined_.count(node.label)) {
        node.kind = NodeKind::Coreference;
      } else if (looks_like_variable(node.label)) {
        throw Error(ErrorCode::DanglingCoreference,
                    "'" + node.label + "' is never defined");
      }
    }
  }

  PenmanLexer lexer_;
  Token tok_{TokenType::End, "", 0};
  std::vector<AmrNode> nodes_;
  std::vector<Edge> edges_;
  std::vector<NodeId> bare_;
  std::set<std::string> defined_;
};

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_node(const AmrTree& tree, NodeId id, bool indent, int level,
                std::string& out) {
  const AmrNode& node = tree.node(id);
  switch (node.kind) {
    case NodeKind::Constant:
      out += node.quoted ? quote(node.label) : node.label;
      return;
    case NodeKind::Coreference:
      out += node.label;
      return;
    case NodeKind::Merge:
      out += std::string(kMergeMarker) + "{" + std::to_string(node.width) + "}";
      return;
    case NodeKind::Instance:
      break;
  }
  out += "(" + node.label + " / " + node.predicate;
  for (std::size_t ei : tree.child_edges(id)) {
    const Edge& e = tree.edge(ei);
    if (indent) {
      out += "\n" + std::string(static_cast<std::size_t>(level + 1) * 4, ' ');
    } else {
      out += " ";
    }
    out += e.surface_role() + " ";
    write_node(tree, e.target, indent, level + 1, out);
  }
  out += ")";
}

void key_node(const AmrTree& tree, NodeId id, std::string& out) {
  const AmrNode& node = tree.node(id);
  switch (node.kind) {
    case NodeKind::Constant:
      out += node.quoted ? quote(node.label) : node.label;
      return;
    case NodeKind::Coreference:
      out += "*" + node.label;
      return;
    case NodeKind::Merge:
      out += "MERGE{" + std::to_string(node.width) + "}";
      return;
    case NodeKind::Instance:
      break;
  }
  out += "(" + node.label + "/" + node.predicate;
  for (std::size_t ei : tree.child_edges(id)) {
    const Edge& e = tree.edge(ei);
    out += " " + e.surface_role() + " ";
    key_node(tree, e.target, out);
  }
  out += ")";
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

}  // namespace

AmrTree parse_penman(std::string_view text) {
  return PenmanParser(text).parse();
}

std::string to_penman(const AmrTree& tree, bool indent) {
  std::string out;
  write_node(tree, tree.root(), indent, 0, out);
  return out;
}

std::string canonical_key(const AmrTree& tree) {
  std::string out;
  key_node(tree, tree.root(), out);
  return out;
}

std::string strip_frame_number(std::string_view predicate) {
  const auto dash = predicate.rfind('-');
  if (dash == std::string_view::npos || dash == 0) {
    return std::string(predicate);
  }
  if (!all_digits(predicate.substr(dash + 1))) return std::string(predicate);
  return std::string(predicate.substr(0, dash));
}

AmrTree strip_frame_numbers(const AmrTree& tree) {
  std::vector<AmrNode> nodes(tree.nodes().begin(), tree.nodes().end());
  for (AmrNode& node : nodes) {
    if (node.kind == NodeKind::Instance) {
      node.predicate = strip_frame_number(node.predicate);
    }
  }
  return AmrTree(std::move(nodes),
                 std::vector<Edge>(tree.edges().begin(), tree.edges().end()));
}

bool is_inverse_role(std::string_view role) {
  static const std::set<std::string_view> kNotInverted = {
      ":consist-of", ":prep-out-of", ":prep-on-behalf-of"};
  return role.size() > 4 && role.ends_with("-of") && !kNotInverted.count(role);
}

AmrTree normalize_inverse_roles(const AmrTree& tree) {
  std::vector<Edge> edges(tree.edges().begin(), tree.edges().end());
  for (Edge& e : edges) {
    if (!e.inverted && is_inverse_role(e.role)) {
      e.role.resize(e.role.size() - 3);
      e.inverted = true;
    }
  }
  return AmrTree(std::vector<AmrNode>(tree.nodes().begin(), tree.nodes().end()),
                 std::move(edges));
}

bool is_normalized(const AmrTree& tree) {
  for (const AmrNode& node : tree.nodes()) {
    if (node.kind == NodeKind::Instance &&
        strip_frame_number(node.predicate) != node.predicate) {
      return false;
    }
  }
  for (const Edge& e : tree.edges()) {
    if (!e.inverted && is_inverse_role(e.role)) return false;
  }
  return true;
}

std::string node_path(const AmrTree& tree, NodeId id) {
  std::vector<std::string> segments;
  NodeId cur = id;
  while (auto pe = tree.parent_edge(cur)) {
    const Edge& e = tree.edge(*pe);
    const std::string role = e.surface_role();
    std::size_t ordinal = 0;
    for (std::size_t sibling : tree.child_edges(e.source)) {
      if (sibling == *pe) break;
      if (tree.edge(sibling).surface_role() == role) ++ordinal;
    }
    segments.push_back(role + "." + std::to_string(ordinal));
    cur = e.source;
  }
  std::string out;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    if (!out.empty()) out += "/";
    out += *it;
  }
  return out;
}

std::optional<NodeId> resolve_path(const AmrTree& tree, std::string_view path) {
  NodeId cur = tree.root();
  while (!path.empty()) {
    const auto slash = path.find('/');
    const std::string_view seg = path.substr(0, slash);
    path = slash == std::string_view::npos ? std::string_view{}
                                           : path.substr(slash + 1);
    const auto dot = seg.rfind('.');
    if (dot == std::string_view::npos) return std::nullopt;
    const std::string_view role = seg.substr(0, dot);
    std::size_t ordinal = 0;
    const auto digits = seg.substr(dot + 1);
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), ordinal);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      return std::nullopt;
    }
    std::optional<NodeId> next;
    std::size_t seen = 0;
    for (std::size_t ei : tree.child_edges(cur)) {
      if (tree.edge(ei).surface_role() == role) {
        if (seen == ordinal) {
          next = tree.edge(ei).target;
          break;
        }
        ++seen;
      }
    }
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Aligned documents

namespace {

using nlohmann::json;

template <typename T>
T require(const json& j, const char* field) {
  if (!j.contains(field)) {
    throw Error(ErrorCode::InvalidDocument,
                std::string("missing field '") + field + "'");
  }
  try {
    return j.at(field).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument,
                std::string("field '") + field + "': " + e.what());
  }
}

}  // namespace

AlignedAmrDocument parse_document(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidDocument, e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorCode::InvalidDocument, "document must be an object");
  }
  AlignedAmrDocument doc;
  doc.id = require<std::string>(j, "id");
  doc.text = require<std::string>(j, "text");
  doc.penman = require<std::string>(j, "penman");
  doc.tokens = require<std::vector<std::string>>(j, "tokens");
  doc.node_alignments =
      require<std::map<std::string, std::vector<std::size_t>>>(
          j, "node_alignments");
  doc.token_embeddings =
      require<std::vector<std::vector<float>>>(j, "token_embeddings");
  if (j.contains("embedding_dim")) {
    const auto dim = require<std::size_t>(j, "embedding_dim");
    if (dim != doc.embedding_dimension()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "embedding_dim " + std::to_string(dim) +
                      " disagrees with rows of dimension " +
                      std::to_string(doc.embedding_dimension()));
    }
  }
  return doc;
}

AlignedAmrDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDocument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string to_json(const AlignedAmrDocument& doc) {
  json j;
  j["id"] = doc.id;
  j["text"] = doc.text;
  j["penman"] = doc.penman;
  j["tokens"] = doc.tokens;
  j["node_alignments"] = doc.node_alignments;
  j["token_embeddings"] = doc.token_embeddings;
  j["embedding_dim"] = doc.embedding_dimension();
  return j.dump();
}

void validate_document(const AlignedAmrDocument& doc) {
  if (doc.id.empty()) throw Error(ErrorCode::InvalidDocument, "empty id");
  if (doc.token_embeddings.size() != doc.tokens.size()) {
    throw Error(ErrorCode::InvalidDocument,
                std::to_string(doc.tokens.size()) + " tokens but " +
                    std::to_string(doc.token_embeddings.size()) +
                    " embedding rows");
  }
  const std::size_t dim = doc.embedding_dimension();
  for (std::size_t r = 0; r < doc.token_embeddings.size(); ++r) {
    const auto& row = doc.token_embeddings[r];
    if (row.size() != dim || dim == 0) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(r) + " has dimension " +
                      std::to_string(row.size()) + ", expected " +
                      std::to_string(dim));
    }
    bool nonzero = false;
    for (float x : row) {
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::InvalidDocument,
                    "non-finite value in row " + std::to_string(r));
      }
      nonzero = nonzero || x != 0.0f;
    }
    if (!nonzero) {
      throw Error(ErrorCode::InvalidDocument,
                  "zero embedding for token " + std::to_string(r));
    }
  }
  const AmrTree tree = parse_penman(doc.penman);
  for (const auto& [path, indices] : doc.node_alignments) {
    if (!resolve_path(tree, path)) {
      throw Error(ErrorCode::AlignmentMismatch,
                  "path '" + path + "' resolves to no node");
    }
    for (std::size_t idx : indices) {
      if (idx >= doc.tokens.size()) {
        throw Error(ErrorCode::AlignmentMismatch,
                    "token index " + std::to_string(idx) + " out of range");
      }
    }
  }
}

AmrTree attach_embeddings(const AmrTree& tree, const AlignedAmrDocument& doc) {
  validate_document(doc);
  const AmrTree reference =
      normalize_inverse_roles(strip_frame_numbers(parse_penman(doc.penman)));
  const AmrTree mine = normalize_inverse_roles(strip_frame_numbers(tree));
  if (canonical_key(reference) != canonical_key(mine)) {
    throw Error(ErrorCode::AlignmentMismatch,
                "document '" + doc.id + "' does not describe this tree");
  }

  std::vector<AmrNode> nodes(tree.nodes().begin(), tree.nodes().end());
  const std::size_t dim = doc.embedding_dimension();
  for (const auto& [path, indices] : doc.node_alignments) {
    const auto id = resolve_path(tree, path);
    if (!id) {
      throw Error(ErrorCode::AlignmentMismatch,
                  "path '" + path + "' resolves to no node");
    }
    AmrNode& node = nodes[*id];
    if (indices.empty() || node.kind == NodeKind::Coreference ||
        node.kind == NodeKind::Merge) {
      continue;
    }
    if (const auto pe = tree.parent_edge(*id); pe && tree.is_negation_edge(*pe)) {
      continue;
    }
    std::vector<double> mean(dim, 0.0);
    for (std::size_t idx : indices) {
      const auto& row = doc.token_embeddings[idx];
      for (std::size_t d = 0; d < dim; ++d) mean[d] += row[d];
    }
    for (auto& x : mean) x /= static_cast<double>(indices.size());
    node.embedding = EmbeddingVector(std::move(mean));
  }
  return AmrTree(std::move(nodes),
                 std::vector<Edge>(tree.edges().begin(), tree.edges().end()));
}

AmrTree load_tree(const AlignedAmrDocument& doc) {
  const AmrTree tree =
      normalize_inverse_roles(strip_frame_numbers(parse_penman(doc.penman)));
  return attach_embeddings(tree, doc);
}

}  // namespace reasoner
