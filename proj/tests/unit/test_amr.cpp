#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <regex>

#include "oracles.hpp"
#include "reasoner/amr.hpp"
#include "reasoner/error.hpp"

using namespace reasoner;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidConfig;
}

std::size_t count_edges_with_role(const AmrTree& t, const std::string& role) {
  std::size_t n = 0;
  for (const Edge& e : t.edges()) n += e.role == role;
  return n;
}

AlignedAmrDocument krupp_doc() {
  AlignedAmrDocument d;
  d.id = "krupp";
  d.text = "Mr Krupp dries himself";
  d.penman = "(e / dry-01 :ARG0 (x / person :named \"Mr Krupp\") :ARG1 x)";
  d.tokens = {"Mr", "Krupp", "dries", "himself"};
  d.node_alignments = {{"", {2}}, {":ARG0.0", {0, 1}}, {":ARG0.0/:named.0", {0, 1}},
                       {":ARG1.0", {3}}};
  d.token_embeddings = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  return d;
}

}  // namespace

TEST(ParsePenman, BoyWantsGirlToBelieveHim) {
  const AmrTree t = parse_penman(
      "(w / want-01 :ARG0 (b / boy) :ARG1 (b2 / believe-01 :ARG0 (g / girl) :ARG1 b))");
  EXPECT_EQ(t.count(NodeKind::Instance), 4u);
  EXPECT_EQ(t.count(NodeKind::Coreference), 1u);
  EXPECT_EQ(t.count(NodeKind::Constant), 0u);
  EXPECT_EQ(t.edges().size(), 4u);
  EXPECT_EQ(t.node(t.root()).label, "w");
}

TEST(ParsePenman, BoyDoesNotGo) {
  const AmrTree t = parse_penman("(g / go-02 :ARG0 (b / boy) :polarity -)");
  EXPECT_EQ(t.count(NodeKind::Instance), 2u);
  EXPECT_EQ(t.count(NodeKind::Constant), 1u);
  ASSERT_EQ(t.edges().size(), 2u);
  EXPECT_EQ(t.edge(0).role, ":ARG0");
  EXPECT_EQ(t.edge(1).role, ":polarity");
  EXPECT_EQ(t.node(t.edge(1).target).label, "-");
  EXPECT_EQ(t.negation_count(), 1u);
}

TEST(ParsePenman, MinimalTree) {
  const AmrTree t = parse_penman("(x / thing)");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_TRUE(t.edges().empty());
  EXPECT_EQ(t.node(t.root()).label, "x");
  EXPECT_EQ(t.max_depth(), 0u);
}

TEST(ParsePenman, QuotedConstantsAndAlignmentMarkers) {
  const AmrTree t = parse_penman("(x / person~e.1 :name (n / name :op1 \"Mr Krupp\"~e.0))");
  const auto c = std::find_if(t.nodes().begin(), t.nodes().end(),
                              [](const AmrNode& n) { return n.kind == NodeKind::Constant; });
  ASSERT_NE(c, t.nodes().end());
  EXPECT_EQ(c->label, "Mr Krupp");
  EXPECT_TRUE(c->quoted);
  EXPECT_EQ(t.node(0).predicate, "person");
}

TEST(ParsePenman, Errors) {
  EXPECT_EQ(code_of([] { parse_penman("(a / b"); }), ErrorCode::MalformedPenman);
  EXPECT_EQ(code_of([] { parse_penman("(a / b))"); }), ErrorCode::MalformedPenman);
  EXPECT_EQ(code_of([] { parse_penman("a / b"); }), ErrorCode::MalformedPenman);
  EXPECT_EQ(code_of([] { parse_penman(""); }), ErrorCode::MalformedPenman);
  EXPECT_EQ(code_of([] { parse_penman("(a / b :ARG0 (a / c))"); }),
            ErrorCode::DuplicateInstanceLabel);
  EXPECT_EQ(code_of([] { parse_penman("(a / b :ARG0 z)"); }),
            ErrorCode::DanglingCoreference);
}

TEST(ParsePenman, DepthFollowsNesting) {
  const AmrTree t = parse_penman("(a / x :ARG0 (b / y :ARG1 (c / z)))");
  EXPECT_EQ(t.depth(t.root()), 0u);
  EXPECT_EQ(t.max_depth(), 2u);
}

TEST(StripFrameNumbers, Examples) {
  EXPECT_EQ(strip_frame_number("go-02"), "go");
  EXPECT_EQ(strip_frame_number("want-01"), "want");
  EXPECT_EQ(strip_frame_number("boy"), "boy");
  EXPECT_EQ(strip_frame_number("have-rel-role-91"), "have-rel-role");
  EXPECT_EQ(strip_frame_number("have-rel-role"), "have-rel-role");
  EXPECT_EQ(strip_frame_number("hang-up"), "hang-up");
  EXPECT_EQ(strip_frame_number("-"), "-");
}

TEST(StripFrameNumbers, IdempotentAndStructurePreserving) {
  const AmrTree t = parse_penman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  const AmrTree once = strip_frame_numbers(t);
  const AmrTree twice = strip_frame_numbers(once);
  EXPECT_EQ(canonical_key(once), canonical_key(twice));
  EXPECT_EQ(once.size(), t.size());
  EXPECT_EQ(once.node(0).predicate, "want");
}

TEST(NormalizeInverseRoles, SwapsOnlyInverseRoles) {
  const AmrTree t = normalize_inverse_roles(parse_penman(
      "(p / person :ARG0-of (h2 / have-rel-role) :mod-of (y / yard) "
      ":consist-of (z / zinc) :ARG2 (c / cousin))"));
  ASSERT_EQ(t.edges().size(), 4u);
  EXPECT_EQ(t.edge(0).role, ":ARG0");
  EXPECT_TRUE(t.edge(0).inverted);
  EXPECT_EQ(t.edge(0).surface_role(), ":ARG0-of");
  EXPECT_EQ(t.edge(1).role, ":mod");
  EXPECT_TRUE(t.edge(1).inverted);
  EXPECT_EQ(t.edge(2).role, ":consist-of");
  EXPECT_FALSE(t.edge(2).inverted);
  EXPECT_EQ(t.edge(3).role, ":ARG2");
  EXPECT_FALSE(t.edge(3).inverted);
  // Shape is untouched: p stays the parent.
  EXPECT_EQ(t.node(t.edge(0).source).label, "p");
  EXPECT_TRUE(is_normalized(strip_frame_numbers(t)));
}

TEST(NodePaths, SameRoleOrdinals) {
  const AmrTree t = parse_penman("(a / and :op1 (x / dog) :op1 (y / cat) :ARG1 (z / run :ARG0 x))");
  for (NodeId id = 0; id < t.size(); ++id) {
    EXPECT_EQ(resolve_path(t, node_path(t, id)), std::optional<NodeId>(id));
  }
  EXPECT_EQ(node_path(t, *t.instance_for("y")), ":op1.1");
  EXPECT_FALSE(resolve_path(t, ":op1.2"));
  EXPECT_FALSE(resolve_path(t, "garbage"));
}

TEST(AttachEmbeddings, MeanOfAlignedTokens) {
  const auto doc = krupp_doc();
  const AmrTree t = load_tree(doc);
  const AmrNode& x = t.node(*t.instance_for("x"));
  ASSERT_TRUE(x.embedding);
  EXPECT_DOUBLE_EQ((*x.embedding)[0], 0.5);
  EXPECT_DOUBLE_EQ((*x.embedding)[1], 0.5);
  EXPECT_DOUBLE_EQ((*x.embedding)[2], 0.0);
  const AmrNode& e = t.node(*t.instance_for("e"));
  ASSERT_TRUE(e.embedding);
  EXPECT_DOUBLE_EQ((*e.embedding)[2], 1.0);  // one token: unchanged
  for (const AmrNode& n : t.nodes()) {
    if (n.kind == NodeKind::Coreference) EXPECT_FALSE(n.embedding);
  }
}

TEST(AttachEmbeddings, LeavesStructureAlone) {
  const auto doc = krupp_doc();
  const AmrTree bare = normalize_inverse_roles(strip_frame_numbers(parse_penman(doc.penman)));
  const AmrTree t = attach_embeddings(bare, doc);
  EXPECT_EQ(canonical_key(bare), canonical_key(t));
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.node(i).label, bare.node(i).label);
    EXPECT_EQ(t.node(i).predicate, bare.node(i).predicate);
  }
}

TEST(AttachEmbeddings, PolarityConstantNeverEmbedded) {
  AlignedAmrDocument d;
  d.id = "neg";
  d.penman = "(g / go-02 :ARG0 (b / boy) :polarity -)";
  d.tokens = {"boy", "not", "go"};
  d.node_alignments = {{"", {2}}, {":ARG0.0", {0}}, {":polarity.0", {1}}};
  d.token_embeddings = {{1, 0}, {0, 1}, {1, 1}};
  const AmrTree t = load_tree(d);
  for (const AmrNode& n : t.nodes()) {
    if (n.label == "-") EXPECT_FALSE(n.embedding);
  }
}

TEST(AttachEmbeddings, Errors) {
  auto doc = krupp_doc();
  doc.node_alignments[":ARG7.0"] = {0};
  EXPECT_EQ(code_of([&] { load_tree(doc); }), ErrorCode::AlignmentMismatch);

  doc = krupp_doc();
  doc.node_alignments[""] = {9};
  EXPECT_EQ(code_of([&] { load_tree(doc); }), ErrorCode::AlignmentMismatch);

  doc = krupp_doc();
  doc.token_embeddings[1] = {0, 1};
  EXPECT_EQ(code_of([&] { load_tree(doc); }), ErrorCode::DimensionMismatch);

  doc = krupp_doc();
  const AmrTree other = parse_penman("(e / dry)");
  EXPECT_EQ(code_of([&] { attach_embeddings(other, doc); }), ErrorCode::AlignmentMismatch);
}

TEST(Documents, JsonRoundTrip) {
  const auto doc = krupp_doc();
  const auto back = parse_document(to_json(doc));
  EXPECT_EQ(back.id, doc.id);
  EXPECT_EQ(back.penman, doc.penman);
  EXPECT_EQ(back.tokens, doc.tokens);
  EXPECT_EQ(back.node_alignments, doc.node_alignments);
  EXPECT_EQ(back.token_embeddings, doc.token_embeddings);
}

TEST(Documents, SchemaErrors) {
  EXPECT_EQ(code_of([] { parse_document("[]"); }), ErrorCode::InvalidDocument);
  EXPECT_EQ(code_of([] { parse_document("{"); }), ErrorCode::InvalidDocument);
  EXPECT_EQ(code_of([] { parse_document(R"({"id":"a"})"); }), ErrorCode::InvalidDocument);
  EXPECT_EQ(code_of([] {
              parse_document(R"j({"id":"a","text":"","penman":"(a / b)","tokens":["x"],
                 "node_alignments":{},"token_embeddings":[[1,2]],"embedding_dim":3})j");
            }),
            ErrorCode::DimensionMismatch);
  auto doc = krupp_doc();
  doc.token_embeddings[0] = {0, 0, 0};
  EXPECT_EQ(code_of([&] { validate_document(doc); }), ErrorCode::InvalidDocument);
  doc = krupp_doc();
  doc.token_embeddings.pop_back();
  EXPECT_EQ(code_of([&] { validate_document(doc); }), ErrorCode::InvalidDocument);
}

TEST(Documents, EveryShippedDocumentValidates) {
  std::size_t n = 0;
  for (const char* dir : {"data/corpus", "data/fixtures"}) {
    for (const auto& entry : std::filesystem::directory_iterator(oracle::data_path(dir))) {
      const auto name = entry.path().filename().string();
      if (!name.ends_with(".rot.json") && !name.ends_with(".sst.json")) continue;
      const auto doc = read_document(entry.path().string());
      EXPECT_NO_THROW(validate_document(doc)) << name;
      EXPECT_NO_THROW(load_tree(doc)) << name;
      ++n;
    }
  }
  EXPECT_EQ(n, 51u);
}

TEST(RoundTrip, FixturesAndRandomTrees) {
  std::vector<std::string> texts = {
      "(w / want-01 :ARG0 (b / boy) :ARG1 (b2 / believe-01 :ARG0 (g / girl) :ARG1 b))",
      "(e / dry-01 :ARG0 (x / person :named \"Mr Krupp\") :ARG1 x)",
      "(p / person :ARG0-of (h / have-rel-role-91 :ARG2 (c / cousin)) :quant 3)"};
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) texts.push_back(oracle::random_penman(rng, 12));
  for (const std::string& text : texts) {
    const AmrTree t = parse_penman(text);
    for (bool indent : {true, false}) {
      const AmrTree back = parse_penman(to_penman(t, indent));
      EXPECT_EQ(canonical_key(back), canonical_key(t)) << text;
    }
    const AmrTree n = normalize_inverse_roles(t);
    EXPECT_EQ(canonical_key(parse_penman(to_penman(n))), canonical_key(t)) << text;
  }
}

TEST(NodeCounts, MatchSourceText) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const std::string text = oracle::random_penman(rng, 12);
    const AmrTree t = parse_penman(text);
    const auto slashes = std::count(text.begin(), text.end(), '/');
    EXPECT_EQ(t.count(NodeKind::Instance), static_cast<std::size_t>(slashes));
    // Each edge target is exactly one node, plus the root.
    EXPECT_EQ(t.size(), t.edges().size() + 1);
    const std::regex refs(" :[A-Za-z0-9-]+ v[0-9]+");
    const auto corefs = std::distance(std::sregex_iterator(text.begin(), text.end(), refs),
                                      std::sregex_iterator());
    EXPECT_EQ(t.count(NodeKind::Coreference), static_cast<std::size_t>(corefs)) << text;
    EXPECT_EQ(t.negation_count(), count_edges_with_role(t, ":polarity"));
  }
}
