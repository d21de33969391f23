#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reasoner/error.hpp"
#include "reasoner/logic.hpp"
#include "reasoner/prover.hpp"

using namespace reasoner;

namespace {

const SimilarityFn hybrid = hybrid_similarity;
const SimilarityFn exact = exact_similarity;

ProverConfig config(double tau, std::size_t depth = 12) {
  ProverConfig c;
  c.similarity_threshold = tau;
  c.max_proof_depth = depth;
  c.max_resolvent_width = 64;
  return c;
}

// dad/father at cosine 0.92
std::map<std::string, EmbeddingVector, std::less<>> family_table() {
  return {{"dad", EmbeddingVector({1, 0})},
          {"father", EmbeddingVector({0.92, std::sqrt(1 - 0.92 * 0.92)})}};
}

Literal lit(const std::string& s) { return parse_literal(s); }

Literal embedded(const std::string& s) {
  return attach_symbol_embeddings(parse_literal(s), family_table());
}

std::vector<Clause> embedded_kb(const std::string& text) {
  auto kb = parse_clauses(text);
  attach_symbol_embeddings(kb, family_table());
  return kb;
}

}  // namespace

TEST(Unify, FatherHomer) {
  const auto r = unify(lit("father(homer,Y)"), lit("father(homer,bart)"), {},
                       config(0.9), hybrid);
  ASSERT_TRUE(r);
  EXPECT_DOUBLE_EQ(r->similarity, 1.0);
  ASSERT_EQ(r->substitution.size(), 1u);
  EXPECT_EQ(to_string(r->substitution.at("Y")), "bart");
}

TEST(Unify, DadFailsWithoutEmbeddings) {
  EXPECT_FALSE(unify(lit("dad(homer,bart)"), lit("father(homer,bart)"), {},
                     config(0.9), hybrid));
}

TEST(Unify, RepeatedVariableNeedsEqualConstants) {
  EXPECT_FALSE(unify(lit("p(X,X)"), lit("p(a,b)"), {}, config(0.5), exact));
  EXPECT_TRUE(unify(lit("p(X,X)"), lit("p(a,a)"), {}, config(0.5), exact));
}

TEST(Unify, DadFatherWithEmbeddings) {
  const auto r = unify(embedded("dad(homer,bart)"), embedded("father(homer,bart)"),
                       {}, config(0.9), hybrid);
  ASSERT_TRUE(r);
  EXPECT_NEAR(r->similarity, 0.96, 1e-12);
  EXPECT_FALSE(unify(embedded("dad(homer,bart)"), embedded("father(homer,bart)"),
                     {}, config(0.96), hybrid));
}

TEST(Unify, ArityMismatchThrows) {
  try {
    unify(lit("p(a)"), lit("p(a,b)"), {}, config(0.5), exact);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST(Normalize, ResolvesChainsAndRejectsCycles) {
  Substitution s{{"X", Variable{"Y"}}, {"Y", Constant{"a", std::nullopt, false}}};
  const auto n = normalize(s);
  EXPECT_EQ(to_string(n.at("X")), "a");
  Substitution cyc{{"X", Variable{"Y"}}, {"Y", Variable{"X"}}};
  try {
    normalize(cyc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedLogic);
  }
}

TEST(Resolve, ModusPonens) {
  const auto rs = resolve(parse_clause("!mortal(socrates)"),
                          parse_clause("man(X) -> mortal(X)"), config(0.5), exact);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(to_string(rs[0].clause), "!man(socrates)");
  EXPECT_DOUBLE_EQ(rs[0].similarity, 1.0);
}

TEST(Resolve, RenamesClashingVariables) {
  const auto rs = resolve(parse_clause("!p(X) | q(X)"), parse_clause("p(a) | r(X)"),
                          config(0.5), exact);
  ASSERT_EQ(rs.size(), 1u);
  const auto& ls = rs[0].clause.literals();
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(to_string(ls[0]), "q(a)");
  EXPECT_TRUE(is_variable(ls[1].args[0]));
  EXPECT_NE(std::get<Variable>(ls[1].args[0]).name, "X");
}

TEST(Resolve, EmptyClause) {
  const auto rs = resolve(parse_clause("p(a)"), parse_clause("!p(a)"), config(0.5), exact);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_TRUE(rs[0].clause.empty());
}

TEST(Prove, DadFatherMinimumSimilarity) {
  const auto kb = embedded_kb("dad(homer,bart)\nfather(X,Y) -> parent(X,Y)\n");
  const auto r = prove(kb, lit("parent(homer,bart)"), config(0.9), hybrid);
  ASSERT_TRUE(r.proof);
  EXPECT_NEAR(r.proof->similarity, 0.96, 1e-12);
  EXPECT_EQ(r.proof->steps.size(), 2u);
  EXPECT_TRUE(verify_proof(*r.proof, config(0.9), hybrid));
  EXPECT_FALSE(prove(kb, lit("parent(homer,bart)"), config(0.97), hybrid).proof);
}

TEST(Prove, PrefersExactRouteOverSimilarOne) {
  const auto kb = embedded_kb(
      "dad(homer,bart)\nfather(homer,bart)\nfather(X,Y) -> parent(X,Y)\n");
  const auto r = prove(kb, lit("parent(homer,bart)"), config(0.9), hybrid);
  ASSERT_TRUE(r.proof);
  EXPECT_DOUBLE_EQ(r.proof->similarity, 1.0);
}

TEST(Prove, DepthCapReported) {
  const auto kb = parse_clauses("p(a)\np(X) -> q(X)\nq(X) -> r(X)\nr(X) -> s(X)\n");
  const auto r = prove(kb, lit("s(a)"), config(0.5, 3), exact);
  EXPECT_FALSE(r.proof);
  EXPECT_TRUE(r.stats.cap_hit);
  EXPECT_TRUE(prove(kb, lit("s(a)"), config(0.5, 4), exact).proof);
}

TEST(Prove, ConfigValidation) {
  ProverConfig c;
  c.similarity_threshold = 1.5;
  EXPECT_THROW(c.validate(), Error);
  c = ProverConfig{};
  c.max_proof_depth = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(ClassicalSuite, AgreesWithLabelsAndSaturation) {
  const auto problems = oracle::load_problems(oracle::data_path("data/classical_suite.txt"));
  ASSERT_EQ(problems.size(), 20u);
  std::size_t provable = 0;
  for (const auto& p : problems) {
    SCOPED_TRACE(p.name);
    const bool entailed = oracle::entails(p.kb, p.goal);
    EXPECT_EQ(entailed, p.provable);
    const auto r = prove(p.kb, p.goal, config(0.5), exact);
    EXPECT_EQ(r.proof.has_value(), p.provable);
    if (r.proof) {
      EXPECT_DOUBLE_EQ(r.proof->similarity, 1.0);
      EXPECT_TRUE(verify_proof(*r.proof, config(0.5), exact));
      ++provable;
    }
  }
  EXPECT_EQ(provable, 10u);
}

TEST(MaxMin, MatchesExhaustiveSearchOnRandomKbs) {
  std::mt19937_64 rng(2024);
  int proved = 0;
  for (int i = 0; i < 50; ++i) {
    const auto rk = oracle::random_kb(rng);
    const double tau = 0.6;
    const auto r = prove(rk.kb, rk.goal, config(tau, 6), hybrid);
    const double best = oracle::best_refutation(rk.kb, rk.goal, tau, 6, hybrid);
    SCOPED_TRACE(to_string(rk.goal));
    if (best < 0) {
      EXPECT_FALSE(r.proof);
    } else {
      ASSERT_TRUE(r.proof);
      EXPECT_NEAR(r.proof->similarity, best, 1e-9);
      EXPECT_TRUE(verify_proof(*r.proof, config(tau, 6), hybrid));
      ++proved;
    }
  }
  EXPECT_GT(proved, 5);
}

TEST(Threshold, RaisingItNeverCreatesProofs) {
  std::mt19937_64 rng(77);
  const double taus[] = {0.80, 0.85, 0.90, 0.925, 0.95};
  for (int i = 0; i < 40; ++i) {
    const auto rk = oracle::random_kb(rng);
    bool previous = true;
    for (double tau : taus) {
      const auto r = prove(rk.kb, rk.goal, config(tau, 6), hybrid);
      if (!previous) EXPECT_FALSE(r.proof);
      if (r.proof) EXPECT_GT(r.proof->similarity, tau);
      previous = r.proof.has_value();
    }
  }
}

TEST(Verify, RejectsTamperedProofs) {
  const auto kb = embedded_kb("dad(homer,bart)\nfather(X,Y) -> parent(X,Y)\n");
  const auto r = prove(kb, lit("parent(homer,bart)"), config(0.9), hybrid);
  ASSERT_TRUE(r.proof);
  Proof bad = *r.proof;
  bad.similarity = 1.0;
  EXPECT_FALSE(verify_proof(bad, config(0.9), hybrid));
  bad = *r.proof;
  bad.steps.pop_back();
  EXPECT_FALSE(verify_proof(bad, config(0.9), hybrid));
}

TEST(Determinism, SameInputSameProof) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto rk = oracle::random_kb(rng);
    const auto a = prove(rk.kb, rk.goal, config(0.6, 6), hybrid);
    const auto b = prove(rk.kb, rk.goal, config(0.6, 6), hybrid);
    ASSERT_EQ(a.proof.has_value(), b.proof.has_value());
    EXPECT_EQ(a.stats.expanded, b.stats.expanded);
    if (a.proof) EXPECT_EQ(format_proof(*a.proof), format_proof(*b.proof));
  }
}
