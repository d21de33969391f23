#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reasoner/error.hpp"
#include "reasoner/harness.hpp"

using namespace reasoner;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidDocument, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void header(const std::string& command, const json& args) {
  std::cout << "# " << json{{"command", command}, {"args", args}}.dump() << "\n";
}

std::vector<double> parse_range(const std::string& spec) {
  // lo:hi:step, or a comma list
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 ||
        hi < lo) {
      throw Error(ErrorCode::InvalidConfig, "bad range: " + spec);
    }
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long k = 0; k <= n; ++k) {
      out.push_back(std::round((lo + k * step) * 1e9) / 1e9);
    }
    return out;
  }
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidConfig, "bad number: " + item);
    }
  }
  return out;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Common {
  double threshold = 0.925;
  std::size_t max_depth = 12;
  std::size_t max_resolvent = 20;
  std::size_t max_expansions = 200000;
  std::size_t max_width = 6;
  std::size_t min_depth = 1;
  bool strict_width = false;
  std::string lexicon;

  void add_prover(CLI::App* app) {
    app->add_option("--threshold", threshold, "similarity threshold")->capture_default_str();
    app->add_option("--max-depth", max_depth, "proof depth cap")->capture_default_str();
    app->add_option("--max-resolvent", max_resolvent, "resolvent width cap")
        ->capture_default_str();
    app->add_option("--max-expansions", max_expansions, "search expansion cap")
        ->capture_default_str();
  }
  void add_merge(CLI::App* app) {
    app->add_option("--max-width", max_width, "maximum merge width")->capture_default_str();
    app->add_option("--min-depth", min_depth, "minimum merge depth")->capture_default_str();
    app->add_flag("--strict-width", strict_width, "merge width must be below the maximum");
  }
  void add_lexicon(CLI::App* app) {
    app->add_option("--lexicon", lexicon, "verdict lexicon JSON");
  }

  MergeConfig merge() const {
    MergeConfig m;
    m.max_merge_width = max_width;
    m.min_merge_depth = min_depth;
    m.width_bound = strict_width ? Bound::Strict : Bound::Inclusive;
    m.validate();
    return m;
  }
  ProverConfig prover() const {
    ProverConfig p;
    p.similarity_threshold = threshold;
    p.max_proof_depth = max_depth;
    p.max_resolvent_width = max_resolvent;
    p.max_expansions = max_expansions;
    p.validate();
    return p;
  }
  VerdictLexicon verdicts() const {
    return lexicon.empty() ? VerdictLexicon::defaults() : VerdictLexicon::load(lexicon);
  }
  json args() const {
    return {{"threshold", threshold},         {"max_depth", max_depth},
            {"max_resolvent", max_resolvent}, {"max_expansions", max_expansions},
            {"max_width", max_width},         {"min_depth", min_depth},
            {"strict_width", strict_width},   {"lexicon", lexicon}};
  }
};

int cmd_parse(const std::string& path) {
  header("parse", {{"doc", path}});
  const AlignedAmrDocument doc = read_document(path);
  const AmrTree tree = load_tree(doc);
  std::size_t embedded = 0;
  for (const AmrNode& n : tree.nodes()) embedded += n.embedding.has_value();
  std::cout << to_penman(tree) << "\n"
            << json{{"id", doc.id},
                    {"nodes", tree.size()},
                    {"instances", tree.count(NodeKind::Instance)},
                    {"constants", tree.count(NodeKind::Constant)},
                    {"coreferences", tree.count(NodeKind::Coreference)},
                    {"depth", tree.max_depth()},
                    {"embedded_nodes", embedded},
                    {"embedding_dim", doc.token_embeddings.empty()
                                          ? 0
                                          : doc.token_embeddings.front().size()}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_merge(const std::string& path, const Common& c, bool list) {
  json args = c.args();
  args["doc"] = path;
  args["list"] = list;
  header("merge", args);
  const MergeTreeSet set = enumerate_merge_trees(load_tree(read_document(path)), c.merge());
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < set.size(); ++i) counts.push_back(set.at(i).size());
  json out = {{"variants", set.size()}, {"node_counts", counts}, {"capped", set.capped}};
  out["collapsability"] = set.original.size() > 1 ? json(collapsability(set)) : json(nullptr);
  std::cout << out.dump() << "\n";
  if (list) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      std::cout << "## variant " << i << " (" << set.at(i).size() << " nodes)\n"
                << to_penman(set.at(i)) << "\n";
    }
  }
  return 0;
}

int cmd_logic(const std::string& path, const Common& c, bool as_rot, bool as_sst) {
  json args = c.args();
  args["doc"] = path;
  args["as_rot"] = as_rot;
  args["as_sst"] = as_sst;
  header("logic", args);
  const AmrTree tree = load_tree(read_document(path));
  if (as_rot) {
    const Implication imp = rot_to_implication(tree, c.verdicts());
    std::cout << to_string(imp) << "\n# clauses\n";
    for (const Clause& cl : to_clauses(imp)) std::cout << to_string(cl) << "\n";
  } else if (as_sst) {
    for (const Literal& l : sst_to_facts(tree)) std::cout << to_string(l) << "\n";
  } else {
    std::cout << to_string(amr_to_formula(tree)) << "\n";
  }
  return 0;
}

int cmd_prove(const std::string& path, const std::string& goal_text, const Common& c,
              const std::string& embeddings, bool exact) {
  json args = c.args();
  args["clauses"] = path;
  args["goal"] = goal_text;
  args["embeddings"] = embeddings;
  args["exact"] = exact;
  header("prove", args);
  std::vector<Clause> kb = parse_clauses(read_file(path));
  Literal goal = parse_literal(goal_text);
  if (!embeddings.empty()) {
    std::map<std::string, EmbeddingVector, std::less<>> table;
    for (const auto& [sym, vec] : json::parse(read_file(embeddings)).items()) {
      table.emplace(sym, EmbeddingVector(vec.get<std::vector<double>>()));
    }
    attach_symbol_embeddings(kb, table);
    goal = attach_symbol_embeddings(goal, table);
  }
  const SimilarityFn sim = exact ? SimilarityFn(exact_similarity)
                                 : SimilarityFn(hybrid_similarity);
  const ProveResult r = prove(kb, goal, c.prover(), sim);
  std::cout << json{{"proved", r.proof.has_value()},
                    {"similarity", r.proof ? json(r.proof->similarity) : json(nullptr)},
                    {"expanded", r.stats.expanded},
                    {"generated", r.stats.generated},
                    {"cap_hit", r.stats.cap_hit}}
                   .dump()
            << "\n";
  if (r.proof) std::cout << format_proof(*r.proof);
  return 0;
}

RunConfig run_config(const Common& c, std::uint64_t seed, const std::string& dataset,
                     bool all_verdicts, std::size_t jobs) {
  RunConfig rc;
  rc.prover = c.prover();
  rc.merge = c.merge();
  rc.rng_seed = seed;
  rc.dataset = dataset;
  rc.all_verdicts = all_verdicts;
  rc.jobs = jobs;
  rc.lexicon = c.verdicts();
  return rc;
}

int cmd_match(const std::string& rot, const std::string& sst, const Common& c,
              bool all_verdicts) {
  json args = c.args();
  args["rot"] = rot;
  args["sst"] = sst;
  args["all_verdicts"] = all_verdicts;
  header("match", args);
  const RunConfig rc = run_config(c, 0, "", all_verdicts, 1);
  const MatchResult r = match_rot_sst(read_document(rot), read_document(sst), rc);
  std::cout << to_json(r) << "\n";
  if (r.proof) std::cout << format_proof(*r.proof);
  return 0;
}

int cmd_eval(const std::string& dir, const Common& c, std::uint64_t seed,
             const std::string& sweep_spec, const std::string& buckets,
             bool all_verdicts, std::size_t jobs, const std::string& tsv_path) {
  json args = c.args();
  args["corpus"] = dir;
  args["seed"] = seed;
  args["sweep"] = sweep_spec;
  args["buckets"] = buckets;
  args["all_verdicts"] = all_verdicts;
  args["jobs"] = jobs;
  args["tsv"] = tsv_path;
  header("eval", args);
  const RunConfig rc = run_config(c, seed, dir, all_verdicts, jobs);
  std::cout << "# config " << to_json(rc) << "\n";
  const std::vector<Sample> data = load_corpus(dir);

  if (!sweep_spec.empty()) {
    const auto eq = sweep_spec.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidConfig, "bad --sweep");
    const std::string axis_name = sweep_spec.substr(0, eq);
    SweepAxis axis;
    if (axis_name == "threshold") {
      axis = SweepAxis::Threshold;
    } else if (axis_name == "max_merge_width" || axis_name == "max-width") {
      axis = SweepAxis::MaxMergeWidth;
    } else {
      throw Error(ErrorCode::InvalidConfig, "unknown sweep axis " + axis_name);
    }
    const auto rows = sweep(data, rc, axis, parse_range(sweep_spec.substr(eq + 1)));
    std::cout << sweep_jsonl(rows, axis);
    const std::string tsv = sweep_tsv(rows, axis);
    if (tsv_path.empty()) {
      std::cout << "# tsv\n" << tsv;
    } else {
      std::ofstream(tsv_path) << tsv;
    }
    for (const auto& r : rows) {
      if (r.report.errors) return 2;
    }
    return 0;
  }

  const EvalReport report = evaluate(data, rc);
  for (const EvalRecord& r : report.records) std::cout << to_json(r) << "\n";
  std::cout << "# summary "
            << json{{"metrics", json::parse(to_json(report.metrics))},
                    {"samples", report.records.size()},
                    {"errors", report.errors}}
                   .dump()
            << "\n";
  if (!buckets.empty()) {
    for (const Bucket& b : bucket_by_collapsability(report.records, parse_range(buckets))) {
      std::cout << "# bucket "
                << json{{"lower", b.lower},
                        {"upper", b.upper},
                        {"samples", b.samples},
                        {"metrics", json::parse(to_json(b.metrics))}}
                       .dump()
                << "\n";
    }
  }
  return report.errors ? 2 : 0;
}

int cmd_stats(const std::string& dir, const Common& c) {
  json args = c.args();
  args["corpus"] = dir;
  header("stats", args);
  const DatasetStats s = dataset_stats(load_corpus(dir), c.merge());
  std::cout << to_json(s) << "\n";
  auto row = [](const char* name, const Summary& a, const Summary& b) {
    std::cout << name << "\t" << fmt6(a.mean) << "\t" << fmt6(a.median) << "\t"
              << fmt6(a.stdev) << "\t" << fmt6(b.mean) << "\t" << fmt6(b.median) << "\t"
              << fmt6(b.stdev) << "\n";
  };
  std::cout << "statistic\trot_mean\trot_median\trot_stdev\tsst_mean\tsst_median\tsst_stdev\n";
  row("instance_nodes", s.rot_instance_nodes, s.sst_instance_nodes);
  row("depth", s.rot_depth, s.sst_depth);
  row("logic_terms", s.rot_logic_terms, s.sst_logic_terms);
  row("merge_trees", s.rot_merge_trees, s.sst_merge_trees);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMR-based social norm reasoner"};
  app.require_subcommand(1);
  Common c;

  std::string doc, doc2, goal, embeddings, sweep_spec, buckets, tsv;
  bool list = false, as_rot = false, as_sst = false, all_verdicts = false, exact = false;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  auto* parse = app.add_subcommand("parse", "parse and validate a document");
  parse->add_option("doc", doc)->required();

  auto* merge = app.add_subcommand("merge", "enumerate merge variants");
  merge->add_option("doc", doc)->required();
  c.add_merge(merge);
  merge->add_flag("--list", list, "print every variant");

  auto* logic = app.add_subcommand("logic", "convert a document to logic");
  logic->add_option("doc", doc)->required();
  auto* rot_flag = logic->add_flag("--as-rot", as_rot, "rule-of-thumb implication");
  logic->add_flag("--as-sst", as_sst, "grounded situation facts")->excludes(rot_flag);
  c.add_lexicon(logic);

  auto* prove_cmd = app.add_subcommand("prove", "refute a goal against clauses");
  prove_cmd->add_option("clauses", doc)->required();
  prove_cmd->add_option("--goal", goal, "goal literal")->required();
  prove_cmd->add_option("--embeddings", embeddings, "JSON map symbol -> vector");
  prove_cmd->add_flag("--exact", exact, "exact string similarity");
  c.add_prover(prove_cmd);

  auto* match = app.add_subcommand("match", "match a ROT against an SST");
  match->add_option("rot", doc)->required();
  match->add_option("sst", doc2)->required();
  match->add_flag("--all-verdicts", all_verdicts, "query all four verdicts");
  c.add_prover(match);
  c.add_merge(match);
  c.add_lexicon(match);

  auto* eval = app.add_subcommand("eval", "evaluate over a corpus directory");
  eval->add_option("corpus", doc)->required();
  eval->add_option("--seed", seed, "negative sampling seed")->capture_default_str();
  eval->add_option("--sweep", sweep_spec, "axis=lo:hi:step or axis=v1,v2,...");
  eval->add_option("--buckets", buckets, "collapsability bucket edges");
  eval->add_option("--tsv", tsv, "write the sweep table here");
  eval->add_option("--jobs", jobs, "worker threads")->capture_default_str();
  eval->add_flag("--all-verdicts", all_verdicts, "query all four verdicts");
  c.add_prover(eval);
  c.add_merge(eval);
  c.add_lexicon(eval);

  auto* stats = app.add_subcommand("stats", "dataset statistics");
  stats->add_option("corpus", doc)->required();
  c.add_merge(stats);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse) return cmd_parse(doc);
    if (*merge) return cmd_merge(doc, c, list);
    if (*logic) return cmd_logic(doc, c, as_rot, as_sst);
    if (*prove_cmd) return cmd_prove(doc, goal, c, embeddings, exact);
    if (*match) return cmd_match(doc, doc2, c, all_verdicts);
    if (*eval) return cmd_eval(doc, c, seed, sweep_spec, buckets, all_verdicts, jobs, tsv);
    if (*stats) return cmd_stats(doc, c);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
