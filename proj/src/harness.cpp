#include "reasoner/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "reasoner/error.hpp"

namespace reasoner {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

const char* bound_name(Bound b) {
  return b == Bound::Inclusive ? "inclusive" : "strict";
}

json config_object(const RunConfig& c) {
  json lexicon = json::object();
  for (const auto& [name, e] : c.lexicon.entries()) {
    lexicon[name] = {{"verdict", e.bad ? "BAD" : "GOOD"}, {"negated", e.negated}};
  }
  return {
      {"similarity_threshold", c.prover.similarity_threshold},
      {"max_proof_depth", c.prover.max_proof_depth},
      {"max_resolvent_width", c.prover.max_resolvent_width},
      {"max_expansions", c.prover.max_expansions},
      {"max_merge_width", c.merge.max_merge_width},
      {"min_merge_depth", c.merge.min_merge_depth},
      {"width_bound", bound_name(c.merge.width_bound)},
      {"depth_bound", bound_name(c.merge.depth_bound)},
      {"max_variants", c.merge.max_variants},
      {"rng_seed", c.rng_seed},
      {"dataset", c.dataset},
      {"all_verdicts", c.all_verdicts},
      {"lexicon_size", c.lexicon.entries().size()},
      {"modals", c.lexicon.modals()},
  };
}

json clause_array(const Clause& c) { return to_string(c); }

json proof_object(const Proof& p) {
  json steps = json::array();
  for (const ProofStep& s : p.steps) {
    steps.push_back({
        {"left", clause_array(s.left)},
        {"right", clause_array(s.right)},
        {"input_index", s.input_index},
        {"left_literal", to_string(s.left[s.left_literal])},
        {"right_literal", to_string(s.right[s.right_literal])},
        {"similarity", s.similarity},
        {"substitution", to_string(s.substitution)},
        {"resolvent", clause_array(s.resolvent)},
    });
  }
  return {{"similarity", p.similarity},
          {"substitution", to_string(p.final_substitution)},
          {"steps", steps}};
}

json metrics_object(const EvalMetrics& m) {
  return {{"tp", m.tp},
          {"fp", m.fp},
          {"tn", m.tn},
          {"fn", m.fn},
          {"precision", opt(m.precision)},
          {"recall", opt(m.recall)},
          {"f1", opt(m.f1)}};
}

json record_object(const EvalRecord& r) {
  json o = {{"id", r.id},
            {"positive_outcome", r.positive_outcome
                                     ? json(to_string(*r.positive_outcome))
                                     : json(nullptr)},
            {"negative_outcome", r.negative_outcome
                                     ? json(to_string(*r.negative_outcome))
                                     : json(nullptr)},
            {"negative_rot_id", r.negative_rot_id},
            {"collapsability_rot", opt(r.collapsability_rot)},
            {"collapsability_sst", opt(r.collapsability_sst)},
            {"collapsability", opt(r.collapsability())},
            {"positive_similarity", opt(r.positive_similarity)},
            {"negative_similarity", opt(r.negative_similarity)}};
  if (!r.ok()) o["error"] = r.error;
  return o;
}

[[noreturn]] void rethrow_with(const std::string& prefix, const Error& e) {
  throw Error(e.code(), prefix + ": " + e.what());
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t jobs, Fn fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::string to_json(const RunConfig& config) { return config_object(config).dump(); }

PreparedDocument prepare(const AlignedAmrDocument& doc, const MergeConfig& config) {
  try {
    PreparedDocument out{doc.id, enumerate_merge_trees(load_tree(doc), config), {}};
    if (out.merges.original.size() > 1) out.collapsability = collapsability(out.merges);
    return out;
  } catch (const Error& e) {
    rethrow_with(doc.id, e);
  }
}

MatchResult match_prepared(const PreparedDocument& rot,
                           const PreparedDocument& sst, const RunConfig& config) {
  const std::string ids = rot.id + " / " + sst.id;
  try {
    config.prover.validate();
    const std::size_t nr = rot.merges.size();
    const std::size_t ns = sst.merges.size();

    std::vector<Implication> rules;
    std::vector<std::size_t> rot_width;
    for (std::size_t i = 0; i < nr; ++i) {
      rules.push_back(rot_to_implication(rot.merges.at(i), config.lexicon));
      rot_width.push_back(total_merge_width(rot.merges.at(i)));
    }
    std::vector<std::vector<Clause>> facts;
    std::vector<std::size_t> sst_width;
    for (std::size_t j = 0; j < ns; ++j) {
      facts.push_back(to_clauses(sst_to_facts(sst.merges.at(j))));
      sst_width.push_back(total_merge_width(sst.merges.at(j)));
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < ns; ++j) pairs.emplace_back(i, j);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      return rot_width[a.first] + sst_width[a.second] <
             rot_width[b.first] + sst_width[b.second];
    });

    MatchResult best;
    ProverConfig pc = config.prover;
    for (const auto& [i, j] : pairs) {
      std::vector<Clause> kb = to_clauses(rules[i]);
      kb.insert(kb.end(), facts[j].begin(), facts[j].end());

      std::vector<std::pair<Verdict, Literal>> goals;
      if (config.all_verdicts) {
        for (Verdict v : {Verdict::Good, Verdict::NotGood, Verdict::Bad, Verdict::NotBad}) {
          goals.emplace_back(v, make_literal(verdict_symbol(v), {Variable{"Q"}},
                                             !verdict_negated(v)));
        }
      } else {
        goals.emplace_back(rules[i].verdict, rules[i].consequent);
      }

      ++best.pairs_tried;
      for (const auto& [verdict, goal] : goals) {
        ProveResult r = prove(kb, goal, pc, config.similarity);
        best.cap_hit = best.cap_hit || r.stats.cap_hit;
        if (!r.proof) continue;
        // Later proofs must beat this one strictly, so raise the bar.
        pc.similarity_threshold = r.proof->similarity;
        best.matched = true;
        best.verdict = verdict;
        best.best_similarity = r.proof->similarity;
        best.rot_variant_index = i;
        best.sst_variant_index = j;
        best.proof = std::move(r.proof);
      }
      if (best.best_similarity && *best.best_similarity >= 1.0) break;
    }
    return best;
  } catch (const Error& e) {
    rethrow_with(ids, e);
  }
}

MatchResult match_rot_sst(const AlignedAmrDocument& rot,
                          const AlignedAmrDocument& sst, const RunConfig& config) {
  return match_prepared(prepare(rot, config.merge), prepare(sst, config.merge), config);
}

std::string to_json(const MatchResult& r) {
  json o = {{"matched", r.matched},
            {"verdict", r.verdict ? json(to_string(*r.verdict)) : json(nullptr)},
            {"best_similarity", opt(r.best_similarity)},
            {"rot_variant_index", opt(r.rot_variant_index)},
            {"sst_variant_index", opt(r.sst_variant_index)},
            {"pairs_tried", r.pairs_tried},
            {"cap_hit", r.cap_hit},
            {"proof", r.proof ? proof_object(*r.proof) : json(nullptr)}};
  return o.dump();
}

std::vector<Sample> load_corpus(const std::string& directory) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::InvalidDocument, "not a directory: " + directory);
  }
  std::map<std::string, std::pair<fs::path, fs::path>> found;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    auto ends = [&](std::string_view suffix) {
      return name.size() > suffix.size() && name.ends_with(suffix);
    };
    if (ends(".rot.json")) {
      found[name.substr(0, name.size() - 9)].first = entry.path();
    } else if (ends(".sst.json")) {
      found[name.substr(0, name.size() - 9)].second = entry.path();
    }
  }
  std::vector<Sample> out;
  for (const auto& [id, paths] : found) {
    if (paths.first.empty() || paths.second.empty()) {
      throw Error(ErrorCode::InvalidDocument, "incomplete sample " + id);
    }
    out.push_back(Sample{id, read_document(paths.first.string()),
                         read_document(paths.second.string())});
  }
  return out;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::TP: return "TP";
    case Outcome::FN: return "FN";
    case Outcome::FP: return "FP";
    case Outcome::TN: return "TN";
  }
  return "?";
}

std::optional<double> EvalRecord::collapsability() const {
  if (collapsability_rot && collapsability_sst) {
    return std::min(*collapsability_rot, *collapsability_sst);
  }
  return collapsability_rot ? collapsability_rot : collapsability_sst;
}

EvalMetrics compute_metrics(std::size_t tp, std::size_t fp, std::size_t tn,
                            std::size_t fn) {
  EvalMetrics m{tp, fp, tn, fn, {}, {}, {}};
  if (tp + fp) m.precision = double(tp) / double(tp + fp);
  if (tp + fn) m.recall = double(tp) / double(tp + fn);
  if (m.precision && m.recall && *m.precision + *m.recall > 0) {
    m.f1 = 2 * *m.precision * *m.recall / (*m.precision + *m.recall);
  }
  return m;
}

EvalMetrics compute_metrics(const std::vector<EvalRecord>& records) {
  std::size_t c[4] = {0, 0, 0, 0};
  for (const EvalRecord& r : records) {
    if (!r.ok() || !r.positive_outcome || !r.negative_outcome) continue;
    ++c[static_cast<int>(*r.positive_outcome)];
    ++c[static_cast<int>(*r.negative_outcome)];
  }
  const auto i = [](Outcome o) { return static_cast<int>(o); };
  return compute_metrics(c[i(Outcome::TP)], c[i(Outcome::FP)],
                         c[i(Outcome::TN)], c[i(Outcome::FN)]);
}

std::string to_json(const EvalMetrics& m) { return metrics_object(m).dump(); }
std::string to_json(const EvalRecord& r) { return record_object(r).dump(); }

std::vector<std::size_t> draw_negative_pairing(std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::EmptyInput, "negative pairing needs at least two samples");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t range = n - 1;
  // Smallest draw that keeps the accepted interval a multiple of range.
  const std::uint64_t floor = (0 - range) % range;
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t x;
    do x = rng();
    while (x < floor);
    std::size_t j = static_cast<std::size_t>(x % range);
    if (j >= i) ++j;
    out[i] = j;
  }
  return out;
}

namespace {

struct PreparedSample {
  std::optional<PreparedDocument> rot, sst;
  std::string rot_error, sst_error;
};

std::vector<PreparedSample> prepare_all(const std::vector<Sample>& dataset,
                                        const RunConfig& config) {
  std::vector<PreparedSample> out(dataset.size());
  parallel_for(dataset.size(), config.jobs, [&](std::size_t i) {
    try {
      out[i].rot = prepare(dataset[i].rot, config.merge);
    } catch (const Error& e) {
      out[i].rot_error = e.what();
    }
    try {
      out[i].sst = prepare(dataset[i].sst, config.merge);
    } catch (const Error& e) {
      out[i].sst_error = e.what();
    }
  });
  return out;
}

EvalReport evaluate_prepared(const std::vector<Sample>& dataset,
                             const std::vector<PreparedSample>& prepared,
                             const std::vector<std::size_t>& pairing,
                             const RunConfig& config) {
  EvalReport report;
  report.records.resize(dataset.size());
  parallel_for(dataset.size(), config.jobs, [&](std::size_t i) {
    EvalRecord& rec = report.records[i];
    const PreparedSample& own = prepared[i];
    const PreparedSample& other = prepared[pairing[i]];
    rec.id = dataset[i].id;
    rec.negative_rot_id = dataset[pairing[i]].rot.id;
    if (own.rot) rec.collapsability_rot = own.rot->collapsability;
    if (own.sst) rec.collapsability_sst = own.sst->collapsability;
    for (const std::string* err : {&own.rot_error, &own.sst_error, &other.rot_error}) {
      if (!err->empty()) {
        rec.error = *err;
        return;
      }
    }
    try {
      const MatchResult pos = match_prepared(*own.rot, *own.sst, config);
      const MatchResult neg = match_prepared(*other.rot, *own.sst, config);
      rec.positive_outcome = pos.matched ? Outcome::TP : Outcome::FN;
      rec.negative_outcome = neg.matched ? Outcome::FP : Outcome::TN;
      rec.positive_similarity = pos.best_similarity;
      rec.negative_similarity = neg.best_similarity;
    } catch (const Error& e) {
      rec.error = e.what();
    }
  });
  for (const EvalRecord& r : report.records) report.errors += !r.ok();
  report.metrics = compute_metrics(report.records);
  return report;
}

}  // namespace

EvalReport evaluate(const std::vector<Sample>& dataset, const RunConfig& config) {
  config.prover.validate();
  config.merge.validate();
  const auto pairing = draw_negative_pairing(dataset.size(), config.rng_seed);
  return evaluate_prepared(dataset, prepare_all(dataset, config), pairing, config);
}

std::vector<SweepRow> sweep(const std::vector<Sample>& dataset,
                            const RunConfig& config, SweepAxis axis,
                            const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::InvalidConfig, "empty sweep");
  if (!std::is_sorted(values.begin(), values.end())) {
    throw Error(ErrorCode::InvalidConfig, "sweep values must be sorted");
  }
  const auto pairing = draw_negative_pairing(dataset.size(), config.rng_seed);
  std::optional<std::vector<PreparedSample>> shared;
  if (axis == SweepAxis::Threshold) shared = prepare_all(dataset, config);

  std::vector<SweepRow> rows;
  for (double v : values) {
    RunConfig c = config;
    if (axis == SweepAxis::Threshold) {
      c.prover.similarity_threshold = v;
    } else {
      if (v < 1 || v != std::floor(v)) {
        throw Error(ErrorCode::InvalidConfig, "merge widths must be positive integers");
      }
      c.merge.max_merge_width = static_cast<std::size_t>(v);
    }
    c.prover.validate();
    c.merge.validate();
    EvalReport report = shared ? evaluate_prepared(dataset, *shared, pairing, c)
                               : evaluate_prepared(dataset, prepare_all(dataset, c),
                                                   pairing, c);
    rows.push_back(SweepRow{v, std::move(c), std::move(report)});
  }
  return rows;
}

namespace {
const char* axis_name(SweepAxis a) {
  return a == SweepAxis::Threshold ? "threshold" : "max_merge_width";
}

std::string fmt(const std::optional<double>& v) {
  if (!v) return "NA";
  std::ostringstream s;
  s.precision(17);
  s << *v;
  return s.str();
}
}  // namespace

std::string sweep_jsonl(const std::vector<SweepRow>& rows, SweepAxis axis) {
  std::string out;
  for (const SweepRow& r : rows) {
    json o = {{"axis", axis_name(axis)},
              {"value", r.value},
              {"config", config_object(r.config)},
              {"metrics", metrics_object(r.report.metrics)},
              {"errors", r.report.errors}};
    out += o.dump() + "\n";
  }
  return out;
}

std::string sweep_tsv(const std::vector<SweepRow>& rows, SweepAxis axis) {
  std::string out = std::string(axis_name(axis)) +
                    "\ttp\tfp\ttn\tfn\tprecision\trecall\tf1\terrors\n";
  for (const SweepRow& r : rows) {
    const EvalMetrics& m = r.report.metrics;
    out += fmt(r.value) + "\t" + std::to_string(m.tp) + "\t" + std::to_string(m.fp) +
           "\t" + std::to_string(m.tn) + "\t" + std::to_string(m.fn) + "\t" +
           fmt(m.precision) + "\t" + fmt(m.recall) + "\t" + fmt(m.f1) + "\t" +
           std::to_string(r.report.errors) + "\n";
  }
  return out;
}

std::vector<Bucket> bucket_by_collapsability(const std::vector<EvalRecord>& records,
                                             const std::vector<double>& edges) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::InvalidConfig,
                "bucket edges must be at least two strictly increasing values");
  }
  std::vector<std::vector<EvalRecord>> parts(edges.size() - 1);
  for (const EvalRecord& r : records) {
    const auto c = r.collapsability();
    if (!r.ok() || !c || *c < edges.front() || *c > edges.back()) continue;
    std::size_t b = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), *c) - edges.begin());
    b = std::min(b, edges.size() - 1) - 1;
    parts[b].push_back(r);
  }
  std::vector<Bucket> out;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    out.push_back(Bucket{edges[b], edges[b + 1], parts[b].size(),
                         compute_metrics(parts[b])});
  }
  return out;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values to summarize");
  Summary s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / double(values.size());
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2;
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stdev = std::sqrt(ss / double(n));
  return s;
}

DatasetStats dataset_stats(const std::vector<Sample>& dataset,
                           const MergeConfig& config) {
  if (dataset.empty()) throw Error(ErrorCode::EmptyInput, "empty dataset");
  DatasetStats out;
  auto doc_stats = [&](const AlignedAmrDocument& doc) {
    try {
      const AmrTree tree = load_tree(doc);
      return DocumentStats{doc.id, double(tree.count(NodeKind::Instance)),
                           double(tree.max_depth()), double(logic_term_count(tree)),
                           double(enumerate_merge_trees(tree, config).size())};
    } catch (const Error& e) {
      rethrow_with(doc.id, e);
    }
  };
  for (const Sample& s : dataset) {
    out.rot.push_back(doc_stats(s.rot));
    out.sst.push_back(doc_stats(s.sst));
  }
  auto column = [](const std::vector<DocumentStats>& docs, double DocumentStats::*f) {
    std::vector<double> v;
    for (const auto& d : docs) v.push_back(d.*f);
    return summarize(v);
  };
  out.rot_instance_nodes = column(out.rot, &DocumentStats::instance_nodes);
  out.rot_depth = column(out.rot, &DocumentStats::depth);
  out.rot_logic_terms = column(out.rot, &DocumentStats::logic_terms);
  out.rot_merge_trees = column(out.rot, &DocumentStats::merge_trees);
  out.sst_instance_nodes = column(out.sst, &DocumentStats::instance_nodes);
  out.sst_depth = column(out.sst, &DocumentStats::depth);
  out.sst_logic_terms = column(out.sst, &DocumentStats::logic_terms);
  out.sst_merge_trees = column(out.sst, &DocumentStats::merge_trees);
  return out;
}

std::string to_json(const DatasetStats& s) {
  auto sum = [](const Summary& x) {
    return json{{"mean", x.mean}, {"median", x.median}, {"stdev", x.stdev}};
  };
  auto docs = [](const std::vector<DocumentStats>& v) {
    json a = json::array();
    for (const auto& d : v) {
      a.push_back({{"id", d.id},
                   {"instance_nodes", d.instance_nodes},
                   {"depth", d.depth},
                   {"logic_terms", d.logic_terms},
                   {"merge_trees", d.merge_trees}});
    }
    return a;
  };
  json o = {
      {"rot",
       {{"instance_nodes", sum(s.rot_instance_nodes)},
        {"depth", sum(s.rot_depth)},
        {"logic_terms", sum(s.rot_logic_terms)},
        {"merge_trees", sum(s.rot_merge_trees)},
        {"documents", docs(s.rot)}}},
      {"sst",
       {{"instance_nodes", sum(s.sst_instance_nodes)},
        {"depth", sum(s.sst_depth)},
        {"logic_terms", sum(s.sst_logic_terms)},
        {"merge_trees", sum(s.sst_merge_trees)},
        {"documents", docs(s.sst)}}},
  };
  return o.dump();
}

}  // namespace reasoner
