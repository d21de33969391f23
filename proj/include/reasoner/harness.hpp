#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reasoner/amr.hpp"
#include "reasoner/logic.hpp"
#include "reasoner/merge.hpp"
#include "reasoner/prover.hpp"
#include "reasoner/similarity.hpp"

namespace reasoner {

struct RunConfig {
  ProverConfig prover;
  MergeConfig merge;
  std::uint64_t rng_seed = 0;
  std::string dataset;
  /// Query all four verdicts instead of only the ROT's own consequent.
  bool all_verdicts = false;
  std::size_t jobs = 1;
  VerdictLexicon lexicon = VerdictLexicon::defaults();
  SimilarityFn similarity = hybrid_similarity;
};

/// Every serializable field of the config as one JSON object.
std::string to_json(const RunConfig& config);

/// A document loaded, normalized and expanded into its merge variants.
struct PreparedDocument {
  std::string id;
  MergeTreeSet merges;
  /// Undefined for single-node trees.
  std::optional<double> collapsability;
};

PreparedDocument prepare(const AlignedAmrDocument& doc, const MergeConfig& config);

struct MatchResult {
  bool matched = false;
  std::optional<Verdict> verdict;
  std::optional<Proof> proof;
  std::optional<double> best_similarity;
  std::optional<std::size_t> rot_variant_index;
  std::optional<std::size_t> sst_variant_index;
  std::size_t pairs_tried = 0;
  /// Some prover call stopped at a cap.
  bool cap_hit = false;
};

/// Tries every (ROT variant, SST variant) pair, (original, original) first
/// and then by ascending total merge width, and keeps the best proof of the
/// queried verdict. Errors are rethrown with the document ids prefixed.
MatchResult match_rot_sst(const AlignedAmrDocument& rot,
                          const AlignedAmrDocument& sst, const RunConfig& config);
MatchResult match_prepared(const PreparedDocument& rot,
                           const PreparedDocument& sst, const RunConfig& config);

std::string to_json(const MatchResult& result);

struct Sample {
  std::string id;
  AlignedAmrDocument rot;
  AlignedAmrDocument sst;
};

/// Reads `<id>.rot.json` / `<id>.sst.json` pairs from a directory, sorted by
/// id. Throws InvalidDocument if either half of a pair is missing.
std::vector<Sample> load_corpus(const std::string& directory);

enum class Outcome { TP, FN, FP, TN };
const char* to_string(Outcome o);

struct EvalRecord {
  std::string id;
  std::optional<Outcome> positive_outcome;
  std::optional<Outcome> negative_outcome;
  std::string negative_rot_id;
  std::optional<double> collapsability_rot;
  std::optional<double> collapsability_sst;
  std::optional<double> positive_similarity;
  std::optional<double> negative_similarity;
  /// Nonempty when the sample failed; such samples are left out of counts.
  std::string error;

  /// Smaller of the defined ROT/SST values.
  std::optional<double> collapsability() const;
  bool ok() const { return error.empty(); }
};

struct EvalMetrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  /// Empty where the ratio divides by zero.
  std::optional<double> precision, recall, f1;
};

EvalMetrics compute_metrics(std::size_t tp, std::size_t fp, std::size_t tn,
                            std::size_t fn);
/// Metrics over the successful records.
EvalMetrics compute_metrics(const std::vector<EvalRecord>& records);

std::string to_json(const EvalMetrics& metrics);
std::string to_json(const EvalRecord& record);

/// For each sample i, the index of a different sample whose ROT is its
/// negative. Uniform over the other n-1 samples, drawn from a 64-bit Mersenne
/// Twister by rejection so the pairing depends on the seed alone.
std::vector<std::size_t> draw_negative_pairing(std::size_t n, std::uint64_t seed);

struct EvalReport {
  EvalMetrics metrics;
  std::vector<EvalRecord> records;
  std::size_t errors = 0;
};

/// One positive match and one negative match per sample. Needs at least two
/// samples.
EvalReport evaluate(const std::vector<Sample>& dataset, const RunConfig& config);

enum class SweepAxis { Threshold, MaxMergeWidth };

struct SweepRow {
  double value = 0.0;
  RunConfig config;
  EvalReport report;
};

std::vector<SweepRow> sweep(const std::vector<Sample>& dataset,
                            const RunConfig& config, SweepAxis axis,
                            const std::vector<double>& values);

/// One JSON object per row.
std::string sweep_jsonl(const std::vector<SweepRow>& rows, SweepAxis axis);
/// Tab-separated table with a header; undefined values are written as NA.
std::string sweep_tsv(const std::vector<SweepRow>& rows, SweepAxis axis);

struct Bucket {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t samples = 0;
  EvalMetrics metrics;
};

/// Buckets are [e_i, e_{i+1}) with the last one closed. Failed records, those
/// with undefined collapsability and those outside the edges are skipped.
std::vector<Bucket> bucket_by_collapsability(const std::vector<EvalRecord>& records,
                                             const std::vector<double>& edges);

struct Summary {
  double mean = 0.0, median = 0.0, stdev = 0.0;
};
/// Population standard deviation. Throws EmptyInput.
Summary summarize(const std::vector<double>& values);

struct DocumentStats {
  std::string id;
  double instance_nodes = 0, depth = 0, logic_terms = 0, merge_trees = 0;
};

struct DatasetStats {
  std::vector<DocumentStats> rot, sst;
  Summary rot_instance_nodes, rot_depth, rot_logic_terms, rot_merge_trees;
  Summary sst_instance_nodes, sst_depth, sst_logic_terms, sst_merge_trees;
};

/// Merge-tree counts include the original tree.
DatasetStats dataset_stats(const std::vector<Sample>& dataset,
                           const MergeConfig& config);

std::string to_json(const DatasetStats& stats);

}  // namespace reasoner
