#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "reasoner/amr.hpp"
#include "reasoner/error.hpp"
#include "reasoner/harness.hpp"
#include "reasoner/logic.hpp"
#include "reasoner/merge.hpp"
#include "reasoner/prover.hpp"
#include "reasoner/similarity.hpp"

namespace py = pybind11;
using namespace reasoner;

namespace {

std::optional<EmbeddingVector> as_embedding(const std::optional<std::vector<double>>& v) {
  if (!v) return std::nullopt;
  return EmbeddingVector(*v);
}

RunConfig run_config(double threshold, std::size_t max_width, std::uint64_t seed,
                     std::size_t max_depth) {
  RunConfig c;
  c.prover.similarity_threshold = threshold;
  c.prover.max_proof_depth = max_depth;
  c.merge.max_merge_width = max_width;
  c.rng_seed = seed;
  c.prover.validate();
  c.merge.validate();
  return c;
}

// Normalized tree of a penman string (frames stripped, roles normalized).
AmrTree normalized(const std::string& penman) {
  return normalize_inverse_roles(strip_frame_numbers(parse_penman(penman)));
}

}  // namespace

PYBIND11_MODULE(_reasoner, m) {
  m.doc() = "AMR rule-of-thumb reasoner";

  static py::exception<Error> error(m, "ReasonerError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "hybrid_similarity",
      [](const std::string& a, const std::optional<std::vector<double>>& ea,
         const std::string& b, const std::optional<std::vector<double>>& eb) {
        return hybrid_similarity({a, as_embedding(ea)}, {b, as_embedding(eb)});
      },
      py::arg("a"), py::arg("a_embedding") = py::none(), py::arg("b"),
      py::arg("b_embedding") = py::none());

  m.def("normalize_penman", [](const std::string& penman) {
    return to_penman(normalized(penman), false);
  });

  m.def("formula", [](const std::string& penman) {
    return to_string(amr_to_formula(normalized(penman)));
  });

  m.def("rot_implication", [](const std::string& penman) {
    return to_string(rot_to_implication(normalized(penman), VerdictLexicon::defaults()));
  });

  m.def("sst_facts", [](const std::string& penman) {
    std::vector<std::string> out;
    for (const Literal& l : sst_to_facts(normalized(penman))) out.push_back(to_string(l));
    return out;
  });

  m.def("normalize_document",
        [](const std::string& json_text) {
          const auto doc = parse_document(json_text);
          validate_document(doc);
          return to_json(doc);
        },
        "Validates an aligned AMR document and returns its canonical JSON.");

  m.def(
      "merge_trees",
      [](const std::string& document_path, std::size_t max_width) {
        MergeConfig c;
        c.max_merge_width = max_width;
        c.validate();
        const auto set = enumerate_merge_trees(load_tree(read_document(document_path)), c);
        std::vector<std::string> out;
        for (std::size_t i = 0; i < set.size(); ++i) out.push_back(to_penman(set.at(i), false));
        return out;
      },
      py::arg("document_path"), py::arg("max_width") = 6);

  m.def(
      "collapsability",
      [](const std::string& document_path, std::size_t max_width) {
        MergeConfig c;
        c.max_merge_width = max_width;
        return collapsability(load_tree(read_document(document_path)), c);
      },
      py::arg("document_path"), py::arg("max_width") = 6);

  m.def(
      "prove",
      [](const std::string& clauses, const std::string& goal, double threshold,
         std::size_t max_depth, bool exact) {
        ProverConfig c;
        c.similarity_threshold = threshold;
        c.max_proof_depth = max_depth;
        c.validate();
        const auto kb = parse_clauses(clauses);
        const SimilarityFn sim = exact ? SimilarityFn(exact_similarity)
                                       : SimilarityFn(hybrid_similarity);
        const auto r = prove(kb, parse_literal(goal), c, sim);
        py::dict d;
        d["proved"] = r.proof.has_value();
        d["similarity"] = r.proof ? py::cast(r.proof->similarity) : py::none();
        d["steps"] = r.proof ? r.proof->steps.size() : 0;
        d["cap_hit"] = r.stats.cap_hit;
        return d;
      },
      py::arg("clauses"), py::arg("goal"), py::arg("threshold") = 0.925,
      py::arg("max_depth") = 12, py::arg("exact") = false);

  m.def(
      "match",
      [](const std::string& rot_path, const std::string& sst_path, double threshold,
         std::size_t max_width, std::size_t max_depth) {
        const auto r = match_rot_sst(read_document(rot_path), read_document(sst_path),
                                     run_config(threshold, max_width, 0, max_depth));
        return to_json(r);
      },
      py::arg("rot_path"), py::arg("sst_path"), py::arg("threshold") = 0.925,
      py::arg("max_width") = 6, py::arg("max_depth") = 12);

  m.def(
      "evaluate",
      [](const std::string& corpus_dir, std::uint64_t seed, double threshold,
         std::size_t max_width) {
        const auto report = evaluate(load_corpus(corpus_dir),
                                     run_config(threshold, max_width, seed, 12));
        return to_json(report.metrics);
      },
      py::arg("corpus_dir"), py::arg("seed") = 0, py::arg("threshold") = 0.925,
      py::arg("max_width") = 6);
}
