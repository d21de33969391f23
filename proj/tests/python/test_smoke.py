import json
import os
from pathlib import Path

import pytest

import reasoner

ROOT = Path(os.environ.get("REASONER_SOURCE_DIR", Path(__file__).resolve().parents[2]))
CORPUS = ROOT / "data" / "corpus"


def test_similarity_examples():
    assert reasoner.hybrid_similarity("father", None, "father", None) == 1.0
    assert reasoner.hybrid_similarity("dad", None, "father", None) == 0.0
    assert reasoner.hybrid_similarity("kid", [1, 0], "child", [0, 1]) == 0.5
    with pytest.raises(reasoner.ReasonerError):
        reasoner.hybrid_similarity("a", [1, 0], "b", [1, 0, 0])


def test_logic_conversions():
    assert (
        reasoner.rot_implication("(r / rude :ARG1 (h / hang-up :ARG2 (s / someone)))")
        == "hang-up(H) & :ARG2(H,S) & someone(S) -> BAD(H)"
    )
    assert reasoner.sst_facts("(g / go-02 :ARG0 (b / boy) :polarity -)") == [
        "!go(g)",
        ":ARG0(g,b)",
        "boy(b)",
    ]
    assert reasoner.formula("(g / go :polarity -)").startswith("!exists G.")
    assert reasoner.normalize_penman("(b / boy :ARG0-of (g / go-02))") == "(b / boy :ARG0-of (g / go))"


def test_bad_penman_raises():
    with pytest.raises(reasoner.ReasonerError):
        reasoner.formula("(a / b")


def test_document_round_trip():
    text = (CORPUS / "p02-hang-up.sst.json").read_text()
    doc = reasoner.load_document(text)
    assert doc == json.loads(reasoner._reasoner.normalize_document(json.dumps(doc)))
    assert set(doc) >= {"id", "penman", "tokens", "node_alignments", "token_embeddings"}
    bad = dict(doc, tokens=doc["tokens"][:-1])
    with pytest.raises(reasoner.ReasonerError):
        reasoner.load_document(json.dumps(bad))


def test_prove():
    kb = "man(socrates)\nman(X) -> mortal(X)\n"
    r = reasoner.prove(kb, "mortal(socrates)", threshold=0.5, exact=True)
    assert r["proved"] and r["similarity"] == 1.0 and r["steps"] == 2
    assert not reasoner.prove(kb, "mortal(plato)", threshold=0.5, exact=True)["proved"]


def test_merges_and_match():
    dog = CORPUS / "p01-white-dog.sst.json"
    trees = reasoner.merge_trees(str(dog))
    assert len(trees) > 1 and any("MERGE" in t for t in trees)
    assert 0.0 <= reasoner.collapsability(str(dog)) <= 1.0
    rot = CORPUS / "p01-white-dog.rot.json"
    assert not reasoner.match(rot, dog, max_width=1)["matched"]
    assert reasoner.match(rot, dog, max_width=6)["matched"]


def test_evaluate_corpus():
    m = reasoner.evaluate(CORPUS, seed=63)
    assert (m["tp"], m["fp"], m["tn"], m["fn"]) == (17, 1, 23, 7)
