#!/usr/bin/env python3
"""Writes the fixture corpus under data/.

Word vectors are built from an orthonormal basis, so the cosine between any
two vectors is known by construction: unrelated words are orthogonal (hybrid
similarity 0.5) and related words get an explicit cosine. The expected outcome
of every pair follows from those numbers by hand; see data/corpus/adjudication.json.
"""

import argparse
import json
import math
from pathlib import Path

import numpy as np
import penman

DIM = 256


class Vocab:
    def __init__(self, dim, seed):
        rng = np.random.default_rng(seed)
        q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
        self.basis = q.T
        self.next = 0
        self.vecs = {}

    def _fresh(self):
        v = self.basis[self.next]
        self.next += 1
        return v

    def base(self, name):
        if name not in self.vecs:
            self.vecs[name] = self._fresh()
        return self.vecs[name]

    def near(self, name, of, cos):
        """Unit vector with the given cosine to `of`."""
        v = cos * self.base(of) + math.sqrt(1 - cos * cos) * self._fresh()
        self.vecs[name] = v
        return v

    def lin(self, name, terms):
        v = sum(c * self.base(n) for c, n in terms)
        self.vecs[name] = v / np.linalg.norm(v)
        return self.vecs[name]

    def __getitem__(self, name):
        return self.base(name)


def node_paths(text):
    """variable -> node path, using surface roles and same-role ordinals."""
    tree = penman.parse(text)
    out = {}

    def walk(node, path):
        var, branches = node
        out[var] = path
        seen = {}
        for role, target in branches:
            if role == "/":
                continue
            k = seen.get(role, 0)
            seen[role] = k + 1
            if isinstance(target, tuple):
                walk(target, (path + "/" if path else "") + f"{role}.{k}")

    walk(tree.node, "")
    return out


def document(vocab, doc_id, text, amr, tokens, align):
    """tokens: list of (surface, vector name); align: variable -> token indices."""
    paths = node_paths(amr)
    rows = []
    for surface, key in tokens:
        v = vocab[key] if key else vocab.base("tok:" + surface.lower())
        rows.append([float(np.float32(x)) for x in v])
    return {
        "id": doc_id,
        "text": text,
        "penman": amr,
        "tokens": [t for t, _ in tokens],
        "node_alignments": {paths[var]: idx for var, idx in align.items()},
        "token_embeddings": rows,
        "embedding_dim": DIM,
    }


def build_vocab():
    v = Vocab(DIM, 7305)
    v.near("white_ctx", "dog", 0.6)
    v.near("hanging_ctx", "hang-up", 0.95)
    v.base("someone")
    v.lin("cousin_ctx", [(0.8, "someone"), (0.6, "cousin_perp")])
    v.lin("my_ctx", [(0.8, "someone"), (-0.6, "cousin_perp")])
    v.near("room_ctx", "thing", 0.9)
    v.near("error", "mistake", 0.92)
    v.near("child", "kid", 0.95)
    v.near("kitten", "cat", 0.9)
    v.near("neighborhood", "stray", 0.3)
    v.near("grandparent", "person", 0.9)
    v.near("aunt", "person", 0.9)
    v.near("teacher", "person", 0.7)
    v.near("test", "exam", 0.93)
    v.near("you", "i", 0.9)
    v.near("tease", "mock", 0.8)
    v.near("brother_ctx", "other", 0.88)
    v.near("server", "waiter", 0.9)
    v.near("jump", "cut", 0.5)
    v.near("queue", "line", 0.9)
    return v


def W(text):
    """Tokens of a sentence, each with its own filler vector."""
    return [(t, None) for t in text.split()]


# (id, rot, sst, expected positive outcome, reason)
# rot/sst: (text, penman, tokens, alignment)
SAMPLES = [
    ("p01-white-dog",
     ("It's good to walk dogs.", "(g / good-02 :ARG1 (w / walk-01 :ARG1 (d / dog)))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("walk", "walk"), ("dogs", "dog")],
      {"g": [2], "w": [4], "d": [5]}),
     ("Walking a white dog", "(w / walk-01 :ARG1 (w2 / white-03 :ARG1 (d / dog)))",
      [("Walking", "walk"), ("a", None), ("white", "white_ctx"), ("dog", "dog")],
      {"w": [0], "w2": [2], "d": [3]}),
     "TP", "dog vs white is cos 0.6; merging white+dog gives cos 0.894, sim 0.947"),
    ("p02-hang-up",
     ("It's rude to hang up on someone.", "(r / rude :ARG1 (h / hang-up :ARG2 (s / someone)))",
      [("It", None), ("'s", None), ("rude", "rude"), ("to", None), ("hang", "hang-up"), ("up", "hang-up"),
       ("on", None), ("someone", "someone")],
      {"r": [2], "h": [4, 5], "s": [7]}),
     ("Hanging up on my cousin",
      "(h / hanging :ARG2 (p / person :ARG0-of (h2 / have-rel-role :ARG1 (i / i) :ARG2 (c / cousin))))",
      [("Hanging", "hanging_ctx"), ("up", None), ("on", None), ("my", "my_ctx"), ("cousin", "cousin_ctx")],
      {"h": [0], "p": [4], "h2": [4], "i": [3], "c": [4]}),
     "TP", "someone vs person cos 0.8 fails; merged person subtree cos 0.936, sim 0.968"),
    ("p03-keep-clean",
     ("It's good to keep things clean.",
      "(g / good-02 :ARG1 (k / keep-02 :ARG1 (t / thing :ARG1-of (c / clean-04))))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("keep", "keep"), ("things", "thing"),
       ("clean", "clean")],
      {"g": [2], "k": [4], "t": [5], "c": [6]}),
     ("Keeping my room clean", "(k / keep-02 :ARG1 (r / room :ARG1-of (c / clean-04) :poss (i / i)))",
      [("Keeping", "keep"), ("my", "i"), ("room", "room_ctx"), ("clean", "clean")],
      {"k": [0], "i": [1], "r": [2], "c": [3]}),
     "TP", "thing vs room cos 0.9, sim 0.95"),
    ("p04-steal-money",
     ("It's wrong to steal money.", "(w / wrong-02 :ARG1 (s / steal-01 :ARG1 (m / money)))",
      [("It", None), ("'s", None), ("wrong", "wrong"), ("to", None), ("steal", "steal"), ("money", "money")],
      {"w": [2], "s": [4], "m": [5]}),
     ("Stealing money from my mom",
      "(s / steal-01 :ARG1 (m / money) :source (p / person :ARG0-of (h / have-rel-role-91 "
      ":ARG1 (i / i) :ARG2 (m2 / mom))))",
      [("Stealing", "steal"), ("money", "money"), ("from", None), ("my", "i"), ("mom", "mom")],
      {"s": [0], "m": [1], "p": [4], "h": [4], "i": [3], "m2": [4]}),
     "TP", "identical body, similarity 1.0 on the original trees"),
    ("p05-help-neighbor",
     ("It's kind to help your neighbor.", "(k / kind-01 :ARG1 (h / help-01 :ARG1 (n / neighbor)))",
      [("It", None), ("'s", None), ("kind", "kind"), ("to", None), ("help", "help"), ("your", "you"),
       ("neighbor", "neighbor")],
      {"k": [2], "h": [4], "n": [6]}),
     ("Helping my elderly neighbor",
      "(h / help-01 :ARG1 (n / neighbor :mod (e / elderly) :poss (i / i)))",
      [("Helping", "help"), ("my", "i"), ("elderly", "elderly"), ("neighbor", "neighbor")],
      {"h": [0], "i": [1], "e": [2], "n": [3]}),
     "TP", "exact"),
    ("p06-share-toys",
     ("It's good to share toys.", "(g / good-02 :ARG1 (s / share-01 :ARG1 (t / toy)))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("share", "share"), ("toys", "toy")],
      {"g": [2], "s": [4], "t": [5]}),
     ("Sharing my toys with my little brother",
      "(s / share-01 :ARG1 (t / toy :poss (i / i)) :ARG2 (b / brother :mod (l / little)))",
      [("Sharing", "share"), ("my", "i"), ("toys", "toy"), ("with", None), ("my", "i"), ("little", "little"),
       ("brother", "brother")],
      {"s": [0], "i": [1], "t": [2], "l": [5], "b": [6]}),
     "TP", "exact"),
    ("p07-lie-parents",
     ("It's bad to lie to your parents.", "(b / bad-07 :ARG1 (l / lie-08 :ARG2 (p / parent)))",
      [("It", None), ("'s", None), ("bad", "bad"), ("to", None), ("lie", "lie"), ("to", None), ("your", "you"),
       ("parents", "parent")],
      {"b": [2], "l": [4], "p": [7]}),
     ("Lying to my parents", "(l / lie-08 :ARG2 (p / parent :poss (i / i)))",
      [("Lying", "lie"), ("to", None), ("my", "i"), ("parents", "parent")],
      {"l": [0], "i": [2], "p": [3]}),
     "TP", "exact"),
    ("p08-apologize",
     ("It's good to apologize for mistakes.", "(g / good-02 :ARG1 (a / apologize-01 :ARG1 (m / mistake)))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("apologize", "apologize"), ("for", None),
       ("mistakes", "mistake")],
      {"g": [2], "a": [4], "m": [6]}),
     ("Apologizing for my error", "(a / apologize-01 :ARG1 (e / error :poss (i / i)))",
      [("Apologizing", "apologize"), ("for", None), ("my", "i"), ("error", "error")],
      {"a": [0], "i": [2], "e": [3]}),
     "TP", "mistake vs error cos 0.92, sim 0.96"),
    ("p09-yell-kids",
     ("It's wrong to yell at kids.", "(w / wrong-02 :ARG1 (y / yell-01 :ARG2 (k / kid)))",
      [("It", None), ("'s", None), ("wrong", "wrong"), ("to", None), ("yell", "yell"), ("at", None),
       ("kids", "kid")],
      {"w": [2], "y": [4], "k": [6]}),
     ("Yelling at my child", "(y / yell-01 :ARG2 (c / child :poss (i / i)))",
      [("Yelling", "yell"), ("at", None), ("my", "i"), ("child", "child")],
      {"y": [0], "i": [2], "c": [3]}),
     "TP", "kid vs child cos 0.95, sim 0.975"),
    ("p10-feed-cats",
     ("It's good to feed stray cats.", "(g / good-02 :ARG1 (f / feed-01 :ARG1 (c / cat :mod (s / stray))))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("feed", "feed"), ("stray", "stray"),
       ("cats", "cat")],
      {"g": [2], "f": [4], "s": [5], "c": [6]}),
     ("Feeding the neighborhood kittens", "(f / feed-01 :ARG1 (k / kitten :mod (n / neighborhood)))",
      [("Feeding", "feed"), ("the", None), ("neighborhood", "neighborhood"), ("kittens", "kitten")],
      {"f": [0], "n": [2], "k": [3]}),
     "FN", "stray vs neighborhood cos 0.3; every merge combination stays below cos 0.64"),
    ("p11-visit-grandparents",
     ("It's good to visit your grandparents.", "(g / good-02 :ARG1 (v / visit-01 :ARG1 (g2 / grandparent)))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("visit", "visit"), ("your", "you"),
       ("grandparents", "grandparent")],
      {"g": [2], "v": [4], "g2": [6]}),
     ("Visiting my grandparents", "(v / visit-01 :ARG1 (g / grandparent :poss (i / i)))",
      [("Visiting", "visit"), ("my", "i"), ("grandparents", "grandparent")],
      {"v": [0], "i": [1], "g": [2]}),
     "TP", "exact"),
    ("p12-recycle",
     ("It's responsible to recycle bottles.",
      "(r / responsible-02 :ARG1 (r2 / recycle-01 :ARG1 (b / bottle)))",
      [("It", None), ("'s", None), ("responsible", "responsible"), ("to", None), ("recycle", "recycle"),
       ("bottles", "bottle")],
      {"r": [2], "r2": [4], "b": [5]}),
     ("Recycling plastic bottles", "(r / recycle-01 :ARG1 (b / bottle :consist-of (p / plastic)))",
      [("Recycling", "recycle"), ("plastic", "plastic"), ("bottles", "bottle")],
      {"r": [0], "p": [1], "b": [2]}),
     "TP", "exact"),
    ("p13-pay-back",
     ("It's wrong to not pay back loans.",
      "(w / wrong-02 :ARG1 (p / pay-back-03 :polarity - :ARG1 (l / loan)))",
      [("It", None), ("'s", None), ("wrong", "wrong"), ("to", None), ("not", None), ("pay", "pay-back"),
       ("back", "pay-back"), ("loans", "loan")],
      {"w": [2], "p": [5, 6], "l": [7]}),
     ("Not paying back my friend's loan",
      "(p / pay-back-03 :polarity - :ARG1 (l / loan :poss (f / friend :poss (i / i))))",
      [("Not", None), ("paying", "pay-back"), ("back", "pay-back"), ("my", "i"), ("friend's", "friend"),
       ("loan", "loan")],
      {"p": [1, 2], "i": [3], "f": [4], "l": [5]}),
     "TP", "exact, negated on both sides; the ROT cannot merge across its negation"),
    ("p14-interrupt",
     ("It's rude to interrupt people.", "(r / rude :ARG1 (i / interrupt-01 :ARG1 (p / person)))",
      [("It", None), ("'s", None), ("rude", "rude"), ("to", None), ("interrupt", "interrupt"),
       ("people", "person")],
      {"r": [2], "i": [4], "p": [5]}),
     ("I interrupted my teacher", "(i / interrupt-01 :ARG0 (i2 / i) :ARG1 (t / teacher))",
      [("I", "i"), ("interrupted", "interrupt"), ("my", None), ("teacher", "teacher")],
      {"i2": [0], "i": [1], "t": [3]}),
     "FN", "person vs teacher cos 0.7, sim 0.85"),
    ("p15-cheat-exam",
     ("It's wrong to cheat on exams.", "(w / wrong-02 :ARG1 (c / cheat-03 :ARG1 (e / exam)))",
      [("It", None), ("'s", None), ("wrong", "wrong"), ("to", None), ("cheat", "cheat"), ("on", None),
       ("exams", "exam")],
      {"w": [2], "c": [4], "e": [6]}),
     ("I cheated on a test", "(c / cheat-03 :ARG0 (i / i) :ARG1 (t / test))",
      [("I", "i"), ("cheated", "cheat"), ("on", None), ("a", None), ("test", "test")],
      {"i": [0], "c": [1], "t": [4]}),
     "TP", "exam vs test cos 0.93, sim 0.965"),
    ("p16-skip-class",
     ("It's bad to skip class.", "(b / bad-07 :ARG1 (s / skip-01 :ARG1 (c / class)))",
      [("It", None), ("'s", None), ("bad", "bad"), ("to", None), ("skip", "skip"), ("class", "class")],
      {"b": [2], "s": [4], "c": [5]}),
     ("I didn't skip class today",
      "(s / skip-01 :polarity - :ARG0 (i / i) :ARG1 (c / class) :time (t / today))",
      [("I", "i"), ("didn't", None), ("skip", "skip"), ("class", "class"), ("today", "today")],
      {"i": [0], "s": [2], "c": [3], "t": [4]}),
     "FN", "the situation negates skip, so the positive skip literal has no partner"),
    ("p17-care-self",
     ("It's good to take care of yourself.", "(g / good-02 :ARG1 (c / care-03 :ARG0 (y / you) :ARG1 y))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("take", "care"), ("care", "care"),
       ("of", None), ("yourself", "you")],
      {"g": [2], "c": [5], "y": [7]}),
     ("I took care of my dog", "(c / care-03 :ARG0 (i / i) :ARG1 (d / dog))",
      [("I", "i"), ("took", "care"), ("care", "care"), ("of", None), ("my", None), ("dog", "dog")],
      {"i": [0], "c": [2], "d": [5]}),
     "FN", "the coreference needs :ARG1(c, i), which the situation lacks"),
    ("p18-mock",
     ("It's mean to mock people.", "(m / mean-01 :ARG1 (m2 / mock-01 :ARG1 (p / person)))",
      [("It", None), ("'s", None), ("mean", "mean"), ("to", None), ("mock", "mock"), ("people", "person")],
      {"m": [2], "m2": [4], "p": [5]}),
     ("I teased my friend", "(t / tease-01 :ARG0 (i / i) :ARG1 (f / friend))",
      [("I", "i"), ("teased", "tease"), ("my", None), ("friend", "friend")],
      {"i": [0], "t": [1], "f": [3]}),
     "FN", "mock vs tease cos 0.8, sim 0.9"),
    ("p19-eat-vegetables",
     ("It's healthy to eat vegetables.", "(h / healthy :ARG1 (e / eat-01 :ARG1 (v / vegetable)))",
      [("It", None), ("'s", None), ("healthy", "healthy"), ("to", None), ("eat", "eat"),
       ("vegetables", "vegetable")],
      {"h": [2], "e": [4], "v": [5]}),
     ("I eat green vegetables", "(e / eat-01 :ARG0 (i / i) :ARG1 (v / vegetable :ARG1-of (g / green-02)))",
      [("I", "i"), ("eat", "eat"), ("green", "green"), ("vegetables", "vegetable")],
      {"i": [0], "e": [1], "g": [2], "v": [3]}),
     "TP", "exact"),
    ("p20-blame",
     ("It's unfair to blame others.", "(u / unfair :ARG1 (b / blame-01 :ARG1 (o / other)))",
      [("It", None), ("'s", None), ("unfair", "unfair"), ("to", None), ("blame", "blame"), ("others", "other")],
      {"u": [2], "b": [4], "o": [5]}),
     ("I blamed my brother for my mistake",
      "(b / blame-01 :ARG0 (i / i) :ARG1 (b2 / brother :poss (i2 / i)) :ARG2 (m / mistake :poss (i3 / i)))",
      [("I", "i"), ("blamed", "blame"), ("my", "i"), ("brother", "brother_ctx"), ("for", None), ("my", "i"),
       ("mistake", "mistake")],
      {"i": [0], "b": [1], "i2": [2], "b2": [3], "i3": [5], "m": [6]}),
     "TP", "other vs brother cos 0.88, sim 0.94"),
    ("p21-break-promise",
     ("It's wrong to break promises.", "(w / wrong-02 :ARG1 (b / break-01 :ARG1 (p / promise-01)))",
      [("It", None), ("'s", None), ("wrong", "wrong"), ("to", None), ("break", "break"),
       ("promises", "promise")],
      {"w": [2], "b": [4], "p": [5]}),
     ("I broke my promise to my sister",
      "(b / break-01 :ARG0 (i / i) :ARG1 (p / promise-01 :ARG2 (s / sister)))",
      [("I", "i"), ("broke", "break"), ("my", None), ("promise", "promise"), ("to", None), ("my", None),
       ("sister", "sister")],
      {"i": [0], "b": [1], "p": [3], "s": [6]}),
     "TP", "exact"),
    ("p22-tip-waiter",
     ("It's good to tip waiters.", "(g / good-02 :ARG1 (t / tip-01 :ARG2 (w / waiter)))",
      [("It", None), ("'s", None), ("good", "good"), ("to", None), ("tip", "tip"), ("waiters", "waiter")],
      {"g": [2], "t": [4], "w": [5]}),
     ("I left the server a big tip",
      "(l / leave-13 :ARG0 (i / i) :ARG1 (t / tip :mod (b / big)) :ARG2 (s / server))",
      [("I", "i"), ("left", "leave"), ("the", None), ("server", "server"), ("a", None), ("big", "big"),
       ("tip", "tip")],
      {"i": [0], "l": [1], "s": [3], "b": [5], "t": [6]}),
     "FN", "tip is a noun here; no node has both tip and an :ARG2 to a waiter"),
    ("p23-visit-people",
     ("It's nice to visit people.", "(n / nice-01 :ARG1 (v / visit-01 :ARG1 (p / person)))",
      [("It", None), ("'s", None), ("nice", "nice"), ("to", None), ("visit", "visit"), ("people", "person")],
      {"n": [2], "v": [4], "p": [5]}),
     ("I visited my aunt at her new house",
      "(v / visit-01 :ARG0 (i / i) :ARG1 (a / aunt) :location (h / house :mod (n / new)))",
      [("I", "i"), ("visited", "visit"), ("my", None), ("aunt", "aunt"), ("at", None), ("her", None),
       ("new", "new"), ("house", "house")],
      {"i": [0], "v": [1], "a": [3], "n": [6], "h": [7]}),
     "TP", "person vs aunt cos 0.9, sim 0.95"),
    ("p24-cut-line",
     ("It's rude to cut in line.", "(r / rude :ARG1 (c / cut-02 :ARG1 (l / line)))",
      [("It", None), ("'s", None), ("rude", "rude"), ("to", None), ("cut", "cut"), ("in", None),
       ("line", "line")],
      {"r": [2], "c": [4], "l": [6]}),
     ("I jumped the queue at the grocery store",
      "(j / jump-03 :ARG0 (i / i) :ARG1 (q / queue) :location (s / store :mod (g / grocery)))",
      [("I", "i"), ("jumped", "jump"), ("the", None), ("queue", "queue"), ("at", None), ("the", None),
       ("grocery", "grocery"), ("store", "store")],
      {"i": [0], "j": [1], "q": [3], "g": [6], "s": [7]}),
     "FN", "cut vs jump cos 0.5"),
]

# (rot sample, sst sample) cross pairs that match: person vs grandparent cos 0.9.
CROSS_MATCHES = [("p23-visit-people", "p11-visit-grandparents")]

EXTRA = {
    "gift.rot": ("It's good to give gifts on birthdays.",
                 "(g / good-02 :ARG1 (g2 / give-01 :ARG1 (g3 / gift) :time (b / birthday)))",
                 [("It", None), ("'s", None), ("good", "good"), ("to", None), ("give", "give"),
                  ("gifts", "gift"), ("on", None), ("birthdays", "birthday")],
                 {"g": [2], "g2": [4], "g3": [5], "b": [7]}),
    "ex-sister.sst": ("Being friends with my ex's sister",
                      "(h / have-rel-role-91 :ARG0 (p / person :ARG0-of (h2 / have-rel-role-91 "
                      ":ARG1 (p2 / person :ARG0-of (h3 / have-rel-role-91 :ARG1 (i / i) :ARG2 (e / ex))) "
                      ":ARG2 (s / sister))) :ARG1 i :ARG2 (f / friend))",
                      [("Being", None), ("friends", "friend"), ("with", None), ("my", "i"), ("ex's", "ex"),
                       ("sister", "sister")],
                      {"h": [1], "i": [3], "p": [5], "h2": [5], "p2": [4], "h3": [4], "e": [4], "s": [5],
                       "f": [1]}),
    "ex-sister.rot": ("You shouldn't be friends with your ex's sister.",
                      "(r / recommend-01 :polarity - :ARG1 (y / you :ARG1-of (h / have-rel-role-91 "
                      ":ARG0 (p / person :ARG0-of (h2 / have-rel-role-91 :ARG1 (p2 / person :ARG0-of "
                      "(h3 / have-rel-role-91 :ARG1 y :ARG2 (e / ex))) :ARG2 (s / sister))) :ARG2 (f / friend))))",
                      [("You", "you"), ("shouldn't", "recommend"), ("be", None), ("friends", "friend"),
                       ("with", None), ("your", "you"), ("ex's", "ex"), ("sister", "sister")],
                      {"y": [0], "r": [1], "h": [3], "f": [3], "p": [7], "h2": [7], "p2": [6], "h3": [6],
                       "e": [6], "s": [7]}),
}


class MT19937_64:
    """Reference 64-bit Mersenne Twister, used to precompute the pairing."""

    def __init__(self, seed):
        self.mt = [0] * 312
        self.mt[0] = seed & 0xFFFFFFFFFFFFFFFF
        for i in range(1, 312):
            prev = self.mt[i - 1]
            self.mt[i] = (6364136223846793005 * (prev ^ (prev >> 62)) + i) & 0xFFFFFFFFFFFFFFFF
        self.index = 312

    def __call__(self):
        if self.index >= 312:
            for i in range(312):
                x = (self.mt[i] & 0xFFFFFFFF80000000) | (self.mt[(i + 1) % 312] & 0x7FFFFFFF)
                xa = x >> 1
                if x & 1:
                    xa ^= 0xB5026F5AA96619E9
                self.mt[i] = self.mt[(i + 156) % 312] ^ xa
            self.index = 0
        y = self.mt[self.index]
        self.index += 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & 0xFFFFFFFFFFFFFFFF


def pairing(n, seed):
    rng = MT19937_64(seed)
    r = n - 1
    floor = (2**64 - r) % r
    out = []
    for i in range(n):
        x = rng()
        while x < floor:
            x = rng()
        j = x % r
        out.append(j + 1 if j >= i else j)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    corpus = out / "corpus"
    fixtures = out / "fixtures"
    corpus.mkdir(parents=True, exist_ok=True)
    fixtures.mkdir(parents=True, exist_ok=True)

    vocab = build_vocab()
    ids = [s[0] for s in SAMPLES]
    for sid, rot, sst, _, _ in SAMPLES:
        for kind, spec in (("rot", rot), ("sst", sst)):
            doc = document(vocab, f"{sid}/{kind}", *spec)
            (corpus / f"{sid}.{kind}.json").write_text(json.dumps(doc) + "\n")
    for name, spec in EXTRA.items():
        doc = document(vocab, name, *spec)
        (fixtures / f"{name}.json").write_text(json.dumps(doc) + "\n")

    # First seed whose pairing draws the designed cross match, so the fixture
    # run exercises a false positive.
    n = len(ids)
    rot_i, sst_i = (ids.index(a) for a in CROSS_MATCHES[0])
    seed = next(s for s in range(1, 10000) if pairing(n, s)[sst_i] == rot_i)
    pairs = pairing(n, seed)
    cross = {tuple(c) for c in CROSS_MATCHES}
    counts = {"tp": 0, "fp": 0, "tn": 0, "fn": 0}
    for i, (sid, _, _, outcome, _) in enumerate(SAMPLES):
        counts[outcome.lower()] += 1
        counts["fp" if (ids[pairs[i]], sid) in cross else "tn"] += 1

    adjudication = {
        "threshold": 0.925,
        "max_merge_width": 6,
        "seed": seed,
        "pairing": {sid: ids[pairs[i]] for i, sid in enumerate(ids)},
        "positive": {s[0]: s[3] for s in SAMPLES},
        "reason": {s[0]: s[4] for s in SAMPLES},
        "cross_matches": [list(c) for c in CROSS_MATCHES],
        "expected": counts,
    }
    (corpus / "adjudication.json").write_text(json.dumps(adjudication, indent=2) + "\n")
    print(f"wrote {2 * n} corpus documents, {len(EXTRA)} fixtures; seed {seed}; {counts}")


if __name__ == "__main__":
    main()
