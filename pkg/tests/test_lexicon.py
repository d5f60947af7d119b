import functools
import itertools
import random

import pytest

from signpipe.errors import EmptyInput
from signpipe.lexicon import Dictionary, half_length_cutoff, levenshtein, refine


@functools.lru_cache(maxsize=None)
def naive_distance(a: str, b: str) -> int:
    if not a:
        return len(b)
    if not b:
        return len(a)
    return min(
        naive_distance(a[1:], b) + 1,
        naive_distance(a, b[1:]) + 1,
        naive_distance(a[1:], b[1:]) + (a[0] != b[0]),
    )


def test_known_distances():
    assert levenshtein("", "GRAB") == 4
    assert levenshtein("GRAB", "GRAB") == 0
    assert levenshtein("GRAP", "GRAB") == 1
    assert levenshtein("KITTEN", "SITTING") == 3


def test_exhaustive_against_recursion_small():
    strings = [
        "".join(t)
        for n in range(0, 4)
        for t in itertools.product("ABC", repeat=n)
    ]
    for a in strings:
        for b in strings:
            assert levenshtein(a, b) == naive_distance(a, b)


def test_metric_properties_random():
    rng = random.Random(0)
    words = [
        "".join(rng.choice("ABCDE") for _ in range(rng.randint(0, 8)))
        for _ in range(60)
    ]
    for _ in range(300):
        a, b, c = rng.sample(words, 3)
        assert levenshtein(a, b) == levenshtein(b, a)
        assert levenshtein(a, a) == 0
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)


def test_refine_examples():
    d = Dictionary(["GRAB", "DROP", "MOVE"])
    r = refine("GRAP", d)
    assert (r.word, r.distance, r.accepted) == ("GRAB", 1, True)
    r = refine("GRAB", d)
    assert (r.word, r.distance, r.accepted) == ("GRAB", 0, True)
    r = refine("XQZW", Dictionary(["GRAB", "DROP"]))
    assert not r.accepted
    assert r.word == "XQZW"
    assert r.distance == 4 > half_length_cutoff("XQZW") == 2


def test_refine_empty_input():
    with pytest.raises(EmptyInput):
        refine("", Dictionary(["GRAB"]))


def test_exact_match_always_wins():
    d = Dictionary(["MOVE", "GRAB", "DROP"])
    for w in d.words:
        r = refine(w, d)
        assert r.word == w and r.distance == 0 and r.accepted


def test_tie_break_shorter_then_load_order():
    # AB is distance 1 from ABC and from A; shorter word wins
    d = Dictionary(["ABC", "A"])
    r = refine("AB", d)
    assert r.word == "A"
    assert set(r.candidates) == {"ABC", "A"}
    # equal length ties resolve to load order
    d2 = Dictionary(["AC", "AB"])
    assert refine("AD", d2).word == "AC"
    d3 = Dictionary(["AB", "AC"])
    assert refine("AD", d3).word == "AB"


def test_reorder_invariance_with_unique_minimizer():
    words = ["GRAB", "DROP", "MOVE", "APPLE", "BOTTLE"]
    r1 = refine("APLE", Dictionary(words))
    r2 = refine("APLE", Dictionary(list(reversed(words))))
    assert r1.word == r2.word == "APPLE"


def _random_separated_dictionary(rng, count, min_dist=3):
    words = []
    while len(words) < count:
        w = "".join(rng.choice("ABCDEFGHIJKLMNOPQRSTUVWXYZ") for _ in range(rng.randint(5, 9)))
        if all(levenshtein(w, u) >= min_dist for u in words):
            words.append(w)
    return words


def _one_edit(rng, w):
    alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    op = rng.choice(["sub", "ins", "del"])
    i = rng.randrange(len(w))
    if op == "del" and len(w) > 1:
        return w[:i] + w[i + 1 :]
    if op == "ins":
        return w[:i] + rng.choice(alphabet) + w[i:]
    c = rng.choice([ch for ch in alphabet if ch != w[i]])
    return w[:i] + c + w[i + 1 :]


def test_single_edit_recovery():
    rng = random.Random(42)
    d = Dictionary(_random_separated_dictionary(rng, 20))
    for _ in range(500):
        w = rng.choice(d.words)
        corrupted = _one_edit(rng, w)
        r = refine(corrupted, d)
        assert r.accepted and r.word == w


def test_dictionary_validation():
    with pytest.raises(ValueError):
        Dictionary([])
    with pytest.raises(ValueError):
        Dictionary(["GRAB", "GRAB"])
    with pytest.raises(ValueError):
        Dictionary(["grab"])
    with pytest.raises(ValueError):
        Dictionary([""])
