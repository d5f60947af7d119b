"""Levenshtein distance and dictionary refinement of spelled words.

A raw buffered string is mapped to the closest task-dictionary word under
unit-cost edit distance.  Ties break to the shorter word, then dictionary
load order.  Unlike a bare argmin, a cutoff (default: half the input
length, rounded up) rejects garbage instead of silently turning it into a
command; the raw string is preserved so the operator can respell.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import EmptyInput

_WORD_RE = re.compile(r"^[A-Z]+$")


@dataclass
class Dictionary:
    words: list[str]
    name: str = "default"

    def __post_init__(self):
        if not self.words:
            raise ValueError("dictionary must be non-empty")
        seen = set()
        for w in self.words:
            if not _WORD_RE.match(w):
                raise ValueError(f"bad dictionary word {w!r} (A-Z only)")
            if w in seen:
                raise ValueError(f"duplicate dictionary word {w!r}")
            seen.add(w)


@dataclass(frozen=True)
class RefinedWord:
    raw: str
    word: str
    distance: int
    accepted: bool
    candidates: tuple[str, ...] = field(default=())


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance, two-row dynamic programming."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def half_length_cutoff(s: str) -> int:
    return (len(s) + 1) // 2


def refine(
    s: str,
    dictionary: Dictionary,
    cutoff: Callable[[str], int] | None = None,
) -> RefinedWord:
    """Map a spelled string to its closest dictionary word, or reject it."""
    if not s:
        raise EmptyInput("empty spelled word")
    cutoff = cutoff or half_length_cutoff
    distances = [(levenshtein(s, w), w) for w in dictionary.words]
    best = min(d for d, _ in distances)
    candidates = tuple(w for d, w in distances if d == best)
    # shortest word first, then load order
    chosen = min(candidates, key=lambda w: (len(w), dictionary.words.index(w)))
    if best <= cutoff(s):
        return RefinedWord(raw=s, word=chosen, distance=best, accepted=True, candidates=candidates)
    return RefinedWord(raw=s, word=s, distance=best, accepted=False, candidates=candidates)
