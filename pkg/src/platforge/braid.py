"""Braid words, their permutation action, and plat-closure component counts.

Conventions, used everywhere in this package:

* generators are indexed 1..strands-1; sigma_j crosses strands j and j+1;
* letters compose left-to-right = top-to-bottom of the braid diagram;
* zero powers are legal letters and act as the identity (they represent
  template twist regions that are present but untwisted).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BraidLetter",
    "BraidWord",
    "BraidSyntaxError",
    "underlying_permutation",
    "plat_component_count",
    "parse_braid",
    "format_braid",
]


class BraidSyntaxError(ValueError):
    """Parse failure, carrying 1-based line/column of the offending token."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class BraidLetter:
    """One syllable sigma_j^p."""

    generator_index: int
    power: int

    def __post_init__(self):
        if self.generator_index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.generator_index}")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[BraidLetter, ...]

    def __post_init__(self):
        if self.strands < 2 or self.strands % 2 != 0:
            raise ValueError(f"strands must be even and >= 2, got {self.strands}")
        for let in self.letters:
            if let.generator_index >= self.strands:
                raise ValueError(
                    f"generator index {let.generator_index} out of range for "
                    f"{self.strands} strands"
                )
        object.__setattr__(self, "letters", tuple(self.letters))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("cannot concatenate words on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)


def word(strands: int, letters: Iterable[tuple[int, int]]) -> BraidWord:
    """Convenience constructor from (generator_index, power) pairs."""
    return BraidWord(strands, tuple(BraidLetter(j, p) for j, p in letters))


def underlying_permutation(w: BraidWord) -> tuple[int, ...]:
    """Projection to the symmetric group, as a map top position -> bottom position.

    Returned as a tuple perm with perm[i-1] = image of strand position i.
    A letter sigma_j^p contributes the transposition (j, j+1) iff p is odd.
    """
    perm = list(range(w.strands))
    for let in w.letters:
        if let.power % 2:
            j = let.generator_index - 1
            # apply the transposition after everything so far: positions that
            # currently map to j or j+1 swap their targets
            for i in range(w.strands):
                if perm[i] == j:
                    perm[i] = j + 1
                elif perm[i] == j + 1:
                    perm[i] = j
    return tuple(i + 1 for i in perm)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def plat_component_count(w: BraidWord) -> int:
    """Number of link components of the plat closure of ``w``.

    Caps pair positions (1,2),(3,4),...,(2m-1,2m) at top and bottom.  The
    count equals the number of orbits of the group generated by the cap
    involution tau and its conjugate pi^-1 tau pi, where pi is the
    underlying permutation; orbits are found by union-find.
    """
    n = w.strands
    pi = underlying_permutation(w)
    inv = [0] * n
    for i, img in enumerate(pi):
        inv[img - 1] = i  # inv[y] = pi^{-1}(y+1) - 1

    uf = _UnionFind(n)
    for i in range(0, n, 2):
        uf.union(i, i + 1)  # tau
    for x in range(n):
        # beta(x) = pi^{-1}(tau(pi(x)))
        y = pi[x] - 1
        ty = y + 1 if y % 2 == 0 else y - 1
        uf.union(x, inv[ty])
    return len({uf.find(i) for i in range(n)})


_TOKEN_RE = re.compile(r"^(\d+)\^(-?\d+)$")


def parse_braid(text: str) -> BraidWord:
    """Parse the braid text grammar.

    Grammar: header ``strands=<even int>;`` then whitespace-separated tokens
    ``<j>^<p>``.  Bare ``|`` tokens are cosmetic row separators and ignored.
    """
    lines = text.splitlines() or [""]
    header_line = lines[0]
    m = re.match(r"\s*strands\s*=\s*(\d+)\s*;", header_line)
    if not m:
        raise BraidSyntaxError("expected header 'strands=<even int>;'", 1, 1)
    strands = int(m.group(1))
    if strands < 2 or strands % 2:
        raise BraidSyntaxError(f"strand count {strands} must be even and >= 2", 1, m.start(1) + 1)

    letters: list[BraidLetter] = []
    rest_first = header_line[m.end():]
    sources = [(1, m.end(), rest_first)] + [(i + 2, 0, ln) for i, ln in enumerate(lines[1:])]
    for lineno, offset, chunk in sources:
        col = offset
        for tok in re.finditer(r"\S+", chunk):
            col = offset + tok.start() + 1
            t = tok.group()
            if t == "|":
                continue
            tm = _TOKEN_RE.match(t)
            if not tm:
                raise BraidSyntaxError(f"bad token {t!r}, expected <j>^<p>", lineno, col)
            j, p = int(tm.group(1)), int(tm.group(2))
            if not 1 <= j < strands:
                raise BraidSyntaxError(
                    f"generator index {j} out of range [1, {strands - 1}]", lineno, col
                )
            letters.append(BraidLetter(j, p))
    return BraidWord(strands, tuple(letters))


def format_braid(w: BraidWord, row_breaks: Sequence[int] = ()) -> str:
    """Inverse of parse_braid.

    ``row_breaks`` gives letter indices before which a ``|`` separator is
    emitted (the plat constructors pass the row structure; the parser
    ignores the separators, so round-tripping is exact).
    """
    breaks = set(row_breaks)
    parts = []
    for i, let in enumerate(w.letters):
        if i in breaks and i > 0:
            parts.append("|")
        parts.append(f"{let.generator_index}^{let.power}")
    return f"strands={w.strands}; " + " ".join(parts)
