"""Lattice path words for Schubert matroids: the chain encoding, the memoized
path recursion for g, and exhaustive Delannoy and admissible-square oracles.

Words are strings over N (north) and E (east); U and R are accepted as
aliases on input.
"""

from __future__ import annotations

from bisect import bisect_right
from itertools import combinations
from typing import Sequence

from .poly import Poly

_ALIASES = str.maketrans({"U": "N", "R": "E", "u": "N", "r": "E", "n": "N", "e": "E"})


def normalize(word: str) -> str:
    w = word.strip().translate(_ALIASES)
    if set(w) - {"N", "E"}:
        raise ValueError(f"path word {word!r} uses letters other than N/E (U/R)")
    return w


def to_ur(word: str) -> str:
    return normalize(word).replace("N", "U").replace("E", "R")


def dual_word(word: str) -> str:
    """Reverse and swap N/E: the path of the dual matroid."""
    w = normalize(word)
    return w[::-1].translate(str.maketrans("NE", "EN"))


def north_positions(word: str) -> list[int]:
    return [i + 1 for i, ch in enumerate(normalize(word)) if ch == "N"]


def path_from_chain(chain: Sequence[tuple[int, int]]) -> str:
    """Word N^{r1} E^{l1} N^{r2-r1} E^{l2-l1} ... for a chain of cyclic flats
    given by its (rank, corank) pairs, bottom excluded."""
    out = []
    pr = pl = 0
    for r, l in chain:
        if r < pr or l < pl or (r, l) == (pr, pl):
            raise ValueError(f"chain is not strictly increasing at {(r, l)}")
        out.append("N" * (r - pr) + "E" * (l - pl))
        pr, pl = r, l
    return "".join(out)


def g_path(word: str) -> Poly:
    """g of the lattice path matroid, by the three-term recursion on the last
    N and the trailing E's. State (a, b) keeps the first a N's and first b E's."""
    w = normalize(word)
    npos = [i for i, ch in enumerate(w) if ch == "N"]
    epos = [i for i, ch in enumerate(w) if ch == "E"]
    A, B = len(npos), len(epos)
    if A == 0 or B == 0 or w[0] == "E" or w[-1] == "N":
        return Poly()
    table: dict[tuple[int, int], list[int]] = {}
    t_poly = [0, 1]

    def val(a: int, b: int) -> list[int]:
        return table.get((a, b), [])

    for a in range(1, A + 1):
        for b in range(1, B + 1):
            # the word starts with N because npos[0] < epos[0]
            if npos[a - 1] > epos[b - 1]:
                continue  # ends with N
            if a == 1:
                table[(a, b)] = t_poly
                continue
            trailing = b - bisect_right(epos, npos[a - 1], 0, b)
            if trailing == 1:
                table[(a, b)] = val(a - 1, b)
                continue
            x = val(a - 1, b)
            y = val(a, b - 1)
            z = val(a - 1, b - 1)
            out = [0] * max(len(x), len(y), len(z) + 1)
            for i, c in enumerate(x):
                out[i] += c
            for i, c in enumerate(y):
                out[i] += c
            for i, c in enumerate(z):
                out[i + 1] += c
            table[(a, b)] = out
    return Poly(val(A, B))


def _tops(word: str) -> tuple[list[int], set[tuple[int, int]], int, int]:
    """Heights top[x] of the path above each column, and the lattice points
    from which the path takes a north step."""
    w = normalize(word)
    x = y = 0
    top = [0]
    north_at = set()
    for ch in w:
        if ch == "N":
            north_at.add((x, y))
            y += 1
            top[x] = y
        else:
            x += 1
            top.append(y)
    return top, north_at, x, y


def delannoy_counts(word: str, max_length: int = 14) -> list[int]:
    """List c with c[k] = number of admissible Delannoy paths carrying weight t^k
    (one more than the number of diagonal steps); so Σ c[k] t^k = g."""
    w = normalize(word)
    if len(w) > max_length:
        raise ValueError(f"path length {len(w)} exceeds the oracle guard {max_length}")
    if not w or w[0] == "E" or w[-1] == "N":
        return [0]
    top, north_at, ell, r = _tops(w)
    counts: dict[int, int] = {}

    def walk(x: int, y: int, diag: int) -> None:
        if (x, y) == (ell, r):
            counts[diag + 1] = counts.get(diag + 1, 0) + 1
            return
        blocked = (x, y) in north_at
        if x < ell:
            walk(x + 1, y, diag)
        if not blocked and y + 1 <= top[x]:
            walk(x, y + 1, diag)
            if x < ell:
                walk(x + 1, y + 1, diag + 1)

    if top[1 if ell >= 1 else 0] >= 1:
        walk(1, 1, 0)
    size = max(counts, default=0) + 1
    return [counts.get(k, 0) for k in range(size)]


def admissible_squares(word: str) -> set[tuple[int, int]]:
    """Interior points (x, y), 1 <= x < n-r, 1 <= y < r, strictly below the path.

    The path enters column x at height top[x-1], so the points of that column
    strictly below it are those with y < top[x-1].
    """
    top, _, ell, r = _tops(word)
    return {(x, y) for x in range(1, ell) for y in range(1, r) if y < top[x - 1]}


def fp_lt(word: str, i: int, k: int, max_squares: int = 24) -> int:
    """Number of i-tuples of admissible squares increasing in both coordinates
    with every y below k."""
    sq = sorted(p for p in admissible_squares(word) if p[1] < k)
    if len(sq) > max_squares:
        raise ValueError(f"{len(sq)} admissible squares exceed the oracle guard {max_squares}")
    total = 0
    for combo in combinations(sq, i):
        if all(combo[j][0] < combo[j + 1][0] and combo[j][1] < combo[j + 1][1]
               for j in range(i - 1)):
            total += 1
    return total
