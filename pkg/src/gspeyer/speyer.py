"""Speyer's g-polynomial of a matroid.

The main route runs the grouped recursion for the truncated polynomials
gbar^{<k} over one lattice of cyclic flats. The Schubert route expands the
matroid into lattice path matroids over all chains and serves as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod

import numpy as np

from .cycflats import CyclicFlatLattice, all_chains, enumerate_lattice
from .graphcore import Graph, bits
from .matroid import GraphicMatroid, Matroid, Restriction, UniformMatroid, check_capacity
from .pathmat import g_path, north_positions, path_from_chain
from .poly import Poly

_INT64_SAFE = float(1 << 62)


# Q polynomials -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _q1(r: int, l: int) -> tuple[int, ...]:
    return tuple(comb(r, i) * comb(l, i) for i in range(min(r, l) + 1))


@lru_cache(maxsize=None)
def _q2(r: int, l: int) -> tuple[int, ...]:
    return (0,) + tuple(comb(r, i - 1) * comb(l, i) for i in range(1, min(r + 1, l) + 1))


def q1(r: int, l: int) -> Poly:
    """Σ_i C(r,i) C(l,i) t^i."""
    if r < 0 or l < 0:
        raise ValueError("q1 needs r, l >= 0")
    return Poly(_q1(r, l))


def q2(r: int, l: int) -> Poly:
    """Σ_{i>=1} C(r,i-1) C(l,i) t^i."""
    if r < 0 or l < 0:
        raise ValueError("q2 needs r, l >= 0")
    return Poly(_q2(r, l))


# components --------------------------------------------------------------------

def _component_matroid(m: Matroid, mask: int) -> Matroid:
    if isinstance(m, GraphicMatroid):
        g = m.graph
        sub = [g.edges[e] for e in bits(mask)]
        verts = sorted({v for e in sub for v in e})
        pos = {v: i for i, v in enumerate(verts)}
        return GraphicMatroid(Graph(len(verts), tuple((pos[u], pos[v]) for u, v in sub)))
    return Restriction(m, mask)


def split_components(m: Matroid) -> list[Matroid] | None:
    """Connected components as separate matroids, or None if m has a loop or
    coloop (then g vanishes)."""
    if m.loops() or m.coloops():
        return None
    return [_component_matroid(m, c) for c in m.component_masks()]


# the recursion -----------------------------------------------------------------

class _Overflow(Exception):
    pass


def _check(x: np.ndarray) -> None:
    if x.dtype != object and x.size and float(np.abs(x).max()) > _INT64_SAFE / 64:
        raise _Overflow


def _table(fn, rmax: int, lmax: int, deg: int, dtype) -> np.ndarray:
    out = np.zeros((rmax + 1, lmax + 1, deg), dtype=dtype)
    for r in range(rmax + 1):
        for l in range(lmax + 1):
            c = fn(r, l)[:deg]
            out[r, l, :len(c)] = c
    return out


def _gbar_tables(lat: CyclicFlatLattice, dtype) -> np.ndarray:
    """G[j, k, i] = coefficient of t^i in gbar^{<k} of the restriction to
    element j, for 1 <= k <= rank(j)."""
    N = len(lat)
    R = lat.ranks[lat.top]
    Lmax = lat.coranks[lat.top]
    D = max(R, 1)
    ranks = np.array(lat.ranks)
    coranks = np.array(lat.coranks)
    Q1 = _table(_q1, R, Lmax, D, dtype)
    Q2 = _table(_q2, R, Lmax + 1, D, dtype)
    # anti-diagonal collapse of an outer product D x D -> 2D-1, then truncate
    diag = np.add.outer(np.arange(D), np.arange(D)).ravel()
    collapse = np.zeros((D * D, D), dtype=dtype)
    keep = diag < D
    collapse[np.nonzero(keep)[0], diag[keep]] = 1

    G = np.zeros((N, R + 1, D), dtype=dtype)
    for j in range(1, N):
        rB, lB = lat.ranks[j], lat.coranks[j]
        d = lat.down[j][1:-1]
        mu = lat.mu_down[j][1:-1]
        nz = mu != 0
        d, mu = d[nz], mu[nz].astype(dtype)
        out = np.zeros((rB + 1, D), dtype=dtype)
        mu0 = int(lat.mu_down[j][0])
        for k in range(1, rB + 1):
            out[k] = -mu0 * Q1[k - 1, lB - 1]
        if len(d):
            contrib = mu[:, None, None] * G[d]  # (|d|, R+1, D)
            _check(contrib)
            rk, lk = ranks[d], coranks[d]
            # elements are sorted by (rank, corank), so equal keys are contiguous
            key = rk * (Lmax + 1) + lk
            starts = np.concatenate(([0], np.nonzero(np.diff(key))[0] + 1))
            W = np.add.reduceat(contrib, starts, axis=0)
            wr, wl = rk[starts], lk[starts]
            _check(W)
            ks = np.arange(rB + 1)
            ng = len(starts)
            Wk = W[:, :rB + 1]
            # U[k] = Σ over groups with r >= k of W[., k]
            upper = (wr[None, :] >= ks[:, None]) & (ks[:, None] >= 1)
            out -= np.einsum("kg,gki->ki", upper.astype(dtype), Wk)
            # groups with r < k: W[., r] times Q1_{k-r, lB-l-1}
            kk = ks[:, None] - wr[None, :]
            valid = (kk >= 1) & (ks[:, None] >= 2)
            right = Q1[np.clip(kk, 0, None), (lB - wl - 1)[None, :]] * valid[..., None]
            acc = np.einsum("gi,kgj->kij", W[np.arange(ng), wr], right)
            # W[., k'] times Q2_{k-1-k', lB-l} for 1 <= k' < min(k, r)
            pg, pkp = np.nonzero(np.arange(R + 1)[None, :] < wr[:, None])
            sel = pkp >= 1
            pg, pkp = pg[sel], pkp[sel]
            if len(pg):
                kk = ks[:, None] - 1 - pkp[None, :]
                valid = kk >= 0
                right = Q2[np.clip(kk, 0, None), (lB - wl[pg])[None, :]] * valid[..., None]
                acc = acc + np.einsum("pi,kpj->kij", W[pg, pkp], right)
            _check(acc)
            out -= acc.reshape(rB + 1, D * D) @ collapse
        _check(out)
        G[j, :rB + 1] = out
    return G


def gbar(lat: CyclicFlatLattice, k: int | None = None) -> Poly:
    """Truncated polynomial gbar^{<k} of the top element (k defaults to the rank)."""
    R = lat.ranks[lat.top]
    k = R if k is None else k
    if not 1 <= k <= R:
        raise ValueError(f"k must lie in 1..{R}")
    try:
        G = _gbar_tables(lat, np.int64)
        return Poly(int(x) for x in G[lat.top, k])
    except _Overflow:
        G = _gbar_tables(lat, object)
        return Poly(G[lat.top, k])


def _sign(c: int) -> int:
    return 1 if c % 2 == 1 else -1


def g_connected(m: Matroid, lattice: CyclicFlatLattice | None = None) -> Poly:
    """g of a connected matroid without loops or coloops."""
    lat = lattice if lattice is not None else enumerate_lattice(m)
    return gbar(lat).shift(1).mul_t()


def g_recursive(m: Matroid) -> Poly:
    if m.size == 0:
        raise ValueError("matroid must be nonempty")
    check_capacity(m)
    parts = split_components(m)
    if parts is None:
        return Poly()
    out = Poly.const(1)
    for part in parts:
        out = out * g_connected(part)
    return out


# Schubert decomposition --------------------------------------------------------

@dataclass(frozen=True)
class SchubertTerm:
    word: str
    multiplier: int

    @property
    def size(self) -> int:
        return len(self.word)

    @property
    def north(self) -> tuple[int, ...]:
        return tuple(north_positions(self.word))

    def __str__(self) -> str:
        return f"Schubert({self.size}, {{{', '.join(map(str, self.north))}}})"


@dataclass(frozen=True)
class SchubertDecomposition:
    terms: tuple[SchubertTerm, ...]
    components: int

    def evaluate(self) -> Poly:
        acc = Poly()
        for term in self.terms:
            acc = acc + g_path(term.word) * term.multiplier
        return acc * (1 if self.components % 2 else -1)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for i, term in enumerate(self.terms):
            c = term.multiplier
            sign = "-" if c < 0 else "+"
            body = str(term) if abs(c) == 1 else f"{abs(c)} {term}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)


def schubert_decomposition(m: Matroid, limit: int = 10**7,
                           lattice: CyclicFlatLattice | None = None) -> SchubertDecomposition:
    if m.loops() or m.coloops():
        raise ValueError("matroid has loops or coloops")
    lat = lattice if lattice is not None else enumerate_lattice(m)
    mu = {}
    for j, (d, md) in enumerate(zip(lat.down, lat.mu_down)):
        for i, v in zip(d.tolist(), md.tolist()):
            mu[i, j] = v
    top = lat.top
    agg: dict[str, int] = {}
    for chain in all_chains(lat, limit):
        full = (lat.bottom,) + chain + (top,)
        lam = prod(-mu[a, b] for a, b in zip(full, full[1:]))
        if lam:
            word = path_from_chain([(lat.ranks[x], lat.coranks[x]) for x in full[1:]])
            agg[word] = agg.get(word, 0) + lam
    terms = [SchubertTerm(w, c) for w, c in agg.items() if c]
    terms.sort(key=lambda t: t.north)
    return SchubertDecomposition(tuple(terms), m.components())


def g_via_schubert(m: Matroid, limit: int = 10**7) -> Poly:
    if m.loops() or m.coloops():
        return Poly()
    return schubert_decomposition(m, limit).evaluate()


# change of basis ---------------------------------------------------------------

def to_n_expansion(g: Poly) -> list[int]:
    """Coefficients N_i with g = t Σ N_i (1+t)^i."""
    if g[0] != 0:
        raise ValueError("polynomial has a nonzero constant term")
    return list(g.div_t().shift(-1).coeffs)


def from_n_expansion(v: list[int]) -> Poly:
    return Poly(v).shift(1).mul_t()


def fp(g: Poly, i: int) -> int:
    n = to_n_expansion(g)
    return n[i] if i < len(n) else 0


def fp2(m: Matroid | Poly) -> int:
    g = m if isinstance(m, Poly) else g_recursive(m)
    return fp(g, 2)


def compose_direct_sum(a: Poly, b: Poly) -> Poly:
    return a * b


def compose_two_sum(a: Poly, b: Poly) -> Poly:
    return (a * b).div_t()


# closed forms ------------------------------------------------------------------

T = Poly([0, 1])
ONE_T = Poly([1, 1])


def _complete(n: int) -> Poly:
    if n < 3:
        raise ValueError("complete graph formula needs n >= 3")
    prev2, prev = T, Poly([0, 2, 2, 1])
    if n == 3:
        return prev2
    for k in range(5, n + 1):
        nxt = (Poly([k - 2, k - 3]) * prev + T * ONE_T * prev.derivative()
               + ONE_T * Poly([3 - k, 1]) * prev2)
        prev2, prev = prev, nxt
    return prev


def _zigzag(n: int) -> Poly:
    acc = T
    for i in range(1 + n // 2, n - 1):
        c = n * comb(i, n - i)
        if c % i:
            raise ArithmeticError("non-integral zigzag coefficient")
        acc = acc + T * ONE_T ** i * (c // i)
    if n % 2 == 0:
        acc = acc + T * ONE_T ** 2
    return acc


def _k111n(n: int) -> Poly:
    return T * Poly([2, n + 1, n]) * Poly([2, 1]) ** (n - 1)


# name -> (formula, minimum parameter, proven)
_CLOSED = {
    "wheel": (lambda r: ONE_T ** r - Poly([1, 1, 1]), 3, True),
    "prism": (lambda n: T * (1 + ONE_T ** 2 + ONE_T ** n * (2 ** n - n - 3)), 2, False),
    "moebius": (lambda n: T * (1 + ONE_T ** n * (2 ** n - n - 1)), 2, False),
    "zigzag": (_zigzag, 5, False),
    "k3n": (lambda n: _k111n(n) - T * ONE_T ** (n + 1) * 3, 3, False),
    "k111n": (_k111n, 3, False),
    "complete": (_complete, 3, False),
}


def closed_form_status(name: str, *params: int) -> str:
    """'proven' or 'conjectural' for the formula at these parameters."""
    if name == "uniform" or name == "wheel":
        return "proven"
    if name == "complete":
        n = params[0]
        return "proven" if n <= 4 else ("verified" if n <= 40 else "conjectural")
    if name not in _CLOSED:
        raise ValueError(f"no closed form for {name!r}")
    return "conjectural"


def closed_form(name: str, *params: int) -> Poly:
    if name == "uniform":
        n, r = params
        if not 1 <= r < n:
            raise ValueError("uniform closed form needs 1 <= r < n")
        if r == 1 or r == n - 1:
            return T
        return Poly(_q1(r - 1, n - r - 1)).shift(1).mul_t()
    if name not in _CLOSED:
        raise ValueError(f"no closed form for {name!r}")
    fn, lo, _ = _CLOSED[name]
    (p,) = params
    if p < lo:
        raise ValueError(f"{name} closed form needs parameter >= {lo}")
    return fn(p)


def closed_form_names() -> list[str]:
    return ["uniform"] + sorted(_CLOSED)


def uniform(n: int, r: int) -> UniformMatroid:
    return UniformMatroid(n, r)
