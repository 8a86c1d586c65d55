"""Tutte and flow polynomials, Crapo's beta by three routes, nuclei sums,
connectivity sums, and two-sided evaluations of the rank/component identities.

Subset sums run over the full rank table and are limited to
``SUBSET_LIMIT`` elements.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from math import comb

import numpy as np

from .graphcore import Graph, blocks, bits, component_count, mask_of
from .matroid import DualMatroid, GraphicMatroid, Matroid, popcount_table
from .poly import Poly

SUBSET_LIMIT = 24
SEPARATOR_LIMIT = 16


def _guard(n: int, limit: int = SUBSET_LIMIT) -> None:
    if n > limit:
        raise ValueError(f"subset sums need at most {limit} elements, got {n}")


# bivariate polynomials ---------------------------------------------------------

class TuttePoly:
    """Coefficients t_{i,j} of x^i y^j."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int], int] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.coeffs.get(ij, 0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TuttePoly) and self.coeffs == other.coeffs

    def __add__(self, other: TuttePoly) -> TuttePoly:
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return TuttePoly(out)

    def __mul__(self, other: TuttePoly) -> TuttePoly:
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                out[a + c, b + d] = out.get((a + c, b + d), 0) + u * v
        return TuttePoly(out)

    def __call__(self, x, y):
        acc = 0
        for (i, j), c in self.coeffs.items():
            acc = acc + (x ** i) * (y ** j) * c
        return acc

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.coeffs.items()))
        return f"TuttePoly({terms or '0'})"

    @property
    def beta(self) -> int:
        return self[1, 0]


_X = TuttePoly({(1, 0): 1})
_ONE = TuttePoly({(0, 0): 1})


def _y_sum(k: int) -> TuttePoly:
    """1 + y + ... + y^{k-1}."""
    return TuttePoly({(0, j): 1 for j in range(k)})


def _y_pow(k: int) -> TuttePoly:
    return TuttePoly({(0, k): 1})


# Tutte polynomial ---------------------------------------------------------------

def tutte_subsets(m: Matroid) -> TuttePoly:
    """Σ_A (x-1)^{r-rk A} (y-1)^{ℓ(A)} over the rank table."""
    n = m.size
    _guard(n)
    ranks = m.subset_ranks()
    r = int(ranks[-1])
    null = popcount_table(n) - ranks
    counts = np.bincount(ranks * (n + 1) + null, minlength=(r + 1) * (n + 1))
    out: dict[tuple[int, int], int] = {}
    for key in np.nonzero(counts)[0]:
        rk, nl = divmod(int(key), n + 1)
        c = int(counts[key])
        a = r - rk
        for i in range(a + 1):
            ci = comb(a, i) * (-1) ** (a - i)
            for j in range(nl + 1):
                out[i, j] = out.get((i, j), 0) + c * ci * comb(nl, j) * (-1) ** (nl - j)
    return TuttePoly(out)


def _canonical(n: int, edges: list[tuple[int, int]]) -> tuple[int, tuple[tuple[int, int], ...]]:
    order: dict[int, int] = {}
    for u, v in sorted(edges, key=lambda e: (min(e), max(e))):
        for w in (u, v):
            if w not in order:
                order[w] = len(order)
    return len(order), tuple(sorted((min(order[u], order[v]), max(order[u], order[v]))
                                    for u, v in edges))


@lru_cache(maxsize=200_000)
def _tutte_block(n: int, edges: tuple[tuple[int, int], ...]) -> TuttePoly:
    """Tutte polynomial of a loopless 2-connected multigraph with >= 2 edges."""
    ends = {(u, v) for u, v in edges}
    if len(ends) == 1:
        # a bond of k parallel edges
        return _X + TuttePoly({(0, j): 1 for j in range(1, len(edges))})
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    u, v = max(ends, key=lambda e: (deg[e[0]] + deg[e[1]], e))
    k = sum(1 for e in edges if e == (u, v))
    rest = [e for e in edges if e != (u, v)]
    deleted = _tutte_graph(n, rest)
    merged = [(u if a == v else a, u if b == v else b) for a, b in rest]
    contracted = _tutte_graph(n, merged)
    return deleted + _y_sum(k) * contracted


def _tutte_graph(n: int, edges: list[tuple[int, int]]) -> TuttePoly:
    loops = sum(1 for u, v in edges if u == v)
    plain = [(min(u, v), max(u, v)) for u, v in edges if u != v]
    out = _y_pow(loops) if loops else _ONE
    if not plain:
        return out
    g = Graph(n, tuple(plain))
    for b in blocks(g):
        sub = [plain[i] for i in bits(b)]
        if len(sub) == 1:
            out = out * _X
        else:
            out = out * _tutte_block(*_canonical(n, sub))
    return out


def tutte_graph(g: Graph) -> TuttePoly:
    """Deletion-contraction on parallel classes, split into blocks and memoized."""
    return _tutte_graph(g.vertex_count, list(g.edges))


def tutte(m: Matroid | Graph) -> TuttePoly:
    if isinstance(m, Graph):
        return tutte_graph(m)
    if isinstance(m, GraphicMatroid):
        return tutte_graph(m.graph)
    if isinstance(m, DualMatroid) and isinstance(m.base, GraphicMatroid):
        t = tutte_graph(m.base.graph)
        return TuttePoly({(j, i): c for (i, j), c in t.coeffs.items()})
    return tutte_subsets(m)


# beta ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _cached_graphic(g: Graph) -> GraphicMatroid:
    return GraphicMatroid(g)


def _graphic(g: Graph) -> GraphicMatroid:
    # graphs checked several times in a row share one rank table
    return _cached_graphic(g) if g.m <= 18 else GraphicMatroid(g)


def _matroid(m: Matroid | Graph) -> Matroid:
    return _graphic(m) if isinstance(m, Graph) else m


def beta_subsets(m: Matroid | Graph) -> int:
    """(-1)^{rk M} Σ_A (-1)^{|A|} rk(A)."""
    m = _matroid(m)
    _guard(m.size)
    ranks = m.subset_ranks()
    sign = 1 - 2 * (popcount_table(m.size) & 1)
    return (-1) ** int(ranks[-1]) * int((sign * ranks).sum())


def beta_tutte(m: Matroid | Graph) -> int:
    return tutte(m).beta


def beta_table(m: Matroid, ranks: np.ndarray | None = None) -> np.ndarray:
    """β of every restriction M|A, indexed by mask, via a subset-sum transform."""
    n = m.size
    _guard(n)
    if ranks is None:
        ranks = m.subset_ranks()
    h = ranks * (1 - 2 * (popcount_table(n) & 1))
    h = h.astype(np.int64).copy()
    for i in range(n):
        v = h.reshape(-1, 2, 1 << i)
        v[:, 1] += v[:, 0]
    return h * (1 - 2 * (ranks & 1))


def _signed_connected(g: Graph) -> list[int]:
    """For every vertex set S, Σ (-1)^{|A|} over edge sets A of G[S] that
    connect all of S (a single vertex counts once)."""
    n = g.vertex_count
    has_edge = [False] * (1 << n)
    for u, v in g.edges:
        has_edge[(1 << u) | (1 << v)] = True
    for s in range(1 << n):
        if has_edge[s]:
            continue
        sub = (s - 1) & s
        while sub:
            if has_edge[sub]:
                has_edge[s] = True
                break
            sub = (sub - 1) & s
    # the signed sum over all edge sets of G[S] is 1 when G[S] has no edges, else 0
    conn = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        acc = 0 if has_edge[s] else 1
        rest = s ^ low
        sub = rest
        while True:
            t = sub | low
            if t != s and not has_edge[s ^ t]:
                acc -= conn[t]
            if sub == 0:
                break
            sub = (sub - 1) & rest
        conn[s] = acc
    return conn


def _covers(g: Graph) -> list[int]:
    n = g.vertex_count
    return [s for s in range(1, 1 << n)
            if all(s >> u & 1 or s >> v & 1 for u, v in g.edges)]


def nuclei_sums(g: Graph) -> dict[str, object]:
    """Signed nucleus sums: total, weighted by |V(N)|, by rank, and per vertex."""
    if g.vertex_count > 14:
        raise ValueError("nuclei enumeration needs at most 14 vertices")
    conn = _signed_connected(g)
    total = weighted = 0
    per_vertex = [0] * g.vertex_count
    for s in _covers(g):
        c = conn[s]
        if not c:
            continue
        k = s.bit_count()
        total += c
        weighted += c * k
        for v in bits(s):
            per_vertex[v] += c
    return {"total": total, "vertices": weighted, "rank": weighted - total,
            "per_vertex": per_vertex}


def beta_nuclei(g: Graph) -> int:
    """-(-1)^{rk G} Σ over nuclei N of (-1)^{|E(N)|}."""
    if g.m == 0:
        raise ValueError("graph needs at least one edge")
    rk = g.vertex_count - component_count(g)
    return -(-1) ** rk * nuclei_sums(g)["total"]


def beta(m: Matroid | Graph) -> int:
    return beta_tutte(m)


# component counts of all restrictions ----------------------------------------------

def graphic_component_table(g: Graph, ranks: np.ndarray | None = None) -> np.ndarray:
    """c(A) for every edge set A: blocks counted through rank drops at each vertex."""
    n = g.m
    _guard(n)
    if ranks is None:
        ranks = _graphic(g).subset_ranks()
    idx = np.arange(1 << n, dtype=np.int64)
    out = g.vertex_count - ranks
    loop_mask = 0
    for v in range(g.vertex_count):
        d = mask_of(i for i, (a, b) in enumerate(g.edges) if a != b and v in (a, b))
        out = out + ranks - ranks[idx & ~d] - 1
    for i, (a, b) in enumerate(g.edges):
        if a == b:
            loop_mask |= 1 << i
    if loop_mask:
        out = out + np.bitwise_count((idx & loop_mask).astype(np.uint64)).astype(np.int64)
    return out


def cographic_component_table(g: Graph | GraphicMatroid) -> np.ndarray:
    """c(A) for every A in the dual of M(G).

    M*|A is the dual of M(G)/B with B the complement of A, so it has the blocks
    of the contracted graph G/B. A vertex of G/B is a component U of (V, B), and
    its rank drop only depends on the cut of U in G.
    """
    base = g if isinstance(g, GraphicMatroid) else _graphic(g)
    g = base.graph
    n, nv = g.m, g.vertex_count
    _guard(n)
    ranks = base.subset_ranks()
    label = base.component_labels().T.astype(np.int64)
    full = (1 << n) - 1
    cut = np.zeros(1 << nv, dtype=np.int64)
    us = np.arange(1 << nv)
    for i, (a, b) in enumerate(g.edges):
        if a != b:
            cut |= ((us >> a ^ us >> b) & 1) << i
    weight = ranks[full] - ranks[full & ~cut] - 1
    # columns below are indexed by B
    present = np.arange(1 << n)
    # vertex set of the component represented by r, row r
    members = np.zeros(nv << n, dtype=np.int64)
    for v in range(nv):
        members[(label[v] << n) + present] += 1 << v
    members = members.reshape(nv, 1 << n)
    out = np.full(1 << n, nv - ranks[full], dtype=np.int64)
    for r in range(nv):
        root = label[r] == r
        out[root] += weight[members[r, root]]
    for i, (a, b) in enumerate(g.edges):
        # edges of A inside one component become loops of G/B
        out += ((present >> i & 1) == 0) & (label[a] == label[b])
    return out[full ^ present]


def separator_component_table(m: Matroid, ranks: np.ndarray | None = None) -> np.ndarray:
    """c(A) for every A from the separator count: M|A has 2^c separators."""
    n = m.size
    _guard(n, SEPARATOR_LIMIT)
    if ranks is None:
        ranks = m.subset_ranks()
    lo_bits = min(n, 11)
    hi_bits = n - lo_bits
    # all (S, T) disjoint pairs on the low bits
    s_lo = np.zeros(1, dtype=np.int64)
    t_lo = np.zeros(1, dtype=np.int64)
    for i in range(lo_bits):
        b = 1 << i
        s_lo, t_lo = (np.concatenate([s_lo, s_lo | b, s_lo]),
                      np.concatenate([t_lo, t_lo, t_lo | b]))
    hits = []
    for digits in product(range(3), repeat=hi_bits):
        s_hi = t_hi = 0
        for j, d in enumerate(digits):
            if d == 1:
                s_hi |= 1 << (lo_bits + j)
            elif d == 2:
                t_hi |= 1 << (lo_bits + j)
        s = s_lo | s_hi
        t = t_lo | t_hi
        a = s | t
        ok = ranks[s] + ranks[t] == ranks[a]
        hits.append(a[ok])
    counts = np.bincount(np.concatenate(hits), minlength=1 << n)
    out = np.zeros(1 << n, dtype=np.int64)
    nz = counts > 0
    out[nz] = np.round(np.log2(counts[nz])).astype(np.int64)
    return out


def component_table(m: Matroid, ranks: np.ndarray | None = None) -> np.ndarray:
    if isinstance(m, GraphicMatroid):
        return graphic_component_table(m.graph, ranks)
    if isinstance(m, DualMatroid) and isinstance(m.base, GraphicMatroid):
        return cographic_component_table(m.base)
    return separator_component_table(m, ranks)


# connectivity sums ----------------------------------------------------------------

def _signed_beta(m: Matroid) -> tuple[np.ndarray, np.ndarray]:
    ranks = m.subset_ranks()
    null = popcount_table(m.size) - ranks
    w = beta_table(m, ranks) * (1 - 2 * (null & 1))
    return ranks, w


def connectivity_sums(g: Graph, k_max: int) -> list[int]:
    """[c_1, ..., c_k_max] with c_i = (-1)^{i-1} Σ_A (-1)^{ℓ(A)} β(A) C(rk A, i)."""
    if g.has_loops():
        raise ValueError("graph must not have self-loops")
    _guard(g.m, 20)
    ranks, w = _signed_beta(_graphic(g))
    out = []
    for i in range(1, k_max + 1):
        binom = np.array([comb(r, i) for r in range(int(ranks.max()) + 1)], dtype=np.int64)
        out.append((-1) ** (i - 1) * int((w * binom[ranks]).sum()))
    return out


def cut_count(g: Graph, k: int) -> int:
    """1 + Σ_{|S|=k} (|π0(G - S)| - 1)."""
    total = 1
    for s in combinations(range(g.vertex_count), k):
        total += component_count(g, removed=mask_of(s)) - 1
    return total


def block_count(g: Graph) -> int:
    """Blocks with at least one edge, self-loops counted singly."""
    return len(blocks(g))


# identity checkers -------------------------------------------------------------------

def check_beta_rank(m: Matroid | Graph) -> tuple[int, int]:
    """(β(M) rk(M), (-1)^{rk M} Σ_A (-1)^{|A|} c(A))."""
    m = _matroid(m)
    _guard(m.size)
    ranks = m.subset_ranks()
    c = component_table(m, ranks)
    sign = 1 - 2 * (popcount_table(m.size) & 1)
    r = int(ranks[-1])
    rhs = (-1) ** r * int((sign * c).sum())
    ranks_beta = beta_table(m, ranks)
    return int(ranks_beta[-1]) * r, rhs


def check_component_count(m: Matroid | Graph) -> tuple[int, int]:
    """(c(M), |M| - Σ_{A⊆B} (-1)^{|B|-|A|} ℓ(A) rk(B))."""
    m = _matroid(m)
    n = m.size
    _guard(n)
    ranks = m.subset_ranks()
    pc = popcount_table(n)
    f = (pc - ranks).astype(np.int64).copy()
    # Möbius transform: f(B) = Σ_{A⊆B} (-1)^{|B-A|} ℓ(A)
    for i in range(n):
        v = f.reshape(-1, 2, 1 << i)
        v[:, 1] -= v[:, 0]
    return m.components() if n else 0, n - int((f * ranks).sum())


def beta_rank_sum(m: Matroid | Graph) -> int:
    """(-1)^{c-1} Σ_A (-1)^{ℓ(A)} β(A) rk(A)."""
    m = _matroid(m)
    _guard(m.size)
    ranks, w = _signed_beta(m)
    return (-1) ** (m.components() - 1) * int((w * ranks).sum())


def check_slope_beta_sum(m: Matroid | Graph, g: Poly | None = None) -> tuple[int, int]:
    """(g'(-1), the signed β rk subset sum)."""
    from .speyer import g_recursive

    m = _matroid(m)
    g = g_recursive(m) if g is None else g
    return g.derivative()(-1), beta_rank_sum(m)


def check_slope_at_minus_one(m: Matroid | Graph, g: Poly | None = None) -> tuple[int, int]:
    """(g'(-1), (-1)^{c-1} c)."""
    from .speyer import g_recursive

    m = _matroid(m)
    g = g_recursive(m) if g is None else g
    c = m.components()
    return g.derivative()(-1), (-1) ** (c - 1) * c


def check_cut_profile(g: Graph, k: int) -> tuple[int, int]:
    """(c_k from subset sums, 1 + Σ_{|S|=k} (|π0(G-S)| - 1))."""
    return connectivity_sums(g, k)[-1], cut_count(g, k)


def valuative_n1(g: Poly, components: int) -> int:
    """(-1)^c N_1."""
    from .speyer import to_n_expansion

    n = to_n_expansion(g)
    return (-1) ** components * (n[1] if len(n) > 1 else 0)


# flow polynomial -----------------------------------------------------------------

def flow_poly(g: Graph) -> Poly:
    """F(q) = (-1)^{ℓ(G)} T(0, 1-q)."""
    t = tutte_graph(g)
    null = g.m - (g.vertex_count - component_count(g))
    return t(0, Poly([1, -1])) * (-1) ** null if t.coeffs else Poly()


def flow_count(g: Graph, q: int, limit: int = 10**6) -> int:
    """Nowhere-zero Z_q flows, by brute force over the cotree edges."""
    n = g.vertex_count
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree, cotree = [], []
    for i, (u, v) in enumerate(g.edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(i)
        else:
            cotree.append(i)
    if (q - 1) ** len(cotree) > limit:
        raise ValueError("too many flow assignments")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i in tree:
        u, v = g.edges[i]
        adj[u].append((v, i))
        adj[v].append((u, i))
    # peel leaves of the spanning forest to solve for the tree edge values
    order = []
    seen = [False] * n
    par_edge = [-1] * n
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            x = stack.pop()
            order.append(x)
            for y, i in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    par_edge[y] = i
                    stack.append(y)
    total = 0
    for vals in product(range(1, q), repeat=len(cotree)):
        excess = [0] * n
        for i, f in zip(cotree, vals):
            u, v = g.edges[i]
            excess[u] -= f
            excess[v] += f
        ok = True
        for x in reversed(order):
            i = par_edge[x]
            if i < 0:
                continue
            u, v = g.edges[i]
            # edge oriented u -> v; it must absorb the excess at x
            f = excess[x] % q if x == u else (-excess[x]) % q
            if f == 0:
                ok = False
                break
            excess[u] -= f
            excess[v] += f
        if ok and all(e % q == 0 for e in excess):
            total += 1
    return total
