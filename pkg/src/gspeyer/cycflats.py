"""Lattice of cyclic flats: enumeration, order relation, Hasse diagram and
Möbius function.

Elements are sorted by (rank, size, mask). Because a flat strictly inside
another flat has strictly smaller rank, this order is a linear extension of
inclusion, and everything below an element of rank r sits in an earlier
rank level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graphcore import Graph, bits, induced_edges
from .matroid import GraphicMatroid, Matroid, check_capacity

# rows x columns of one comparison block in the Möbius pass
_BLOCK = 1 << 22


@dataclass
class CyclicFlatLattice:
    matroid: Matroid
    elements: list[int]
    ranks: list[int]
    coranks: list[int]
    down: list[np.ndarray] = field(repr=False)
    mu_down: list[np.ndarray] = field(repr=False)
    lower_covers: list[list[int]] = field(repr=False)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.elements) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, mask: int) -> int:
        return self._index[mask]

    def __post_init__(self) -> None:
        self._index = {m: i for i, m in enumerate(self.elements)}

    def leq(self, i: int, j: int) -> bool:
        a, b = self.elements[i], self.elements[j]
        return a & ~b == 0

    def upper_covers(self) -> list[list[int]]:
        up: list[list[int]] = [[] for _ in self.elements]
        for j, lows in enumerate(self.lower_covers):
            for i in lows:
                up[i].append(j)
        return up

    def to_dot(self) -> str:
        lines = ["digraph cyclic_flats {"]
        for i, (m, r, c) in enumerate(zip(self.elements, self.ranks, self.coranks)):
            lines.append(f'  n{i} [label="{bits(m)} r={r} l={c}"];')
        for j, lows in enumerate(self.lower_covers):
            for i in lows:
                lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines)


class MoebiusTable:
    """μ(A, B) for comparable pairs, indexed by lattice positions."""

    def __init__(self, lattice: CyclicFlatLattice):
        self.lattice = lattice

    def __call__(self, i: int, j: int) -> int:
        d = self.lattice.down[j]
        k = np.searchsorted(d, i)
        if k < len(d) and d[k] == i:
            return int(self.lattice.mu_down[j][k])
        raise KeyError(f"elements {i} and {j} are not comparable")

    def column(self, j: int) -> dict[int, int]:
        return {int(i): int(x) for i, x in zip(self.lattice.down[j], self.lattice.mu_down[j])}


# enumeration ------------------------------------------------------------------

def brute_force_cyclic_flats(m: Matroid) -> list[int]:
    """All A with cl(A) = A = cyc(A), from the table of subset ranks."""
    n = m.size
    rk = m.subset_ranks()
    idx = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for e in range(n):
        bit = 1 << e
        has = (idx & bit) != 0
        other = idx ^ bit
        # flat: adding any outside element raises the rank
        ok &= has | (rk[other] > rk)
        # cyclic: removing any inside element keeps the rank
        ok &= ~has | (rk[other] == rk)
    return [int(a) for a in np.nonzero(ok)[0]]


def flats_search_cyclic_flats(m: Matroid) -> list[int]:
    """Walk the lattice of flats upward from cl(∅) and keep the cyclic ones."""
    start = m.closure(0)
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for e in range(m.size):
            if not f >> e & 1:
                g = m.closure(f | 1 << e)
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
    return [f for f in seen if m.cyclic_core(f) == f]


def _bridgeless_connected(vmask: int, adj: list[int], multi: list[int]) -> bool:
    """Is the subgraph induced on ``vmask`` connected and free of bridges?

    ``adj[v]`` is the neighbour mask of v, ``multi[v]`` the neighbours joined to
    v by at least two parallel edges.
    """
    for v in bits(vmask):
        nb = adj[v] & vmask
        if nb & (nb - 1) == 0 and not multi[v] & nb:
            return False
    root = (vmask & -vmask).bit_length() - 1
    disc = {root: 0}
    low = {root: 0}
    t = 1
    stack = [(root, -1, adj[root] & vmask)]
    while stack:
        v, parent, todo = stack[-1]
        if todo:
            w = (todo & -todo).bit_length() - 1
            stack[-1] = (v, parent, todo & (todo - 1))
            if w == parent:
                if multi[v] >> w & 1:
                    low[v] = min(low[v], disc[w])
                continue
            if w in disc:
                low[v] = min(low[v], disc[w])
            else:
                disc[w] = low[w] = t
                t += 1
                stack.append((w, v, adj[w] & vmask))
            continue
        stack.pop()
        if parent >= 0:
            if low[v] > disc[parent]:
                return False
            low[parent] = min(low[parent], low[v])
    return len(disc) == vmask.bit_count()


def good_vertex_sets(g: Graph) -> list[int]:
    """Vertex sets S, |S| >= 2, whose induced subgraph is connected and bridgeless."""
    n = g.vertex_count
    adj = [0] * n
    multi = [0] * n
    seen_pairs: set[tuple[int, int]] = set()
    for a, b in g.edges:
        if a == b:
            continue
        if (a, b) in seen_pairs:
            multi[a] |= 1 << b
            multi[b] |= 1 << a
        seen_pairs.add((a, b))
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    out = []
    for v in range(n):
        allowed = ~((1 << (v + 1)) - 1)
        level = {1 << v}
        seen = set(level)
        while level:
            nxt = set()
            for s in level:
                ext = 0
                for u in bits(s):
                    ext |= adj[u]
                ext &= allowed & ~s
                while ext:
                    low = ext & -ext
                    ext ^= low
                    t = s | low
                    if t not in seen:
                        seen.add(t)
                        nxt.add(t)
            level = nxt
        out.extend(s for s in seen if s.bit_count() >= 2 and _bridgeless_connected(s, adj, multi))
    return out


def graphic_cyclic_flats(g: Graph) -> list[int]:
    """Cyclic flats of a cycle matroid as unions of induced subgraphs on disjoint
    vertex sets that are connected and bridgeless, plus all self-loops."""
    n = g.vertex_count
    loop_mask = sum(1 << i for i, (a, b) in enumerate(g.edges) if a == b)
    by_min: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for s in good_vertex_sets(g):
        v = (s & -s).bit_length() - 1
        by_min[v].append((s, induced_edges(g, s) & ~loop_mask))
    out: list[int] = []

    def rec(v: int, used: int, acc: int) -> None:
        while v < n and used >> v & 1:
            v += 1
        if v >= n:
            out.append(acc | loop_mask)
            return
        rec(v + 1, used, acc)
        for s, es in by_min[v]:
            if not s & used:
                rec(v + 1, used | s, acc | es)

    rec(0, 0, 0)
    return out


def cyclic_flat_masks(m: Matroid) -> list[int]:
    if isinstance(m, GraphicMatroid):
        return graphic_cyclic_flats(m.graph)
    if m.size <= 22:
        return brute_force_cyclic_flats(m)
    return flats_search_cyclic_flats(m)


# order relation and Möbius function ------------------------------------------

def build_lattice(m: Matroid, masks: list[int]) -> CyclicFlatLattice:
    ranks_of = {a: m.rank(a) for a in masks}
    elements = sorted(masks, key=lambda a: (ranks_of[a], a.bit_count(), a))
    ranks = [ranks_of[a] for a in elements]
    coranks = [a.bit_count() - r for a, r in zip(elements, ranks)]
    N = len(elements)
    arr = np.array(elements, dtype=np.uint64)
    rank_arr = np.array(ranks, dtype=np.int64)
    level_start = np.searchsorted(rank_arr, np.arange(max(ranks) + 2), side="left")

    down: list[np.ndarray] = []
    mu_down: list[np.ndarray] = []
    lower_covers: list[list[int]] = []
    for j in range(N):
        bj = arr[j]
        lim = level_start[ranks[j]]
        cand = np.nonzero((arr[:lim] & ~bj) == 0)[0]
        d = np.append(cand, j).astype(np.int64)
        mu = np.zeros(len(d), dtype=np.int64)
        mu[-1] = 1
        covers: list[int] = []
        rks = rank_arr[d]
        # process rank levels from the top down; "above" holds positions in d
        hi = len(d) - 1
        for r in range(ranks[j] - 1, -1, -1):
            lo = int(np.searchsorted(rks, r, side="left"))
            if lo == hi:
                continue
            above = np.arange(hi, len(d))
            mA = arr[d[lo:hi]]
            mC = ~arr[d[above]]
            step = max(1, _BLOCK // max(1, len(above)))
            for s in range(0, hi - lo, step):
                block = (mA[s:s + step, None] & mC[None, :]) == 0
                mu[lo + s:lo + s + len(block)] = -(block.astype(np.int64) @ mu[above])
                cnt = block.sum(axis=1)
                covers.extend(int(d[lo + s + k]) for k in np.nonzero(cnt == 1)[0])
            hi = lo
        down.append(d)
        mu_down.append(mu)
        covers.sort()
        lower_covers.append(covers)
    return CyclicFlatLattice(m, elements, ranks, coranks, down, mu_down, lower_covers)


def enumerate_lattice(m: Matroid) -> CyclicFlatLattice:
    check_capacity(m)
    return build_lattice(m, cyclic_flat_masks(m))


def moebius(lattice: CyclicFlatLattice) -> MoebiusTable:
    return MoebiusTable(lattice)


def lattice_stats(lattice: CyclicFlatLattice) -> tuple[int, int, int]:
    hasse = sum(len(c) for c in lattice.lower_covers)
    pairs = sum(len(d) - 1 for d in lattice.down)
    return len(lattice), hasse, pairs


# oracles ----------------------------------------------------------------------

def euler_characteristic_oracle(lattice: CyclicFlatLattice, lo: int | None = None,
                                hi: int | None = None, limit: int = 10**6) -> int:
    """Reduced Euler characteristic of the order complex of the open interval
    (lo, hi), by listing every chain."""
    lo = lattice.bottom if lo is None else lo
    hi = lattice.top if hi is None else hi
    if lo == hi:
        raise ValueError("interval must have lo < hi")
    inner = [x for x in range(len(lattice))
             if x not in (lo, hi) and lattice.leq(lo, x) and lattice.leq(x, hi)]
    succ = {x: [y for y in inner if y != x and lattice.leq(x, y)] for x in inner}
    chi = 0
    count = 0
    stack = [(x, 1) for x in inner]
    while stack:
        x, length = stack.pop()
        count += 1
        if count > limit:
            raise OverflowError(f"more than {limit} chains")
        chi += 1 if length % 2 else -1
        stack.extend((y, length + 1) for y in succ[x])
    return chi - 1


def all_chains(lattice: CyclicFlatLattice, limit: int = 10**7) -> list[tuple[int, ...]]:
    """Chains bottom < c1 < ... < top, returned as tuples of the proper elements."""
    up = [[] for _ in range(len(lattice))]
    for j, d in enumerate(lattice.down):
        for i in d[:-1]:
            up[int(i)].append(j)
    top = lattice.top
    out: list[tuple[int, ...]] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(lattice.bottom, ())]
    while stack:
        x, acc = stack.pop()
        for y in up[x]:
            if y == top:
                out.append(acc)
                if len(out) > limit:
                    raise OverflowError(f"more than {limit} chains")
            else:
                stack.append((y, acc + (y,)))
    if lattice.bottom == top:
        return []
    return out


def chain_lattice_lambdas(lattice: CyclicFlatLattice) -> dict[tuple[int, ...], int]:
    """λ(C) = 1 - Σ λ(D) over strict refinements D of C, solved longest first."""
    chains = all_chains(lattice)
    lam: dict[tuple[int, ...], int] = {}
    pending: dict[tuple[int, ...], int] = {c: 0 for c in chains}
    for c in sorted(chains, key=len, reverse=True):
        lam[c] = 1 - pending[c]
        for k in range(len(c)):
            for sub in combinations(c, k):
                pending[sub] += lam[c]
    return lam
