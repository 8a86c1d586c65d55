"""Rank-oracle matroids: graphic, uniform, binary, dual and restriction.

Subsets of the ground set ``{0, ..., n-1}`` are int bit masks.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .graphcore import Graph, blocks, bridges, bits, edge_cap, vertex_components

TABLE_LIMIT = 24


def popcount_table(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int64)


class Matroid:
    """Base class. Subclasses provide ``size``, ``rank`` and a ``tag``."""

    size: int
    tag: str = "matroid"

    def rank(self, a: int) -> int:
        raise NotImplementedError

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @cached_property
    def full_rank(self) -> int:
        return self.rank(self.full)

    def corank(self, a: int) -> int:
        return a.bit_count() - self.rank(a)

    def closure(self, a: int) -> int:
        r = self.rank(a)
        out = a
        for e in range(self.size):
            if not a >> e & 1 and self.rank(a | 1 << e) == r:
                out |= 1 << e
        return out

    def cyclic_core(self, a: int) -> int:
        # the elements lying on a circuit inside a already form a cyclic set
        r = self.rank(a)
        out = 0
        for e in bits(a):
            if self.rank(a & ~(1 << e)) == r:
                out |= 1 << e
        return out

    def loops(self) -> int:
        return sum(1 << e for e in range(self.size) if self.rank(1 << e) == 0)

    def coloops(self) -> int:
        r = self.full_rank
        return sum(1 << e for e in range(self.size) if self.rank(self.full & ~(1 << e)) < r)

    def component_masks(self) -> list[int]:
        """Connected components, via fundamental circuits of one basis."""
        basis = 0
        r = 0
        for e in range(self.size):
            if self.rank(basis | 1 << e) > r:
                basis |= 1 << e
                r += 1
        parent = list(range(self.size))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(self.size):
            if basis >> e & 1:
                continue
            for b in bits(basis):
                if self.rank((basis & ~(1 << b)) | 1 << e) == r:
                    parent[find(b)] = find(e)
        groups: dict[int, int] = {}
        for e in range(self.size):
            groups[find(e)] = groups.get(find(e), 0) | 1 << e
        return sorted(groups.values())

    def components(self) -> int:
        return len(self.component_masks())

    def subset_ranks(self) -> np.ndarray:
        """Rank of every subset, indexed by mask. Computed once; read-only."""
        table = self.__dict__.get("_rank_table")
        if table is None:
            n = self.size
            if n > TABLE_LIMIT:
                raise ValueError(f"subset table needs at most {TABLE_LIMIT} elements, got {n}")
            table = self._subset_ranks()
            table.setflags(write=False)
            self._rank_table = table
        return table

    def _subset_ranks(self) -> np.ndarray:
        return np.fromiter((self.rank(a) for a in range(1 << self.size)), dtype=np.int64,
                           count=1 << self.size)

    def restrict(self, mask: int) -> Matroid:
        return Restriction(self, mask)


class GraphicMatroid(Matroid):
    tag = "graphic"

    def __init__(self, graph: Graph):
        self.graph = graph
        self.size = graph.m
        self._ends = graph.edges

    def rank(self, a: int) -> int:
        parent: dict[int, int] = {}
        r = 0
        ends = self._ends
        while a:
            low = a & -a
            u, v = ends[low.bit_length() - 1]
            a ^= low
            while u in parent:
                u = parent[u]
            while v in parent:
                v = parent[v]
            if u != v:
                parent[u] = v
                r += 1
        return r

    def closure(self, a: int) -> int:
        comp_of = {}
        for k, comp in enumerate(vertex_components(self.graph, a)):
            for v in bits(comp):
                comp_of[v] = k
        out = 0
        for i, (u, v) in enumerate(self._ends):
            if comp_of[u] == comp_of[v]:
                out |= 1 << i
        return out

    def cyclic_core(self, a: int) -> int:
        return a & ~bridges(self.graph, a)

    def loops(self) -> int:
        return sum(1 << i for i, (u, v) in enumerate(self._ends) if u == v)

    def coloops(self) -> int:
        return bridges(self.graph)

    def component_masks(self) -> list[int]:
        return blocks(self.graph)

    def component_labels(self) -> np.ndarray:
        """Row A labels each vertex by a representative of its component in (V, A)."""
        self.subset_ranks()
        return self._labels

    def _subset_ranks(self) -> np.ndarray:
        n = self.size
        nv = max(self.graph.vertex_count, 1)
        total = 1 << n
        dtype = np.int8 if nv < 127 else np.int16
        labels = np.tile(np.arange(nv, dtype=dtype), (total, 1))
        ranks = np.zeros(total, dtype=np.int64)
        for i, (u, v) in enumerate(self._ends):
            if u == v:
                continue
            lab = labels.reshape(-1, 2, 1 << i, nv)[:, 1]
            rk = ranks.reshape(-1, 2, 1 << i)[:, 1]
            lu = lab[..., u].copy()
            lv = lab[..., v].copy()
            diff = lu != lv
            rk += diff
            hit = (lab == lv[..., None]) & diff[..., None]
            np.copyto(lab, np.broadcast_to(lu[..., None], lab.shape), where=hit)
        labels.setflags(write=False)
        self._labels = labels
        return ranks

    def __repr__(self) -> str:
        return f"GraphicMatroid({self.graph!r})"


class UniformMatroid(Matroid):
    tag = "uniform"

    def __init__(self, n: int, r: int):
        if not 0 <= r <= n:
            raise ValueError("uniform matroid needs 0 <= r <= n")
        self.size = n
        self.r = r

    def rank(self, a: int) -> int:
        return min(a.bit_count(), self.r)

    def _subset_ranks(self) -> np.ndarray:
        return np.minimum(popcount_table(self.size), self.r)

    def __repr__(self) -> str:
        return f"U({self.size},{self.r})"


class BinaryMatroid(Matroid):
    """Column matroid over GF(2); each column is an int whose bits are the rows."""

    tag = "binary"

    def __init__(self, columns: list[int], name: str = ""):
        self.columns = tuple(columns)
        self.size = len(columns)
        self.name = name

    def rank(self, a: int) -> int:
        basis: list[int] = []
        for e in bits(a):
            x = self.columns[e]
            for b in basis:
                x = min(x, x ^ b)
            if x:
                basis.append(x)
                basis.sort(reverse=True)
        return len(basis)

    def __repr__(self) -> str:
        return f"BinaryMatroid({self.name or list(self.columns)})"


class DualMatroid(Matroid):
    tag = "dual"

    def __init__(self, base: Matroid):
        self.base = base
        self.size = base.size

    def rank(self, a: int) -> int:
        return a.bit_count() - self.base.full_rank + self.base.rank(self.full & ~a)

    def _subset_ranks(self) -> np.ndarray:
        prim = self.base.subset_ranks()
        idx = np.arange(1 << self.size)
        return popcount_table(self.size) - self.base.full_rank + prim[self.full ^ idx]

    def __repr__(self) -> str:
        return f"Dual({self.base!r})"


class Restriction(Matroid):
    """M | mask, with the kept elements renumbered 0..k-1 in increasing order."""

    tag = "restriction"

    def __init__(self, base: Matroid, mask: int):
        self.base = base
        self.keep = bits(mask)
        self.size = len(self.keep)

    def lift(self, a: int) -> int:
        out = 0
        for i, e in enumerate(self.keep):
            if a >> i & 1:
                out |= 1 << e
        return out

    def rank(self, a: int) -> int:
        return self.base.rank(self.lift(a))


def check_capacity(m: Matroid) -> None:
    cap = edge_cap()
    if m.size > cap:
        raise ValueError(f"ground set of size {m.size} exceeds capacity {cap}")


def rank(m: Matroid, a: int) -> int:
    return m.rank(a)


def closure(m: Matroid, a: int) -> int:
    return m.closure(a)


def cyclic_core(m: Matroid, a: int) -> int:
    return m.cyclic_core(a)


def components(m: Matroid) -> int:
    return m.components()


def loops(m: Matroid) -> int:
    return m.loops()


def coloops(m: Matroid) -> int:
    return m.coloops()


def dual(m: Matroid) -> Matroid:
    if isinstance(m, DualMatroid):
        return m.base
    return DualMatroid(m)


def graphic(g: Graph) -> GraphicMatroid:
    return GraphicMatroid(g)


def fano() -> BinaryMatroid:
    return BinaryMatroid(list(range(1, 8)), "F7")


def r10() -> BinaryMatroid:
    # [I5 | B]; column i of B has ones in rows i-1, i, i+1 (mod 5)
    ident = [1 << i for i in range(5)]
    extra = [(1 << ((i - 1) % 5)) | (1 << i) | (1 << ((i + 1) % 5)) for i in range(5)]
    return BinaryMatroid(ident + extra, "R10")


def named(identifier: str) -> Matroid:
    key = identifier.replace(" ", "").upper()
    if key == "F7":
        return fano()
    if key == "R10":
        return r10()
    if key.startswith("U(") and key.endswith(")"):
        n, r = (int(x) for x in key[2:-1].split(","))
        return UniformMatroid(n, r)
    raise ValueError(f"unknown matroid {identifier!r}")
