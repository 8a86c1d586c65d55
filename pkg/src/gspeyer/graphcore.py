"""Multigraphs, the graph6 codec, connectivity queries and named families.

Edge subsets are plain ``int`` bit masks over edge indices: bit ``i`` stands
for ``g.edges[i]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

Edge = tuple[int, int]


def edge_cap() -> int:
    return int(os.environ.get("GSPEYER_EDGE_CAP", "64"))


@dataclass(frozen=True)
class Graph:
    """Labelled multigraph. Self-loops and parallel edges are allowed."""

    vertex_count: int
    edges: tuple[Edge, ...]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge {e} has an endpoint outside [0, {vertex_count})")
            norm.append((u, v) if u <= v else (v, u))
        cap = edge_cap()
        if len(norm) > cap:
            raise ValueError(f"graph has {len(norm)} edges, capacity is {cap}")
        object.__setattr__(self, "vertex_count", int(vertex_count))
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full(self) -> int:
        return (1 << len(self.edges)) - 1

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def degrees(self) -> list[int]:
        d = [0] * self.vertex_count
        for a, b in self.edges:
            d[a] += 1
            d[b] += 1
        return d

    def incidence(self) -> list[int]:
        """Per vertex, the mask of incident edges (self-loops included)."""
        inc = [0] * self.vertex_count
        for i, (a, b) in enumerate(self.edges):
            inc[a] |= 1 << i
            inc[b] |= 1 << i
        return inc

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == v and b != v:
                out.add(b)
            elif b == v and a != v:
                out.add(a)
        return out

    def is_simple(self) -> bool:
        return all(a != b for a, b in self.edges) and len(set(self.edges)) == len(self.edges)

    def has_loops(self) -> bool:
        return any(a == b for a, b in self.edges)

    def edge_vertices(self, mask: int) -> int:
        """Vertex bit mask of the endpoints of the edges in ``mask``."""
        vm = 0
        for i, (a, b) in enumerate(self.edges):
            if mask >> i & 1:
                vm |= (1 << a) | (1 << b)
        return vm

    def to_networkx(self) -> nx.MultiGraph:
        h = nx.MultiGraph()
        h.add_nodes_from(range(self.vertex_count))
        h.add_edges_from(self.edges)
        return h

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {list(self.edges)})"


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# graph6 ---------------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ValueError("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise ValueError(f"byte {ord(ch)} out of graph6 range 63..126")
    if s[0] == "~":
        raise ValueError("long-form graph6 header (more than 62 vertices) is not supported")
    n = ord(s[0]) - 63
    need = n * (n - 1) // 2
    nchars = (need + 5) // 6
    body = s[1:]
    if len(body) != nchars:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {nchars} for n={n}")
    bitstream = []
    for ch in body:
        x = ord(ch) - 63
        bitstream.extend((x >> (5 - j)) & 1 for j in range(6))
    if any(bitstream[need:]):
        raise ValueError("nonzero padding bits in graph6 string")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    if not g.is_simple():
        raise ValueError("graph6 encodes simple graphs only")
    n = g.vertex_count
    if n > 62:
        raise ValueError("only graphs with at most 62 vertices are supported")
    present = set(g.edges)
    bitstream = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bitstream += [0] * (-len(bitstream) % 6)
    out = [chr(n + 63)]
    for k in range(0, len(bitstream), 6):
        x = 0
        for b in bitstream[k:k + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)


# connectivity ----------------------------------------------------------------

def _adjacency(g: Graph, edge_mask: int) -> list[int]:
    adj = [0] * g.vertex_count
    for i, (a, b) in enumerate(g.edges):
        if edge_mask >> i & 1:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return adj


def vertex_components(g: Graph, edge_mask: int | None = None, removed: int = 0) -> list[int]:
    """Connected components (vertex masks) of the spanning subgraph on ``edge_mask``
    after deleting the vertices in the mask ``removed``."""
    if edge_mask is None:
        edge_mask = g.full
    adj = _adjacency(g, edge_mask)
    todo = ((1 << g.vertex_count) - 1) & ~removed
    keep = todo
    comps = []
    while todo:
        low = todo & -todo
        comp = low
        frontier = low
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adj[v] & keep & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        todo &= ~comp
    return comps


def component_count(g: Graph, edge_mask: int | None = None, removed: int = 0) -> int:
    return len(vertex_components(g, edge_mask, removed))


def is_connected(g: Graph) -> bool:
    return g.vertex_count <= 1 or component_count(g) == 1


def blocks(g: Graph) -> list[int]:
    """Edge masks of the biconnected blocks; every self-loop is a block of its own."""
    n = g.vertex_count
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    out: list[int] = []
    for i, (a, b) in enumerate(g.edges):
        if a == b:
            out.append(1 << i)
        else:
            inc[a].append((b, i))
            inc[b].append((a, i))
    disc = [-1] * n
    low = [0] * n
    t = 0
    for root in range(n):
        if disc[root] != -1 or not inc[root]:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(inc[root]))]
        estack: list[int] = []
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, ei in it:
                if ei == pe:
                    continue
                if disc[w] == -1:
                    estack.append(ei)
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, ei, iter(inc[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(ei)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    blk = 0
                    while True:
                        e = estack.pop()
                        blk |= 1 << e
                        if e == pe:
                            break
                    out.append(blk)
    out.sort()
    return out


def bridges(g: Graph, edge_mask: int | None = None) -> int:
    """Mask of the bridges of the subgraph on ``edge_mask``."""
    if edge_mask is None:
        edge_mask = g.full
    h = Graph(g.vertex_count, [g.edges[i] for i in bits(edge_mask)])
    idx = bits(edge_mask)
    out = 0
    for blk in blocks(h):
        if blk & (blk - 1) == 0:
            i = blk.bit_length() - 1
            a, b = h.edges[i]
            if a != b:
                out |= 1 << idx[i]
    return out


@dataclass(frozen=True)
class VertexCut:
    vertices: frozenset[int]
    component_count: int


def vertex_cuts(g: Graph, k: int) -> list[VertexCut]:
    """All k-sets S of vertices with at least two components left in G - S."""
    out = []
    for s in combinations(range(g.vertex_count), k):
        rm = mask_of(s)
        c = component_count(g, removed=rm)
        if c >= 2:
            out.append(VertexCut(frozenset(s), c))
    return out


def is_k_connected(g: Graph, k: int) -> bool:
    if g.vertex_count <= k:
        return False
    if not is_connected(g):
        return False
    for j in range(1, k):
        for s in combinations(range(g.vertex_count), j):
            if component_count(g, removed=mask_of(s)) >= 2:
                return False
    return True


@dataclass(frozen=True)
class EdgeCut:
    edges: int
    side_s: frozenset[int]
    side_t: frozenset[int]

    @property
    def trivial(self) -> bool:
        return min(len(self.side_s), len(self.side_t)) == 1


def edge_cuts(g: Graph, k: int) -> list[EdgeCut]:
    """Minimal k-edge cuts (bonds) of a connected graph, with both vertex sides.

    ``side_s`` is the side containing the smallest vertex.
    """
    out = []
    full = g.full
    for c in combinations(range(g.m), k):
        cm = mask_of(c)
        comps = vertex_components(g, full & ~cm)
        if len(comps) != 2:
            continue
        s, t = comps
        if all(((s >> a) & 1) != ((s >> b) & 1) for a, b in (g.edges[i] for i in c)):
            out.append(EdgeCut(cm, frozenset(bits(s)), frozenset(bits(t))))
    return out


# minors ---------------------------------------------------------------------

def delete(g: Graph, s: int) -> Graph:
    return Graph(g.vertex_count, [e for i, e in enumerate(g.edges) if not s >> i & 1])


def contract(g: Graph, s: int) -> Graph:
    """Contract the edges in ``s``. Merged vertices take the label order of their
    smallest member; the remaining edges keep their relative order."""
    parent = list(range(g.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in bits(s):
        a, b = g.edges[i]
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    roots = sorted({find(v) for v in range(g.vertex_count)})
    label = {r: i for i, r in enumerate(roots)}
    return Graph(len(roots), [(label[find(a)], label[find(b)])
                              for i, (a, b) in enumerate(g.edges) if not s >> i & 1])


def induced_edges(g: Graph, vertex_mask: int) -> int:
    out = 0
    for i, (a, b) in enumerate(g.edges):
        if vertex_mask >> a & 1 and vertex_mask >> b & 1:
            out |= 1 << i
    return out


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply the vertex map ``v -> perm[v]``."""
    return Graph(g.vertex_count, [(perm[a], perm[b]) for a, b in g.edges])


def remove_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    drop = set(vs)
    keep = [v for v in range(g.vertex_count) if v not in drop]
    label = {v: i for i, v in enumerate(keep)}
    return Graph(len(keep), [(label[a], label[b]) for a, b in g.edges
                             if a not in drop and b not in drop])


def simplify(g: Graph) -> Graph:
    return Graph(g.vertex_count, sorted({e for e in g.edges if e[0] != e[1]}))


def is_planar(g: Graph) -> bool:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(e for e in g.edges if e[0] != e[1])
    return nx.check_planarity(h)[0]


def planar_dual(g: Graph) -> Graph:
    """Dual of a connected plane embedding of a simple planar graph.

    Edge ``i`` of the result crosses edge ``i`` of ``g``.
    """
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise ValueError("graph is not planar")
    face_of: dict[tuple[int, int], int] = {}
    faces = 0
    for u, v in emb.edges():
        if (u, v) in face_of:
            continue
        walk = emb.traverse_face(u, v)
        for i in range(len(walk)):
            face_of[(walk[i], walk[(i + 1) % len(walk)])] = faces
        faces += 1
    return Graph(faces, [(face_of[(a, b)], face_of[(b, a)]) for a, b in g.edges])


def isomorphic(g: Graph, h: Graph) -> bool:
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


# families -------------------------------------------------------------------

def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph(n, [(i, j) for j in range(1, n) for i in range(j)])


def complete_multipartite(*parts: int) -> Graph:
    if not parts or any(p < 1 for p in parts):
        raise ValueError("part sizes must be positive")
    label = []
    for k, p in enumerate(parts):
        label += [k] * p
    n = len(label)
    return Graph(n, [(i, j) for j in range(1, n) for i in range(j) if label[i] != label[j]])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on n vertices."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def wheel(r: int) -> Graph:
    """Rim 0..r-1 in cyclic order, hub r."""
    if r < 3:
        raise ValueError("wheel needs r >= 3")
    return Graph(r + 1, [(i, (i + 1) % r) for i in range(r)] + [(i, r) for i in range(r)])


def circulant(n: int, jumps: Iterable[int]) -> Graph:
    js = sorted(set(jumps))
    if n < 3 or not js or any(not 0 < j <= n // 2 for j in js):
        raise ValueError("circulant needs n >= 3 and jumps in 1..n/2")
    seen = set()
    edges = []
    for j in js:
        for i in range(n):
            e = tuple(sorted((i, (i + j) % n)))
            if e not in seen:
                seen.add(e)
                edges.append(e)
    return Graph(n, edges)


def prism(n: int) -> Graph:
    """K2 x C_n: outer cycle 0..n-1, inner cycle n..2n-1, rungs i -- n+i."""
    if n < 3:
        raise ValueError("prism needs n >= 3")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    return Graph(2 * n, edges)


def moebius_ladder(n: int) -> Graph:
    """The circulant C^{2n}_{1,n}."""
    if n < 2:
        raise ValueError("moebius ladder needs n >= 2")
    return circulant(2 * n, [1, n])


def join(g: Graph, h: Graph) -> Graph:
    off = g.vertex_count
    edges = list(g.edges) + [(a + off, b + off) for a, b in h.edges]
    edges += [(i, off + j) for i in range(g.vertex_count) for j in range(h.vertex_count)]
    return Graph(off + h.vertex_count, edges)


def empty(n: int) -> Graph:
    return Graph(n, [])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def family(name: str, *params) -> Graph:
    """Named generators; parameters are integers (circulant: n and a jump list)."""
    key = name.lower().replace("-", "_")
    if key == "complete":
        return complete(*params)
    if key in ("complete_multipartite", "multipartite"):
        return complete_multipartite(*params)
    if key == "wheel":
        return wheel(*params)
    if key == "circulant":
        n, jumps = params
        return circulant(n, jumps)
    if key == "prism":
        return prism(*params)
    if key in ("moebius_ladder", "moebius", "mobius"):
        return moebius_ladder(*params)
    if key == "zigzag":
        return circulant(params[0], [1, 2])
    if key == "k3n":
        return complete_multipartite(3, params[0])
    if key == "k111n":
        return complete_multipartite(1, 1, 1, params[0])
    if key == "path":
        return path(*params)
    if key == "cycle":
        return cycle(*params)
    if key == "petersen":
        return petersen()
    if key == "join":
        return join(*params)
    raise ValueError(f"unknown family {name!r}")
