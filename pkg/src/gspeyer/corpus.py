"""Exhaustive small-graph corpus: simple biconnected graphs with minimum degree 3.

Graphs are grown one edge at a time on a fixed vertex count. Each layer is
deduplicated by a canonical form from colour refinement plus individualisation,
and pruned by the degree budget still reachable with the remaining edges.
"""

from __future__ import annotations

from importlib import resources
from typing import Iterable

from .graphcore import Graph, blocks, parse_graph6, write_graph6

FIXTURE = "corpus16.g6"


# canonical form ----------------------------------------------------------------

def _refine(n: int, adj: list[int], colors: list[int]) -> list[int]:
    count = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            nb = adj[v]
            ncol = []
            while nb:
                low = nb & -nb
                ncol.append(colors[low.bit_length() - 1])
                nb ^= low
            ncol.sort()
            sigs.append((colors[v], tuple(ncol)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == count:
            return new
        colors, count = new, len(rank)


def _certificate(n: int, adj: list[int], colors: list[int]) -> tuple[int, ...]:
    # colors form a bijection onto 0..n-1
    rows = [0] * n
    for v in range(n):
        nb = adj[v]
        row = 0
        while nb:
            low = nb & -nb
            row |= 1 << colors[low.bit_length() - 1]
            nb ^= low
        rows[colors[v]] = row
    return tuple(rows)


def _search(n: int, adj: list[int], colors: list[int]) -> tuple[tuple[int, ...], list[int]]:
    colors = _refine(n, adj, colors)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = None
    for c in sorted(cells):
        if len(cells[c]) > 1:
            target = cells[c]
            break
    if target is None:
        return _certificate(n, adj, colors), colors
    # interchangeable twins need only one branch
    first = target[0]
    twins = all((adj[u] & ~(1 << first)) == (adj[first] & ~(1 << u)) for u in target[1:])
    best = None
    for v in target[:1] if twins else target:
        split = [2 * c + (1 if c == colors[v] and u != v else 0) for u, c in enumerate(colors)]
        cert, lab = _search(n, adj, split)
        if best is None or cert < best[0]:
            best = (cert, lab)
    return best


def canonical_form(g: Graph) -> tuple[tuple[int, ...], Graph]:
    """Certificate and canonically relabelled copy of a simple graph."""
    n = g.vertex_count
    adj = [0] * n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    cert, lab = _search(n, adj, [bin(a).count("1") for a in adj])
    edges = sorted((min(lab[u], lab[v]), max(lab[u], lab[v])) for u, v in g.edges)
    return cert, Graph(n, tuple(edges))


# generation --------------------------------------------------------------------

def _excess_budget(v: int, max_edges: int, min_degree: int) -> int:
    # deficit - excess = min_degree*v - 2k and deficit <= 2(max_edges - k)
    return 2 * max_edges - min_degree * v


def min_degree_graphs(v: int, max_edges: int, min_degree: int = 3) -> list[Graph]:
    """All simple graphs on v vertices with at most max_edges edges and every
    degree >= min_degree, up to isomorphism."""
    budget = _excess_budget(v, max_edges, min_degree)
    if budget < 0:
        return []
    layer: dict[tuple[int, ...], tuple[list[int], tuple[int, ...]]] = {
        tuple([0] * v): ([0] * v, ())}
    found: list[Graph] = []
    for k in range(max_edges):
        nxt: dict[tuple[int, ...], tuple[list[int], tuple[int, ...]]] = {}
        for adj, _ in layer.values():
            deg = [bin(a).count("1") for a in adj]
            excess = sum(max(0, d - min_degree) for d in deg)
            for a in range(v):
                for b in range(a + 1, v):
                    if adj[a] >> b & 1:
                        continue
                    extra = (deg[a] >= min_degree) + (deg[b] >= min_degree)
                    if excess + extra > budget:
                        continue
                    new = list(adj)
                    new[a] |= 1 << b
                    new[b] |= 1 << a
                    cert, lab = _search(v, new, [d + (i in (a, b)) for i, d in enumerate(deg)])
                    if cert not in nxt:
                        nxt[cert] = (new, cert)
        layer = nxt
        for adj, cert in layer.values():
            if all(bin(a).count("1") >= min_degree for a in adj):
                found.append(_from_certificate(v, cert))
    return found


def _from_certificate(v: int, cert: tuple[int, ...]) -> Graph:
    edges = [(i, j) for i in range(v) for j in range(i + 1, v) if cert[i] >> j & 1]
    return Graph(v, tuple(edges))


def is_biconnected(g: Graph) -> bool:
    return g.m >= 2 and len(blocks(g)) == 1 and all(
        any(v in e for e in g.edges) for v in range(g.vertex_count))


def generate(max_edges: int = 16, max_vertices: int = 10) -> list[Graph]:
    """Biconnected simple graphs with minimum degree 3 and at most max_edges edges."""
    out = []
    for v in range(4, max_vertices + 1):
        out.extend(g for g in min_degree_graphs(v, max_edges) if is_biconnected(g))
    out.sort(key=lambda g: (g.m, g.vertex_count, write_graph6(g)))
    return out


def count_table(graphs: Iterable[Graph]) -> dict[tuple[int, int], int]:
    """Number of graphs per (edges, vertices)."""
    out: dict[tuple[int, int], int] = {}
    for g in graphs:
        out[g.m, g.vertex_count] = out.get((g.m, g.vertex_count), 0) + 1
    return out


# fixtures ----------------------------------------------------------------------

def load_corpus(max_edges: int = 16, max_vertices: int | None = None) -> list[Graph]:
    text = resources.files("gspeyer.data").joinpath(FIXTURE).read_text(encoding="ascii")
    out = []
    for line in text.split():
        g = parse_graph6(line)
        if g.m <= max_edges and (max_vertices is None or g.vertex_count <= max_vertices):
            out.append(g)
    return out


def write_corpus(graphs: Iterable[Graph], path: str) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(write_graph6(g) + "\n")
