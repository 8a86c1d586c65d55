"""Structural graph relations evaluated over corpora.

Each checker takes a graph (or pair) plus an explicit site (cut, side, labelling)
and returns a Finding with both sides of the relation. Site enumerators yield
every applicable site of a graph, and ``run_suite`` strings them together.
Violations are data, never exceptions.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .corpus import canonical_form
from .graphcore import (
    Graph, EdgeCut, bits, component_count, edge_cuts, is_connected, is_k_connected,
    is_planar, mask_of, simplify, vertex_components, vertex_cuts, write_graph6,
)
from .invariants import (
    check_beta_rank, check_cut_profile, check_slope_at_minus_one, connectivity_sums, flow_poly,
    tutte_graph,
)
from .matroid import DualMatroid, GraphicMatroid
from .poly import Poly, format_poly
from .speyer import g_recursive, to_n_expansion

AGREES = "agrees"
VIOLATES = "violates"

SUITES = ("thm11", "thm12", "thm15", "3sum", "twist", "3edge", "4edgetwist",
          "planar-n2", "planar-n3", "cubic-tutte")

CSV_HEADER = ("conjecture_id", "inputs", "site", "lhs", "rhs", "verdict")


def skipped(reason: str) -> str:
    return f"skipped({reason})"


@dataclass(frozen=True)
class Finding:
    conjecture: str
    inputs: tuple[str, ...]
    site: str
    lhs: str
    rhs: str
    verdict: str

    @property
    def agrees(self) -> bool:
        return self.verdict == AGREES

    @property
    def violates(self) -> bool:
        return self.verdict == VIOLATES

    @property
    def skipped(self) -> bool:
        return self.verdict.startswith("skipped")

    def row(self) -> tuple[str, ...]:
        return (self.conjecture, " ".join(self.inputs), self.site, self.lhs, self.rhs,
                self.verdict)


def _finding(cid: str, inputs: Sequence[Graph], site: str, lhs, rhs) -> Finding:
    return Finding(cid, tuple(write_graph6(g) for g in inputs), site, str(lhs), str(rhs),
                   AGREES if lhs == rhs else VIOLATES)


def _skip(cid: str, inputs: Sequence[Graph], site: str, reason: str) -> Finding:
    return Finding(cid, tuple(write_graph6(g) for g in inputs), site, "", "", skipped(reason))


def findings_csv(findings: Iterable[Finding], header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for f in findings:
        w.writerow(f.row())
    return buf.getvalue()


def read_findings(text: str) -> list[Finding]:
    rows = list(csv.reader(io.StringIO(text)))
    if rows and tuple(rows[0]) == CSV_HEADER:
        rows = rows[1:]
    return [Finding(r[0], tuple(r[1].split()), r[2], r[3], r[4], r[5]) for r in rows if r]


def summarize(findings: Iterable[Finding]) -> dict[str, dict[str, int]]:
    """Per conjecture: counts of agrees / violates / skipped."""
    out: dict[str, dict[str, int]] = {}
    for f in findings:
        c = out.setdefault(f.conjecture, {"agrees": 0, "violates": 0, "skipped": 0})
        c["agrees" if f.agrees else "violates" if f.violates else "skipped"] += 1
    return out


# cached evaluation ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _g_canonical(n: int, edges: tuple[tuple[int, int], ...]) -> Poly:
    return g_recursive(GraphicMatroid(Graph(n, edges)))


def g_graph(g: Graph) -> Poly:
    """g of a graph; parallel edges are dropped since they leave g unchanged."""
    if g.has_loops():
        return Poly()
    _, c = canonical_form(simplify(g))
    return _g_canonical(c.vertex_count, c.edges)


def n_coeff(g: Graph, i: int) -> int:
    n = to_n_expansion(g_graph(g))
    return n[i] if i < len(n) else 0


def mod_t3(p: Poly) -> Poly:
    return p.truncate(3)


# builders ------------------------------------------------------------------------

def _relabelled_union(g1: Graph, g2: Graph, glue: dict[int, int]) -> tuple[int, list, list]:
    """Vertices of g2 not in ``glue`` get fresh labels after g1's."""
    lab2 = {}
    nxt = g1.vertex_count
    for v in range(g2.vertex_count):
        if v in glue:
            lab2[v] = glue[v]
        else:
            lab2[v] = nxt
            nxt += 1
    return nxt, list(g1.edges), [(lab2[a], lab2[b]) for a, b in g2.edges]


def three_sum(g1: Graph, t1: Sequence[int], g2: Graph, t2: Sequence[int],
              bijection: Sequence[int] = (0, 1, 2)) -> Graph:
    """Glue t2[bijection[i]] onto t1[i] and delete every edge between triangle vertices."""
    if sorted(bijection) != [0, 1, 2]:
        raise ValueError("bijection must be a permutation of 0, 1, 2")
    for g, t in ((g1, t1), (g2, t2)):
        if not _is_triangle(g, t):
            raise ValueError(f"{tuple(t)} is not a triangle")
    glue = {t2[bijection[i]]: t1[i] for i in range(3)}
    n, e1, e2 = _relabelled_union(g1, g2, glue)
    tri = set(t1)
    return Graph(n, [e for e in e1 + e2 if not (e[0] in tri and e[1] in tri)])


def _is_triangle(g: Graph, t: Sequence[int]) -> bool:
    if len(set(t)) != 3:
        return False
    present = {frozenset(e) for e in g.edges}
    return all(frozenset(p) in present for p in combinations(t, 2))


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    nb = [g.neighbours(v) for v in range(g.vertex_count)]
    return [(a, b, c) for a, b, c in combinations(range(g.vertex_count), 3)
            if b in nb[a] and c in nb[a] and c in nb[b]]


def star_triangle(g: Graph, v: int) -> Graph:
    """Delete v and join its three neighbours pairwise (parallel edges kept)."""
    s = sorted(g.neighbours(v))
    edges = [e for e in g.edges if v not in e] + list(combinations(s, 2))
    keep = [u for u in range(g.vertex_count) if u != v]
    lab = {u: i for i, u in enumerate(keep)}
    return Graph(len(keep), [(lab[a], lab[b]) for a, b in edges])


def split_at_cut(g: Graph, cut: Iterable[int], side: Iterable[int],
                 inner_b: int = 0) -> tuple[int, int]:
    """Edge masks (A, B) for a vertex cut: B holds the edges touching the
    vertices in ``side`` plus the cut-internal edges picked by ``inner_b``
    (bit i = i-th internal edge in edge order)."""
    s = set(cut)
    side = set(side)
    a = b = 0
    inner = 0
    for i, (x, y) in enumerate(g.edges):
        if x in s and y in s:
            if inner_b >> inner & 1:
                b |= 1 << i
            else:
                a |= 1 << i
            inner += 1
        elif x in side or y in side:
            b |= 1 << i
        else:
            a |= 1 << i
    return a, b


def twist(g: Graph, b_mask: int, labelling: Sequence[int]) -> Graph:
    """Re-attach the edges in ``b_mask`` under the swaps v1<->v2 and v3<->v4."""
    v1, v2, v3, v4 = labelling
    swap = {v1: v2, v2: v1, v3: v4, v4: v3}
    return Graph(g.vertex_count, [
        (swap.get(x, x), swap.get(y, y)) if b_mask >> i & 1 else (x, y)
        for i, (x, y) in enumerate(g.edges)])


def contract_side(g: Graph, side: Iterable[int]) -> Graph:
    """Collapse a connected vertex set to one vertex, dropping its internal edges."""
    side = set(side)
    keep = [v for v in range(g.vertex_count) if v not in side]
    lab = {v: i for i, v in enumerate(keep)}
    hub = len(keep)
    edges = []
    for x, y in g.edges:
        if x in side and y in side:
            continue
        edges.append((lab.get(x, hub), lab.get(y, hub)))
    return Graph(hub + 1, edges)


def edge_twist(g: Graph, cut: EdgeCut, order: Sequence[int]) -> Graph:
    """Cross cut edges e1<->e2 and e3<->e4, with ``order`` naming e1..e4 by edge index."""
    ends = []
    for i in order:
        x, y = g.edges[i]
        ends.append((x, y) if x in cut.side_s else (y, x))
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = ends
    rest = [e for i, e in enumerate(g.edges) if not cut.edges >> i & 1]
    return Graph(g.vertex_count, rest + [(a1, b2), (a2, b1), (a3, b4), (a4, b3)])


def _pieces(g: Graph, cut: Iterable[int], sides: Iterable[int], with_triangle: bool) -> Graph:
    """Induced graph on cut + sides, plus a triangle on the cut if asked."""
    keep = sorted(set(cut) | set(sides))
    lab = {v: i for i, v in enumerate(keep)}
    edges = [(lab[a], lab[b]) for a, b in g.edges if a in lab and b in lab]
    if with_triangle:
        edges += [(lab[a], lab[b]) for a, b in combinations(sorted(cut), 2)]
    return Graph(len(keep), edges)


# checkers ------------------------------------------------------------------------

def check_three_sum(g1: Graph, t1: Sequence[int], g2: Graph, t2: Sequence[int],
                    bijection: Sequence[int] = (0, 1, 2)) -> Finding:
    """N2(G1 (+)3 G2) against N2(G1) + N2(G2) - p1 p2, where p_i counts the
    components of G_i minus its triangle vertices."""
    site = f"t1={','.join(map(str, t1))};t2={','.join(map(str, t2))};" \
           f"bij={''.join(map(str, bijection))}"
    for g, t in ((g1, t1), (g2, t2)):
        if not _is_triangle(g, t):
            raise ValueError(f"{tuple(t)} is not a triangle")
        if not is_k_connected(g, 3):
            raise ValueError("3-sum inputs must be 3-connected")
    return _three_sum_relation(three_sum(g1, t1, g2, t2, bijection), g1, t1, g2, t2,
                               (g1, g2), site)


def _three_sum_relation(s: Graph, g1: Graph, t1: Sequence[int], g2: Graph,
                        t2: Sequence[int], inputs: Sequence[Graph], site: str) -> Finding:
    p1 = component_count(g1, removed=mask_of(t1))
    p2 = component_count(g2, removed=mask_of(t2))
    return _finding("3sum", inputs, site, n_coeff(s, 2),
                    n_coeff(g1, 2) + n_coeff(g2, 2) - p1 * p2)


def check_star_triangle(g: Graph, v: int) -> Finding:
    """N2(G) against N2(G_v) - (|π0(G - S)| - 2), S the neighbours of v."""
    if g.degree(v) != 3 or len(g.neighbours(v)) != 3:
        raise ValueError(f"vertex {v} is not 3-valent")
    s = g.neighbours(v)
    gv = star_triangle(g, v)
    c = component_count(g, removed=mask_of(s))
    return _finding("3sum", (g,), f"star={v}", n_coeff(g, 2), n_coeff(gv, 2) - (c - 2))


def check_twist(g: Graph, cut: Iterable[int], side: Iterable[int], labelling: Sequence[int],
                inner_b: int = 0) -> Finding:
    """N2 before and after re-attaching one side of a minimal 4-vertex cut."""
    cut = sorted(cut)
    if len(cut) != 4 or sorted(labelling) != cut:
        raise ValueError("labelling must order the four cut vertices")
    if component_count(g, removed=mask_of(cut)) < 2:
        raise ValueError("not a vertex cut")
    for sub in combinations(cut, 3):
        if component_count(g, removed=mask_of(sub)) >= 2:
            raise ValueError("cut is not minimal")
    side = set(side)
    if not side or side & set(cut):
        raise ValueError("side must be a nonempty set of non-cut vertices")
    for x, y in g.edges:
        if (x in side) != (y in side) and x not in cut and y not in cut:
            raise ValueError("side is not a union of components of G - S")
    _, b = split_at_cut(g, cut, side, inner_b)
    h = twist(g, b, labelling)
    site = f"cut={','.join(map(str, cut))};side={','.join(map(str, sorted(side)))};" \
           f"inner={inner_b};lab={','.join(map(str, labelling))}"
    if not is_k_connected(h, 3):
        return _skip("twist", (g,), site, "twist not 3-connected")
    return _finding("twist", (g,), site, n_coeff(g, 2), n_coeff(h, 2))


def _trunc(p: Poly) -> str:
    return format_poly(mod_t3(p)) or "0"


def check_three_edge_cut(g: Graph, cut: EdgeCut) -> Finding:
    """g_G against g_A g_B / t modulo t^3, A = G/T and B = G/S."""
    if cut.trivial:
        raise ValueError("trivial 3-edge cut")
    if bin(cut.edges).count("1") != 3:
        raise ValueError("cut must have three edges")
    a = contract_side(g, cut.side_t)
    b = contract_side(g, cut.side_s)
    rhs = (g_graph(a) * g_graph(b)).div_t()
    site = "cut=" + ",".join(map(str, bits(cut.edges)))
    return _finding("3edge", (g,), site, _trunc(g_graph(g)), _trunc(rhs))


def three_edge_flow(g: Graph, cut: EdgeCut) -> tuple[Poly, Poly]:
    """(F_G (q-1)(q-2), F_A F_B) for a 3-edge cut."""
    a = contract_side(g, cut.side_t)
    b = contract_side(g, cut.side_s)
    q = Poly([0, 1])
    return flow_poly(g) * (q - Poly.const(1)) * (q - Poly.const(2)), flow_poly(a) * flow_poly(b)


def check_four_edge_twist(g: Graph, cut: EdgeCut, order: Sequence[int]) -> Finding:
    """g mod t^3 and the flow polynomial before and after crossing the cut edges."""
    if bin(cut.edges).count("1") != 4 or sorted(order) != bits(cut.edges):
        raise ValueError("order must list the four cut edges")
    h = edge_twist(g, cut, order)
    site = "order=" + ",".join(map(str, order))
    lhs = f"{_trunc(g_graph(g))};F={format_poly(flow_poly(g))}"
    rhs = f"{_trunc(g_graph(h))};F={format_poly(flow_poly(h))}"
    return _finding("4edgetwist", (g,), site, lhs, rhs)


def check_planar_n2(g: Graph) -> Finding:
    if not is_planar(g):
        return _skip("planar-n2", (g,), "", "not planar")
    if not is_k_connected(g, 3):
        return _skip("planar-n2", (g,), "", "not 3-connected")
    return _finding("planar-n2", (g,), "", n_coeff(g, 2), 1)


def check_planar_n3(g: Graph) -> Finding:
    if not is_planar(g):
        return _skip("planar-n3", (g,), "", "not planar")
    if not is_k_connected(g, 4):
        return _skip("planar-n3", (g,), "", "not 4-connected")
    return _finding("planar-n3", (g,), "", n_coeff(g, 3), 0)


def check_cubic_tutte(g: Graph) -> Finding:
    """g''(0) against 2n t01 - 4 t02 for connected cubic graphs."""
    if not is_connected(g) or any(d != 3 for d in g.degrees()):
        return _skip("cubic-tutte", (g,), "", "not connected cubic")
    t = tutte_graph(g)
    lhs = 2 * g_graph(g)[2]
    return _finding("cubic-tutte", (g,), "", lhs,
                    2 * g.vertex_count * t[0, 1] - 4 * t[0, 2])


# site enumeration ------------------------------------------------------------------

def _component_groups(g: Graph, removed: int) -> list[list[int]]:
    return [bits(c) for c in vertex_components(g, removed=removed)]


def _side_choices(comps: list[list[int]]) -> Iterator[set[int]]:
    """Nonempty proper unions of components, up to complement (the last
    component always stays on the A side)."""
    r = len(comps)
    for pick in range(1, 1 << (r - 1)):
        yield {v for i in range(r - 1) if pick >> i & 1 for v in comps[i]}


DOUBLE_TRANSPOSITIONS = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))


def three_sum_findings(g: Graph) -> Iterator[Finding]:
    """Every 3-sum decomposition of g along a 3-vertex cut, split into two
    3-connected pieces that each carry a triangle on the cut."""
    if not is_k_connected(g, 3):
        yield _skip("3sum", (g,), "", "not 3-connected")
        return
    for vc in vertex_cuts(g, 3):
        cut = sorted(vc.vertices)
        comps = _component_groups(g, mask_of(cut))
        for side in _side_choices(comps):
            rest = {v for c in comps for v in c} - side
            g1 = _pieces(g, cut, rest, True)
            g2 = _pieces(g, cut, side, True)
            site = f"cut={','.join(map(str, cut))};side={','.join(map(str, sorted(side)))}"
            # cut-internal edges of g would be parallel to the triangle, which leaves g alone
            if not (is_k_connected(g1, 3) and is_k_connected(g2, 3)):
                yield _skip("3sum", (g,), site, "piece not 3-connected")
                continue
            t1 = _cut_labels(cut, set(cut) | rest)
            t2 = _cut_labels(cut, set(cut) | side)
            yield _three_sum_relation(g, g1, t1, g2, t2, (g,), site)


def _cut_labels(cut: Sequence[int], kept: set[int]) -> tuple[int, ...]:
    lab = {v: i for i, v in enumerate(sorted(kept))}
    return tuple(lab[v] for v in cut)


def pair_three_sum_findings(g1: Graph, g2: Graph) -> Iterator[Finding]:
    """All 3-sums of two graphs: every triangle pair and all six identifications."""
    for t1 in triangles(g1):
        for t2 in triangles(g2):
            for bij in permutations(range(3)):
                yield check_three_sum(g1, t1, g2, t2, bij)


def star_triangle_findings(g: Graph) -> Iterator[Finding]:
    if not is_k_connected(g, 3):
        return
    for v in range(g.vertex_count):
        if g.degree(v) == 3:
            yield check_star_triangle(g, v)


def twist_sites(g: Graph) -> Iterator[tuple[list[int], set[int], int, tuple[int, ...]]]:
    """(cut, side, inner_b, labelling) for every twist along a minimal 4-vertex cut."""
    for vc in vertex_cuts(g, 4):
        cut = sorted(vc.vertices)
        if any(component_count(g, removed=mask_of(s)) >= 2 for s in combinations(cut, 3)):
            continue
        inner = sum(1 for x, y in g.edges if x in vc.vertices and y in vc.vertices)
        comps = _component_groups(g, mask_of(cut))
        for side in _side_choices(comps):
            for inner_b in range(1 << inner):
                for p in DOUBLE_TRANSPOSITIONS:
                    yield cut, side, inner_b, tuple(cut[i] for i in p)


def twist_findings(g: Graph) -> Iterator[Finding]:
    if not is_k_connected(g, 3):
        yield _skip("twist", (g,), "", "not 3-connected")
        return
    for cut, side, inner_b, lab in twist_sites(g):
        yield check_twist(g, cut, side, lab, inner_b)


def three_edge_findings(g: Graph) -> Iterator[Finding]:
    if not is_k_connected(g, 3):
        yield _skip("3edge", (g,), "", "not 3-connected")
        return
    for cut in edge_cuts(g, 3):
        if not cut.trivial:
            yield check_three_edge_cut(g, cut)


def four_edge_twist_findings(g: Graph) -> Iterator[Finding]:
    if not is_connected(g):
        return
    for cut in edge_cuts(g, 4):
        e = bits(cut.edges)
        for p in DOUBLE_TRANSPOSITIONS[1:] + DOUBLE_TRANSPOSITIONS[:1]:
            yield check_four_edge_twist(g, cut, [e[i] for i in p])


def beta_rank_findings(g: Graph) -> Iterator[Finding]:
    m = GraphicMatroid(g)
    lhs, rhs = check_beta_rank(m)
    yield _finding("thm11", (g,), "graphic", lhs, rhs)
    if g.m <= 16:
        lhs, rhs = check_beta_rank(DualMatroid(m))
        yield _finding("thm11", (g,), "cographic", lhs, rhs)
    else:
        yield _skip("thm11", (g,), "cographic", "more than 16 elements")


def vertex_connectivity(g: Graph) -> int:
    k = 0
    while is_k_connected(g, k + 1):
        k += 1
    return k


def cut_profile_findings(g: Graph) -> Iterator[Finding]:
    """For a k-connected graph, c_i = 1 for i < k and c_k equals the cut count."""
    if g.m > 20 or g.has_loops():
        yield _skip("thm12", (g,), "", "loops or more than 20 edges")
        return
    k = vertex_connectivity(g)
    if k == 0 or k >= g.vertex_count - 1:
        yield _skip("thm12", (g,), "", "no vertex cut")
        return
    lhs, rhs = check_cut_profile(g, k)
    low = connectivity_sums(g, k)[:-1]
    yield _finding("thm12", (g,), f"k={k}", f"{lhs};{','.join(map(str, low))}",
                   f"{rhs};{','.join('1' * len(low))}")


def slope_findings(g: Graph) -> Iterator[Finding]:
    lhs, rhs = check_slope_at_minus_one(GraphicMatroid(g), g_graph(g))
    yield _finding("thm15", (g,), "", lhs, rhs)


_SUITE_FUNCS = {
    "thm11": beta_rank_findings,
    "thm12": cut_profile_findings,
    "thm15": slope_findings,
    "3sum": lambda g: _chain(three_sum_findings(g), star_triangle_findings(g)),
    "twist": twist_findings,
    "3edge": three_edge_findings,
    "4edgetwist": four_edge_twist_findings,
    "planar-n2": lambda g: iter((check_planar_n2(g),)),
    "planar-n3": lambda g: iter((check_planar_n3(g),)),
    "cubic-tutte": lambda g: iter((check_cubic_tutte(g),)),
}


def _chain(*its: Iterable[Finding]) -> Iterator[Finding]:
    for it in its:
        yield from it


def suite_findings(name: str, g: Graph) -> list[Finding]:
    if name == "all":
        return [f for s in SUITES for f in _SUITE_FUNCS[s](g)]
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}, all")
    return list(_SUITE_FUNCS[name](g))


def run_suite(name: str, graphs: Iterable[Graph]) -> Iterator[Finding]:
    for g in graphs:
        yield from suite_findings(name, g)
