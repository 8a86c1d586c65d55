import pytest

from gspeyer.graphcore import (
    circulant, complete, complete_multipartite, moebius_ladder, planar_dual,
    prism, wheel,
)
from gspeyer.invariants import beta
from gspeyer.matroid import DualMatroid, GraphicMatroid, UniformMatroid, r10
from gspeyer.poly import Poly
from gspeyer.speyer import (
    closed_form, closed_form_status, compose_direct_sum, compose_two_sum, fp2, from_n_expansion,
    g_recursive, g_via_schubert, q1, q2, schubert_decomposition, to_n_expansion,
)

KN_ROWS = {
    3: [1, 0],
    4: [1, 0, 1],
    5: [1, 0, 0, 5],
    6: [1, 0, 1, -14, 36],
    7: [1, 0, 0, 35, -245, 329],
    8: [1, 0, 1, -76, 1135, -3996, 3655],
    9: [1, 0, 0, 161, -4410, 30219, -68775, 47844],
    10: [1, 0, 1, -330, 15610, -182952, 769825, -1283150, 721315],
}


def padded(v, k):
    return v + [0] * (k - len(v))


def g_of(graph):
    return g_recursive(GraphicMatroid(graph))


def test_q_polynomials():
    assert q1(2, 2) == Poly([1, 4, 1])
    assert q1(0, 5) == Poly([1])
    assert q2(1, 2) == Poly([0, 2, 1])
    with pytest.raises(ValueError):
        q1(-1, 2)


def test_small_goldens():
    assert g_of(complete(4)) == Poly([0, 2, 2, 1])
    assert g_of(complete(5)) == Poly([0, 6, 15, 15, 5])
    assert g_recursive(r10()) == Poly([0, 10, 35, 45, 20, 1])
    assert g_recursive(DualMatroid(r10())) == g_recursive(r10())


def test_loops_and_coloops_vanish():
    from gspeyer.graphcore import Graph
    assert g_of(Graph(3, [(0, 1), (1, 2), (2, 0), (2, 2)])) == Poly()
    assert g_of(Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])) == Poly()
    with pytest.raises(ValueError):
        g_recursive(UniformMatroid(0, 0))


def test_direct_and_two_sums():
    k4 = Poly([0, 2, 2, 1])
    t = Poly([0, 1])
    assert compose_two_sum(t, t) == t
    assert compose_direct_sum(k4, k4) == k4 * k4
    assert compose_two_sum(k4, k4) == Poly([0, 4, 8, 8, 4, 1])
    from gspeyer.graphcore import Graph
    two = Graph(7, list(complete(4).edges) + [(3, 4), (4, 5), (5, 6), (6, 3), (4, 6), (3, 5)])
    assert g_of(two) == k4 * k4  # glued at a vertex
    bowtie = Graph(6, [e for e in complete(4).edges if e != (0, 1)]
                   + [(0, 4), (4, 5), (5, 1), (0, 5), (4, 1)])
    assert g_of(bowtie) == compose_two_sum(k4, k4)


def test_schubert_display():
    assert str(schubert_decomposition(GraphicMatroid(wheel(3)))) == \
        "-3 Schubert(6, {1, 2, 3}) + 4 Schubert(6, {1, 2, 4})"
    d = schubert_decomposition(GraphicMatroid(wheel(4)))
    assert sorted(term.multiplier for term in d.terms) == [-4, -4, 1, 8]
    u = schubert_decomposition(UniformMatroid(6, 2))
    assert [(x.word, x.multiplier) for x in u.terms] == [("NNEEEE", 1)]


def test_schubert_route_values():
    assert g_via_schubert(GraphicMatroid(wheel(3))) == Poly([0, 2, 2, 1])
    assert g_via_schubert(UniformMatroid(4, 2)) == Poly([0, 2, 1])
    assert g_via_schubert(GraphicMatroid(wheel(4))) == Poly([0, 3, 5, 4, 1])


def test_n_expansion():
    assert to_n_expansion(Poly([0, 2, 2, 1])) == [1, 0, 1]
    assert to_n_expansion(g_of(complete(5))) == [1, 0, 0, 5]
    assert to_n_expansion(Poly([0, 1])) == [1]
    for v in ([1, 0, 3, -2], [2], [0, 0, 1]):
        assert to_n_expansion(from_n_expansion(v)) == v
    assert fp2(GraphicMatroid(complete(4))) == 1


@pytest.mark.parametrize("n", range(3, 11))
def test_complete_graph_rows_from_recursion(n):
    assert padded(to_n_expansion(closed_form("complete", n)), n - 1) == KN_ROWS[n]


@pytest.mark.parametrize("n", range(3, 8))
def test_complete_graph_rows_direct(n):
    assert padded(to_n_expansion(g_of(complete(n))), n - 1) == KN_ROWS[n]


def test_closed_form_status():
    assert closed_form_status("wheel", 7) == "proven"
    assert closed_form_status("complete", 30) == "verified"
    assert closed_form_status("complete", 41) == "conjectural"
    assert closed_form_status("prism", 4) == "conjectural"
    with pytest.raises(ValueError):
        closed_form("prism", 1)
    with pytest.raises(ValueError):
        closed_form_status("petersen")


@pytest.mark.parametrize("r", range(3, 10))
def test_wheels(r):
    assert g_of(wheel(r)) == closed_form("wheel", r)


def test_uniform_formula_and_oracle():
    for n in range(2, 10):
        for r in range(1, n):
            m = UniformMatroid(n, r)
            g = g_recursive(m)
            assert g == closed_form("uniform", n, r) == g_via_schubert(m)
            if 1 < r < n - 1:
                assert g.derivative()(-1) == n - r * (n - r)


@pytest.mark.parametrize("n", range(3, 7))
def test_prism_and_moebius(n):
    assert g_of(prism(n)) == closed_form("prism", n)
    assert g_of(moebius_ladder(n)) == closed_form("moebius", n)


@pytest.mark.parametrize("n", range(5, 11))
def test_zigzag(n):
    assert g_of(circulant(n, [1, 2])) == closed_form("zigzag", n)


@pytest.mark.parametrize("n", range(3, 8))
def test_bipartite_families(n):
    assert g_of(complete_multipartite(3, n)) == closed_form("k3n", n)
    assert g_of(complete_multipartite(1, 1, 1, n)) == closed_form("k111n", n)


def test_planar_duality(corpus16):
    from gspeyer.graphcore import is_planar
    for g in corpus16:
        if g.m > 12 or not is_planar(g):
            continue
        assert g_of(g) == g_of(planar_dual(g)) == g_recursive(DualMatroid(GraphicMatroid(g)))


def test_coefficients_nonnegative_and_bounded(corpus12):
    for g in corpus12:
        p = g_of(g)
        assert p[0] == 0 and all(c >= 0 for c in p.coeffs)
        assert p.degree <= g.vertex_count - 1
        assert p.derivative()(0) == beta(g)


def test_oracle_equivalence_small(corpus12):
    for g in corpus12[::5]:
        m = GraphicMatroid(g)
        assert g_recursive(m) == g_via_schubert(m)
