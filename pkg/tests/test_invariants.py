import pytest

from gspeyer.graphcore import (
    Graph, circulant, complete, cycle, edge_cuts, is_k_connected, path, prism, wheel,
)
from gspeyer.invariants import (
    TuttePoly, beta, beta_nuclei, beta_rank_sum, beta_subsets, beta_tutte, block_count,
    check_beta_rank, check_component_count, check_cut_profile, check_slope_at_minus_one,
    check_slope_beta_sum, cographic_component_table, component_table, connectivity_sums,
    cut_count, flow_count, flow_poly, graphic_component_table, nuclei_sums,
    separator_component_table, tutte, tutte_graph, tutte_subsets, valuative_n1,
)
from gspeyer.matroid import DualMatroid, GraphicMatroid, UniformMatroid, fano, r10
from gspeyer.poly import Poly
from gspeyer.speyer import g_recursive

DOUBLED_TRIANGLE = Graph(3, [(0, 1), (0, 1), (1, 2), (0, 2)])


def lucas(n):
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# Tutte -----------------------------------------------------------------------

def test_tutte_k4():
    t = tutte(complete(4))
    assert t[0, 1] == 2 and t[0, 2] == 3 and t[1, 0] == 2
    assert t(1, 1) == 16


def test_tutte_coloop_and_loop():
    assert tutte(Graph(2, [(0, 1)])).coeffs == {(1, 0): 1}
    assert tutte(Graph(1, [(0, 0)])).coeffs == {(0, 1): 1}


def test_tutte_routes_agree(corpus12):
    for g in corpus12[::9]:
        assert tutte_graph(g).coeffs == tutte_subsets(GraphicMatroid(g)).coeffs


def test_tutte_multigraph_routes_agree():
    g = Graph(4, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 2)])
    assert tutte_graph(g).coeffs == tutte_subsets(GraphicMatroid(g)).coeffs


def test_crapo_symmetry():
    for m in (complete(5), wheel(5), UniformMatroid(6, 3), r10()):
        t = tutte(m)
        assert t[1, 0] == t[0, 1]


def test_tutte_poly_value_type():
    assert isinstance(tutte(UniformMatroid(3, 1)), TuttePoly)


# beta ------------------------------------------------------------------------

def test_beta_examples():
    assert beta(UniformMatroid(5, 2)) == 3
    assert beta(DOUBLED_TRIANGLE) == 1
    assert beta(Graph(3, [(0, 1), (1, 2), (0, 2), (1, 1)])) == 0
    assert beta(complete(5)) == 6


def test_beta_complete_factorial():
    # β(K_n) = (n-2)!
    assert beta(complete(7)) == 120
    assert beta_tutte(complete(6)) == 24


def test_beta_uniform_binomial():
    from math import comb
    for n in range(2, 9):
        for r in range(1, n):
            assert beta_subsets(UniformMatroid(n, r)) == comb(n - 2, r - 1)


def test_beta_three_routes(corpus12):
    for g in corpus12[::3]:
        b = beta_subsets(g)
        assert b == beta_tutte(g) == beta_nuclei(g), g


def test_beta_nuclei_small_graphs():
    for g in (cycle(5), DOUBLED_TRIANGLE, wheel(4), complete(4), path(4)):
        assert beta_nuclei(g) == beta_subsets(g)


def test_beta_zigzag_lucas():
    for n in range(5, 11):
        assert beta(circulant(n, [1, 2])) == lucas(n) - n - (1 + (-1) ** n) // 2


def test_nuclei_per_vertex_sums_vanish(corpus16):
    small = [g for g in corpus16 if g.vertex_count <= 8][::5]
    for g in small + [cycle(4), path(3), DOUBLED_TRIANGLE]:
        assert set(nuclei_sums(g)["per_vertex"]) == {0}, g


def test_nuclei_guard():
    with pytest.raises(ValueError):
        nuclei_sums(cycle(15))


# component tables -----------------------------------------------------------------

def test_component_table_routes(corpus12):
    for g in corpus12[::11] + [DOUBLED_TRIANGLE, path(4)]:
        m = GraphicMatroid(g)
        assert (graphic_component_table(g) == separator_component_table(m)).all()
        d = DualMatroid(m)
        assert (cographic_component_table(g) == separator_component_table(d)).all()


def test_component_table_dispatch():
    g = wheel(4)
    assert (component_table(DualMatroid(GraphicMatroid(g))) == cographic_component_table(g)).all()


# rank and component identities ---------------------------------------------------

def test_beta_rank_published_pairs():
    assert check_beta_rank(DOUBLED_TRIANGLE) == (2, 2)
    assert check_beta_rank(UniformMatroid(4, 2)) == (4, 5)
    assert check_beta_rank(fano()) == (9, 8)


def test_beta_rank_graphic_and_cographic(corpus12):
    for g in corpus12[::4]:
        m = GraphicMatroid(g)
        lhs, rhs = check_beta_rank(m)
        assert lhs == rhs
        lhs, rhs = check_beta_rank(DualMatroid(m))
        assert lhs == rhs


def test_component_count_identity(corpus12):
    graphs = corpus12[::10] + [Graph(4, [(0, 1), (2, 3)]), DOUBLED_TRIANGLE]
    for m in [GraphicMatroid(g) for g in graphs] + [DualMatroid(GraphicMatroid(g)) for g in graphs]:
        lhs, rhs = check_component_count(m)
        assert lhs == rhs


def test_component_count_uniform_counterexample():
    # by hand: 4 - 4·2 + 2·2 = 0
    assert check_component_count(UniformMatroid(4, 2)) == (1, 0)


def test_slope_beta_sum_graphs_and_uniform(corpus12):
    for g in corpus12[::6]:
        lhs, rhs = check_slope_beta_sum(g)
        assert lhs == rhs
    for n in range(2, 10):
        for r in range(1, n):
            lhs, rhs = check_slope_beta_sum(UniformMatroid(n, r))
            assert lhs == rhs, (n, r)


def test_beta_rank_sum_disconnected():
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert beta_rank_sum(g) == g_recursive(GraphicMatroid(g)).derivative()(-1)


def test_slope_at_minus_one():
    assert check_slope_at_minus_one(complete(5)) == (1, 1)
    g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert check_slope_at_minus_one(g) == (-2, -2)


def test_r10_slope_and_n1():
    g = g_recursive(r10())
    assert g.derivative()(-1) == 0
    assert valuative_n1(g, 1) == -1


# connectivity profile ----------------------------------------------------------------

def test_wheel_profile():
    assert connectivity_sums(wheel(4), 3) == [1, 1, 3]
    assert connectivity_sums(complete(4), 2) == [1, 1]


def test_profile_cut_counts(corpus12):
    for g in corpus12[::8]:
        k = 3 if is_k_connected(g, 3) else 2
        sums = connectivity_sums(g, k)
        assert sums[:-1] == [1] * (k - 1)
        assert check_cut_profile(g, k) == (sums[-1], cut_count(g, k))


def test_profile_one_connected():
    # two triangles sharing a vertex
    g = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert connectivity_sums(g, 1) == [cut_count(g, 1)] == [2]
    assert block_count(g) == 2


def test_profile_rejects_loops():
    with pytest.raises(ValueError):
        connectivity_sums(Graph(2, [(0, 1), (1, 1)]), 1)


# flows -------------------------------------------------------------------------

def test_prism_flow_formula():
    q = Poly([0, 1])
    for n in (3, 4):
        expected = (q - 2) ** n + (q - 1) * (q - 3) ** n + (q * q - 3 * q + 1) * (-1) ** n
        assert flow_poly(prism(n)) == expected


def test_flow_count_matches_polynomial():
    for g in (complete(4), prism(3), wheel(4), circulant(6, [1, 2])):
        f = flow_poly(g)
        for q in (2, 3, 4):
            assert flow_count(g, q) == f(q)


def test_flow_zero_with_bridge():
    assert flow_poly(path(4)) == Poly()
    assert flow_poly(complete(4))(2) == 0


def test_flow_three_edge_cut_factorization(corpus12):
    from gspeyer.verify import three_edge_flow
    seen = 0
    for g in corpus12:
        for cut in edge_cuts(g, 3):
            if cut.trivial:
                continue
            lhs, rhs = three_edge_flow(g, cut)
            assert lhs == rhs
            seen += 1
        if seen > 20:
            break
    assert seen
