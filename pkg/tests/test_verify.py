import pytest

from gspeyer.graphcore import (
    Graph, circulant, complete, complete_multipartite, edge_cuts, isomorphic, parse_graph6,
    petersen, prism, wheel,
)
from gspeyer.poly import parse_poly
from gspeyer.verify import (
    CSV_HEADER, DOUBLE_TRANSPOSITIONS, SUITES, check_cubic_tutte, check_four_edge_twist,
    check_planar_n2, check_planar_n3, check_star_triangle, check_three_edge_cut,
    check_three_sum, check_twist, contract_side, edge_twist, findings_csv, g_graph, n_coeff,
    pair_three_sum_findings, read_findings, run_suite, star_triangle, suite_findings,
    summarize, three_edge_flow, three_sum, twist_findings,
)

K5K5 = three_sum(complete(5), (0, 1, 2), complete(5), (0, 1, 2))


def nontrivial_three_edge_cuts(g):
    return [c for c in edge_cuts(g, 3) if not c.trivial]


# 3-sums --------------------------------------------------------------------------

def test_k5_three_sum_polynomial():
    assert K5K5.vertex_count == 7 and K5K5.m == 14
    assert g_graph(K5K5) == parse_poly("24*t+109*t^2+202*t^3+183*t^4+81*t^5+14*t^6")


def test_k5_three_sum_relation():
    f = check_three_sum(complete(5), (0, 1, 2), complete(5), (0, 1, 2))
    assert f.agrees and f.lhs == "-1" and f.rhs == "-1"


def test_three_sum_all_bijections():
    fs = list(pair_three_sum_findings(complete(4), complete(5)))
    assert len(fs) == 4 * 10 * 6
    assert all(f.agrees for f in fs)


def test_three_sum_input_checks():
    with pytest.raises(ValueError):
        check_three_sum(complete(5), (0, 1, 2), complete_multipartite(3, 3), (0, 1, 3))
    with pytest.raises(ValueError):
        check_three_sum(circulant(6, [1, 2]), (0, 1, 3), complete(4), (0, 1, 2))
    with pytest.raises(ValueError):
        three_sum(complete(4), (0, 1, 2), complete(4), (0, 1, 2), (0, 0, 1))


def test_star_triangle_k34():
    k34 = complete_multipartite(3, 4)
    assert n_coeff(k34, 2) == -2
    assert isomorphic(star_triangle(k34, 3), complete_multipartite(1, 1, 1, 3))
    f = check_star_triangle(k34, 3)
    assert f.agrees


def test_star_triangle_small_cases():
    assert n_coeff(complete_multipartite(3, 3), 2) == 0
    assert n_coeff(complete(4), 2) == 1
    assert check_star_triangle(complete(4), 0).agrees
    with pytest.raises(ValueError):
        check_star_triangle(complete(5), 0)


# twists ------------------------------------------------------------------------

def test_k5_twist_example():
    f = check_twist(K5K5, (3, 4, 5, 6), (0,), (3, 5, 4, 6), inner_b=1)
    assert f.agrees and f.lhs == "-1"


def test_k5_twist_polynomial_reached():
    target = parse_poly("18*t+75*t^2+126*t^3+99*t^4+35*t^5+4*t^6")
    from gspeyer.verify import split_at_cut, twist
    _, b = split_at_cut(K5K5, (3, 4, 5, 6), (0,), 1)
    assert g_graph(twist(K5K5, b, (3, 5, 4, 6))) == target


def test_twist_all_sites_agree():
    fs = list(twist_findings(K5K5))
    assert fs and not any(f.violates for f in fs)
    assert sum(f.agrees for f in fs) >= 12


def test_twist_identity_labelling():
    f = check_twist(K5K5, (3, 4, 5, 6), (0,), (3, 4, 5, 6))
    assert f.agrees


def test_twist_rejects_non_minimal_cut():
    g = prism(4)
    with pytest.raises(ValueError):
        check_twist(g, (0, 1, 2, 3), (4,), (0, 1, 2, 3))


# edge cuts --------------------------------------------------------------------------

def test_three_edge_cut_wheel_k33():
    g = parse_graph6("HoCQXZo")
    assert g_graph(g) == parse_poly("7*t^6+40*t^5+92*t^4+106*t^3+61*t^2+15*t")
    cuts = nontrivial_three_edge_cuts(g)
    assert len(cuts) == 1
    cut = cuts[0]
    a, b = contract_side(g, cut.side_t), contract_side(g, cut.side_s)
    sides = {g_graph(a), g_graph(b)}
    assert sides == {parse_poly("t^4+4*t^3+5*t^2+3*t"), parse_poly("4*t^4+12*t^3+12*t^2+5*t")}
    f = check_three_edge_cut(g, cut)
    assert f.agrees and f.lhs == "61*t^2+15*t"
    # β is multiplicative across the cut
    assert g_graph(g)[1] == g_graph(a)[1] * g_graph(b)[1]
    lhs, rhs = three_edge_flow(g, cut)
    assert lhs == rhs


def test_three_edge_cut_higher_terms_differ():
    g1, g2 = parse_graph6("H?]RCNo"), parse_graph6("H_l@Gno")
    assert g_graph(g1) == parse_poly("8*t^6+45*t^5+102*t^4+116*t^3+66*t^2+16*t")
    assert g_graph(g2) == parse_poly("7*t^6+42*t^5+99*t^4+115*t^3+66*t^2+16*t")
    for g in (g1, g2):
        cuts = nontrivial_three_edge_cuts(g)
        assert cuts and all(check_three_edge_cut(g, c).agrees for c in cuts)


def test_three_edge_cut_rejects_trivial():
    g = complete(4)
    with pytest.raises(ValueError):
        check_three_edge_cut(g, edge_cuts(g, 3)[0])


def test_four_edge_twist_example():
    g1, g2 = parse_graph6("I?@TPrK{O"), parse_graph6("I?ClaZOwW")
    assert g_graph(g1) == parse_poly(
        "5*t^8+51*t^7+212*t^6+474*t^5+621*t^4+480*t^3+204*t^2+38*t")
    assert g_graph(g2) == parse_poly(
        "4*t^8+43*t^7+190*t^6+446*t^5+604*t^4+476*t^3+204*t^2+38*t")
    hits = []
    for cut in edge_cuts(g1, 4):
        e = [i for i in range(g1.m) if cut.edges >> i & 1]
        for p in DOUBLE_TRANSPOSITIONS:
            order = [e[i] for i in p]
            if isomorphic(edge_twist(g1, cut, order), g2):
                hits.append(check_four_edge_twist(g1, cut, order))
    assert hits and all(f.agrees for f in hits)
    assert "F=" in hits[0].lhs


def test_four_edge_twist_order_check():
    g = parse_graph6("I?@TPrK{O")
    cut = edge_cuts(g, 4)[0]
    e = [i for i in range(g.m) if cut.edges >> i & 1]
    outside = next(i for i in range(g.m) if not cut.edges >> i & 1)
    with pytest.raises(ValueError):
        check_four_edge_twist(g, cut, e[:3] + [outside])


# planar and cubic ---------------------------------------------------------------

def test_planar_checks():
    assert check_planar_n2(prism(4)).agrees
    octa = circulant(6, [1, 2])
    assert check_planar_n2(octa).agrees and check_planar_n3(octa).agrees
    f = check_planar_n2(complete(5))
    assert f.skipped and "not planar" in f.verdict
    assert n_coeff(complete(5), 2) == 0
    assert check_planar_n3(prism(4)).skipped


def test_cubic_tutte():
    f = check_cubic_tutte(complete(4))
    assert f.agrees and f.lhs == "4"
    for g in [complete_multipartite(3, 3), petersen()] + [prism(n) for n in range(3, 7)]:
        assert check_cubic_tutte(g).agrees
    assert check_cubic_tutte(wheel(4)).skipped


# harness plumbing -------------------------------------------------------------------

def test_csv_round_trip():
    fs = suite_findings("3edge", parse_graph6("HoCQXZo")) + [check_planar_n2(complete(5))]
    text = findings_csv(fs)
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert read_findings(text) == fs


def test_findings_deterministic(corpus12):
    sample = corpus12[::15]
    a = findings_csv(run_suite("all", sample))
    b = findings_csv(run_suite("all", sample))
    assert a == b


def test_suites_on_sample(corpus12):
    sample = corpus12[::20]
    for name in SUITES:
        counts = summarize(run_suite(name, sample))
        for c in counts.values():
            assert c["violates"] == 0, name


def test_unknown_suite():
    with pytest.raises(ValueError):
        suite_findings("nope", complete(4))


def test_skips_recorded_for_low_connectivity():
    # two K4 glued along an edge: 2-connected only
    g = Graph(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                  (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)])
    for name in ("twist", "3sum", "3edge"):
        fs = suite_findings(name, g)
        assert len(fs) == 1 and fs[0].verdict == "skipped(not 3-connected)"
