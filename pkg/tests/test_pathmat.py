import time
from itertools import product
from math import comb

import pytest

from gspeyer.pathmat import (
    admissible_squares, delannoy_counts, dual_word, fp_lt, g_path, normalize, path_from_chain,
    to_ur,
)
from gspeyer.poly import Poly
from gspeyer.speyer import closed_form

ALL10 = ["".join(w) for w in product("NE", repeat=10)]


def test_worked_words():
    assert g_path("NNEEE") == Poly([0, 3, 2])
    assert g_path("UURURR") == Poly([0, 5, 5, 1])
    assert g_path("NNNEEE") == Poly([0, 6, 6, 1])
    assert g_path("ENNE") == Poly()
    assert g_path("NE") == Poly([0, 1])


def test_chain_words():
    assert path_from_chain([(2, 1), (3, 3)]) == "NNENEE"
    assert to_ur(path_from_chain([(3, 3)])) == "UUURRR"
    with pytest.raises(ValueError):
        path_from_chain([(2, 2), (2, 2)])
    with pytest.raises(ValueError):
        normalize("NXE")


def test_delannoy_fixture():
    c = delannoy_counts("UURURR")
    assert sum(c) == 11 and Poly(c) == g_path("UURURR")
    assert Poly(delannoy_counts("NE")) == Poly([0, 1])


def test_delannoy_matches_recursion_on_all_words():
    for w in ALL10:
        assert Poly(delannoy_counts(w)) == g_path(w), w


def test_duality_reverses_words():
    for w in ALL10:
        assert g_path(dual_word(w)) == g_path(w)


def test_admissible_square_counts():
    sq = admissible_squares("UURURR")
    assert len(sq) == 3
    assert fp_lt("UURURR", 1, 3) == 3 and fp_lt("UURURR", 2, 3) == 1


def test_rectangle_counts():
    for n in range(3, 9):
        for r in range(1, n):
            w = "N" * r + "E" * (n - r)
            for i in range(4):
                for k in range(1, r + 1):
                    assert fp_lt(w, i, k) == comb(n - r - 1, i) * comb(k - 1, i)


def test_square_expansion_gives_g():
    t1 = Poly([1, 1])
    for w in ALL10:
        if w[0] != "N" or w[-1] != "E":
            continue
        r = w.count("N")
        acc = Poly()
        for i in range(r):
            acc = acc + t1 ** i * fp_lt(w, i, r)
        assert acc.mul_t() == g_path(w), w
        assert fp_lt(w, 0, r) == 1


def test_guard():
    with pytest.raises(ValueError):
        delannoy_counts("N" * 8 + "E" * 8)


def test_recursion_scales_polynomially():
    start = time.perf_counter()
    g = g_path("N" * 100 + "E" * 100)
    assert g == closed_form("uniform", 200, 100)
    assert g[1] == comb(198, 99)
    assert time.perf_counter() - start < 30
