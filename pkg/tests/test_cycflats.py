from math import prod

import pytest

from gspeyer.cycflats import (
    all_chains, brute_force_cyclic_flats, chain_lattice_lambdas, enumerate_lattice,
    euler_characteristic_oracle, lattice_stats, moebius,
)
from gspeyer.graphcore import wheel
from gspeyer.matroid import GraphicMatroid, UniformMatroid, fano, r10


def lattice(g):
    return enumerate_lattice(GraphicMatroid(g))


def test_wheel_lattices():
    assert lattice_stats(lattice(wheel(3))) == (6, 8, 9)
    assert len(lattice(wheel(4))) == 11


def test_uniform_lattice_is_a_chain_of_two():
    for n, r in [(5, 2), (7, 3), (8, 7)]:
        assert lattice_stats(enumerate_lattice(UniformMatroid(n, r))) == (2, 1, 1)


def test_enumeration_matches_brute_force(corpus16):
    for g in [h for h in corpus16 if h.m <= 14][::3]:
        m = GraphicMatroid(g)
        assert sorted(enumerate_lattice(m).elements) == sorted(brute_force_cyclic_flats(m))
    for m in (fano(), r10(), UniformMatroid(6, 3)):
        assert sorted(enumerate_lattice(m).elements) == sorted(brute_force_cyclic_flats(m))


def test_meets_and_joins_stay_inside():
    m = GraphicMatroid(wheel(5))
    lat = enumerate_lattice(m)
    els = set(lat.elements)
    for a in lat.elements:
        for b in lat.elements:
            assert m.closure(a | b) in els
            assert m.cyclic_core(a & b) in els


@pytest.mark.parametrize("r,expected", [(3, 3), (4, 0)])
def test_moebius_top(r, expected):
    lat = lattice(wheel(r))
    mu = moebius(lat)
    assert mu(lat.bottom, lat.top) == expected == euler_characteristic_oracle(lat)


def test_moebius_matches_oracle_on_intervals():
    for m in (GraphicMatroid(wheel(4)), GraphicMatroid(wheel(5)), fano()):
        lat = enumerate_lattice(m)
        mu = moebius(lat)
        for j in range(len(lat)):
            col = mu.column(j)
            assert col[j] == 1
            for i in col:
                if i != j:
                    assert col[i] == euler_characteristic_oracle(lat, i, j)


def test_two_element_lattice():
    lat = enumerate_lattice(UniformMatroid(4, 2))
    assert euler_characteristic_oracle(lat) == -1 == moebius(lat)(0, 1)


@pytest.mark.parametrize("r", [3, 4, 5])
def test_chain_product_formula(r):
    lat = lattice(wheel(r))
    mu = moebius(lat)
    lam = chain_lattice_lambdas(lat)
    for chain in all_chains(lat):
        full = (lat.bottom,) + chain + (lat.top,)
        assert lam[chain] == prod(-mu(a, b) for a, b in zip(full, full[1:]))


def test_dot_dump():
    assert lattice(wheel(3)).to_dot().count("->") == 8
