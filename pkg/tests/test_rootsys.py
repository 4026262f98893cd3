from fractions import Fraction

import pytest

from iwahori.datum import root_system
from iwahori.rootsys import (
    CartanType,
    RootSystemError,
    enumerate_finite_weyl,
    pairing,
    reflect,
)

POSITIVE_COUNTS = {"A1": 1, "A2": 3, "A3": 6, "B2": 4, "B3": 9, "C2": 4, "C3": 9,
                   "D4": 12, "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120}


@pytest.mark.parametrize("name,count", sorted(POSITIVE_COUNTS.items()))
def test_positive_root_count(name, count):
    rs = root_system(name)
    assert len(rs.positive_roots) == count
    assert len(rs.roots) == 2 * count


@pytest.mark.parametrize("name", sorted(POSITIVE_COUNTS))
def test_highest_root_dominant(name):
    rs = root_system(name)
    theta = rs.highest_root
    # theta pairs non-negatively with every simple coroot
    for i in range(rs.rank):
        assert sum(rs.cartan_matrix[i][j] * theta[j] for j in range(rs.rank)) >= 0
    assert all(sum(a) <= sum(theta) for a in rs.positive_roots)


def test_a1():
    rs = root_system("A1")
    assert rs.positive_roots == ((1,),)
    assert rs.highest_root == (1,)
    assert rs.cartan_matrix == ((2,),)


def test_a2_theta_and_two_rho():
    rs = root_system("A2")
    assert rs.highest_root == (1, 1)
    assert rs.two_rho == (2, 2)


def test_g2_convention():
    rs = root_system("G2")
    # A[i][j] = <alpha_i^vee, alpha_j>, alpha_1 short
    assert rs.cartan_matrix == ((2, -3), (-1, 2))
    assert rs.highest_root == (3, 2)


def test_pairing():
    assert pairing((1, 0), (1, 0)) == 1
    rs = root_system("A2")
    assert pairing(rs.highest_root, rs.coroot((1, 0))) == 1
    assert pairing((1, 0), (0, 0)) == 0


def test_reflect():
    rs = root_system("A2")
    a = (1, 0)
    cv = rs.coroot(a)
    assert reflect(rs, a, cv) == tuple(-c for c in cv)
    assert reflect(rs, a, (0, 1)) == (0, 1)
    # s_1(w_1) = w_1 - a_1^vee
    assert reflect(rs, a, (1, 0)) == tuple(x - y for x, y in zip((1, 0), cv))
    assert reflect(rs, a, (Fraction(1, 2), 0)) == (Fraction(-1, 2), Fraction(1, 2))


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("B2", 8), ("A3", 24), ("G2", 12), ("B3", 48)])
def test_weyl_order(name, order):
    rs = root_system(name)
    assert len(enumerate_finite_weyl(rs)) == order
    assert rs.weyl_order == order


@pytest.mark.parametrize("name,inv", [("A2", (3,)), ("B2", (2,)), ("G2", ()), ("D4", (2, 2)), ("A3", (4,)), ("E6", (3,))])
def test_fundamental_group(name, inv):
    assert root_system(name).fundamental_group().invariants == inv


def test_parse_and_errors():
    assert CartanType.parse("g2") == CartanType("G", 2)
    for bad in ("Z3", "B1", "E5", "A0", "A"):
        with pytest.raises(RootSystemError):
            CartanType.parse(bad)


def test_weyl_table_consistency():
    rs = root_system("B3")
    wt = rs.weyl
    for w in enumerate_finite_weyl(rs):
        h = wt.index(w)
        assert wt.mul(h, wt.inv(h)) == wt.identity
        assert wt.from_word(wt.word(h)) == h
        assert len(wt.word(h)) == wt.length(h)
