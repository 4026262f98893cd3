import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from iwahori import (
    DatumError,
    LatticeTooLarge,
    LatticeTooSmall,
    act_on_affine_root,
    group_of,
    kottwitz_class,
    make_datum,
    preset,
    validate_datum,
)
from iwahori.group import AffineRoot, GroupMismatch
from iwahori.verify import torsion_datum


def test_validate_presets():
    assert validate_datum({"cartan_type": "A2", "lattice": "coroot"}).kottwitz_group.order == 1
    assert validate_datum({"cartan_type": "A2", "lattice": "coweight"}).kottwitz_group.invariants == (3,)


def test_lattice_too_small():
    with pytest.raises(LatticeTooSmall):
        make_datum("A2", [[10, -5], [-5, 10]])


def test_lattice_too_large():
    with pytest.raises(LatticeTooLarge):
        make_datum("A1", [["1/2"]])


@pytest.mark.parametrize("raw", [
    {"cartan_type": "A2", "lattice": "coroot", "extra": 1},
    {"cartan_type": "A2", "lattice": {"basis": [[1, 0], [0, 1]], "bogus": []}},
    {"cartan_type": "A2", "lattice": "weird"},
    {"lattice": "coroot"},
    {"cartan_type": "Q7"},
    [1, 2],
])
def test_validate_rejects(raw):
    with pytest.raises(DatumError):
        validate_datum(raw)


def test_json_roundtrip():
    for d in (preset("C2", "coweight"), preset("G2"), torsion_datum()):
        assert validate_datum(d.to_json()) == d


def test_a1_products(a1):
    s0, s1 = a1.s(0), a1.s(1)
    t = a1.translation((1,))
    assert s0 * s1 == t
    assert ~(s0 * s1) == s1 * s0
    assert t * ~t == a1.identity
    assert a1.translation((-1,)) == ~t


def test_act_on_point(a1):
    assert a1.act_on_point(a1.s(0), (0,)) == (2,)  # theta^vee in coweight coordinates
    assert a1.act_on_point(a1.translation((1,)), (0,)) == (2,)
    assert a1.act_on_point(a1.identity, (Fraction(1, 3),)) == (Fraction(1, 3),)


def test_act_on_affine_root(a1):
    t = a1.translation((1,))
    assert act_on_affine_root(t, AffineRoot((1,), 0)) == AffineRoot((1,), -2)
    # s_0 sends (theta, 0) to (-theta, 2): theta(s_0^{-1} p) = 2 - theta(p)
    assert act_on_affine_root(a1.s(0), AffineRoot((1,), 0)) == AffineRoot((-1,), 2)


@pytest.mark.parametrize("name,lat", [("A2", "coweight"), ("C2", "coroot"), ("G2", "coroot")])
def test_affine_root_definition(name, lat):
    g = group_of(preset(name, lat))
    rng = random.Random(1)
    xs = [x for sh in g.ball(3) for x in sh]
    for x in xs[:40]:
        for alpha in g.root_system.roots[:4]:
            a = AffineRoot(alpha, rng.randint(-3, 3))
            img = g.act_on_affine_root(x, a)
            for _ in range(10):
                p = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(g.rank))
                assert img(p) == a(g.act_on_point(~x, p))


def test_lengths(a1):
    assert a1.length(a1.identity) == 0
    assert all(a1.length(s) == 1 for s in a1.generators)
    assert a1.length(a1.translation((1,))) == 2
    assert a1.length(a1.translation((2,))) == 4


def test_reduced_words(a1, a2w):
    assert a1.reduced_word(a1.identity) == ((), a1.identity)
    assert a1.reduced_word(a1.translation((1,))) == ((0, 1), a1.identity)
    assert a1.from_word([1, 1]) == a1.identity
    assert a1.from_word([0, 1]) == a1.translation((1,))
    x = a2w.translation((1, 0))
    word, om = a2w.reduced_word(x)
    assert a2w.length(x) == len(word) == 2
    assert om != a2w.identity and a2w.length(om) == 0
    assert a2w.from_word(word, om) == x


def test_kottwitz(a1, a2w):
    assert kottwitz_class(a1.identity).is_zero()
    assert kottwitz_class(a1.translation((1,))).is_zero()
    c = a2w.kottwitz_class(a2w.translation((1, 0)))
    assert c.group.invariants == (3,) and c.coords != (0,)


def test_omega_sizes(a2, a2w):
    assert a2.omega == (a2.identity,)
    assert len(a2w.omega) == 3
    assert len(group_of(torsion_datum()).omega) == 4


def test_projection(a1, a2):
    wt = a2.weyl
    assert a2.weyl.index(a2.project_to_finite(a2.translation((1, -1)))) == wt.identity
    assert a2.weyl.index(a2.project_to_finite(a2.s(1))) == wt.simple[0]
    assert a2.weyl.index(a2.project_to_finite(a2.s(0))) == wt.s_theta


def test_special_vertex(a1, a2):
    assert len(a1.special_vertex_subgroup()) == 2
    sv = a2.special_vertex_subgroup()
    assert len(sv) == 6
    assert [v for v in sv if v.w == a2.weyl.identity] == [a2.identity]


def test_torsion_quotient():
    g = group_of(torsion_datum())
    q = g.torsion_free_group
    xs = [x for sh in g.ball(4) for x in sh]
    kernel = [x for x in xs if g.quotient_mod_torsion(x) == q.identity]
    assert len(kernel) == 2 and all(g.length(x) == 0 for x in kernel)
    for x in xs[:30]:
        for y in xs[:30]:
            assert g.quotient_mod_torsion(x * y) == g.quotient_mod_torsion(x) * g.quotient_mod_torsion(y)
        assert q.length(g.quotient_mod_torsion(x)) == g.length(x)
    a1 = group_of(preset("A1"))
    assert a1.quotient_mod_torsion(a1.s(0)) is a1.s(0)


def test_group_mismatch(a1, a2):
    with pytest.raises(GroupMismatch):
        a1.multiply(a1.s(0), a2.s(0))


def test_ball_shells(a1):
    shells = a1.ball(6)
    assert [len(s) for s in shells] == [1] + [2] * 6


@st.composite
def words(draw, rank, max_size=12):
    return draw(st.lists(st.integers(0, rank), max_size=max_size))


@settings(max_examples=60, deadline=None)
@given(data=st.data(), name=st.sampled_from(["A2", "C2", "G2", "A3"]), lat=st.sampled_from(["coroot", "coweight"]))
def test_word_roundtrip_property(data, name, lat):
    g = group_of(preset(name, lat))
    w = data.draw(words(g.rank))
    k = data.draw(st.integers(0, len(g.omega) - 1))
    x = g.from_word(w, g.omega[k])
    word, om = g.reduced_word(x)
    assert len(word) == g.length(x) <= len(w)
    assert om == g.omega[k]
    assert g.from_word(word, om) == x
    # descents are exactly the generators that shorten
    for i, s in enumerate(g.generators):
        assert g.is_left_descent(x, i) == (g.length(s * x) < g.length(x))
        assert g.is_right_descent(x, i) == (g.length(x * s) < g.length(x))


@settings(max_examples=60, deadline=None)
@given(data=st.data(), name=st.sampled_from(["A1", "A2", "B2", "G2"]))
def test_group_axioms_property(data, name):
    g = group_of(preset(name, "coweight"))
    x, y, z = (g.from_word(data.draw(words(g.rank, 8))) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * ~x == g.identity == ~x * x
    assert g.kottwitz_class(x * y).coords == g.kottwitz_class(x).group.add(
        g.kottwitz_class(x).coords, g.kottwitz_class(y).coords)
    assert g.length(~x) == g.length(x)
