from fractions import Fraction

import pytest

from iwahori import group_of, preset
from iwahori import oracle


def test_affine_maps(a1):
    assert oracle.to_affine_map(a1.identity) == oracle.AffineMap.identity(1)
    m = oracle.to_affine_map(a1.s(1))
    assert m.linear == ((-1,),) and m.offset == (0,)
    t = oracle.to_affine_map(a1.translation((1,)))
    assert t.linear == ((1,),) and t.offset == (2,)


def test_inverse_and_compose(a2w):
    x = a2w.from_word([0, 1, 2, 1], a2w.omega[1])
    f = oracle.to_affine_map(x)
    assert f.compose(f.inverse()) == oracle.AffineMap.identity(2)
    p = (Fraction(1, 5), Fraction(-2, 3))
    assert f(p) == a2w.act_on_point(x, p)


def test_hyperplane_lengths(a1):
    assert oracle.length_by_hyperplanes(a1.identity) == 0
    assert oracle.length_by_hyperplanes(a1.s(0)) == 1
    assert oracle.length_by_hyperplanes(a1.translation((2,))) == 4


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_batch_matches_scalar(name):
    g = group_of(preset(name, "coweight"))
    xs = oracle.ball_elements(g, 5)
    batch = oracle.lengths_by_hyperplanes(xs)
    assert [oracle.length_by_hyperplanes(x) for x in xs] == list(batch)


def test_shells():
    shells = oracle.bfs_enumerate(preset("A2"), 3)
    g = group_of(preset("A2"))
    assert shells[0].elements == [g.identity]
    a1 = group_of(preset("A1"))
    s1 = oracle.bfs_enumerate(preset("A1"), 5)
    assert set(s1[1].elements) == {a1.s(0), a1.s(1)}
    assert all(len(s.elements) == 2 for s in s1[1:])


def test_bfs_matches_engine_ball():
    for name in ("A2", "C2", "G2"):
        for lat in ("coroot", "coweight"):
            g = group_of(preset(name, lat))
            a = [set(s.elements) for s in oracle.bfs_enumerate(g, 5)]
            b = [set(s) for s in g.ball(5)]
            assert a == b


def test_cap():
    with pytest.raises(oracle.CapExceeded):
        oracle.bfs_enumerate(preset("A3"), 10, cap=50)


def test_omega_by_alcove(a2w):
    assert set(oracle.omega_by_alcove(a2w)) == set(a2w.omega)


def test_partition(a2):
    ball = oracle.ball_elements(a2, 6)
    p = oracle.double_coset_partition((), (), ball)
    assert len(p.classes) == len(ball)
    p = oracle.double_coset_partition((1, 2), (1, 2), [a2.identity])
    assert len(p.classes) == 1 and p.truncated == [True]


def test_subword_bruhat(a1):
    s0, s1 = a1.s(0), a1.s(1)
    assert oracle.bruhat_leq_subwords(s1, s0 * s1, (0, 1), a1.identity)
    assert not oracle.bruhat_leq_subwords(s0, s1, (1,), a1.identity)


def test_all_reduced_words(a2):
    x = a2.from_word([1, 2, 1])
    assert sorted(oracle.all_reduced_words(x, 3)) == [(1, 2, 1), (2, 1, 2)]
