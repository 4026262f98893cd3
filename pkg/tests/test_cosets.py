import pytest

from iwahori import (
    NotFinite,
    apply_sigma,
    bruhat_leq,
    descent_check,
    enumerate_double_cosets,
    group_of,
    is_sigma_stable_coset,
    make_sigma,
    min_double_rep,
    parabolic,
    preset,
)
from iwahori import oracle
from iwahori.cosets import SigmaError, full_double_coset, proper_subsets


def test_parabolic_sizes(a1, a2):
    assert parabolic(a2, ()).elements == [a2.identity]
    assert len(parabolic(a2, (1, 2)).elements) == 6
    assert len(parabolic(a2, (0, 1)).elements) == 6
    with pytest.raises(NotFinite):
        parabolic(a1, (0, 1))
    assert len(proper_subsets(a2)) == 7


def test_min_double_rep_trivial(a2):
    J = (1, 2)
    x = a2.from_word([1, 2])
    w, x0, wp = min_double_rep(x, J, ())
    assert (w, x0, wp) == (x, a2.identity, a2.identity)
    y = a2.s(0)
    assert min_double_rep(y, J, J) == (a2.identity, y, a2.identity)


def test_min_double_rep_c2():
    g = group_of(preset("C2"))
    J = (1, 2)
    x = g.translation((1, 0))
    w, x0, wp = min_double_rep(x, J, J)
    assert w * x0 * wp == x
    P = parabolic(g, J)
    coset = full_double_coset(x0, P, P)
    m = min(g.length(z) for z in coset)
    assert [z for z in coset if g.length(z) == m] == [x0]
    # w x0 is minimal in its right coset
    assert all(g.length(w * x0 * v) >= g.length(w * x0) for v in P.elements)


def test_bruhat_examples(a1, a2):
    s0, s1 = a1.s(0), a1.s(1)
    assert bruhat_leq(s1, s0 * s1)
    assert not bruhat_leq(s0, s1)
    y = a2.from_word([0, 1, 2, 0])
    assert bruhat_leq(a2.identity, y)
    assert bruhat_leq(y, y)


def test_bruhat_matches_subwords(a2w):
    ball = oracle.ball_elements(a2w, 4)
    for y in ball[::5]:
        word, om = a2w.reduced_word(y)
        for x in ball[::3]:
            want = x.group.kottwitz_class(x) == x.group.kottwitz_class(y) and oracle.bruhat_leq_subwords(x, y, word, om)
            assert bruhat_leq(x, y) == want


def test_double_cosets_trivial(a2):
    reps = enumerate_double_cosets(a2, (), (), 4)
    assert len(reps) == sum(len(s) for s in a2.ball(4))
    reps = enumerate_double_cosets(a2, (1, 2), (1, 2), 0)
    assert len(reps) == 1 and reps[0].word == ()


def test_double_cosets_match_partition(a2):
    ball = oracle.ball_elements(a2, 6)
    reps = enumerate_double_cosets(a2, (1, 2), (1, 2), 6)
    part = oracle.double_coset_partition((1, 2), (1, 2), ball)
    assert len(reps) == len(part.classes)
    assert sum(r.size_in_ball for r in reps) == len(ball)
    assert sorted(len(c) for c in part.classes) == sorted(r.size_in_ball for r in reps)
    keys = [(r.length, r.word, r.omega) for r in reps]
    assert keys == sorted(keys)


def test_sigma_a3():
    g = group_of(preset("A3", "coweight"))
    sigma = make_sigma(g, (0, 3, 2, 1))
    assert apply_sigma(sigma, g.s(1)) == g.s(3)
    assert apply_sigma(sigma, g.s(2)) == g.s(2)
    ident = make_sigma(g, (0, 1, 2, 3))
    xs = oracle.ball_elements(g, 4)
    for x in xs:
        assert apply_sigma(ident, x) == x
        y = apply_sigma(sigma, x)
        assert g.length(y) == g.length(x)
        assert apply_sigma(sigma, y) == x
    assert {apply_sigma(sigma, w) for w in g.omega} == set(g.omega)


def test_sigma_errors():
    g = group_of(preset("A3"))
    with pytest.raises(SigmaError):
        make_sigma(g, (0, 2, 1, 3))
    with pytest.raises(SigmaError):
        make_sigma(g, (1, 0, 2, 3))
    sigma = make_sigma(g, (0, 3, 2, 1))
    with pytest.raises(SigmaError):
        descent_check(sigma, (1,), (), 2)


def test_descent():
    g = group_of(preset("A3"))
    ident = make_sigma(g, (0, 1, 2, 3))
    rep = descent_check(ident, (1, 2), (2,), 4)
    assert rep.ok and rep.stable_cosets == rep.cosets == rep.fixed_minimal_reps
    sigma = make_sigma(g, (0, 3, 2, 1))
    rep = descent_check(sigma, (1, 2, 3), (1, 2, 3), 6)
    assert rep.ok and not rep.counterexamples
    reps = enumerate_double_cosets(g, (1, 3), (2,), 3)
    assert any(is_sigma_stable_coset(sigma, r) for r in reps)
