"""Structural property checks, one per acceptance criterion.

Each check returns a :class:`CheckResult`; ``run_all`` runs them in order.
The checks compare the engine against the brute-force routines in
:mod:`iwahori.oracle` and never weaken a comparison to make it pass.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import cosets as C
from . import oracle
from .datum import GroupDatum, make_datum, preset
from .group import IwahoriWeylGroup, group_of
from .rootsys import enumerate_finite_weyl

BOTH = ("coroot", "coweight")


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        counts = " ".join(f"{k}={v}" for k, v in self.counts.items())
        out = f"[{status}] {self.number}. {self.name}: {counts}"
        if self.failures:
            out += f" first_failure={self.failures[0]}"
        return out


def _data(types, lattices=BOTH) -> list[GroupDatum]:
    return [preset(t, lat) for t in types for lat in lattices]


def _ball(g: IwahoriWeylGroup, n: int):
    return oracle.ball_elements(g, n)


# 1 ---------------------------------------------------------------------------

def check_semidirect(types=("A1", "A2", "C2", "A3"), max_len=6) -> CheckResult:
    res = CheckResult(1, "semidirect splitting", True)
    total = 0
    for d in _data(types):
        g = group_of(d)
        sv = g.special_vertex_subgroup()
        w0 = enumerate_finite_weyl(d.root_system)
        if sorted(g.weyl.index(g.project_to_finite(v)) for v in sv) != sorted(g.weyl.index(w) for w in w0):
            res.failures.append((d.label, "special vertex subgroup does not biject onto W0"))
        if len(set(sv)) != len(w0) or any(g.act_on_point(v, (0,) * g.rank) != (0,) * g.rank for v in sv):
            res.failures.append((d.label, "special vertex subgroup does not fix the origin"))
        for x in _ball(g, max_len):
            total += 1
            hits = 0
            for v in sv:
                t = x * ~v
                m = oracle.to_affine_map(t)
                if all(m.linear[i][j] == (i == j) for i in range(g.rank) for j in range(g.rank)):
                    hits += 1
                    if g.translation(t.translation, t.tor or None) != t:
                        res.failures.append((d.label, repr(x), "translation part not canonical"))
            if hits != 1:
                res.failures.append((d.label, repr(x), f"{hits} factorizations"))
    res.counts = {"data": len(types) * 2, "elements": total}
    res.passed = not res.failures
    return res


# 2 ---------------------------------------------------------------------------

EXPECTED_OMEGA = {("A1", "coweight"): 2, ("A2", "coweight"): 3, ("C2", "coweight"): 2,
                  ("G2", "coroot"): 1, ("G2", "coweight"): 1}


def check_quasi_coxeter(types=("A1", "A2", "C2", "G2", "A3"), max_len=6) -> CheckResult:
    res = CheckResult(2, "quasi-Coxeter structure", True)
    total = 0
    for (t, lat), want in EXPECTED_OMEGA.items():
        got = len(group_of(preset(t, lat)).omega)
        if got != want:
            res.failures.append((t, lat, f"|Omega|={got} expected {want}"))
    for d in _data(types):
        g = group_of(d)
        om = g.omega
        expect = d.kottwitz_group.order
        fg = d.root_system.fundamental_group().order if "coweight" in d.label else 1
        if len(om) != expect or expect != fg * d.torsion.order:
            res.failures.append((d.label, "|Omega| != |Lambda/Q| |torsion|"))
        if set(om) != set(oracle.omega_by_alcove(g)) or any(g.length(w) for w in om):
            res.failures.append((d.label, "Omega differs from the alcove stabilizer"))
        # W_a by plain BFS from the identity
        wa = set()
        frontier = [g.identity]
        wa.add(g.identity)
        for _ in range(max_len):
            nxt = []
            for x in frontier:
                for s in g.generators:
                    y = s * x
                    if y not in wa:
                        wa.add(y)
                        nxt.append(y)
            frontier = nxt
        for x in _ball(g, max_len):
            total += 1
            word, w = g.reduced_word(x)
            if w not in om or g.from_word(word, w) != x:
                res.failures.append((d.label, repr(x), "bad W_a x Omega factorization"))
            hits = [o for o in om if x * ~o in wa]
            if hits != [w]:
                res.failures.append((d.label, repr(x), f"{len(hits)} Omega components"))
    res.counts = {"data": len(types) * 2, "elements": total}
    res.passed = not res.failures
    return res


# 3 ---------------------------------------------------------------------------

def check_exact_sequence(types=("A1", "A2", "C2", "A3"), max_len=6, seed=0, pairs=2000) -> CheckResult:
    res = CheckResult(3, "exact sequence", True)
    rng = random.Random(seed)
    total = kernel = 0
    for d in _data(types):
        g = group_of(d)
        ball = _ball(g, max_len)
        ident = g.weyl.identity
        proj_kernel = {x for x in ball if g.weyl.index(g.project_to_finite(x)) == ident}
        r = g.rank
        pure_translations = {
            x for x in ball
            if oracle.to_affine_map(x).linear == tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        }
        if proj_kernel != pure_translations:
            res.failures.append((d.label, "kernel differs from translations"))
        for x in proj_kernel:
            if g.translation(x.translation, x.tor or None) != x:
                res.failures.append((d.label, repr(x), "kernel element is not a lattice translation"))
        image = {g.weyl.index(g.project_to_finite(x)) for x in ball}
        w0 = {g.weyl.index(w) for w in enumerate_finite_weyl(d.root_system)}
        if image != w0:
            res.failures.append((d.label, "projection of the ball misses W0"))
        for _ in range(pairs):
            x, y = rng.choice(ball), rng.choice(ball)
            lhs = g.weyl.index(g.project_to_finite(x * y))
            rhs = g.weyl.mul(g.weyl.index(g.project_to_finite(x)), g.weyl.index(g.project_to_finite(y)))
            if lhs != rhs:
                res.failures.append((d.label, "projection not a homomorphism"))
                break
        total += len(ball)
        kernel += len(proj_kernel)
    res.counts = {"elements": total, "kernel": kernel}
    res.passed = not res.failures
    return res


# 4 ---------------------------------------------------------------------------

LENGTH_DATA = [(("A1", "A2", "C2", "G2"), 8), (("A3", "B3", "C3"), 6)]
MIN_ELEMENTS = 1000


def _ball_at_least(g, max_len, n):
    shells, total = [], 0
    for sh in oracle.iter_shells(g):
        shells.append(sh)
        total += len(sh.elements)
        if sh.level >= max_len and total >= n:
            return shells, sh.level


def check_length_oracle(data=LENGTH_DATA, min_elements=MIN_ELEMENTS, scalar_sample=300, seed=0) -> CheckResult:
    """Closed form = hyperplane count = reduced-word length = BFS level.

    Each ball covers the stated radius and is widened until it holds at
    least ``min_elements`` elements.
    """
    res = CheckResult(4, "length oracle equivalence", True)
    rng = random.Random(seed)
    sizes = {}
    for types, max_len in data:
        for d in _data(types):
            g = group_of(d)
            shells, radius = _ball_at_least(g, max_len, min_elements)
            xs = [x for s in shells for x in s.elements]
            levels = [s.level for s in shells for _ in s.elements]
            closed = g.lengths(xs)
            hyper = oracle.lengths_by_hyperplanes(xs)
            for x, lev, a, b in zip(xs, levels, closed, hyper):
                word, om = g.reduced_word(x)
                if not (lev == a == b == len(word)) or g.from_word(word, om) != x:
                    res.failures.append((d.label, repr(x), lev, int(a), int(b), len(word)))
            inner = [x for x, lev in zip(xs, levels) if lev <= max_len]
            for x in rng.sample(inner, min(scalar_sample, len(inner))):
                if g.length(x) != oracle.length_by_hyperplanes(x):
                    res.failures.append((d.label, repr(x), "scalar paths disagree"))
            sizes[d.label] = (len(xs), radius)
    res.counts = {
        "data": len(sizes),
        "elements": sum(n for n, _ in sizes.values()),
        "min_per_datum": min(n for n, _ in sizes.values()),
    }
    res.passed = not res.failures and all(n >= min_elements for n, _ in sizes.values())
    return res


# 5 ---------------------------------------------------------------------------

def check_double_coset_form(types=("A2", "C2"), max_len=6) -> CheckResult:
    res = CheckResult(5, "double-coset canonical form", True)
    n_elem = n_pairs = n_cosets = 0
    for d in _data(types):
        g = group_of(d)
        ball = _ball(g, max_len)
        subsets = C.proper_subsets(g)
        for J in subsets:
            P = C.parabolic(g, J)
            for Jp in subsets:
                Q = C.parabolic(g, Jp)
                n_pairs += 1
                orbit_of: dict = {}
                for x in ball:
                    w, x0, wp = C.min_double_rep(x, J, Jp)
                    n_elem += 1
                    if x0 not in orbit_of:
                        orbit = {u * x0 * v for u in P.elements for v in Q.elements}
                        m = min(g.length(z) for z in orbit)
                        minima = [z for z in orbit if g.length(z) == m]
                        if minima != [x0]:
                            res.failures.append((d.label, J, Jp, repr(x0), f"{len(minima)} minima"))
                        orbit_of[x0] = orbit
                        n_cosets += 1
                    orbit = orbit_of[x0]
                    if x not in orbit:
                        res.failures.append((d.label, J, Jp, repr(x), "x not in the coset of its x0"))
                    if w not in P or wp not in Q or w * x0 * wp != x:
                        res.failures.append((d.label, J, Jp, repr(x), "factorization does not re-multiply"))
                    wx0 = w * x0
                    right = [wx0 * v for v in Q.elements]
                    if any(g.length(z) <= g.length(wx0) and z != wx0 for z in right):
                        res.failures.append((d.label, J, Jp, repr(x), "w x0 not minimal in its right coset"))
    res.counts = {"pairs": n_pairs, "elements": n_elem, "cosets": n_cosets}
    res.passed = not res.failures
    return res


# 6 ---------------------------------------------------------------------------

DCOSET_PAIRS = {
    "A2": [((1, 2), (1, 2)), ((0,), (1, 2)), ((0, 1), (2,))],
    "C2": [((1, 2), (1, 2)), ((0, 2), (1,)), ((0,), (0, 1))],
    "G2": [((1, 2), (1, 2)), ((0, 1), (2,)), ((0, 2), (0, 2))],
    "A3": [((1, 2, 3), (1, 2, 3)), ((0, 2), (1, 3)), ((0, 1, 3), (2,))],
}


def check_bruhat_index(pairs=DCOSET_PAIRS, max_len=6) -> CheckResult:
    res = CheckResult(6, "Bruhat index-set consistency", True)
    n = 0
    for t, plist in pairs.items():
        for d in _data((t,)):
            g = group_of(d)
            ball = _ball(g, max_len)
            for J, Jp in plist:
                n += 1
                reps = C.enumerate_double_cosets(g, J, Jp, max_len)
                part = oracle.double_coset_partition(J, Jp, ball)
                if len(reps) != len(part.classes):
                    res.failures.append((d.label, J, Jp, len(reps), len(part.classes)))
                    continue
                by_min = {}
                for cls, trunc in zip(part.classes, part.truncated):
                    m = min(g.length(z) for z in cls)
                    mins = [z for z in cls if g.length(z) == m]
                    by_min[mins[0]] = (len(cls), trunc, len(mins))
                for rep in reps:
                    got = by_min.get(rep.x0)
                    if got is None or got[:2] != (rep.size_in_ball, rep.truncated) or got[2] != 1:
                        res.failures.append((d.label, J, Jp, repr(rep.x0), got))
    res.counts = {"pairs": n}
    res.passed = not res.failures
    return res


# 7 ---------------------------------------------------------------------------

def a3_flip(g: IwahoriWeylGroup) -> C.DiagramAutomorphism:
    return C.make_sigma(g, (0, 3, 2, 1))


def check_descent(max_len=6, lattices=BOTH) -> CheckResult:
    res = CheckResult(7, "descent", True)
    stable_total = fixed_total = n = 0
    for lat in lattices:
        g = group_of(preset("A3", lat))
        sigma = a3_flip(g)
        subsets = [J for J in C.proper_subsets(g) if sigma.stabilizes(J)]
        ball = [x for sh in g.ball(max_len) for x in sh]
        for J in subsets:
            for Jp in subsets:
                n += 1
                rep = C.descent_check(sigma, J, Jp, max_len, ball=ball)
                stable_total += rep.stable_cosets
                fixed_total += rep.fixed_minimal_reps
                if not rep.ok:
                    res.failures.append((lat, J, Jp, rep.to_json()))
    res.counts = {"pairs": n, "stable_cosets": stable_total, "fixed_reps": fixed_total}
    res.passed = not res.failures
    return res


# 8 ---------------------------------------------------------------------------

def torsion_datum() -> GroupDatum:
    return make_datum("A1", [[1]], torsion=[2], name="A1/coweight+Z2")


def check_torsion_quotient(max_len=6) -> CheckResult:
    res = CheckResult(8, "torsion quotient", True)
    g = group_of(torsion_datum())
    gq = g.torsion_free_group
    ball = _ball(g, max_len)
    q = {x: g.quotient_mod_torsion(x) for x in ball}
    for x in ball:
        for y in ball:
            if g.quotient_mod_torsion(x * y) != q[x] * q[y]:
                res.failures.append((repr(x), repr(y), "not a homomorphism"))
    kernel = [x for x in ball if q[x] == gq.identity]
    if len(kernel) != 2 or any(k not in g.omega for k in kernel):
        res.failures.append(("kernel", [repr(k) for k in kernel]))
    if any(gq.length(q[x]) != g.length(x) for x in ball):
        res.failures.append(("length not preserved",))
    if set(q.values()) != set(_ball(gq, max_len)):
        res.failures.append(("not surjective onto the quotient ball",))
    res.counts = {"elements": len(ball), "kernel": len(kernel)}
    res.passed = not res.failures
    return res


# 9 ---------------------------------------------------------------------------

def check_oracle_faithfulness(types=("A1", "A2", "C2", "G2", "A3"), max_len=6, pairs=10_000, seed=0) -> CheckResult:
    res = CheckResult(9, "oracle faithfulness", True)
    rng = random.Random(seed)
    data = _data(types)
    balls = {}
    total = 0
    for d in data:
        g = group_of(d)
        ball = _ball(g, max_len)
        balls[d] = (g, ball)
        maps = {}
        for x in ball:
            m = oracle.to_affine_map(x)
            if m in maps and maps[m] != x:
                res.failures.append((d.label, repr(x), repr(maps[m]), "same affine map"))
            maps[m] = x
        total += len(ball)
        gens = oracle.generator_maps(g)
        if [oracle.to_affine_map(s) for s in g.generators] != gens:
            res.failures.append((d.label, "generators disagree with reflection formula"))
    for _ in range(pairs):
        g, ball = balls[rng.choice(data)]
        x, y = rng.choice(ball), rng.choice(ball)
        if oracle.to_affine_map(x * y) != oracle.to_affine_map(x).compose(oracle.to_affine_map(y)):
            res.failures.append((repr(x), repr(y), "not a homomorphism"))
    res.counts = {"elements": total, "pairs": pairs}
    res.passed = not res.failures
    return res


CHECKS: list[Callable[..., CheckResult]] = [
    check_semidirect,
    check_quasi_coxeter,
    check_exact_sequence,
    check_length_oracle,
    check_double_coset_form,
    check_bruhat_index,
    check_descent,
    check_torsion_quotient,
    check_oracle_faithfulness,
]


def check_datum(datum: GroupDatum, max_len: int = 6, seed: int = 0, pairs: int = 2000) -> CheckResult:
    """Engine-against-oracle checks for a single user datum."""
    res = CheckResult(0, f"datum {datum.label}", True)
    rng = random.Random(seed)
    g = group_of(datum)
    shells = oracle.bfs_enumerate(g, max_len)
    xs = [x for s in shells for x in s.elements]
    levels = [s.level for s in shells for _ in s.elements]
    om = g.omega
    if len(om) != datum.kottwitz_group.order or set(om) != set(oracle.omega_by_alcove(g)):
        res.failures.append(("Omega differs from the alcove stabilizer",))
    closed = g.lengths(xs)
    hyper = oracle.lengths_by_hyperplanes(xs)
    for x, lev, a, b in zip(xs, levels, closed, hyper):
        word, w = g.reduced_word(x)
        if not (lev == a == b == len(word)) or w not in om or g.from_word(word, w) != x:
            res.failures.append((repr(x), lev, int(a), int(b), len(word)))
    sv = g.special_vertex_subgroup()
    for x in xs:
        t = x * ~g.from_finite(g.project_to_finite(x))
        if g.translation(t.translation, t.tor or None) != t:
            res.failures.append((repr(x), "no translation x finite factorization"))
    for _ in range(pairs if xs else 0):
        x, y = rng.choice(xs), rng.choice(xs)
        if oracle.to_affine_map(x * y) != oracle.to_affine_map(x).compose(oracle.to_affine_map(y)):
            res.failures.append((repr(x), repr(y), "not a homomorphism"))
            break
    res.counts = {"elements": len(xs), "omega": len(om), "special_vertex": len(sv)}
    res.passed = not res.failures
    return res


def run_check(fn: Callable[..., CheckResult], **kwargs) -> CheckResult:
    t = time.perf_counter()
    res = fn(**kwargs)
    res.seconds = time.perf_counter() - t
    return res


def run_all(seed: int = 0) -> list[CheckResult]:
    out = []
    for fn in CHECKS:
        kwargs = {"seed": seed} if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount] else {}
        out.append(run_check(fn, **kwargs))
    return out
