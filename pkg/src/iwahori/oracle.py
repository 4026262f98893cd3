"""Brute-force reference routines used to check the engine.

Nothing here calls the engine's length, descent or word code.  Elements are
compared through their affine-linear action on the apartment, lengths come
from scanning affine root hyperplanes, and balls come from plain
breadth-first search over the affine simple reflections.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .group import CapExceeded, ExtAffineElement, IwahoriWeylGroup, group_of
from .lattice import mat_inverse
from .rootsys import reflect

DEFAULT_BALL_CAP = 200_000


@dataclass(frozen=True)
class AffineMap:
    """``p -> linear @ p + offset`` with exact rational entries."""

    linear: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]

    def __call__(self, p: Sequence) -> tuple[Fraction, ...]:
        return tuple(
            sum((a * b for a, b in zip(row, p)), Fraction(0)) + o
            for row, o in zip(self.linear, self.offset)
        )

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self o other``."""
        lin = tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*other.linear))
            for row in self.linear
        )
        return AffineMap(lin, self(other.offset))

    def inverse(self) -> "AffineMap":
        inv = _inverse_linear(self.linear)
        off = tuple(-sum((a * b for a, b in zip(row, self.offset)), Fraction(0)) for row in inv)
        return AffineMap(inv, off)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
            (Fraction(0),) * n,
        )


@functools.lru_cache(maxsize=None)
def _inverse_linear(linear):
    return mat_inverse(linear)


def to_affine_map(x: ExtAffineElement) -> AffineMap:
    lin = x.group.weyl.matrices[x.w]
    return AffineMap(
        tuple(tuple(Fraction(v) for v in row) for row in lin),
        tuple(Fraction(v) for v in x.mu),
    )


def generator_maps(group: IwahoriWeylGroup) -> list[AffineMap]:
    """Reflections in the walls of the base alcove, from the reflection formula."""
    rs = group.root_system
    r = rs.rank
    basis = [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]
    zero = (Fraction(0),) * r
    maps = []
    # s_0: p -> p - (theta(p) - 1) theta^vee
    theta, tcv = rs.highest_root, rs.theta_coroot
    lin = [reflect(rs, theta, e) for e in basis]
    maps.append(AffineMap(tuple(zip(*lin)), tuple(Fraction(c) for c in tcv)))
    for a in rs.simple_roots:
        lin = [reflect(rs, a, e) for e in basis]
        maps.append(AffineMap(tuple(zip(*lin)), zero))
    return maps


def _alcove_scale(group: IwahoriWeylGroup):
    b = group.root_system.alcove_barycenter
    denom = math.lcm(*(x.denominator for x in b))
    return denom, tuple(int(x * denom) for x in b)


def length_by_hyperplanes(x: ExtAffineElement) -> int:
    """Number of positive affine roots sent negative by x, by direct scan.

    An affine root keeps one sign on the base alcove, so it is tested at the
    barycenter.  Levels run over ``|k| <= 1 + max |alpha(mu)|``.
    """
    group = x.group
    rs = group.root_system
    b = rs.alcove_barycenter
    xinv_b = to_affine_map(x).inverse()(b)
    bound = 1 + max((abs(sum(a * m for a, m in zip(al, x.mu))) for al in rs.positive_roots), default=0)
    count = 0
    for al in rs.roots:
        vb = sum(a * c for a, c in zip(al, b))
        vx = sum(a * c for a, c in zip(al, xinv_b))
        for k in range(-bound, bound + 1):
            if vb + k > 0 and vx + k < 0:
                count += 1
    return count


def lengths_by_hyperplanes(xs: Sequence[ExtAffineElement], *, use_numba: bool | None = None) -> np.ndarray:
    """Batch version of ``length_by_hyperplanes`` on the integer-scaled kernel."""
    if not xs:
        return np.zeros(0, dtype=np.int64)
    group = xs[0].group
    rs = group.root_system
    denom, base = _alcove_scale(group)
    b = rs.alcove_barycenter
    pts = []
    bounds = []
    for x in xs:
        q = to_affine_map(x).inverse()(b)
        pts.append([int(v * denom) for v in q])
        bounds.append(1 + max(abs(sum(a * m for a, m in zip(al, x.mu))) for al in rs.positive_roots))
    return _kernels.hyperplane_counts(
        np.array(pts), np.array(base), denom, np.array(rs.roots), np.array(bounds), use_numba=use_numba
    )


def omega_by_alcove(group: IwahoriWeylGroup) -> list[ExtAffineElement]:
    """Elements mapping the base alcove onto itself, found by vertex matching."""
    rs = group.root_system
    verts = set(rs.alcove_vertices)
    out = []
    # any such element sends the origin to a vertex that is a lattice point
    cands = [v for v in rs.alcove_vertices if all(c.denominator == 1 for c in v)]
    for mu in cands:
        mu = tuple(int(c) for c in mu)
        if not group.datum.in_lattice(mu):
            continue
        for h in _finite_handles(group):
            for t in group.datum.torsion.elements():
                x = group._make(t, mu, h)
                f = to_affine_map(x)
                if {f(v) for v in verts} == verts:
                    out.append(x)
    return out


def _finite_handles(group: IwahoriWeylGroup) -> list[int]:
    wt = group.weyl
    seen = [wt.identity]
    known = {wt.identity}
    k = 0
    while k < len(seen):
        for s in wt.simple:
            c = wt.mul(seen[k], s)
            if c not in known:
                known.add(c)
                seen.append(c)
        k += 1
    return seen


@dataclass
class Shell:
    level: int
    elements: list[ExtAffineElement]


def iter_shells(datum, cap: int = DEFAULT_BALL_CAP) -> Iterator[Shell]:
    """Shells of the word-length ball, seeded by the alcove stabilizer, without end."""
    group = datum if isinstance(datum, IwahoriWeylGroup) else group_of(datum)
    shell = Shell(0, omega_by_alcove(group))
    seen = set(shell.elements)
    gens = [group.s(i) for i in range(group.rank + 1)]
    while True:
        yield shell
        nxt = []
        for x in shell.elements:
            for s in gens:
                y = s * x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise CapExceeded(f"ball exceeds {cap} elements")
        shell = Shell(shell.level + 1, nxt)


def bfs_enumerate(datum, max_len: int, cap: int = DEFAULT_BALL_CAP) -> list[Shell]:
    return list(itertools.islice(iter_shells(datum, cap), max_len + 1))


def ball_elements(datum, max_len: int) -> list[ExtAffineElement]:
    return [x for sh in bfs_enumerate(datum, max_len) for x in sh.elements]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass
class Partition:
    classes: list[list[ExtAffineElement]]
    truncated: list[bool]


def double_coset_partition(J: Iterable[int], Jp: Iterable[int], ball: Sequence[ExtAffineElement]) -> Partition:
    """Connected components of the ball under s_j * x (j in J) and x * s_j (j in J')."""
    ball = list(ball)
    if not ball:
        return Partition([], [])
    group = ball[0].group
    index = {x: k for k, x in enumerate(ball)}
    uf = UnionFind(len(ball))
    leaks = [False] * len(ball)
    left = [group.s(j) for j in J]
    right = [group.s(j) for j in Jp]
    for k, x in enumerate(ball):
        for y in [s * x for s in left] + [x * s for s in right]:
            m = index.get(y)
            if m is None:
                leaks[k] = True
            else:
                uf.union(k, m)
    groups: dict[int, list[int]] = {}
    for k in range(len(ball)):
        groups.setdefault(uf.find(k), []).append(k)
    classes, trunc = [], []
    for root in sorted(groups):
        members = groups[root]
        classes.append([ball[k] for k in members])
        trunc.append(any(leaks[k] for k in members))
    return Partition(classes, trunc)


def subgroup_closure(group: IwahoriWeylGroup, J: Iterable[int], cap: int = 10**5) -> set[ExtAffineElement]:
    gens = [group.s(j) for j in J]
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise CapExceeded("subgroup closure exceeds cap")
        frontier = nxt
    return seen


def full_double_coset(x: ExtAffineElement, WJ, WJp) -> set[ExtAffineElement]:
    return {u * x * v for u in WJ for v in WJp}


def bruhat_leq_subwords(x: ExtAffineElement, y: ExtAffineElement, y_word: Sequence[int], omega: ExtAffineElement) -> bool:
    """Subword criterion by exhaustive enumeration: x <= y = s_{y_word} * omega."""
    group = x.group
    xa = x * ~omega
    gens = [group.s(i) for i in range(group.rank + 1)]
    for mask in itertools.product((0, 1), repeat=len(y_word)):
        z = group.identity
        for keep, i in zip(mask, y_word):
            if keep:
                z = z * gens[i]
        if z == xa:
            return True
    return False


def all_reduced_words(y: ExtAffineElement, length: int) -> list[tuple[int, ...]]:
    """Every word of the given length multiplying to y's W_a part (y = word * omega).

    Exhaustive over (rank+1)^length candidate words, pruned by prefix
    reachability through the affine-map representation.
    """
    group = y.group
    gens = [group.s(i) for i in range(group.rank + 1)]
    out = []

    def rec(prefix, cur):
        if len(prefix) == length:
            rest = ~cur * y
            if _is_length_zero_by_alcove(rest):
                out.append(tuple(prefix))
            return
        for i, s in enumerate(gens):
            if prefix and prefix[-1] == i:
                continue
            rec(prefix + [i], cur * s)

    rec([], group.identity)
    return out


def _is_length_zero_by_alcove(x: ExtAffineElement) -> bool:
    verts = set(x.group.root_system.alcove_vertices)
    f = to_affine_map(x)
    return {f(v) for v in verts} == verts
