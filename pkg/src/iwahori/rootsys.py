"""Finite reduced irreducible root systems in exact integer coordinates.

Roots are integer tuples over the simple-root basis.  Points of the
coweight space carry coordinates over the fundamental-coweight basis, so
``alpha(x)`` is the plain dot product of the two coordinate tuples and the
coweight lattice is the set of integer coordinate vectors.
"""

from __future__ import annotations

import re
from operator import mul
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .lattice import FiniteAbelianGroup, smith_normal_form

RootVector = tuple[int, ...]
CoweightVector = tuple  # entries are int or Fraction

_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

DEFAULT_RANK_BOUND = 8
DEFAULT_ORDER_CAP = 10**6


class RootSystemError(ValueError):
    pass


class WeylOrderTooLarge(RootSystemError):
    pass


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANKS:
            raise RootSystemError(f"unknown Cartan family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANKS[self.family](self.rank):
            raise RootSystemError(f"invalid rank {self.rank} for type {self.family}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse ``"A2"``, ``"g2"``, ``"E8"`` and the like."""
        m = re.fullmatch(r"([A-Ga-g])([0-9]+)", text)
        if m is None:
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def _dynkin(ct: CartanType) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared root lengths and Dynkin edges (Bourbaki numbering, 0-based)."""
    n, f = ct.rank, ct.family
    chain = [(i, i + 1) for i in range(n - 1)]
    if f == "A":
        return [Fraction(2)] * n, chain
    if f == "B":
        return [Fraction(2)] * (n - 1) + [Fraction(1)], chain
    if f == "C":
        return [Fraction(1)] * (n - 1) + [Fraction(2)], chain
    if f == "D":
        return [Fraction(2)] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if f == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [Fraction(2)] * n, edges
    if f == "F":
        return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)], chain
    # G2: alpha_1 short
    return [Fraction(1), Fraction(3)], chain


class RootSystem:
    """A finite root system together with its Weyl-group bookkeeping.

    Immutable after construction apart from internal memo tables for the
    finite Weyl group, which only ever grow.
    """

    def __init__(self, cartan_type: CartanType, *, order_cap: int = DEFAULT_ORDER_CAP):
        self.cartan_type = cartan_type
        self.rank = r = cartan_type.rank
        len2, edges = _dynkin(cartan_type)
        gram = [[Fraction(0)] * r for _ in range(r)]
        for i in range(r):
            gram[i][i] = len2[i]
        for i, j in edges:
            gram[i][j] = gram[j][i] = -max(len2[i], len2[j]) / 2
        self.gram = tuple(tuple(row) for row in gram)
        self.cartan_matrix = tuple(
            tuple(int(2 * gram[i][j] / gram[i][i]) for j in range(r)) for i in range(r)
        )
        self.simple_roots = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.positive_roots = self._saturate()
        self.roots = self.positive_roots + tuple(neg(a) for a in self.positive_roots)
        self._root_index = {a: k for k, a in enumerate(self.roots)}
        self.coroots = {a: self._coroot(a) for a in self.roots}
        self.highest_root = max(self.positive_roots, key=lambda a: (sum(a), a))
        self.two_rho = tuple(sum(col) for col in zip(*self.positive_roots))
        self.order_cap = order_cap
        self.weyl = WeylTable(self)

    # -- construction -------------------------------------------------

    def _simple_reflect_root(self, i: int, beta: RootVector) -> RootVector:
        # s_i(beta) = beta - <alpha_i^vee, beta> alpha_i
        c = sum(self.cartan_matrix[i][j] * beta[j] for j in range(self.rank))
        return tuple(b - c * (j == i) for j, b in enumerate(beta))

    def _saturate(self) -> tuple[RootVector, ...]:
        found = list(self.simple_roots)
        seen = set(found)
        k = 0
        while k < len(found):
            beta = found[k]
            k += 1
            for i in range(self.rank):
                gamma = self._simple_reflect_root(i, beta)
                if gamma not in seen and is_positive(gamma):
                    seen.add(gamma)
                    found.append(gamma)
        found.sort(key=lambda a: (sum(a), a))
        return tuple(found)

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        r = self.rank
        return sum(
            (a[i] * self.gram[i][j] * b[j] for i in range(r) for j in range(r) if a[i] and b[j]),
            Fraction(0),
        )

    def _coroot(self, a: RootVector) -> tuple[int, ...]:
        aa = self.inner(a, a)
        out = []
        for j in range(self.rank):
            v = 2 * self.inner(a, self.simple_roots[j]) / aa
            if v.denominator != 1:
                raise AssertionError("non-integral coroot coordinate")
            out.append(int(v))
        return tuple(out)

    # -- queries --------------------------------------------------------

    def is_root(self, a: Sequence[int]) -> bool:
        return tuple(a) in self._root_index

    def root_index(self, a: Sequence[int]) -> int:
        return self._root_index[tuple(a)]

    def coroot(self, a: Sequence[int]) -> tuple[int, ...]:
        try:
            return self.coroots[tuple(a)]
        except KeyError:
            raise RootSystemError(f"{tuple(a)} is not a root of {self.cartan_type}") from None

    @cached_property
    def theta_coroot(self) -> tuple[int, ...]:
        return self.coroots[self.highest_root]

    @cached_property
    def alcove_vertices(self) -> tuple[CoweightVector, ...]:
        """Vertices of the base alcove: the origin and omega_i^vee / c_i."""
        r = self.rank
        verts = [tuple(Fraction(0) for _ in range(r))]
        for i, c in enumerate(self.highest_root):
            verts.append(tuple(Fraction(int(i == j), c) for j in range(r)))
        return tuple(verts)

    @cached_property
    def alcove_barycenter(self) -> CoweightVector:
        verts = self.alcove_vertices
        return tuple(sum(v[j] for v in verts) / len(verts) for j in range(self.rank))

    @cached_property
    def minuscule(self) -> tuple[int, ...]:
        """Indices i with omega_i^vee minuscule (theta coefficient 1)."""
        return tuple(i for i, c in enumerate(self.highest_root) if c == 1)

    @cached_property
    def weyl_order(self) -> int:
        """|W_0| as the product of the degrees of the basic invariants."""
        f, n = self.cartan_type.family, self.rank
        degrees = {
            "A": range(2, n + 2),
            "B": range(2, 2 * n + 1, 2),
            "C": range(2, 2 * n + 1, 2),
            "D": list(range(2, 2 * n - 1, 2)) + [n],
            "E": {6: (2, 5, 6, 8, 9, 12), 7: (2, 6, 8, 10, 12, 14, 18),
                  8: (2, 8, 12, 14, 18, 20, 24, 30)}.get(n, ()),
            "F": (2, 6, 8, 12),
            "G": (2, 6),
        }[f]
        out = 1
        for d in degrees:
            out *= d
        return out

    def coroot_lattice_basis(self) -> tuple[tuple[int, ...], ...]:
        """Simple coroots in coweight coordinates (the rows of the Cartan matrix)."""
        return self.cartan_matrix

    def fundamental_group(self) -> FiniteAbelianGroup:
        """Invariant factors of P^vee / Q^vee."""
        diag = smith_normal_form(self.cartan_matrix).diagonal
        return FiniteAbelianGroup(tuple(d for d in diag if d != 1))

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"


def build_root_system(t: CartanType | str, **kwargs) -> RootSystem:
    if isinstance(t, str):
        t = CartanType.parse(t)
    return RootSystem(t, **kwargs)


def neg(a: Sequence) -> tuple:
    return tuple(-x for x in a)


def is_positive(a: Sequence) -> bool:
    """Sign of a root (or affine root direction) by its first nonzero coordinate."""
    for x in a:
        if x:
            return x > 0
    return False


def pairing(alpha: Sequence, x: Sequence):
    if len(alpha) != len(x):
        raise RootSystemError(f"rank mismatch: {len(alpha)} vs {len(x)}")
    return sum(a * b for a, b in zip(alpha, x))


def reflect(rs: RootSystem, alpha: Sequence[int], x: Sequence) -> CoweightVector:
    """``x - alpha(x) alpha^vee``."""
    cv = rs.coroot(alpha)
    c = pairing(alpha, x)
    return tuple(xi - c * vi for xi, vi in zip(x, cv))


def reflection_matrix(rs: RootSystem, alpha: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_alpha acting on coweight coordinates."""
    cv = rs.coroot(alpha)
    r = rs.rank
    return tuple(tuple(int(j == k) - cv[j] * alpha[k] for k in range(r)) for j in range(r))


def matmul(a, b):
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a)


def matvec(a, v):
    return tuple(sum(map(mul, row, v)) for row in a)


def identity_matrix(n: int):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class FiniteWeylElement:
    """An element of W_0, stored as its matrix on coweight coordinates.

    The matrix is a faithful canonical form; ``root_images`` gives the
    equivalent list of images of the simple roots.
    """

    matrix: tuple[tuple[int, ...], ...]

    def root_images(self, rs: RootSystem) -> tuple[RootVector, ...]:
        idx = rs.weyl.index(self)
        return rs.weyl.root_images(idx)

    def length(self, rs: RootSystem) -> int:
        return rs.weyl.length(rs.weyl.index(self))


class WeylTable:
    """Interning table for W_0.

    Elements get integer handles in order of first appearance.  Products,
    inverses, lengths and inversion sets are memoized per handle.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        r = rs.rank
        self.matrices: list[tuple] = []
        self._index: dict[tuple, int] = {}
        self._mul: dict[tuple[int, int], int] = {}
        self._inv: dict[int, int] = {}
        self._neg_flags: dict[int, tuple[int, ...]] = {}
        self._word: dict[int, tuple[int, ...]] = {}
        self.identity = self.intern(identity_matrix(r))
        self.simple = tuple(
            self.intern(reflection_matrix(rs, a)) for a in rs.simple_roots
        )
        self.s_theta = self.intern(reflection_matrix(rs, rs.highest_root))

    def intern(self, matrix) -> int:
        k = self._index.get(matrix)
        if k is None:
            if len(self.matrices) >= self.rs.order_cap:
                raise WeylOrderTooLarge("finite Weyl group exceeds the configured order cap")
            k = len(self.matrices)
            self.matrices.append(matrix)
            self._index[matrix] = k
        return k

    def index(self, w: FiniteWeylElement) -> int:
        return self.intern(w.matrix)

    def element(self, k: int) -> FiniteWeylElement:
        return FiniteWeylElement(self.matrices[k])

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        c = self._mul.get(key)
        if c is None:
            c = self.intern(matmul(self.matrices[a], self.matrices[b]))
            self._mul[key] = c
        return c

    def inv(self, a: int) -> int:
        c = self._inv.get(a)
        if c is None:
            # inverse of an integer matrix of finite order: power up
            prev, cur = self.identity, a
            while cur != self.identity:
                prev, cur = cur, self.mul(cur, a)
            c = prev
            self._inv[a] = c
            self._inv[c] = a
        return c

    def act(self, a: int, x: Sequence) -> tuple:
        return matvec(self.matrices[a], x)

    def act_on_root(self, a: int, alpha: Sequence) -> tuple:
        # (w alpha)(x) = alpha(w^{-1} x): the row vector alpha times matrix(w^{-1})
        m = self.matrices[self.inv(a)]
        r = self.rs.rank
        return tuple(sum(alpha[i] * m[i][j] for i in range(r)) for j in range(r))

    def root_images(self, a: int) -> tuple[RootVector, ...]:
        return tuple(self.act_on_root(a, s) for s in self.rs.simple_roots)

    def neg_flags(self, a: int) -> tuple[int, ...]:
        """1 where w^{-1} alpha < 0, over the positive roots in order."""
        f = self._neg_flags.get(a)
        if f is None:
            b = self.inv(a)
            f = tuple(int(not is_positive(self.act_on_root(b, al))) for al in self.rs.positive_roots)
            self._neg_flags[a] = f
        return f

    def length(self, a: int) -> int:
        return sum(self.neg_flags(self.inv(a)))

    def word(self, a: int) -> tuple[int, ...]:
        """Reduced word in simple reflections, smallest right descent first peeled."""
        w = self._word.get(a)
        if w is None:
            letters = []
            cur = a
            while cur != self.identity:
                for i in range(self.rs.rank):
                    # right descent: w(alpha_i) < 0
                    if not is_positive(self.act_on_root(cur, self.rs.simple_roots[i])):
                        letters.append(i)
                        cur = self.mul(cur, self.simple[i])
                        break
            w = tuple(reversed(letters))
            self._word[a] = w
        return w

    def from_word(self, word: Iterable[int]) -> int:
        cur = self.identity
        for i in word:
            cur = self.mul(cur, self.simple[i])
        return cur


def enumerate_finite_weyl(rs: RootSystem, rank_bound: int = DEFAULT_RANK_BOUND) -> list[FiniteWeylElement]:
    """All of W_0 by breadth-first closure over the simple reflections."""
    if rs.rank > rank_bound:
        raise RootSystemError(f"rank {rs.rank} exceeds enumeration bound {rank_bound}")
    if rs.weyl_order > rs.order_cap:
        raise WeylOrderTooLarge(f"|W_0| = {rs.weyl_order} exceeds the order cap {rs.order_cap}")
    wt = rs.weyl
    order = [wt.identity]
    seen = {wt.identity}
    k = 0
    while k < len(order):
        a = order[k]
        k += 1
        for s in wt.simple:
            b = wt.mul(a, s)
            if b not in seen:
                seen.add(b)
                order.append(b)
    return [wt.element(a) for a in order]


def weyl_handles(rs: RootSystem) -> list[int]:
    return [rs.weyl.index(w) for w in enumerate_finite_weyl(rs)]
