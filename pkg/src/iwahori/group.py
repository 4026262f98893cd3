"""The Iwahori-Weyl group Lambda x| W_0 of a group datum.

Elements are stored in semidirect normal form ``(torsion, mu, w)``: the
torsion coordinates, the translation in coweight coordinates, and a handle
into the root system's W_0 table.  The element acts on the apartment by
``p -> mu + w(p)``.  The base alcove is ``{alpha_j > 0, theta < 1}`` and the
origin is its special vertex.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels
from .datum import DatumError, GroupDatum, validate_datum
from .lattice import FiniteAbelianGroup
from .rootsys import FiniteWeylElement, is_positive, matvec as _mv, neg, pairing, weyl_handles


class CapExceeded(RuntimeError):
    pass


class GroupMismatch(ValueError):
    pass


class AffineRoot(NamedTuple):
    """The affine function ``y -> root(y) + level``."""

    root: tuple[int, ...]
    level: int

    def __call__(self, p: Sequence) -> Fraction:
        return pairing(self.root, p) + self.level

    def is_positive(self) -> bool:
        return self.level > 0 or (self.level == 0 and is_positive(self.root))


class KottwitzClass(NamedTuple):
    """Image in Lambda / Q^vee, in invariant-factor coordinates."""

    coords: tuple[int, ...]
    group: FiniteAbelianGroup

    def is_zero(self) -> bool:
        return not any(self.coords)


class ExtAffineElement:
    __slots__ = ("group", "tor", "mu", "w", "_hash")

    def __init__(self, group: "IwahoriWeylGroup", tor: tuple, mu: tuple, w: int):
        self.group = group
        self.tor = tor
        self.mu = mu
        self.w = w
        self._hash = hash((tor, mu, w))

    @property
    def key(self) -> tuple:
        return (self.tor, self.mu, self.w)

    @property
    def translation(self) -> tuple[int, ...]:
        """Translation part in lattice coordinates."""
        return self.group.datum.to_lattice(self.mu)

    @property
    def torsion_part(self) -> tuple[int, ...]:
        return self.tor

    @property
    def finite_part(self) -> FiniteWeylElement:
        return self.group.weyl.element(self.w)

    def __eq__(self, other):
        if not isinstance(other, ExtAffineElement):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.key == other.key
            and (self.group is other.group or self.group.datum == other.group.datum)
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        return self.group.multiply(self, other)

    def __invert__(self):
        return self.group.invert(self)

    def length(self) -> int:
        return self.group.length(self)

    def __repr__(self):
        word = self.group.weyl.word(self.w)
        tor = f" tor={','.join(map(str, self.tor))}" if self.tor else ""
        return f"<t={','.join(map(str, self.translation))} w={','.join(str(i + 1) for i in word) or 'e'}{tor}>"


class IwahoriWeylGroup:
    """Group engine for one datum.  All methods are pure."""

    def __init__(self, datum: GroupDatum | dict):
        self.datum = datum = validate_datum(datum)
        self.root_system = rs = datum.root_system
        self.rank = rs.rank
        self.weyl = rs.weyl
        self._posroots = rs.positive_roots
        self._torsion = datum.torsion
        self._ntor = len(datum.torsion.invariants)
        self._twisted = self._ntor and any(any(t) for t in datum.coroot_torsion)
        self._tor_action: dict[int, tuple] = {}
        self.identity = self._make(datum.torsion.zero(), (0,) * self.rank, self.weyl.identity)
        self.generators = self._build_generators()

    def __repr__(self):
        return f"IwahoriWeylGroup({self.datum.label})"

    def _make(self, tor, mu, w) -> ExtAffineElement:
        return ExtAffineElement(self, tor, mu, w)

    def _check(self, *xs: ExtAffineElement):
        for x in xs:
            if x.group is not self and x.group.datum != self.datum:
                raise GroupMismatch("elements belong to different data")

    # -- constructors ---------------------------------------------------

    def _build_generators(self) -> tuple[ExtAffineElement, ...]:
        d = self.datum
        zero = d.torsion.zero()
        mu_theta, tor_theta = d.coroot_lattice_element(d.theta_coroot_coeffs)
        s0 = self._make(tor_theta, mu_theta, self.weyl.s_theta)
        rest = tuple(self._make(zero, (0,) * self.rank, s) for s in self.weyl.simple)
        return (s0,) + rest

    def s(self, i: int) -> ExtAffineElement:
        if not 0 <= i <= self.rank:
            raise IndexError(f"affine simple reflection index {i} out of range 0..{self.rank}")
        return self.generators[i]

    def translation(self, lam: Sequence[int], torsion: Sequence[int] | None = None) -> ExtAffineElement:
        """Translation by a lattice vector given in lattice coordinates."""
        lam = tuple(lam)
        if len(lam) != self.datum.lattice_rank:
            raise DatumError(f"translation needs {self.datum.lattice_rank} coordinates")
        if torsion is not None and len(torsion) != self._ntor:
            raise DatumError(f"torsion needs {self._ntor} coordinates")
        tor = self._torsion.reduce(torsion) if torsion is not None else self._torsion.zero()
        return self._make(tor, self.datum.to_coweight(lam), self.weyl.identity)

    def translation_by_coweight(self, mu: Sequence[int]) -> ExtAffineElement:
        mu = tuple(mu)
        self.datum.to_lattice(mu)
        return self._make(self._torsion.zero(), tuple(int(x) for x in mu), self.weyl.identity)

    def finite(self, word: Iterable[int] = ()) -> ExtAffineElement:
        """The element of the special-vertex stabilizer with the given W_0 word (1-based)."""
        w = self.weyl.identity
        for i in word:
            if not 1 <= i <= self.rank:
                raise IndexError(f"finite reflection index {i} out of range 1..{self.rank}")
            w = self.weyl.mul(w, self.weyl.simple[i - 1])
        return self._make(self._torsion.zero(), (0,) * self.rank, w)

    def element(self, lam=None, word: Iterable[int] = (), torsion=None) -> ExtAffineElement:
        """``t_lam * w`` with ``w`` the product of finite simple reflections ``word``."""
        t = self.translation(lam if lam is not None else (0,) * self.rank, torsion)
        return self.multiply(t, self.finite(word))

    def from_finite(self, w: FiniteWeylElement) -> ExtAffineElement:
        return self._make(self._torsion.zero(), (0,) * self.rank, self.weyl.index(w))

    # -- group law --------------------------------------------------------

    def _torsion_action(self, w: int):
        """(X_w) with w.(lam, t) = (F_w lam, t + X_w lam); X_w as rows over coweight coords."""
        act = self._tor_action.get(w)
        if act is None:
            d = self.datum
            k, r = self._ntor, self.rank
            # c_w(mu) = torsion part of w.mu; c_{vs}(mu) = c_v(s mu) + c_s(mu)
            rows = [[0] * r for _ in range(k)]
            for i in self.weyl.word(w):
                m = self.weyl.matrices[self.weyl.simple[i]]
                rows = [[sum(row[j] * m[j][c] for j in range(r)) for c in range(r)] for row in rows]
                # c_{s_i}(mu) = -alpha_i(mu) tau_i
                for a in range(k):
                    rows[a][i] -= d.coroot_torsion[i][a]
            act = tuple(tuple(int(x) for x in row) for row in rows)
            self._tor_action[w] = act
        return act

    def _act_torsion(self, w: int, mu, tor):
        if not self._twisted:
            return tor
        rows = self._torsion_action(w)
        extra = [sum(a * b for a, b in zip(row, mu)) for row in rows]
        return self._torsion.add(tor, extra)

    def multiply(self, x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
        self._check(x, y)
        wt = self.weyl
        wmu = wt.act(x.w, y.mu)
        mu = tuple(a + b for a, b in zip(x.mu, wmu))
        if self._ntor:
            tor = self._torsion.add(x.tor, self._act_torsion(x.w, y.mu, y.tor))
        else:
            tor = ()
        return self._make(tor, mu, wt.mul(x.w, y.w))

    def invert(self, x: ExtAffineElement) -> ExtAffineElement:
        self._check(x)
        wi = self.weyl.inv(x.w)
        wmu = self.weyl.act(wi, x.mu)
        mu = tuple(-a for a in wmu)
        tor = ()
        if self._ntor:
            moved = self._act_torsion(wi, x.mu, x.tor)
            tor = self._torsion.reduce([-a for a in moved])
        return self._make(tor, mu, wi)

    def product(self, xs: Iterable[ExtAffineElement]) -> ExtAffineElement:
        out = self.identity
        for x in xs:
            out = self.multiply(out, x)
        return out

    # -- geometry ---------------------------------------------------------

    def act_on_point(self, x: ExtAffineElement, p: Sequence) -> tuple:
        if len(p) != self.rank:
            raise DatumError(f"point has {len(p)} coordinates, expected {self.rank}")
        wp = self.weyl.act(x.w, p)
        return tuple(a + b for a, b in zip(x.mu, wp))

    def act_on_affine_root(self, x: ExtAffineElement, a: AffineRoot | tuple) -> AffineRoot:
        """``(x.a)(p) = a(x^{-1} p)``."""
        alpha, k = a
        walpha = self.weyl.act_on_root(x.w, alpha)
        return AffineRoot(walpha, k - pairing(walpha, x.mu))

    def affine_simple_roots(self) -> tuple[AffineRoot, ...]:
        rs = self.root_system
        return (AffineRoot(neg(rs.highest_root), 1),) + tuple(AffineRoot(a, 0) for a in rs.simple_roots)

    @cached_property
    def _simple_affine(self):
        return self.affine_simple_roots()

    # -- length and words -------------------------------------------------

    def length(self, x: ExtAffineElement) -> int:
        """Sum over positive roots of |<mu, a>| or |<mu, a> - 1| by the sign of w^{-1} a."""
        flags = self.weyl.neg_flags(x.w)
        mu = x.mu
        total = 0
        for a, f in zip(self._posroots, flags):
            total += abs(sum(p * q for p, q in zip(a, mu)) - f)
        return total

    def lengths(self, xs: Sequence[ExtAffineElement], *, use_numba: bool | None = None):
        """Closed-form lengths of many elements at once (int64 array)."""
        if not xs:
            return np.zeros(0, dtype=np.int64)
        mu = np.array([x.mu for x in xs], dtype=np.int64)
        flags = np.array([self.weyl.neg_flags(x.w) for x in xs], dtype=np.int64)
        return _kernels.closed_form_lengths(mu, flags, np.array(self._posroots), use_numba=use_numba)

    def is_left_descent(self, x: ExtAffineElement, i: int) -> bool:
        """Whether l(s_i x) < l(x): x^{-1} sends the i-th simple affine root negative."""
        alpha, k = self._simple_affine[i]
        # x^{-1}.(alpha, k) = (w^{-1} alpha, k + <mu, alpha>)
        level = k + sum(p * q for p, q in zip(alpha, x.mu))
        if level:
            return level < 0
        return not is_positive(self.weyl.act_on_root(self.weyl.inv(x.w), alpha))

    def is_right_descent(self, x: ExtAffineElement, i: int) -> bool:
        """Whether l(x s_i) < l(x): x sends the i-th simple affine root negative."""
        alpha, k = self._simple_affine[i]
        walpha = self.weyl.act_on_root(x.w, alpha)
        level = k - sum(p * q for p, q in zip(walpha, x.mu))
        if level:
            return level < 0
        return not is_positive(walpha)

    def left_descents(self, x: ExtAffineElement) -> list[int]:
        return [i for i in range(self.rank + 1) if self.is_left_descent(x, i)]

    def right_descents(self, x: ExtAffineElement) -> list[int]:
        return [i for i in range(self.rank + 1) if self.is_right_descent(x, i)]

    def reduced_word(self, x: ExtAffineElement) -> tuple[tuple[int, ...], ExtAffineElement]:
        """``x = s_{i1} ... s_{il} omega``, peeling the smallest left descent each step."""
        self._check(x)
        word = []
        cur = x
        n = self.rank + 1
        while True:
            for i in range(n):
                if self.is_left_descent(cur, i):
                    word.append(i)
                    cur = self.multiply(self.generators[i], cur)
                    break
            else:
                return tuple(word), cur

    def from_word(self, word: Iterable[int], omega: ExtAffineElement | None = None) -> ExtAffineElement:
        out = self.identity
        for i in word:
            out = self.multiply(out, self.s(i))
        if omega is not None:
            self._check(omega)
            if self.length(omega) != 0:
                raise ValueError("omega must have length 0")
            out = self.multiply(out, omega)
        return out

    # -- Kottwitz map and Omega --------------------------------------------

    def kottwitz_class(self, x: ExtAffineElement) -> KottwitzClass:
        d = self.datum
        left, factors, keep = d.kottwitz_presentation
        vec = list(d.to_lattice(x.mu)) + list(x.tor)
        img = _mv(left, vec)
        coords = tuple(int(img[j]) % f for j, f in zip(keep, factors))
        return KottwitzClass(coords, d.kottwitz_group)

    @cached_property
    def omega(self) -> tuple[ExtAffineElement, ...]:
        """Length-zero elements, one per Kottwitz class, sorted by class."""
        rs = self.root_system
        r = self.rank
        handles = weyl_handles(rs)
        cands = [(0,) * r] + [tuple(int(i == j) for j in range(r)) for i in rs.minuscule]
        out = {}
        for mu in cands:
            if not self.datum.in_lattice(mu):
                continue
            hits = [
                w for w in handles
                if self.length(self._make(self._torsion.zero(), mu, w)) == 0
            ]
            if len(hits) != 1:
                raise AssertionError(f"expected one length-zero element over {mu}, got {len(hits)}")
            for t in self._torsion.elements():
                base = self._make(self._torsion.zero(), mu, hits[0])
                e = self.multiply(self._make(t, (0,) * r, self.weyl.identity), base)
                out[self.kottwitz_class(e).coords] = e
        if len(out) != self.datum.kottwitz_group.order:
            raise AssertionError("Omega does not surject onto Lambda / Q^vee")
        return tuple(out[c] for c in sorted(out))

    @cached_property
    def _omega_index(self) -> dict:
        return {self.kottwitz_class(w).coords: k for k, w in enumerate(self.omega)}

    def omega_index(self, x: ExtAffineElement) -> int:
        """Position of x's Omega-component in ``omega``."""
        return self._omega_index[self.kottwitz_class(x).coords]

    def omega_of_class(self, cls: KottwitzClass | tuple) -> ExtAffineElement:
        coords = cls.coords if isinstance(cls, KottwitzClass) else tuple(cls)
        return self.omega[self._omega_index[coords]]

    # -- projections -------------------------------------------------------

    def project_to_finite(self, x: ExtAffineElement) -> FiniteWeylElement:
        return self.weyl.element(x.w)

    def special_vertex_subgroup(self) -> list[ExtAffineElement]:
        zero_t, zero_mu = self._torsion.zero(), (0,) * self.rank
        return [self._make(zero_t, zero_mu, w) for w in weyl_handles(self.root_system)]

    @cached_property
    def torsion_free_group(self) -> "IwahoriWeylGroup":
        if not self._ntor:
            return self
        return IwahoriWeylGroup(self.datum.torsion_free())

    def quotient_mod_torsion(self, x: ExtAffineElement) -> ExtAffineElement:
        g = self.torsion_free_group
        if g is self:
            return x
        return g._make((), x.mu, x.w)

    def torsion_elements(self) -> list[ExtAffineElement]:
        zero_mu = (0,) * self.rank
        return [self._make(t, zero_mu, self.weyl.identity) for t in self._torsion.elements()]

    # -- enumeration -------------------------------------------------------

    def ball(self, max_len: int, cap: int | None = None) -> list[list[ExtAffineElement]]:
        """Elements of length <= max_len as shells, each grown by left ascents."""
        shells = [list(self.omega)]
        seen = set(shells[0])
        for _ in range(max_len):
            nxt = []
            for x in shells[-1]:
                for i, s in enumerate(self.generators):
                    if self.is_left_descent(x, i):
                        continue
                    y = self.multiply(s, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if cap is not None and len(seen) > cap:
                raise CapExceeded(f"ball exceeds {cap} elements")
            shells.append(nxt)
        return shells


_GROUPS: dict[GroupDatum, IwahoriWeylGroup] = {}


def group_of(datum) -> IwahoriWeylGroup:
    datum = validate_datum(datum)
    g = _GROUPS.get(datum)
    if g is None:
        g = _GROUPS[datum] = IwahoriWeylGroup(datum)
    return g


# Function-style surface over the engine.

def multiply(x: ExtAffineElement, y: ExtAffineElement) -> ExtAffineElement:
    return x.group.multiply(x, y)


def invert(x: ExtAffineElement) -> ExtAffineElement:
    return x.group.invert(x)


def length(x: ExtAffineElement) -> int:
    return x.group.length(x)


def reduced_word(x: ExtAffineElement):
    return x.group.reduced_word(x)


def kottwitz_class(x: ExtAffineElement) -> KottwitzClass:
    return x.group.kottwitz_class(x)


def omega_group(datum) -> list[ExtAffineElement]:
    return list(group_of(datum).omega)


def act_on_point(x: ExtAffineElement, p: Sequence) -> tuple:
    return x.group.act_on_point(x, p)


def act_on_affine_root(x: ExtAffineElement, a) -> AffineRoot:
    return x.group.act_on_affine_root(x, a)


def project_to_finite(x: ExtAffineElement) -> FiniteWeylElement:
    return x.group.project_to_finite(x)


def special_vertex_subgroup(datum) -> list[ExtAffineElement]:
    return group_of(datum).special_vertex_subgroup()


def quotient_mod_torsion(x: ExtAffineElement) -> ExtAffineElement:
    return x.group.quotient_mod_torsion(x)
