"""Parabolic subgroups, double cosets, Bruhat order and diagram automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .group import ExtAffineElement, IwahoriWeylGroup
from .lattice import mat_inverse
from .rootsys import matmul, matvec

DEFAULT_PARABOLIC_CAP = 10**6


class NotFinite(ValueError):
    """The generators span an infinite subgroup."""


class InvariantViolation(AssertionError):
    """A structural theorem failed at runtime."""


class SigmaError(ValueError):
    pass


@dataclass
class ParabolicSubgroup:
    group: IwahoriWeylGroup
    J: tuple[int, ...]
    elements: list[ExtAffineElement] = field(repr=False)

    def __post_init__(self):
        self._set = frozenset(self.elements)

    def __contains__(self, x):
        return x in self._set

    def __len__(self):
        return len(self.elements)


def _normalize(group: IwahoriWeylGroup, J: Iterable[int]) -> tuple[int, ...]:
    J = tuple(sorted(set(J)))
    for j in J:
        if not 0 <= j <= group.rank:
            raise IndexError(f"index {j} outside 0..{group.rank}")
    return J


_PARABOLICS: dict = {}


def parabolic(group: IwahoriWeylGroup, J: Iterable[int], cap: int = DEFAULT_PARABOLIC_CAP) -> ParabolicSubgroup:
    """The subgroup generated by ``{s_j : j in J}``, by breadth-first closure."""
    J = _normalize(group, J)
    key = (group.datum, J, cap)
    hit = _PARABOLICS.get(key)
    if hit is not None:
        return hit
    if len(J) == group.rank + 1:
        raise NotFinite("the full affine simple system generates an infinite group")
    gens = [group.s(j) for j in J]
    elements = [group.identity]
    seen = {group.identity}
    k = 0
    while k < len(elements):
        x = elements[k]
        k += 1
        for s in gens:
            y = group.multiply(x, s)
            if y not in seen:
                if len(elements) >= cap:
                    raise NotFinite(f"closure of {J} exceeds {cap} elements")
                seen.add(y)
                elements.append(y)
    out = _PARABOLICS[key] = ParabolicSubgroup(group, J, elements)
    return out


def is_proper(group: IwahoriWeylGroup, J: Iterable[int]) -> bool:
    return len(set(J)) < group.rank + 1


def proper_subsets(group: IwahoriWeylGroup) -> list[tuple[int, ...]]:
    n = group.rank + 1
    return [
        tuple(j for j in range(n) if mask >> j & 1)
        for mask in range(2**n - 1)
    ]


# -- reductions -----------------------------------------------------------


def _left_reduce(group, x, J):
    """Strip left J-descents; returns (u, y) with x = u y and y J-left-reduced."""
    u = group.identity
    while True:
        for j in J:
            if group.is_left_descent(x, j):
                s = group.s(j)
                x = group.multiply(s, x)
                u = group.multiply(u, s)
                break
        else:
            return u, x


def _right_reduce(group, x, J):
    """Strip right J-descents; returns (y, v) with x = y v."""
    v = group.identity
    while True:
        for j in J:
            if group.is_right_descent(x, j):
                s = group.s(j)
                x = group.multiply(x, s)
                v = group.multiply(s, v)
                break
        else:
            return x, v


def min_double_coset_element(x: ExtAffineElement, J: Sequence[int], Jp: Sequence[int]) -> ExtAffineElement:
    group = x.group
    while True:
        _, x = _left_reduce(group, x, J)
        y, _ = _right_reduce(group, x, Jp)
        if y == x:
            return x
        x = y


def min_double_rep(x: ExtAffineElement, J: Iterable[int], Jp: Iterable[int]):
    """``x = w * x0 * w'`` with x0 minimal in its double coset and ``w x0`` minimal in ``w x0 W_J'``."""
    group = x.group
    J, Jp = _normalize(group, J), _normalize(group, Jp)
    x0 = min_double_coset_element(x, J, Jp)
    y, wp = _right_reduce(group, x, Jp)
    w = group.multiply(y, group.invert(x0))
    _, rest = _left_reduce(group, w, J)
    if rest != group.identity:
        raise InvariantViolation("w x0 is not in W_J x0")
    return w, x0, wp


# -- Bruhat order ----------------------------------------------------------


def bruhat_leq(x: ExtAffineElement, y: ExtAffineElement, y_word: Sequence[int] | None = None) -> bool:
    """Bruhat order: equal Omega-components and the W_a parts comparable.

    The W_a comparison scans a reduced word of y's W_a part letter by letter:
    with ``s`` the next letter, ``x`` is replaced by ``s x`` when that is
    shorter; at the end x <= y iff what remains of x is the identity.
    """
    group = x.group
    group._check(y)
    wy, om_y = group.reduced_word(y)
    if group.kottwitz_class(x) != group.kottwitz_class(y):
        return False
    if y_word is None:
        y_word = wy
    else:
        y_word = tuple(y_word)
        if len(y_word) != len(wy) or group.multiply(group.from_word(y_word), om_y) != y:
            raise ValueError("y_word is not a reduced word of y")
    z = group.multiply(x, group.invert(om_y))
    if group.length(z) > len(y_word):
        return False
    for i in y_word:
        if group.is_left_descent(z, i):
            z = group.multiply(group.s(i), z)
    return z == group.identity


# -- double coset enumeration ----------------------------------------------


@dataclass
class DoubleCosetRep:
    x0: ExtAffineElement
    left: tuple[int, ...]
    right: tuple[int, ...]
    word: tuple[int, ...]
    omega: int
    length: int
    size_in_ball: int
    full_size: int

    @property
    def truncated(self) -> bool:
        return self.full_size > self.size_in_ball

    def to_json(self) -> dict:
        return {
            "x0_word": list(self.word),
            "omega": self.omega,
            "length": self.length,
            "coset_size_in_ball": self.size_in_ball,
            "truncated": self.truncated,
        }


def full_double_coset(x0: ExtAffineElement, P: ParabolicSubgroup, Q: ParabolicSubgroup) -> set:
    group = x0.group
    return {group.multiply(group.multiply(u, x0), v) for u in P.elements for v in Q.elements}


def check_unique_minimum(x0: ExtAffineElement, coset: Iterable[ExtAffineElement]) -> None:
    group = x0.group
    m = group.length(x0)
    for z in coset:
        lz = group.length(z)
        if lz < m or (lz == m and z != x0):
            raise InvariantViolation(f"{x0} is not the unique minimum of its double coset")


def enumerate_double_cosets(
    group: IwahoriWeylGroup,
    J: Iterable[int],
    Jp: Iterable[int],
    max_len: int,
    ball: Sequence[ExtAffineElement] | None = None,
) -> list[DoubleCosetRep]:
    """One representative per double coset meeting the ball of radius max_len."""
    J, Jp = _normalize(group, J), _normalize(group, Jp)
    P, Q = parabolic(group, J), parabolic(group, Jp)
    if ball is None:
        ball = [x for sh in group.ball(max_len) for x in sh]
    counts: dict[ExtAffineElement, int] = {}
    for x in ball:
        x0 = min_double_coset_element(x, J, Jp)
        counts[x0] = counts.get(x0, 0) + 1
    reps = []
    for x0, n in counts.items():
        coset = full_double_coset(x0, P, Q)
        check_unique_minimum(x0, coset)
        word, om = group.reduced_word(x0)
        reps.append(DoubleCosetRep(x0, J, Jp, word, group.omega_index(om), len(word), n, len(coset)))
    reps.sort(key=lambda r: (r.length, r.word, r.omega))
    return reps


# -- diagram automorphisms ---------------------------------------------------


def affine_cartan_matrix(group: IwahoriWeylGroup) -> tuple[tuple[int, ...], ...]:
    """<a_i^vee, a_j> over the affine simple roots, index 0 first."""
    rs = group.root_system
    r = rs.rank
    roots = [tuple(-c for c in rs.highest_root)] + list(rs.simple_roots)
    coroots = [tuple(-c for c in rs.theta_coroot)] + [rs.cartan_matrix[i] for i in range(r)]
    return tuple(
        tuple(sum(a * b for a, b in zip(coroots[i], roots[j])) for j in range(r + 1))
        for i in range(r + 1)
    )


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A diagram automorphism fixing the affine node, with its lattice action.

    ``perm[i]`` is the image of affine simple index i.  ``lattice_matrix``
    acts on lattice coordinates followed by torsion coordinates.
    """

    group: IwahoriWeylGroup
    perm: tuple[int, ...]
    lattice_matrix: tuple[tuple[int, ...], ...]

    @property
    def coweight_matrix(self):
        r = self.group.rank
        # (P x)_{perm(i)} = x_i on coweight coordinates
        return tuple(
            tuple(int(self.perm[c + 1] - 1 == row) for c in range(r)) for row in range(r)
        )

    def stabilizes(self, J: Iterable[int]) -> bool:
        J = set(J)
        return {self.perm[j] for j in J} == J


def make_sigma(group: IwahoriWeylGroup, perm: Sequence[int], lattice_matrix=None) -> DiagramAutomorphism:
    """Validate a diagram automorphism; the lattice matrix defaults to the induced one."""
    r = group.rank
    d = group.datum
    k = len(d.torsion.invariants)
    perm = tuple(perm)
    if sorted(perm) != list(range(r + 1)):
        raise SigmaError(f"permutation must rearrange 0..{r}")
    if perm[0] != 0:
        raise SigmaError("only automorphisms fixing the affine node 0 are supported")
    A = affine_cartan_matrix(group)
    if any(A[perm[i]][perm[j]] != A[i][j] for i in range(r + 1) for j in range(r + 1)):
        raise SigmaError("permutation is not an automorphism of the affine Dynkin diagram")
    sigma = DiagramAutomorphism(group, perm, ())
    P = sigma.coweight_matrix
    L = d.lattice_map
    free = matmul(mat_inverse(L), matmul(P, L))
    if any(x.denominator != 1 for row in free for x in row):
        raise SigmaError("the lattice is not stable under the diagram symmetry")
    free = tuple(tuple(int(x) for x in row) for row in free)
    if lattice_matrix is None:
        lattice_matrix = tuple(
            tuple(free[i][j] if i < r and j < r else int(i == j) for j in range(r + k))
            for i in range(r + k)
        )
    lattice_matrix = tuple(tuple(int(x) for x in row) for row in lattice_matrix)
    if len(lattice_matrix) != r + k or any(len(row) != r + k for row in lattice_matrix):
        raise SigmaError(f"lattice matrix must be {r + k}x{r + k}")
    for i in range(r):
        if lattice_matrix[i][:r] != free[i] or any(lattice_matrix[i][r:]):
            raise SigmaError("lattice matrix does not match the permutation on the free part")
    sigma = DiagramAutomorphism(group, perm, lattice_matrix)
    _check_torsion_compat(sigma)
    return sigma


def _check_torsion_compat(sigma: DiagramAutomorphism) -> None:
    d = sigma.group.datum
    tors = d.torsion
    r, k = d.rank, len(tors.invariants)
    if not k:
        return
    M = sigma.lattice_matrix
    # torsion block well defined and bijective on the torsion group
    images = set()
    for t in tors.elements():
        img = tors.reduce([sum(M[r + a][r + b] * t[b] for b in range(k)) for a in range(k)])
        images.add(img)
    for b, db in enumerate(tors.invariants):
        gen = [int(c == b) * db for c in range(k)]
        if any(sum(M[r + a][r + c] * gen[c] for c in range(k)) % tors.invariants[a] for a in range(k)):
            raise SigmaError("torsion block is not well defined on the torsion group")
    if len(images) != tors.order:
        raise SigmaError("lattice matrix is not invertible on the torsion group")
    # equivariance: M s_i = s_{perm(i)} M on every lattice generator
    S = d.simple_action_matrices()
    mods = [None] * r + list(tors.invariants)
    for i in range(r):
        lhs = matmul(M, S[i])
        rhs = matmul(S[sigma.perm[i + 1] - 1], M)
        for row in range(r + k):
            for c in range(r + k):
                diff = lhs[row][c] - rhs[row][c]
                if (mods[row] is None and diff) or (mods[row] is not None and diff % mods[row]):
                    raise SigmaError("lattice matrix does not intertwine the reflections")


def apply_sigma(sigma: DiagramAutomorphism, x: ExtAffineElement) -> ExtAffineElement:
    group = sigma.group
    group._check(x)
    P = sigma.coweight_matrix
    wt = group.weyl
    mat = wt.matrices[x.w]
    # P w P^{-1}, with P a permutation matrix so P^{-1} = P^T
    Pt = tuple(zip(*P))
    w = wt.intern(matmul(matmul(P, mat), Pt))
    mu = matvec(P, x.mu)
    tor = x.tor
    if tor:
        r = group.rank
        k = len(tor)
        lam = group.datum.to_lattice(x.mu)
        M = sigma.lattice_matrix
        vec = list(lam) + list(tor)
        tor = group.datum.torsion.reduce(
            [sum(M[r + a][c] * vec[c] for c in range(r + k)) for a in range(k)]
        )
    return group._make(tor, mu, w)


def is_sigma_stable_coset(sigma: DiagramAutomorphism, rep: DoubleCosetRep) -> bool:
    if not (sigma.stabilizes(rep.left) and sigma.stabilizes(rep.right)):
        raise SigmaError("sigma must stabilize both parabolic index sets")
    image = apply_sigma(sigma, rep.x0)
    return min_double_coset_element(image, rep.left, rep.right) == rep.x0


@dataclass
class DescentReport:
    cosets: int
    stable_cosets: int
    fixed_minimal_reps: int
    fixed_classes: int
    bijective: bool
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            not self.counterexamples
            and self.stable_cosets == self.fixed_minimal_reps
            and self.bijective
        )

    def to_json(self) -> dict:
        return {
            "cosets": self.cosets,
            "stable_cosets": self.stable_cosets,
            "fixed_minimal_reps": self.fixed_minimal_reps,
            "fixed_classes": self.fixed_classes,
            "bijective": self.bijective,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def descent_check(
    sigma: DiagramAutomorphism,
    J: Iterable[int],
    Jp: Iterable[int],
    max_len: int,
    ball: Sequence[ExtAffineElement] | None = None,
) -> DescentReport:
    """Compare sigma-stable double cosets with double cosets of the fixed-point groups.

    Within the ball: every sigma-stable coset must have a sigma-fixed minimal
    element, and the classes of sigma-fixed elements under the fixed parts
    of the two parabolics must map bijectively onto the stable cosets.
    """
    group = sigma.group
    J, Jp = _normalize(group, J), _normalize(group, Jp)
    if not (sigma.stabilizes(J) and sigma.stabilizes(Jp)):
        raise SigmaError("sigma must stabilize both parabolic index sets")
    if ball is None:
        ball = [x for sh in group.ball(max_len) for x in sh]
    reps = enumerate_double_cosets(group, J, Jp, max_len, ball=ball)
    stable, fixed_reps, bad = [], 0, []
    for rep in reps:
        if is_sigma_stable_coset(sigma, rep):
            stable.append(rep)
            if apply_sigma(sigma, rep.x0) == rep.x0:
                fixed_reps += 1
            else:
                bad.append(rep.word)
    # fixed-point groups
    P, Q = parabolic(group, J), parabolic(group, Jp)
    Pf = [u for u in P.elements if apply_sigma(sigma, u) == u]
    Qf = [v for v in Q.elements if apply_sigma(sigma, v) == v]
    fixed = [x for x in ball if apply_sigma(sigma, x) == x]
    index = {x: n for n, x in enumerate(fixed)}
    parent = list(range(len(fixed)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for n, x in enumerate(fixed):
        for u in Pf:
            ux = group.multiply(u, x)
            for v in Qf:
                m = index.get(group.multiply(ux, v))
                if m is not None:
                    ra, rb = find(n), find(m)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, ExtAffineElement] = {}
    for n, x in enumerate(fixed):
        classes.setdefault(find(n), x)
    targets = [min_double_coset_element(x, J, Jp) for x in classes.values()]
    stable_x0 = {rep.x0 for rep in stable}
    bijective = len(set(targets)) == len(targets) and set(targets) == stable_x0
    return DescentReport(len(reps), len(stable), fixed_reps, len(classes), bijective, bad)


def sigma_from_json(group: IwahoriWeylGroup, raw) -> DiagramAutomorphism:
    if not isinstance(raw, dict) or set(raw) - {"permutation", "lattice_matrix"} or "permutation" not in raw:
        raise SigmaError('sigma must be {"permutation": [...], "lattice_matrix": [[...]]?}')
    perm = raw["permutation"]
    if not isinstance(perm, list) or any(isinstance(p, bool) or not isinstance(p, int) for p in perm):
        raise SigmaError("permutation must be a list of integers")
    return make_sigma(group, perm, raw.get("lattice_matrix"))
