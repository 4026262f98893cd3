"""Group data: a root system plus a translation lattice with optional torsion.

The lattice has a free part embedded in coweight coordinates by
``lattice_map`` (columns are the basis vectors) and a finite torsion part.
Each simple coroot is a lattice element whose free part is the coroot
itself and whose torsion part is recorded in ``coroot_torsion``; the
simple reflections then act by ``v -> v - <v, alpha_i> alpha_i^vee``.  That
is the only W_0-action for which the translations by the coroot lattice
together with W_0 form a normal subgroup, so user-supplied torsion actions
are validated against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Sequence

from .lattice import (
    FiniteAbelianGroup,
    as_int,
    determinant,
    is_integral,
    mat_inverse,
    smith_normal_form,
)
from .rootsys import CartanType, RootSystem, RootSystemError, build_root_system, matvec

PRESETS = ("coroot", "coweight")


class DatumError(ValueError):
    """Malformed or inconsistent group datum."""


class LatticeTooSmall(DatumError):
    pass


class LatticeTooLarge(DatumError):
    pass


class ActionNotCompatible(DatumError):
    pass


_ROOT_SYSTEMS: dict[CartanType, RootSystem] = {}


def root_system(ct: CartanType | str) -> RootSystem:
    """Shared RootSystem instance per Cartan type."""
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    rs = _ROOT_SYSTEMS.get(ct)
    if rs is None:
        rs = _ROOT_SYSTEMS[ct] = build_root_system(ct)
    return rs


@dataclass(frozen=True, eq=False)
class GroupDatum:
    root_system: RootSystem
    lattice_map: tuple[tuple[int, ...], ...]
    torsion: FiniteAbelianGroup = field(default_factory=FiniteAbelianGroup)
    coroot_torsion: tuple[tuple[int, ...], ...] = ()
    name: str = ""

    @property
    def rank(self) -> int:
        return self.root_system.rank

    @property
    def lattice_rank(self) -> int:
        return len(self.lattice_map[0])

    @cached_property
    def _key(self):
        return (self.root_system.cartan_type, self.lattice_map, self.torsion, self.coroot_torsion)

    def __eq__(self, other):
        return isinstance(other, GroupDatum) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    @cached_property
    def lattice_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return mat_inverse(self.lattice_map)

    def to_lattice(self, mu: Sequence[int]) -> tuple[int, ...]:
        """Lattice coordinates of a coweight vector lying in the image."""
        lam = matvec(self.lattice_inverse, mu)
        if any(Fraction(x).denominator != 1 for x in lam):
            raise DatumError(f"{tuple(mu)} is not in the lattice")
        return tuple(int(x) for x in lam)

    def in_lattice(self, mu: Sequence) -> bool:
        return all(Fraction(x).denominator == 1 for x in matvec(self.lattice_inverse, mu))

    def to_coweight(self, lam: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.lattice_map, lam)

    def coroot_lattice_element(self, coeffs: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(coweight coords, torsion) of sum_i coeffs[i] alpha_i^vee."""
        A = self.root_system.cartan_matrix
        r = self.rank
        mu = tuple(sum(coeffs[i] * A[i][j] for i in range(r)) for j in range(r))
        tor = self.torsion.zero()
        if self.torsion.invariants:
            tor = self.torsion.reduce(
                [sum(coeffs[i] * self.coroot_torsion[i][a] for i in range(r)) for a in range(len(tor))]
            )
        return mu, tor

    @cached_property
    def theta_coroot_coeffs(self) -> tuple[int, ...]:
        """theta^vee expanded over the simple coroots."""
        rs = self.root_system
        inv = mat_inverse([list(row) for row in zip(*rs.cartan_matrix)])
        coeffs = matvec(inv, rs.theta_coroot)
        return tuple(int(c) for c in coeffs)

    @cached_property
    def kottwitz_presentation(self):
        """Smith data for Lambda / Q^vee on Z^r + torsion coordinates.

        Returns (left transform, invariant factors kept, positions kept).
        """
        r, k = self.rank, len(self.torsion.invariants)
        A = self.root_system.cartan_matrix
        # columns: simple coroots in lattice coordinates, then torsion relations
        cols = []
        for i in range(r):
            lam = self.to_lattice(A[i])
            tau = self.coroot_torsion[i] if k else ()
            cols.append(list(lam) + list(tau))
        for a, d in enumerate(self.torsion.invariants):
            cols.append([0] * r + [d * int(b == a) for b in range(k)])
        rel = [[cols[c][row] for c in range(len(cols))] for row in range(r + k)]
        snf = smith_normal_form(rel)
        diag = snf.diagonal
        keep = tuple(j for j, d in enumerate(diag) if d != 1)
        factors = tuple(diag[j] for j in keep)
        if any(d == 0 for d in factors):
            raise AssertionError("coroot lattice must have full rank in the lattice")
        return snf.left, factors, keep

    @cached_property
    def kottwitz_group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.kottwitz_presentation[1])

    def torsion_free(self) -> "GroupDatum":
        if not self.torsion.invariants:
            return self
        return GroupDatum(self.root_system, self.lattice_map, name=self.name + "/torsion" if self.name else "")

    def to_json(self) -> dict:
        lat: Any
        rs = self.root_system
        if not self.torsion.invariants and self.lattice_map == _preset_map(rs, "coweight"):
            lat = "coweight"
        elif not self.torsion.invariants and self.lattice_map == _preset_map(rs, "coroot"):
            lat = "coroot"
        else:
            lat = {"basis": [list(c) for c in zip(*self.lattice_map)]}
            if self.torsion.invariants:
                lat["torsion"] = list(self.torsion.invariants)
                lat["torsion_action"] = (
                    "trivial"
                    if not any(any(t) for t in self.coroot_torsion)
                    else [list(map(list, m)) for m in self.simple_action_matrices()]
                )
        return {"cartan_type": str(rs.cartan_type), "lattice": lat}

    def simple_action_matrices(self):
        """Full (r+k)x(r+k) integer matrices of the simple reflections on the lattice."""
        r, k = self.rank, len(self.torsion.invariants)
        rs = self.root_system
        out = []
        for i in range(r):
            # alpha_i(L e_c) for lattice basis vector c
            pair = [sum(rs.simple_roots[i][j] * self.lattice_map[j][c] for j in range(r)) for c in range(r)]
            cor_lam = self.to_lattice(rs.cartan_matrix[i])
            tau = self.coroot_torsion[i] if k else ()
            m = [[0] * (r + k) for _ in range(r + k)]
            for row in range(r):
                for c in range(r):
                    m[row][c] = int(row == c) - cor_lam[row] * pair[c]
            for a in range(k):
                for c in range(r):
                    m[r + a][c] = (-tau[a] * pair[c]) % self.torsion.invariants[a]
                m[r + a][r + a] = 1
            out.append(tuple(tuple(row) for row in m))
        return tuple(out)

    def __repr__(self):
        return f"GroupDatum({self.label})"

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        j = self.to_json()["lattice"]
        return f"{self.root_system.cartan_type}/{j if isinstance(j, str) else 'custom'}"


def _preset_map(rs: RootSystem, preset: str):
    r = rs.rank
    if preset == "coweight":
        return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    if preset == "coroot":
        # basis vectors = simple coroots = rows of the Cartan matrix
        return tuple(tuple(rs.cartan_matrix[c][j] for c in range(r)) for j in range(r))
    raise DatumError(f"unknown lattice preset {preset!r}")


def preset(cartan_type: CartanType | str, lattice: str = "coroot") -> GroupDatum:
    rs = root_system(cartan_type)
    return GroupDatum(rs, _preset_map(rs, lattice), name=f"{rs.cartan_type}/{lattice}")


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise DatumError("booleans are not lattice coordinates")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            raise DatumError(f"bad coordinate {x!r}") from None
    raise DatumError(f"bad coordinate {x!r}")


def make_datum(
    cartan_type: CartanType | str,
    basis: Sequence[Sequence],
    torsion: Sequence[int] = (),
    torsion_action: Any = "trivial",
    name: str = "",
) -> GroupDatum:
    """Build and validate a datum from basis vectors given in coweight coordinates."""
    try:
        rs = root_system(cartan_type)
    except RootSystemError as e:
        raise DatumError(str(e)) from None
    r = rs.rank
    if not isinstance(basis, (list, tuple)) or any(
        not isinstance(v, (list, tuple)) or len(v) != r for v in basis
    ):
        raise DatumError(f"basis must be a list of vectors of length {r}")
    if len(basis) != r:
        # a lattice containing Q^vee spans V', and an injective map forces rank r
        raise LatticeTooSmall(f"lattice rank {len(basis)} cannot contain the coroot lattice of rank {r}")
    cols = [[_parse_rational(x) for x in v] for v in basis]
    lmap = tuple(tuple(cols[c][j] for c in range(r)) for j in range(r))
    if determinant(lmap) == 0:
        raise DatumError("lattice basis is linearly dependent")
    if not is_integral(lmap):
        raise LatticeTooLarge("lattice is not contained in the coweight lattice P^vee")
    lmap = as_int(lmap)
    inv = mat_inverse(lmap)
    if not is_integral(tuple(matvec(inv, row) for row in rs.cartan_matrix)):
        raise LatticeTooSmall("lattice does not contain the coroot lattice Q^vee")

    try:
        tors = FiniteAbelianGroup(tuple(torsion))
    except (ValueError, TypeError) as e:
        raise DatumError(str(e)) from None
    k = len(tors.invariants)
    ctors: tuple = ()
    if k:
        ctors = tuple((0,) * k for _ in range(r))
        probe = GroupDatum(rs, lmap, tors, ctors)
        if torsion_action != "trivial":
            ctors = _coroot_torsion_from_action(probe, torsion_action)
    elif torsion_action not in ("trivial", None, []):
        raise DatumError("torsion_action given without torsion")
    return GroupDatum(rs, lmap, tors, ctors, name=name)


def _coroot_torsion_from_action(probe: GroupDatum, action) -> tuple[tuple[int, ...], ...]:
    """Recover each coroot's torsion component from the supplied reflection matrices."""
    r, k = probe.rank, len(probe.torsion.invariants)
    orders = probe.torsion.invariants
    if not isinstance(action, (list, tuple)) or len(action) != r:
        raise DatumError(f"torsion_action must list {r} matrices")
    mats = []
    for m in action:
        if (
            not isinstance(m, (list, tuple))
            or len(m) != r + k
            or any(not isinstance(row, (list, tuple)) or len(row) != r + k for row in m)
            or any(isinstance(x, bool) or not isinstance(x, int) for row in m for x in row)
        ):
            raise DatumError(f"each torsion_action matrix must be {r + k}x{r + k} integers")
        mats.append(m)
    base = probe.simple_action_matrices()
    rs = probe.root_system
    out = []
    for i, m in enumerate(mats):
        for row in range(r):
            if tuple(m[row]) != base[i][row]:
                raise ActionNotCompatible(f"free block of reflection {i + 1} disagrees with lattice_map")
        for a in range(k):
            if any((m[r + a][r + b] - int(a == b)) % orders[a] for b in range(k)):
                raise ActionNotCompatible("torsion block must be the identity")
        # torsion row a, free column c must equal -tau_a * alpha_i(L e_c)
        pair = [sum(rs.simple_roots[i][j] * probe.lattice_map[j][c] for j in range(r)) for c in range(r)]
        tau = []
        for a in range(k):
            d = orders[a]
            cands = [t for t in range(d) if all((m[r + a][c] + t * pair[c]) % d == 0 for c in range(r))]
            if not cands:
                raise ActionNotCompatible(
                    f"reflection {i + 1} does not act as a reflection on the torsion part"
                )
            # several candidates give the same action; the smallest is taken as the embedding
            tau.append(cands[0])
        out.append(tuple(tau))
    return tuple(out)


_TOP_KEYS = {"cartan_type", "lattice"}
_LATTICE_KEYS = {"basis", "torsion", "torsion_action"}


def validate_datum(raw: Any) -> GroupDatum:
    """Strictly validate a JSON-shaped datum.

    ``{"cartan_type": "C2", "lattice": "coroot" | "coweight" |
    {"basis": [[...]], "torsion": [...], "torsion_action": "trivial" | [[[...]]]}}``
    """
    if isinstance(raw, GroupDatum):
        return raw
    if not isinstance(raw, dict):
        raise DatumError("datum must be a JSON object")
    extra = set(raw) - _TOP_KEYS
    if extra:
        raise DatumError(f"unknown keys {sorted(extra)}")
    if "cartan_type" not in raw or not isinstance(raw["cartan_type"], str):
        raise DatumError("missing cartan_type string")
    ct_text = raw["cartan_type"]
    lat = raw.get("lattice", "coroot")
    try:
        if isinstance(lat, str):
            if lat not in PRESETS:
                raise DatumError(f"unknown lattice preset {lat!r}")
            return preset(ct_text, lat)
        if not isinstance(lat, dict):
            raise DatumError("lattice must be a preset name or an object")
        extra = set(lat) - _LATTICE_KEYS
        if extra:
            raise DatumError(f"unknown lattice keys {sorted(extra)}")
        if "basis" not in lat:
            raise DatumError("custom lattice needs a basis")
        torsion = lat.get("torsion", [])
        if not isinstance(torsion, list) or any(isinstance(d, bool) or not isinstance(d, int) for d in torsion):
            raise DatumError("torsion must be a list of integers")
        return make_datum(ct_text, lat["basis"], torsion, lat.get("torsion_action", "trivial"))
    except RootSystemError as e:
        raise DatumError(str(e)) from None


def load_datum(path: str | Path) -> GroupDatum:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise DatumError(f"cannot read datum {path}: {e}") from None
    return validate_datum(raw)
