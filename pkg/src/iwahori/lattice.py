"""Integer lattice utilities: Smith normal form and finite abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class SmithForm:
    """``left @ matrix @ right == diag``, with ``left`` and ``right`` unimodular."""

    diag: tuple[tuple[int, ...], ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.diag[i][i] for i in range(min(len(self.diag), len(self.diag[0]) if self.diag else 0)))


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    left, right = _eye(m), _eye(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + c * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]
        for row in right:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    freeze = lambda mat: tuple(tuple(row) for row in mat)
    return SmithForm(freeze(a), freeze(left), freeze(right))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups Z/d_1 + ... + Z/d_k (each d_i >= 2)."""

    invariants: tuple[int, ...] = ()

    def __post_init__(self):
        if any(int(d) != d or d < 2 for d in self.invariants):
            raise ValueError(f"invariant factors must be integers >= 2, got {self.invariants}")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def __len__(self):
        return self.order

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariants)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(v, self.invariants))

    def add(self, u, v) -> tuple[int, ...]:
        return self.reduce([x + y for x, y in zip(u, v)])

    def elements(self) -> list[tuple[int, ...]]:
        out = [()]
        for d in self.invariants:
            out = [e + (k,) for e in out for k in range(d)]
        return out

    def __str__(self):
        if not self.invariants:
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariants)


def mat_inverse(matrix: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan over the rationals."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def is_integral(matrix) -> bool:
    return all(Fraction(x).denominator == 1 for row in matrix for x in row)


def as_int(matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


def determinant(matrix) -> Fraction:
    n = len(matrix)
    a = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det
