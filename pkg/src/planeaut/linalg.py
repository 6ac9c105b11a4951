"""Exact dense linear algebra over a field (Fractions or quadratic scalars)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list]) -> int:
    return len(rref(rows)[1])


def solve(a: list[list], b: Sequence) -> list | None:
    """One solution of ``a x = b`` (free variables set to 0) or ``None``."""
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


class KrylovEliminator:
    """Incremental elimination that detects the first linear dependence.

    Each added vector is reduced against the stored echelon rows while a
    parallel combination vector records how it was formed from the inputs.
    """

    def __init__(self):
        self.rows: list[tuple[int, list, list]] = []  # (pivot, row, combination)
        self.count = 0

    def add(self, vec: list) -> list | None:
        """Add ``vec``; return the coefficients ``c`` with ``vec = sum c_k v_k`` if dependent."""
        k = self.count
        self.count += 1
        v = list(vec)
        comb: list = [Fraction(0)] * k + [Fraction(1)]
        for piv, row, rc in self.rows:
            f = v[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
                comb = [a - f * b for a, b in zip(comb, rc + [Fraction(0)] * (len(comb) - len(rc)))]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            # 0 = v_k - sum; comb expresses the zero vector
            return [-c for c in comb[:-1]]
        inv = 1 / v[piv]
        self.rows.append((piv, [x * inv for x in v], [c * inv for c in comb]))
        return None
