"""Degree-bounded ideal membership certificates and the Hermann bound."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .classify import fixed_locus
from .decomposition import Automorphism
from .errors import BoundTooLarge, NotInS
from .groebner import in_ideal
from .linalg import solve
from .polys import BiPoly

DEFAULT_MAX_UNKNOWNS = 10_000


def hermann_bound(n: int, d: int, s: int) -> int:
    """``d + (s d)^(2^n)``: multiplier degree bound for ``s`` generators of degree ``<= d`` in ``n`` variables."""
    return d + (s * d) ** (2**n)


def max_unknowns() -> int:
    return int(os.environ.get("PLANEAUT_MAX_UNKNOWNS", DEFAULT_MAX_UNKNOWNS))


@dataclass(frozen=True)
class MembershipCertificate:
    target: BiPoly
    generators: list[BiPoly]
    multipliers: list[BiPoly]
    bound: int

    def expand(self) -> BiPoly:
        acc = BiPoly()
        for lam, g in zip(self.multipliers, self.generators):
            acc = acc + lam * g
        return acc

    def verify(self) -> bool:
        return self.expand() == self.target and all(lam.degree <= self.bound for lam in self.multipliers)

    @property
    def degree(self) -> int:
        return max((lam.degree for lam in self.multipliers if lam), default=0)


def _monomials(D: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(D + 1) for b in range(D + 1 - a)]


def _solve_degree(p: BiPoly, gens: list[BiPoly], D: int) -> list[BiPoly] | None:
    monos = _monomials(D)
    columns = []
    for g in gens:
        for a, b in monos:
            columns.append(g * BiPoly.monomial(a, b))
    rows_index = sorted({e for col in columns for e in col.terms} | set(p.terms))
    matrix = [[col.coeff(*e) for col in columns] for e in rows_index]
    rhs = [p.coeff(*e) for e in rows_index]
    x = solve(matrix, rhs)
    if x is None:
        return None
    k = len(monos)
    return [BiPoly({m: x[n * k + i] for i, m in enumerate(monos)}) for n in range(len(gens))]


def ideal_membership_bounded(p: BiPoly, gens: list[BiPoly], K: int, limit: int | None = None) -> MembershipCertificate | None:
    """Multipliers ``λ_i`` with ``p = sum λ_i g_i`` and ``deg λ_i <= K``, or ``None``.

    Membership is settled first by a Gröbner normal form; the multipliers are
    then found by solving the exact linear system at degrees ``D = 0, 1, ...``
    and stopping at the first solvable one.
    """
    gens = list(gens)
    if not p:
        return MembershipCertificate(p, gens, [BiPoly() for _ in gens], K)
    if not any(gens) or not in_ideal(p, [g for g in gens if g]):
        return None
    cap = max_unknowns() if limit is None else limit
    start = max(0, p.degree - max(g.degree for g in gens if g))
    for D in range(min(start, K + 1), K + 1):
        unknowns = len(gens) * (D + 1) * (D + 2) // 2
        if unknowns > cap:
            raise BoundTooLarge(f"{unknowns} unknowns at multiplier degree {D} (limit {cap})")
        lams = _solve_degree(p, gens, D)
        if lams is not None:
            cert = MembershipCertificate(p, gens, lams, K)
            if not cert.verify():
                raise AssertionError("membership certificate failed to re-expand")
            return cert
    return None


def fixed_point_generators(f: Automorphism) -> list[BiPoly]:
    return [f.endo.f1 - BiPoly.X(), f.endo.f2 - BiPoly.Y()]


def express_fixed_point(f: Automorphism) -> tuple[MembershipCertificate, MembershipCertificate]:
    """Certificates for ``X - α`` and ``Y - β`` in ``(f1 - X, f2 - Y)``, ``(α, β)`` the unique fixed point."""
    loc = fixed_locus(f)
    if loc.kind != "point":
        raise NotInS(f"fixed locus is {loc.kind}, not a single simple point")
    K = hermann_bound(2, f.degree, 2)
    gens = fixed_point_generators(f)
    out = []
    for target in (BiPoly.X() - loc.point.x, BiPoly.Y() - loc.point.y):
        cert = ideal_membership_bounded(target, gens, K)
        if cert is None:
            raise AssertionError("fixed point coordinate not in the fixed-point ideal")
        out.append(cert)
    return out[0], out[1]
