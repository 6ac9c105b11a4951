"""Buchberger's algorithm for bivariate ideals under the graded lexicographic order."""

from __future__ import annotations

from .polys import BiPoly


def grlex_key(e: tuple[int, int]) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


def leading(p: BiPoly) -> tuple[tuple[int, int], object]:
    e = max(p.terms, key=grlex_key)
    return e, p.terms[e]


def _divides(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] <= b[0] and a[1] <= b[1]


def _monic(p: BiPoly) -> BiPoly:
    _, c = leading(p)
    return p.scale(1 / c)


def normal_form(p: BiPoly, basis: list[BiPoly]) -> BiPoly:
    """Fully reduced remainder of ``p`` modulo ``basis``."""
    leads = [leading(g) for g in basis]
    rem = BiPoly()
    p = BiPoly(p.terms)
    while p.terms:
        e, c = leading(p)
        for g, (ge, gc) in zip(basis, leads):
            if _divides(ge, e):
                shift = BiPoly.monomial(e[0] - ge[0], e[1] - ge[1], c / gc)
                p = p - g * shift
                break
        else:
            rem = rem + BiPoly.monomial(e[0], e[1], c)
            p = p - BiPoly.monomial(e[0], e[1], c)
    return rem


def _s_poly(f: BiPoly, g: BiPoly) -> BiPoly:
    (fe, fc), (ge, gc) = leading(f), leading(g)
    lcm = (max(fe[0], ge[0]), max(fe[1], ge[1]))
    return f * BiPoly.monomial(lcm[0] - fe[0], lcm[1] - fe[1], 1 / fc) - g * BiPoly.monomial(
        lcm[0] - ge[0], lcm[1] - ge[1], 1 / gc
    )


def groebner_basis(gens: list[BiPoly]) -> list[BiPoly]:
    """Reduced Gröbner basis (monic, sorted by leading monomial)."""
    basis = [_monic(g) for g in gens if g.terms]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop()
        ei, ej = leading(basis[i])[0], leading(basis[j])[0]
        if ei[0] * ej[0] == 0 and ei[1] * ej[1] == 0:
            continue  # coprime leading monomials
        r = normal_form(_s_poly(basis[i], basis[j]), basis)
        if r.terms:
            basis.append(_monic(r))
            k = len(basis) - 1
            pairs.extend((m, k) for m in range(k))
    # minimize, then inter-reduce
    minimal = []
    for k, g in enumerate(basis):
        e = leading(g)[0]
        dominated = any(
            _divides(leading(h)[0], e) and (leading(h)[0] != e or m < k)
            for m, h in enumerate(basis)
            if m != k
        )
        if not dominated:
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        e, c = leading(g)
        tail = normal_form(g - BiPoly.monomial(e[0], e[1], c), others)
        reduced.append(BiPoly.monomial(e[0], e[1], 1) + tail)
    return sorted(reduced, key=lambda g: grlex_key(leading(g)[0]))


def quotient_dimension(gens: list[BiPoly]) -> int | None:
    """``dim K[X,Y]/(gens)``; ``None`` when infinite."""
    basis = groebner_basis(gens)
    if not basis:
        return None
    leads = [leading(g)[0] for g in basis]
    if (0, 0) in leads:
        return 0
    ax = min((e[0] for e in leads if e[1] == 0), default=None)
    by = min((e[1] for e in leads if e[0] == 0), default=None)
    if ax is None or by is None:
        return None
    return sum(1 for i in range(ax) for j in range(by) if not any(_divides(e, (i, j)) for e in leads))


def in_ideal(p: BiPoly, gens: list[BiPoly]) -> bool:
    return not normal_form(p, groebner_basis(gens)).terms
