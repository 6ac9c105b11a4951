"""Diagonal normal forms of semisimple automorphisms and the semisimple conjugacy test."""

from __future__ import annotations

from dataclasses import dataclass

from .classify import pseudo_eigenvalues, triangularize
from .decomposition import Automorphism
from .endo import AffineMap, PlaneEndo, TriangularMap
from .errors import NotLocallyFinite, NotSemisimple, NotTriangularizable
from .polys import UniPoly
from .scalars import Scalar


@dataclass(frozen=True)
class DiagonalForm:
    """``f = ψ ∘ (aX, bY) ∘ ψ⁻¹`` with ``ψ = conjugator``."""

    a: Scalar
    b: Scalar
    conjugator: Automorphism
    shift: TriangularMap | None = None
    chi: TriangularMap | None = None

    @property
    def diagonal(self) -> PlaneEndo:
        return TriangularMap.diagonal(self.a, self.b).to_endo()

    def recompose(self) -> PlaneEndo:
        psi = self.conjugator
        return psi.endo.compose(self.diagonal).compose(psi.inverse().endo)


def _as_automorphism(t: TriangularMap) -> Automorphism:
    return Automorphism.from_factors([t])


def diagonalize_triangular(t: TriangularMap) -> DiagonalForm:
    """Diagonalize ``(aX + p(Y), bY + c)``.

    First ``l = (X, Y + c/(b-1))`` removes ``c``; then ``χ = (X + q(Y), Y)``
    with ``q(bY) - a q(Y) = p(Y)`` removes ``p``.  The conjugator is
    ``l⁻¹ ∘ χ``.
    """
    a, b = t.a, t.b
    if b != 1:
        shift = TriangularMap(1, UniPoly([], "Y"), 1, t.c / (b - 1))
    elif t.c:
        raise NotSemisimple(f"translation {t.c} along an eigenvalue-1 direction")
    else:
        shift = TriangularMap.diagonal(1, 1)
    centred = shift.compose(t).compose(shift.inverse())
    q = []
    for k, pk in enumerate(centred.p.coeffs):
        den = b**k - a
        if not pk:
            q.append(0 * pk)
        elif not den:
            raise NotSemisimple(f"resonance a = b^{k} with nonzero Y^{k} coefficient")
        else:
            q.append(pk / den)
    chi = TriangularMap(1, UniPoly(q, "Y"), 1, 0)
    psi = _as_automorphism(shift.inverse().compose(chi))
    return DiagonalForm(a, b, psi, shift, chi)


def diagonalize(f: Automorphism) -> DiagonalForm:
    """``f = ψ ∘ (aX, bY) ∘ ψ⁻¹`` with ``deg ψ <= deg f``; raises ``NotSemisimple``."""
    try:
        phi, t = triangularize(f)
    except NotTriangularizable as exc:
        raise NotSemisimple("not locally finite") from exc
    dt = diagonalize_triangular(t)
    psi = phi.compose(dt.conjugator)
    form = DiagonalForm(dt.a, dt.b, psi, dt.shift, dt.chi)
    if psi.degree > max(f.degree, 1):
        raise AssertionError(f"conjugator degree {psi.degree} exceeds {f.degree}")
    if form.recompose() != f.endo:
        raise AssertionError("diagonal form does not recompose to the input")
    return form


def conjugacy_test_semisimple(f: Automorphism, g: Automorphism) -> Automorphism | None:
    """Conjugator ``ψ`` with ``f = ψ ∘ g ∘ ψ⁻¹``, or ``None`` when the pseudo-eigenvalues differ."""
    df, dg = diagonalize(f), diagonalize(g)
    try:
        pf, pg = pseudo_eigenvalues(f), pseudo_eigenvalues(g)
    except NotLocallyFinite as exc:  # pragma: no cover - diagonalize already rejected
        raise NotSemisimple(str(exc)) from exc
    if pf != pg:
        return None
    if (df.a, df.b) == (dg.a, dg.b):
        sigma = Automorphism.identity()
    elif (df.a, df.b) == (dg.b, dg.a):
        sigma = Automorphism.from_factors([AffineMap.swap()])
    else:
        raise AssertionError("equal trace and Jacobian but different diagonal entries")
    psi = df.conjugator.compose(sigma).compose(dg.conjugator.inverse())
    if psi.conjugate(g).endo != f.endo:
        raise AssertionError("conjugator failed verification")
    return psi
