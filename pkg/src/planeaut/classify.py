"""Invariants of plane automorphisms: local finiteness, pseudo-eigenvalues, trace,
minimal polynomial, fixed locus, semisimplicity and the closedness verdict."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .decomposition import Automorphism, cyclic_reduce
from .endo import AffineMap, PlaneEndo, Point, TriangularMap, derivative_at
from .errors import NotLocallyFinite, NotTriangularizable, UnsupportedExtension
from .groebner import quotient_dimension
from .linalg import KrylovEliminator, rank
from .polys import BiPoly, UniPoly, is_squarefree, quadratic_roots, squarefree_part
from .scalars import QuadExt, Scalar, is_rational, scalar_key, sqrt_rational


def degree_on_line(f: PlaneEndo, n: int) -> int:
    """Degree in ``s`` of ``f^n(s + 2, 3s + 5)``, a lower bound for ``deg f^n``."""
    u, v = UniPoly([2, 1], "s"), UniPoly([5, 3], "s")
    for _ in range(n):
        u, v = f.f1.evaluate(u, v), f.f2.evaluate(u, v)
    return max(u.degree, v.degree)


@lru_cache(maxsize=1024)
def is_lf(f: Automorphism) -> bool:
    """Locally finite iff ``deg f∘f <= deg f``.

    The restriction to a line gives a cheap lower bound that already rejects
    most maps; otherwise the full composite is formed.
    """
    if degree_on_line(f.endo, 2) > f.degree:
        return False
    return f.endo.compose(f.endo).degree <= f.degree


def lf_by_iterates(f: Automorphism, n: int = 4) -> bool:
    """``deg f^k <= deg f`` for ``k = 2..n``, composing iterates explicitly."""
    d = f.degree
    it = f.endo
    for k in range(2, n + 1):
        if degree_on_line(f.endo, k) > d:
            return False
        it = f.endo.compose(it)
        if it.degree > d:
            return False
    return True


def lf_by_reduction(f: Automorphism) -> bool:
    """Cyclic reduction leaves at most one factor."""
    return len(cyclic_reduce(f).reduced) <= 1


# ---------------------------------------------------------------------------
# triangularization


@dataclass(frozen=True)
class Triangularization:
    phi: Automorphism
    t: TriangularMap

    def __iter__(self):
        return iter((self.phi, self.t))


def _eigen_basis(g: AffineMap) -> AffineMap:
    """Linear ``P`` with ``P⁻¹ g P`` upper triangular (first column an eigenvector)."""
    (m00, m01), (m10, m11) = g.matrix
    r1, r2 = quadratic_roots(UniPoly([m00 * m11 - m01 * m10, -(m00 + m11), 1]))
    lam = r1 if is_rational(r1) or not is_rational(r2) else r2
    return AffineMap(((lam - m11, 1), (m10, 0)))


@lru_cache(maxsize=512)
def triangularize(f: Automorphism) -> Triangularization:
    """``f = φ ∘ t ∘ φ⁻¹`` with ``t`` triangular and ``deg f = deg t (deg φ)²``."""
    conj, reduced = cyclic_reduce(f)
    if len(reduced) >= 2:
        raise NotTriangularizable(f"cyclically reduced word {reduced.kinds()} of degree {reduced.degree}")
    if len(reduced) == 0:
        return Triangularization(conj, TriangularMap.diagonal(1, 1))
    g = reduced.factors[0]
    if isinstance(g, TriangularMap):
        return Triangularization(conj, g)
    if g.is_triangular():
        return Triangularization(conj, g.to_triangular())
    if not all(is_rational(c) for row in g.matrix for c in row):
        raise UnsupportedExtension("eigen-triangularization over a quadratic field")
    p = _eigen_basis(g)
    t = p.inverse().compose(g).compose(p).to_triangular()
    phi = conj.compose(Automorphism.from_factors([p]))
    return Triangularization(phi, t)


# ---------------------------------------------------------------------------
# fixed locus


@dataclass(frozen=True)
class FixedLocus:
    """Fixed-point set.

    ``kind`` is one of ``empty``, ``point`` (unique point of multiplicity 1),
    ``lines`` (``count`` disjoint curves isomorphic to the affine line, the
    zero set of ``equation``), ``scheme`` (finite scheme of ``length``) or
    ``plane`` (the identity).
    """

    kind: str
    point: Point | None = None
    count: int | None = None
    equation: BiPoly | None = None
    length: int | None = None


def _triangular_fixed_locus(t: TriangularMap) -> FixedLocus:
    a, p, b, c = t.a, t.p, t.b, t.c
    X = BiPoly.X()
    if b != 1:
        y0 = c / (1 - b)
        if a != 1:
            return FixedLocus("point", point=Point(p(y0) / (1 - a), y0))
        if p(y0) == 0:
            return FixedLocus("lines", count=1, equation=BiPoly.Y() - y0)
        return FixedLocus("empty")
    if c != 0:
        return FixedLocus("empty")
    if a != 1:
        return FixedLocus("lines", count=1, equation=X.scale(a - 1) + BiPoly.from_unipoly(p, "Y"))
    if not p:
        return FixedLocus("plane")
    sf = squarefree_part(p)
    if sf.degree == 0:
        return FixedLocus("empty")
    return FixedLocus("lines", count=sf.degree, equation=BiPoly.from_unipoly(sf, "Y"))


def fixed_point_ideal(f: PlaneEndo) -> list[BiPoly]:
    return [f.f1 - BiPoly.X(), f.f2 - BiPoly.Y()]


@lru_cache(maxsize=512)
def fixed_locus(f: Automorphism, verify_scheme: bool = False) -> FixedLocus:
    """Fixed locus; LF maps go through the triangular conjugate, others report the scheme length.

    With ``verify_scheme`` the finite-scheme length is recomputed from a
    Gröbner basis of ``(f1 - X, f2 - Y)`` and must agree.
    """
    if not is_lf(f):
        _, reduced = cyclic_reduce(f)
        length = reduced.degree
        if verify_scheme:
            q = quotient_dimension(fixed_point_ideal(f.endo))
            if q != length:
                raise AssertionError(f"fixed scheme length {q} != reduced degree {length}")
        return FixedLocus("scheme", length=length)
    phi, t = triangularize(f)
    loc = _triangular_fixed_locus(t)
    if loc.kind == "point":
        return FixedLocus("point", point=phi.endo(loc.point))
    if loc.kind == "lines":
        inv = phi.inverse().endo
        return FixedLocus("lines", count=loc.count, equation=loc.equation.compose(inv.f1, inv.f2))
    return loc


def in_S(f: Automorphism) -> bool:
    return fixed_locus(f).kind == "point"


# ---------------------------------------------------------------------------
# pseudo-eigenvalues


@dataclass(frozen=True)
class PseudoEigenPair:
    """Unordered pair ``{a, b}``: the roots of ``T² - trace*T + jac``."""

    trace: Scalar
    jac: Scalar
    roots: tuple[Scalar, Scalar]

    def __eq__(self, other):
        if not isinstance(other, PseudoEigenPair):
            return NotImplemented
        return self.trace == other.trace and self.jac == other.jac

    def __hash__(self):
        return hash((self.trace, self.jac))

    def as_set(self) -> frozenset:
        return frozenset(self.roots)

    def sorted_roots(self) -> list[Scalar]:
        return sorted(self.roots, key=scalar_key)

    @property
    def characteristic(self) -> UniPoly:
        return UniPoly([self.jac, -self.trace, 1])


def roots_of_char(trace, det) -> tuple[Scalar, Scalar]:
    """Roots of ``T² - trace*T + det`` for rational data, or a double root in any field."""
    if is_rational(trace) and is_rational(det):
        return quadratic_roots(UniPoly([det, -trace, 1]))
    disc = trace * trace - 4 * det
    if disc == 0:
        return trace / 2, trace / 2
    if is_rational(disc):
        s = sqrt_rational(disc)
        if is_rational(s):
            return (trace + s) / 2, (trace - s) / 2
    raise UnsupportedExtension("eigenvalues outside the current quadratic field")


def make_pair(trace, jac) -> PseudoEigenPair:
    return PseudoEigenPair(trace, jac, roots_of_char(trace, jac))


def pseudo_eigenvalues(f: Automorphism) -> PseudoEigenPair:
    if not is_lf(f):
        raise NotLocallyFinite("pseudo-eigenvalues need a locally finite automorphism")
    loc = fixed_locus(f)
    jac = f.jacobian
    if loc.kind == "point":
        (m00, m01), (m10, m11) = derivative_at(f.endo, loc.point)
        trace, det = m00 + m11, m00 * m11 - m01 * m10
        return PseudoEigenPair(trace, det, roots_of_char(trace, det))
    return PseudoEigenPair(1 + jac, jac, (Fraction(1), jac))


def trace(f: Automorphism) -> Scalar:
    return pseudo_eigenvalues(f).trace


# ---------------------------------------------------------------------------
# minimal polynomial


def unisolvent_grid(m: int) -> list[Point]:
    """Points ``(i, j)``, ``i + j <= m``: a polynomial of degree ``<= m`` is fixed by its values there."""
    return [Point(Fraction(i), Fraction(j)) for i in range(m + 1) for j in range(m + 1 - i)]


@lru_cache(maxsize=512)
def minimal_polynomial(f: Automorphism) -> UniPoly:
    """Monic generator of ``{p : sum p_k f^k = 0}``.

    Every iterate of a locally finite ``f`` has degree ``<= deg f``, so the
    iterates are determined by their values on a unisolvent grid; the first
    linear dependence among the orbit vectors ``(f^k(ξ))_ξ`` is the minimal
    polynomial.
    """
    if not is_lf(f):
        raise NotLocallyFinite("minimal polynomial of a non locally finite automorphism")
    grid = unisolvent_grid(max(f.degree, 1))
    points = list(grid)
    elim = KrylovEliminator()
    bound = 2 * len(grid) + 1
    for k in range(bound + 1):
        vec = [c for p in points for c in (p.x, p.y)]
        rel = elim.add(vec)
        if rel is not None:
            return UniPoly([-c for c in rel] + [1])
        points = [f.endo(p) for p in points]
    raise AssertionError("no linear dependence among iterates")


def iterates(f: Automorphism, n: int) -> list[PlaneEndo]:
    """``f^0, ..., f^n`` computed as ``φ ∘ t^k ∘ φ⁻¹`` from the triangular form."""
    phi, t = triangularize(f)
    inv = phi.inverse().endo
    out = []
    tk = TriangularMap.diagonal(1, 1)
    for _ in range(n + 1):
        inner = tk.to_endo().compose(inv)
        out.append(phi.endo.compose(inner))
        tk = t.compose(tk)
    return out


def apply_polynomial(p: UniPoly, its: list[PlaneEndo]) -> PlaneEndo:
    acc = PlaneEndo(BiPoly(), BiPoly())
    for c, g in zip(p.coeffs, its):
        if c:
            acc = acc + g.scale(c)
    return acc


def _coefficient_vectors(its: list[PlaneEndo]) -> list[list]:
    keys = sorted({(k, e) for g in its for k, comp in enumerate((g.f1, g.f2)) for e in comp.terms})
    return [[(g.f1 if k == 0 else g.f2).coeff(*e) for k, e in keys] for g in its]


def verify_minimal_polynomial(f: Automorphism, mu: UniPoly | None = None) -> bool:
    """Symbolic check: ``mu(f) = 0`` and ``f^0 .. f^(deg mu - 1)`` are linearly independent."""
    mu = mu or minimal_polynomial(f)
    n = mu.degree
    its = iterates(f, n)
    if not apply_polynomial(mu, its).is_zero():
        return False
    return rank(_coefficient_vectors(its[:n])) == n


def is_semisimple(f: Automorphism) -> bool:
    return is_lf(f) and is_squarefree(minimal_polynomial(f))


def is_unipotent(f: Automorphism) -> bool:
    if not is_lf(f):
        return False
    mu = minimal_polynomial(f)
    return mu == UniPoly([-1, 1]) ** mu.degree


# ---------------------------------------------------------------------------
# spectra


def omega_annihilator(pseudo: PseudoEigenPair, m: int) -> UniPoly:
    """``prod (T - ω)`` over the distinct ``ω = a^k b^l``, ``k + l <= m``."""
    a, b = pseudo.roots
    omega = {a**k * b**l for k in range(m + 1) for l in range(m + 1 - k)}
    return UniPoly.from_roots(sorted(omega, key=scalar_key))


@dataclass(frozen=True)
class PullbackSpectrum:
    basis: list[tuple[int, int]]
    matrix: list[list[Scalar]]
    diagonal: list[Scalar]


def pullback_matrix(t: TriangularMap, s: int) -> PullbackSpectrum:
    """Matrix of ``r ↦ r∘t`` on ``V_s = span{X^k Y^l : d k + l <= s}``, ``d = max(1, deg p)``."""
    d = t.degree
    basis = sorted((k, l) for k in range(s // d + 1) for l in range(s - d * k + 1))
    index = {e: n for n, e in enumerate(basis)}
    te = t.to_endo()
    cols = []
    for k, l in basis:
        image = (te.f1**k) * (te.f2**l)
        col = [Fraction(0)] * len(basis)
        for e, c in image.terms.items():
            if e not in index:
                raise AssertionError(f"V_{s} is not stable: X^{e[0]}Y^{e[1]}")
            col[index[e]] = c
        cols.append(col)
    matrix = [[cols[c][r] for c in range(len(basis))] for r in range(len(basis))]
    for r in range(len(basis)):
        for c in range(r):
            if matrix[r][c]:
                raise AssertionError("pullback matrix is not upper triangular")
    return PullbackSpectrum(basis, matrix, [matrix[n][n] for n in range(len(basis))])


def pullback_spectrum(t: TriangularMap, s: int) -> list[Scalar]:
    return pullback_matrix(t, s).diagonal


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class ClassificationReport:
    endo: PlaneEndo
    degree: int
    is_automorphism: bool
    is_lf: bool
    pseudo: PseudoEigenPair | None
    minimal_polynomial: UniPoly | None
    is_unipotent: bool
    is_semisimple: bool
    in_S: bool
    fixed_locus: FixedLocus
    dynamical_degree: Fraction
    conjugacy_class_closed: bool

    @property
    def is_triangularizable(self) -> bool:
        return self.is_lf

    @property
    def trace(self):
        return self.pseudo.trace if self.pseudo else None

    @property
    def jacobian(self):
        return self.pseudo.jac if self.pseudo else None


def full_report(f: PlaneEndo | Automorphism, verify_scheme: bool = True) -> ClassificationReport:
    aut = f if isinstance(f, Automorphism) else Automorphism.from_endo(f)
    lf = is_lf(aut)
    loc = fixed_locus(aut, verify_scheme=verify_scheme)
    if lf:
        pseudo = pseudo_eigenvalues(aut)
        mu = minimal_polynomial(aut)
        semisimple = is_squarefree(mu)
        unipotent = mu == UniPoly([-1, 1]) ** mu.degree
        dd = Fraction(1)
    else:
        pseudo = mu = None
        semisimple = unipotent = False
        dd = Fraction(loc.length)
    return ClassificationReport(
        endo=aut.endo,
        degree=aut.degree,
        is_automorphism=True,
        is_lf=lf,
        pseudo=pseudo,
        minimal_polynomial=mu,
        is_unipotent=unipotent,
        is_semisimple=semisimple,
        in_S=loc.kind == "point",
        fixed_locus=loc,
        dynamical_degree=dd,
        conjugacy_class_closed=semisimple,
    )
