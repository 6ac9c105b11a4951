"""Text form of endomorphisms: ``"(2*X + Y^3, 3*Y)"``.

Accepted input (whitespace insignificant)::

    endo   := "(" poly "," poly ")"
    poly   := ["+" | "-"] term {("+" | "-") term}
    term   := factor {"*" factor | "/" factor | factor-after-number}
    factor := atom ["^" ["-"] nat]
    atom   := nat | "X" | "Y" | "t" | "sqrt(" ["-"] nat ")" | "(" poly ")"

A number may be written directly in front of a variable (``2X``); two
variables always need an explicit ``*``.  ``t`` is only accepted when parsing a
one-parameter family and is the only symbol allowed a negative exponent.
``sqrt(D)`` introduces an element of Q(sqrt(D)) for squarefree ``D``.

Output is canonical: terms in decreasing monomial order, reduced fractions,
explicit ``*`` and ``^``; quadratic coefficients ``a + b*sqrt(D)`` are written
as two terms and Laurent coefficients as one term per power of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnknownVariable
from .scalars import QuadExt, squarefree_split

# exponent triple (i, j, e) for X^i Y^j t^e
_Exp = tuple[int, int, int]


@dataclass(frozen=True)
class _Tok:
    kind: str  # NUM VAR SQRT OP EOF
    text: str
    pos: int


def _tokenize(text: str, variables: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("NUM", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "sqrt":
                toks.append(_Tok("SQRT", word, i))
            else:
                for k, letter in enumerate(word):
                    if letter not in variables:
                        raise UnknownVariable(f"unknown variable {letter!r}", i + k)
                    toks.append(_Tok("VAR", letter, i + k))
            i = j
        elif ch in "+-*/^(),":
            toks.append(_Tok("OP", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("EOF", "", n))
    return toks


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _const_value(p: dict):
    if not p:
        return Fraction(0)
    if set(p) == {(0, 0, 0)}:
        return p[(0, 0, 0)]
    return None


class _Parser:
    def __init__(self, text: str, variables: str):
        self.toks = _tokenize(text, variables)
        self.k = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, what: str):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"expected {what}, found {found}", t.pos)

    def expect(self, text: str):
        if self.tok.kind == "OP" and self.tok.text == text:
            self.k += 1
        else:
            self.fail(repr(text))

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    def endo(self) -> tuple[dict, dict]:
        self.expect("(")
        f1 = self.poly()
        self.expect(",")
        f2 = self.poly()
        self.expect(")")
        if self.tok.kind != "EOF":
            self.fail("end of input")
        return f1, f2

    def single(self) -> dict:
        p = self.poly()
        if self.tok.kind != "EOF":
            self.fail("end of input")
        return p

    def poly(self) -> dict:
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.tok.text == "-" else 1
            self.k += 1
        acc = {e: sign * c for e, c in self.term().items()}
        while self.at_op("+", "-"):
            sign = -1 if self.tok.text == "-" else 1
            self.k += 1
            acc = _add(acc, {e: sign * c for e, c in self.term().items()})
        return acc

    def term(self) -> dict:
        acc, was_number = self.factor()
        while True:
            if self.at_op("*"):
                self.k += 1
                f, was_number = self.factor()
                acc = _mul(acc, f)
            elif self.at_op("/"):
                self.k += 1
                pos = self.tok.pos
                f, was_number = self.factor()
                c = _const_value(f)
                if c is None or not c:
                    raise ParseError("division by a non-constant or zero", pos)
                acc = {e: v / c for e, v in acc.items()}
            elif was_number and (self.tok.kind in ("VAR", "SQRT") or self.at_op("(")):
                f, was_number = self.factor()
                acc = _mul(acc, f)
            else:
                return acc

    def factor(self) -> tuple[dict, bool]:
        t = self.tok
        base, is_var = self.atom()
        if not self.at_op("^"):
            return base, t.kind == "NUM"
        self.k += 1
        neg = False
        if self.at_op("-"):
            neg = True
            self.k += 1
        if self.tok.kind != "NUM":
            self.fail("an exponent")
        n = int(self.tok.text)
        self.k += 1
        if neg:
            if is_var != "t":
                raise ParseError("negative exponent", t.pos)
            return {(0, 0, -n): Fraction(1)}, False
        out = {(0, 0, 0): Fraction(1)}
        for _ in range(n):
            out = _mul(out, base)
        return out, False

    def atom(self) -> tuple[dict, str | None]:
        t = self.tok
        if t.kind == "NUM":
            self.k += 1
            return {(0, 0, 0): Fraction(int(t.text))}, None
        if t.kind == "VAR":
            self.k += 1
            e = {"X": (1, 0, 0), "Y": (0, 1, 0), "t": (0, 0, 1)}[t.text]
            return {e: Fraction(1)}, t.text
        if t.kind == "SQRT":
            self.k += 1
            self.expect("(")
            neg = False
            if self.at_op("-"):
                neg = True
                self.k += 1
            if self.tok.kind != "NUM":
                self.fail("an integer")
            pos = self.tok.pos
            d = int(self.tok.text) * (-1 if neg else 1)
            self.k += 1
            self.expect(")")
            k, sf = squarefree_split(d) if d else (0, 0)
            if d == 0 or k != 1 or sf == 1:
                raise ParseError("sqrt argument must be a squarefree integer other than 0, 1", pos)
            return {(0, 0, 0): QuadExt(Fraction(0), Fraction(1), d)}, None
        if self.at_op("("):
            self.k += 1
            inner = self.poly()
            self.expect(")")
            return inner, None
        self.fail("a number, variable or '('")


def _to_bipoly(raw: dict, allow_t: bool):
    from .polys import BiPoly

    if not allow_t:
        return BiPoly({(i, j): c for (i, j, _), c in raw.items()})
    from .deformation import LaurentScalar

    grouped: dict = {}
    for (i, j, e), c in raw.items():
        grouped.setdefault((i, j), {})[e] = c
    return BiPoly({m: LaurentScalar(cs) for m, cs in grouped.items()})


def parse_endo(text: str):
    """Parse ``"(f1, f2)"`` into a ``PlaneEndo``."""
    from .endo import PlaneEndo

    f1, f2 = _Parser(text, "XY").endo()
    return PlaneEndo(_to_bipoly(f1, False), _to_bipoly(f2, False))


def parse_poly(text: str):
    return _to_bipoly(_Parser(text, "XY").single(), False)


def parse_family(text: str):
    """Parse a family ``"(X + t*Y, Y)"`` with Laurent coefficients in ``t``."""
    from .deformation import FamilyEndo

    f1, f2 = _Parser(text, "XYt").endo()
    return FamilyEndo(_to_bipoly(f1, True), _to_bipoly(f2, True))


# ---------------------------------------------------------------------------
# formatting


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _mono_text(i: int, j: int, e: int = 0) -> list[str]:
    parts = []
    if e:
        parts.append("t" if e == 1 else f"t^{e}")
    if i:
        parts.append("X" if i == 1 else f"X^{i}")
    if j:
        parts.append("Y" if j == 1 else f"Y^{j}")
    return parts


def _atoms(c) -> list[tuple[Fraction, int | None, int]]:
    """Split a coefficient into (rational, sqrt-discriminant or None, t-exponent) pieces."""
    by_exp = getattr(c, "by_exponent", None)
    if by_exp is not None:
        out = []
        for e in sorted(by_exp):
            out.extend((q, d, e) for q, d, _ in _atoms(by_exp[e]))
        return out
    if isinstance(c, QuadExt):
        out = [(c.a, None, 0)] if c.a else []
        return out + [(c.b, c.d, 0)]
    return [(Fraction(c), None, 0)]


def _join(pieces: list[tuple[Fraction, list[str]]]) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (q, parts) in enumerate(pieces):
        mag = abs(q)
        body = list(parts)
        if mag != 1 or not body:
            body.insert(0, _fraction_text(mag))
        text = "*".join(body)
        if k == 0:
            out.append(("-" if q < 0 else "") + text)
        else:
            out.append((" - " if q < 0 else " + ") + text)
    return "".join(out)


def format_poly(p) -> str:
    pieces = []
    for (i, j), c in p.sorted_terms():
        for q, d, e in _atoms(c):
            parts = [f"sqrt({d})"] if d is not None else []
            pieces.append((q, parts + _mono_text(i, j, e)))
    return _join(pieces)


def format_endo(f) -> str:
    return f"({format_poly(f.f1)}, {format_poly(f.f2)})"


def format_unipoly(p) -> str:
    pieces = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mono = [] if k == 0 else [p.var if k == 1 else f"{p.var}^{k}"]
        for q, d, _ in _atoms(c):
            pieces.append((q, ([f"sqrt({d})"] if d is not None else []) + mono))
    return _join(pieces)
