"""Exception hierarchy shared by every planeaut module."""

from __future__ import annotations


class PlaneAutError(Exception):
    """Base class; ``name`` is what the CLI reports."""

    @property
    def name(self) -> str:
        return type(self).__name__


class IncompatibleField(PlaneAutError):
    pass


class ZeroPolynomial(PlaneAutError):
    pass


class BadInput(PlaneAutError):
    pass


class ParseError(PlaneAutError):
    """Malformed endomorphism text; ``offset`` is the 0-based column."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariable(ParseError):
    pass


class NotAnAutomorphism(PlaneAutError):
    pass


class NotLocallyFinite(PlaneAutError):
    pass


class NotTriangularizable(PlaneAutError):
    pass


class NotSemisimple(PlaneAutError):
    pass


class NotInS(PlaneAutError):
    pass


class NegativeOrder(PlaneAutError):
    def __init__(self, monomial: tuple[int, int], order: int):
        super().__init__(f"coefficient of X^{monomial[0]}*Y^{monomial[1]} has t-order {order}")
        self.monomial = monomial
        self.order = order


class NonInvertibleFamily(PlaneAutError):
    pass


class UnsupportedExtension(PlaneAutError):
    pass


class BoundTooLarge(PlaneAutError):
    pass
