"""Exact dimensional algebra over (length, mass, time, current).

Exponents are ``fractions.Fraction`` so equality is decidable even for the
half-integer powers of the Gaussian family. The unit parser understands a
closed vocabulary (the units the natural system is written in) and returns a
``Quantity`` whose magnitude is the product of the scale factors (``fm``,
``nm``, ``eV``).

Grammar::

    EXPR     := FACTOR ( [SEP] FACTOR | "/" FACTOR )*
    SEP      := "*" | "·" | whitespace
    FACTOR   := ATOM [ "^" SIGNED_RATIONAL | SUPERSCRIPT ]
    ATOM     := UNIT | "1" | "(" EXPR ")"

Division by a parenthesised group is rejected; ``/`` binds to the single
factor that follows it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np

from .errors import DimensionError, DomainError, UnitParseError
from .models import ConsistencyReport, TermCheck

Rational = Fraction | int | str


@dataclass(frozen=True)
class Dimension:
    """Exponents over the base units m, kg, s, A."""

    length: Fraction = field(default=Fraction(0))
    mass: Fraction = field(default=Fraction(0))
    time: Fraction = field(default=Fraction(0))
    current: Fraction = field(default=Fraction(0))

    def __post_init__(self) -> None:
        for name in ("length", "mass", "time", "current"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_exponents(cls, exponents: tuple[Rational, Rational, Rational, Rational]) -> Dimension:
        length, mass, time, current = exponents
        return cls(length, mass, time, current)

    @property
    def exponents(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.length, self.mass, self.time, self.current)

    @property
    def is_dimensionless(self) -> bool:
        return not any(self.exponents)

    def __mul__(self, other: Dimension) -> Dimension:
        return dim_mul(self, other)

    def __truediv__(self, other: Dimension) -> Dimension:
        return dim_mul(self, dim_pow(other, -1))

    def __pow__(self, p: Rational) -> Dimension:
        return dim_pow(self, p)

    def __str__(self) -> str:
        return format_dimension(self)


DIMENSIONLESS = Dimension()
LENGTH = Dimension(length=1)
MASS = Dimension(mass=1)
TIME = Dimension(time=1)
CURRENT = Dimension(current=1)


def dim_mul(a: Dimension, b: Dimension) -> Dimension:
    """Component-wise sum of exponents."""
    return Dimension.from_exponents(tuple(x + y for x, y in zip(a.exponents, b.exponents, strict=True)))


def dim_pow(a: Dimension, p: Rational) -> Dimension:
    """Scale every exponent by the rational ``p``."""
    power = Fraction(p)
    return Dimension.from_exponents(tuple(x * power for x in a.exponents))


def natural_reduce(d: Dimension) -> Dimension:
    """Eliminate current via A = J m^-2 s^-1 = kg s^-3 (natural system, beta := 1)."""
    k = d.current
    return Dimension(length=d.length, mass=d.mass + k, time=d.time - 3 * k, current=0)


_SYMBOLS = (("length", "m"), ("mass", "kg"), ("time", "s"), ("current", "A"))


def format_dimension(d: Dimension) -> str:
    """Canonical text form, e.g. ``kg m^-3 s^-2``; parses back to the same Dimension."""
    parts: list[str] = []
    for attr, symbol in _SYMBOLS:
        exponent: Fraction = getattr(d, attr)
        if exponent == 0:
            continue
        parts.append(symbol if exponent == 1 else f"{symbol}^{exponent}")
    return " ".join(parts) if parts else "1"


@dataclass(frozen=True, eq=False)
class Quantity:
    """A magnitude (scalar or numpy array) carrying a Dimension."""

    magnitude: Any
    dim: Dimension

    def _coerce(self, other: Any) -> Quantity:
        if isinstance(other, Quantity):
            return other
        return Quantity(other, DIMENSIONLESS)

    def __mul__(self, other: Any) -> Quantity:
        o = self._coerce(other)
        return Quantity(self.magnitude * o.magnitude, self.dim * o.dim)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> Quantity:
        o = self._coerce(other)
        return Quantity(self.magnitude / o.magnitude, self.dim / o.dim)

    def __rtruediv__(self, other: Any) -> Quantity:
        return self._coerce(other) / self

    def __pow__(self, p: Rational) -> Quantity:
        power = Fraction(p)
        return Quantity(self.magnitude ** float(power), self.dim**power)

    def __neg__(self) -> Quantity:
        return Quantity(-self.magnitude, self.dim)

    def __add__(self, other: Any) -> Quantity:
        """Sum of two quantities of the same Dimension; reduce both with ``natural()`` to add C and J m^-2."""
        o = self._coerce(other)
        if o.dim != self.dim:
            raise DimensionError(f"cannot add {format_dimension(self.dim)} and {format_dimension(o.dim)}")
        return Quantity(self.magnitude + o.magnitude, self.dim)

    __radd__ = __add__

    def __sub__(self, other: Any) -> Quantity:
        return self + (-self._coerce(other))

    def natural(self) -> Quantity:
        return Quantity(self.magnitude, natural_reduce(self.dim))

    def __repr__(self) -> str:
        return f"Quantity({self.magnitude!r}, '{format_dimension(self.dim)}')"


def quantity(value: Any, units: str) -> Quantity:
    """Build a Quantity from a magnitude expressed in ``units`` (scale factors applied)."""
    unit = parse_unit_expr(units)
    magnitude = np.asarray(value, dtype=float) if isinstance(value, list | tuple) else value
    return Quantity(magnitude * unit.magnitude, unit.dim)


# --- parser -----------------------------------------------------------------

_N = Dimension(length=1, mass=1, time=-2)
_J = _N * LENGTH

UNITS: dict[str, tuple[float, Dimension]] = {
    "m": (1.0, LENGTH),
    "kg": (1.0, MASS),
    "s": (1.0, TIME),
    "A": (1.0, CURRENT),
    "N": (1.0, _N),
    "J": (1.0, _J),
    "W": (1.0, _J / TIME),
    "C": (1.0, CURRENT * TIME),
    "Hz": (1.0, TIME**-1),
    "eV": (1.602176634e-19, _J),
    "fm": (1e-15, LENGTH),
    "nm": (1e-9, LENGTH),
}

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻⁺", "0123456789-+")
_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<ident>[A-Za-z]+)|(?P<int>\d+)"
    r"|(?P<sup>[⁻⁺]?[⁰¹²³⁴⁵⁶⁷⁸⁹]+)|(?P<op>[\^*·/()+\-])"
)


class _Token(NamedTuple):
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise UnitParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> _Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def error(self, message: str, token: _Token | None = None) -> UnitParseError:
        return UnitParseError(message, self.text, (token or self.current).pos)

    def parse(self) -> Quantity:
        if self.current.kind == "end":
            raise self.error("empty unit expression")
        result = self.expression()
        if self.current.kind != "end":
            raise self.error(f"unexpected {self.current.text!r}")
        return result

    def expression(self) -> Quantity:
        result = self.factor()
        while True:
            token = self.current
            if token.kind == "end" or token.text == ")":
                return result
            if token.text == "/":
                self.advance()
                if self.current.text == "(":
                    raise self.error("unsupported grammar: division by a parenthesized group")
                result = result / self.factor()
            elif token.text in {"*", "·"}:
                self.advance()
                result = result * self.factor()
            else:
                result = result * self.factor()

    def factor(self) -> Quantity:
        base = self.atom()
        if self.current.kind == "sup":
            token = self.advance()
            return base ** int(token.text.translate(_SUPERSCRIPTS))
        if self.current.text == "^":
            self.advance()
            return base ** self.exponent()
        return base

    def atom(self) -> Quantity:
        token = self.current
        if token.kind == "ident":
            self.advance()
            if token.text not in UNITS:
                raise self.error(f"unknown unit {token.text!r}", token)
            scale, dim = UNITS[token.text]
            return Quantity(scale, dim)
        if token.kind == "int":
            self.advance()
            if token.text != "1":
                raise self.error(f"numeric factor {token.text!r} is not a unit", token)
            return Quantity(1.0, DIMENSIONLESS)
        if token.text == "(":
            self.advance()
            inner = self.expression()
            if self.current.text != ")":
                raise self.error("expected ')'")
            self.advance()
            return inner
        raise self.error(f"expected a unit, got {token.text or 'end of input'!r}", token)

    def exponent(self) -> Fraction:
        parenthesized = self.current.text == "("
        if parenthesized:
            self.advance()
        sign = 1
        if self.current.text in {"+", "-"}:
            sign = -1 if self.advance().text == "-" else 1
        if self.current.kind != "int":
            raise self.error("malformed exponent")
        value = Fraction(int(self.advance().text))
        if self.current.text == "/" and self.peek().kind == "int":
            self.advance()
            denominator = int(self.advance().text)
            if denominator == 0:
                raise self.error("malformed exponent: zero denominator", self.tokens[self.index - 1])
            value /= denominator
        if parenthesized:
            if self.current.text != ")":
                raise self.error("malformed exponent: expected ')'")
            self.advance()
        return sign * value


def parse_unit_expr(text: str) -> Quantity:
    """Parse a unit expression into a Quantity (magnitude = product of scale factors)."""
    return _Parser(text).parse()


_NUMBER_PREFIX = re.compile(r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(.*)$")


def parse_length(text: str, default_unit: str = "fm") -> float:
    """Parse ``"1.4fm"`` / ``"1.4 fm"`` / ``"1.4"`` (in ``default_unit``) into metres."""
    match = _NUMBER_PREFIX.match(text)
    if match is None:
        raise DomainError(f"not a length: {text!r}")
    number, unit_text = match.groups()
    unit = parse_unit_expr(unit_text or default_unit)
    if natural_reduce(unit.dim) != LENGTH:
        raise DimensionError(f"{text!r} is not a length (got {format_dimension(unit.dim)})")
    return float(number) * unit.magnitude


def check_equation_dims(lhs: Dimension, rhs_terms: list[Dimension]) -> ConsistencyReport:
    """Compare every right-hand term with the left-hand side in natural reduction."""
    if not rhs_terms:
        raise DomainError("at least one right-hand term is required")
    target = natural_reduce(lhs)
    terms = [
        TermCheck(dimension=format_dimension(natural_reduce(term)), consistent=natural_reduce(term) == target)
        for term in rhs_terms
    ]
    return ConsistencyReport(
        lhs=format_dimension(target),
        terms=terms,
        consistent=all(t.consistent for t in terms),
    )


# --- natural system registry --------------------------------------------------


class NaturalQuantity(NamedTuple):
    name: str
    symbol: str
    units: str


NATURAL_QUANTITIES: tuple[NaturalQuantity, ...] = (
    NaturalQuantity("Charge", "C_SI", "J m^-2"),
    NaturalQuantity("Ampere", "A_SI", "J m^-2 s^-1"),
    NaturalQuantity("Current density", "J", "J m^-2 s^-1 m^-2"),
    NaturalQuantity("Electric field", "E", "N m^-3"),
    NaturalQuantity("Magnetic field", "B", "N s m^-1 m^-3"),
    NaturalQuantity("Scalar potential", "phi", "J m^-3"),
    NaturalQuantity("Dielectric constant", "epsilon", "N m^-4"),
    NaturalQuantity("Magnetic permeability", "mu", "(C m^-3)^-1 m^2 s^-2"),
)

CHARGE = natural_reduce(parse_unit_expr("C").dim)
ELECTRIC_FIELD = parse_unit_expr("N m^-3").dim
MAGNETIC_FIELD = parse_unit_expr("N s m^-4").dim
VELOCITY = parse_unit_expr("m s^-1").dim
FORCE = _N
ENERGY = _J
ENERGY_DENSITY = parse_unit_expr("J m^-3").dim
ETA = parse_unit_expr("N m^-4").dim
