"""
Exact number module for sphex.

Character values live in cyclotomic fields. A `CycloNum` is an element of
Q(zeta_N) written in the power basis {zeta^0, ..., zeta^(phi(N)-1)}: every
exponent is reduced modulo the N-th cyclotomic polynomial, so two numbers with
the same conductor are equal exactly when their coefficients are. Numbers of
different conductors are compared and combined after lifting both to the
least common multiple.

Rationals are `fractions.Fraction`. Arithmetic and equality are exact; only
`CycloNum.embeddings` evaluates numerically, for size bounds.

Text encoding (used by character table files):

    3            an integer
    q(1/2)       a rational
    z(12,1)      zeta_12 ** 1
    2*z(12,1)+2*z(12,11)    2*sqrt(3)

`format_number` prints the canonical form; `parse_number(format_number(x))`
equals x and printing it again gives the same text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from sympy import Poly, cyclotomic_poly, factorint, symbols, totient

from sphex.errors import NotCoprime, NotIntegral, ParseError
from sphex.utils import lcm

Scalar = Union[int, Fraction]

_X = symbols("x")


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> Tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    coeffs = Poly(cyclotomic_poly(n, _X), _X).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


@lru_cache(maxsize=None)
def _trace_weight(m: int) -> Fraction:
    """Normalised trace of a primitive m-th root of unity: mu(m) / phi(m)."""
    factors = factorint(m)
    if any(e > 1 for e in factors.values()):
        return Fraction(0)
    return Fraction((-1) ** len(factors), int(totient(m)))


def _reduce(conductor: int, terms: Dict[int, Fraction]) -> Tuple[Tuple[int, Fraction], ...]:
    """Reduce sum c_k zeta^k into the power basis of Q(zeta_conductor)."""
    phi = _cyclotomic(conductor)
    degree = len(phi) - 1
    dense = [Fraction(0)] * conductor
    for k, c in terms.items():
        dense[k % conductor] += c
    for top in range(conductor - 1, degree - 1, -1):
        c = dense[top]
        if not c:
            continue
        shift = top - degree
        for i in range(degree):
            if phi[i]:
                dense[shift + i] -= c * phi[i]
        dense[top] = Fraction(0)
    return tuple((k, c) for k, c in enumerate(dense[:degree]) if c)


@dataclass(frozen=True, eq=False)
class CycloNum:
    """An exact element of Q(zeta_N).

    Attributes:
        conductor (int): N.
        coeffs (Tuple[Tuple[int, Fraction], ...]): Non-zero (k, c_k) pairs of
            the reduced power-basis form, sorted by k < phi(N).
    """

    conductor: int
    coeffs: Tuple[Tuple[int, Fraction], ...]

    @classmethod
    def make(cls, conductor: int, terms: Dict[int, Fraction]) -> CycloNum:
        if conductor < 1:
            raise ValueError(f"conductor must be positive, got {conductor}")
        return cls(conductor, _reduce(conductor, terms))

    @classmethod
    def rational(cls, value: Scalar) -> CycloNum:
        value = Fraction(value)
        return cls(1, ((0, value),) if value else ())

    @classmethod
    def zeta(cls, conductor: int, k: int = 1) -> CycloNum:
        return cls.make(conductor, {k % conductor: Fraction(1)})

    @classmethod
    def zero(cls) -> CycloNum:
        return cls(1, ())

    @classmethod
    def one(cls) -> CycloNum:
        return cls.rational(1)

    def lift(self, conductor: int) -> CycloNum:
        """Rewrite in Q(zeta_conductor); conductor must be a multiple of N."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        step = conductor // self.conductor
        return CycloNum.make(conductor, {k * step: c for k, c in self.coeffs})

    def _common(self, other: CycloNum) -> Tuple[CycloNum, CycloNum]:
        n = lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other: object) -> CycloNum:
        b = _coerce(other)
        if b is None:
            return NotImplemented
        x, y = self._common(b)
        terms: Dict[int, Fraction] = dict(x.coeffs)
        for k, c in y.coeffs:
            terms[k] = terms.get(k, Fraction(0)) + c
        # Reduced forms stay reduced under addition.
        return CycloNum(x.conductor, tuple((k, c) for k, c in sorted(terms.items()) if c))

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum(self.conductor, tuple((k, -c) for k, c in self.coeffs))

    def __sub__(self, other: object) -> CycloNum:
        b = _coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other: object) -> CycloNum:
        b = _coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other: object) -> CycloNum:
        b = _coerce(other)
        if b is None:
            return NotImplemented
        if b.conductor == 1:
            s = b.coeffs[0][1] if b.coeffs else Fraction(0)
            return CycloNum(self.conductor, tuple((k, c * s) for k, c in self.coeffs if s))
        x, y = self._common(b)
        n = x.conductor
        terms: Dict[int, Fraction] = {}
        for i, a in x.coeffs:
            for j, c in y.coeffs:
                k = (i + j) % n
                terms[k] = terms.get(k, Fraction(0)) + a * c
        return CycloNum.make(n, terms)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        b = _coerce(other)
        if b is None:
            return NotImplemented
        x, y = self._common(b)
        return x.coeffs == y.coeffs

    def __hash__(self) -> int:
        return hash(self.trace())

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def trace(self) -> Fraction:
        """Field trace divided by the field degree; independent of conductor."""
        n = self.conductor
        return sum(
            (c * _trace_weight(n // gcd(n, k)) for k, c in self.coeffs), Fraction(0)
        )

    def is_rational(self) -> bool:
        return all(k == 0 for k, _ in self.coeffs)

    def rational_value(self) -> Optional[Fraction]:
        if not self.is_rational():
            return None
        return self.coeffs[0][1] if self.coeffs else Fraction(0)

    def as_integer(self) -> Optional[int]:
        """The integer value, or None when the number is not an integer."""
        value = self.rational_value()
        if value is None or value.denominator != 1:
            return None
        return value.numerator

    def require_integer(self, what: str = "value") -> int:
        value = self.as_integer()
        if value is None:
            raise NotIntegral(f"{what} is not an integer: {format_number(self)}")
        return value

    def galois_conjugate(self, k: int) -> CycloNum:
        """Apply zeta_N -> zeta_N**k.

        Raises:
            NotCoprime: If gcd(k, N) != 1.
        """
        n = self.conductor
        if gcd(k, n) != 1:
            raise NotCoprime(f"exponent {k} is not coprime to conductor {n}")
        if self.is_rational():
            return self
        return CycloNum.make(n, {(i * k) % n: c for i, c in self.coeffs})

    def conjugate(self) -> CycloNum:
        """Complex conjugate."""
        return self.galois_conjugate(-1 % self.conductor if self.conductor > 1 else 1)

    def embeddings(self) -> np.ndarray:
        """Complex values under every embedding zeta_N -> exp(2*pi*i*u/N), gcd(u, N) = 1.

        Floating point, for bounds only; equality stays exact.
        """
        n = self.conductor
        units = np.array([u for u in range(1, n + 1) if gcd(u, n) == 1])
        if not self.coeffs:
            return np.zeros(len(units), dtype=complex)
        powers = np.array([k for k, _ in self.coeffs])
        weights = np.array([float(c) for _, c in self.coeffs])
        return weights @ np.exp(2j * np.pi * np.outer(powers, units) / n)

    def __str__(self) -> str:
        return format_number(self)

    def __repr__(self) -> str:
        return f"CycloNum({format_number(self)})"


def _coerce(value: object) -> Optional[CycloNum]:
    if isinstance(value, CycloNum):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return CycloNum.rational(value)
    return None


def sqrt2() -> CycloNum:
    return CycloNum.zeta(8, 1) + CycloNum.zeta(8, 7)


def sqrt3() -> CycloNum:
    return CycloNum.zeta(12, 1) + CycloNum.zeta(12, 11)


def total(values: Iterable[CycloNum]) -> CycloNum:
    result = CycloNum.zero()
    for v in values:
        result = result + v
    return result


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"q({value.numerator}/{value.denominator})"


def format_number(x: CycloNum) -> str:
    """Canonical text of x: terms by increasing exponent, no spaces."""
    if not x.coeffs:
        return "0"
    parts: List[str] = []
    for k, c in x.coeffs:
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        if k == 0:
            body = _format_rational(magnitude)
        elif magnitude == 1:
            body = f"z({x.conductor},{k})"
        else:
            body = f"{_format_rational(magnitude)}*z({x.conductor},{k})"
        parts.append(sign + body)
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


_TOKEN = re.compile(
    r"\s*(?:(?P<q>q\(\s*(?P<qn>\d+)\s*/\s*(?P<qd>\d+)\s*\))"
    r"|(?P<z>z\(\s*(?P<zn>\d+)\s*,\s*(?P<zk>-?\d+)\s*\))"
    r"|(?P<int>\d+)|(?P<op>[-+*]))"
)


def parse_number(text: str) -> CycloNum:
    """Parse the table-file encoding of a cyclotomic number.

    Raises:
        ParseError: On malformed input.
    """
    tokens: List[Tuple[str, object]] = []
    pos = 0
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty number")
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match or match.end() == pos:
            raise ParseError(f"cannot parse number {text!r} at position {pos}")
        pos = match.end()
        if match.group("q"):
            den = int(match.group("qd"))
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            tokens.append(("num", CycloNum.rational(Fraction(int(match.group("qn")), den))))
        elif match.group("z"):
            n = int(match.group("zn"))
            if n < 1:
                raise ParseError(f"bad conductor in {text!r}")
            tokens.append(("num", CycloNum.zeta(n, int(match.group("zk")))))
        elif match.group("int"):
            tokens.append(("num", CycloNum.rational(int(match.group("int")))))
        else:
            tokens.append(("op", match.group("op")))

    result = CycloNum.zero()
    sign = 1
    term: Optional[CycloNum] = None
    expect_factor = True
    for kind, value in tokens:
        if kind == "num":
            if not expect_factor:
                raise ParseError(f"missing operator in {text!r}")
            assert isinstance(value, CycloNum)
            term = value if term is None else term * value
            expect_factor = False
        elif value == "*":
            if expect_factor:
                raise ParseError(f"dangling '*' in {text!r}")
            expect_factor = True
        else:
            if term is None:
                if expect_factor and sign == 1 and not result:
                    sign = -1 if value == "-" else 1
                    continue
                raise ParseError(f"dangling sign in {text!r}")
            if expect_factor:
                raise ParseError(f"dangling '*' in {text!r}")
            result = result + (term if sign == 1 else -term)
            sign = -1 if value == "-" else 1
            term = None
            expect_factor = True
    if term is None or expect_factor:
        raise ParseError(f"incomplete number {text!r}")
    return result + (term if sign == 1 else -term)
