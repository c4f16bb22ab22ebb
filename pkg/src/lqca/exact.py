"""Exact complex numbers with rational parts.

Rationals are :class:`fractions.Fraction`; it already keeps numerator and
denominator coprime with a positive denominator, which is the canonical
form every comparison here relies on.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

__all__ = [
    "ExactComplex",
    "ScaledComplex",
    "ZERO",
    "ONE",
    "parse_rational",
    "parse_complex",
    "format_rational",
    "rational_sqrt",
]

RationalLike = Union[int, Fraction]

_RAT = r"[+-]?(?:\d+/\d+|\d+\.\d+|\d+)"
_RAT_RE = re.compile(rf"^{_RAT}$")
_COMPLEX_RE = re.compile(
    rf"^(?:(?P<re>{_RAT})(?P<sign>[+-])(?P<im>\d+/\d+|\d+\.\d+|\d+)i"
    rf"|(?P<onlyim>{_RAT})i"
    rf"|(?P<onlyre>{_RAT}))$"
)


def parse_rational(text: str) -> Fraction:
    """Parse ``INT``, ``INT/POSINT`` or a plain decimal, exactly."""
    s = text.strip().replace("−", "-")
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(s)


def parse_complex(text: str) -> ExactComplex:
    """Parse ``RAT``, ``RAT(+|-)RATi`` or ``RATi``.

    The unicode minus sign is accepted wherever ``-`` is.
    """
    s = text.strip().replace("−", "-")
    m = _COMPLEX_RE.match(s)
    if m is None:
        raise ValueError(f"not a complex literal: {text!r}")
    if m.group("onlyre") is not None:
        return ExactComplex(parse_rational(m.group("onlyre")))
    if m.group("onlyim") is not None:
        return ExactComplex(0, parse_rational(m.group("onlyim")))
    im = parse_rational(m.group("im"))
    if m.group("sign") == "-":
        im = -im
    return ExactComplex(parse_rational(m.group("re")), im)


def format_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Square root of a non-negative rational if it is rational, else None."""
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _as_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class ExactComplex:
    """A complex number ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = _as_fraction(re)
        self.im = _as_fraction(im)

    @classmethod
    def _coerce(cls, other) -> ExactComplex | None:
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return cls(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return ExactComplex(a * c)
            return ExactComplex(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return ExactComplex(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = o.abs2()
        if not den:
            raise ZeroDivisionError("complex division by zero")
        num = self * o.conjugate()
        return ExactComplex(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared magnitude, always rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, ScaledComplex):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ExactComplex({self})"

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "-" if self.im < 0 else "+"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


ZERO = ExactComplex(0)
ONE = ExactComplex(1)


class ScaledComplex:
    """The number ``value / sqrt(sq_scale)`` for a positive rational scale.

    Renormalized amplitudes divide by a norm that is usually irrational;
    keeping the squared divisor lets products and equality stay exact.
    A scale that is a rational square is folded into ``value``.
    """

    __slots__ = ("value", "sq_scale")

    def __init__(self, value, sq_scale: RationalLike = 1):
        if not isinstance(value, ExactComplex):
            value = ExactComplex(value)
        sq_scale = _as_fraction(sq_scale)
        if sq_scale <= 0:
            raise ValueError("scale must be positive")
        root = rational_sqrt(sq_scale)
        if root is not None:
            value = ExactComplex(value.re / root, value.im / root)
            sq_scale = Fraction(1)
        elif not value:
            sq_scale = Fraction(1)
        self.value = value
        self.sq_scale = sq_scale

    def is_exact(self) -> bool:
        return self.sq_scale == 1

    def exact(self) -> ExactComplex:
        if not self.is_exact():
            raise ValueError(f"{self} is irrational")
        return self.value

    def __mul__(self, other):
        if isinstance(other, ScaledComplex):
            return ScaledComplex(self.value * other.value, self.sq_scale * other.sq_scale)
        if isinstance(other, (ExactComplex, int, Fraction)):
            return ScaledComplex(self.value * other, self.sq_scale)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> ScaledComplex:
        return ScaledComplex(self.value.conjugate(), self.sq_scale)

    def abs2(self) -> Fraction:
        return self.value.abs2() / self.sq_scale

    def __bool__(self) -> bool:
        return bool(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, (ExactComplex, int, Fraction)):
            other = ScaledComplex(other)
        if not isinstance(other, ScaledComplex):
            return NotImplemented
        if not self.value or not other.value:
            return not self.value and not other.value
        # a/sqrt(s) == b/sqrt(t)  <=>  a/b is real, positive and (a/b)^2 == s/t
        ratio = self.value / other.value
        if ratio.im or ratio.re <= 0:
            return False
        return ratio.re * ratio.re == self.sq_scale / other.sq_scale

    def __hash__(self) -> int:
        if self.is_exact():
            return hash(self.value)
        return hash((self.value.abs2() / self.sq_scale, "scaled"))

    def __repr__(self) -> str:
        return f"ScaledComplex({self})"

    def __str__(self) -> str:
        if self.is_exact():
            return str(self.value)
        return f"({self.value})/sqrt({format_rational(self.sq_scale)})"
