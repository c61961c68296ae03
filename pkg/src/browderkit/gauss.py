"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts.

A value is stored as ``(a + b*i) / d`` with integers ``a, b`` and ``d > 0``,
reduced so that ``gcd(a, b, d) == 1``. Keeping a single common denominator
means one gcd per operation instead of the two a pair of ``Fraction`` objects
would need.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from math import gcd
from numbers import Rational

from flint import acb, arb, fmpq

__all__ = ["Gauss", "as_gauss", "parse_component", "ZERO", "ONE", "I"]


class Gauss:
    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        re = _to_fraction(re)
        im = _to_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        g = gcd(a, b, d)
        self.a, self.b, self.d = a // g, b // g, d // g

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "Gauss":
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
        obj = object.__new__(cls)
        obj.a, obj.b, obj.d = a, b, d
        return obj

    # -- accessors ---------------------------------------------------------
    @property
    def real(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.b, self.d)

    def conjugate(self) -> "Gauss":
        return Gauss._raw(self.a, -self.b, self.d)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return Fraction(self.a * self.a + self.b * self.b, self.d * self.d)

    def is_real(self) -> bool:
        return self.b == 0

    def is_gaussian_integer(self) -> bool:
        return self.d == 1

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, acb):
                return self.to_acb() + other
            return NotImplemented
        if self.d == o.d:
            return Gauss._raw(self.a + o.a, self.b + o.b, self.d)
        return Gauss._raw(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, acb):
                return self.to_acb() - other
            return NotImplemented
        if self.d == o.d:
            return Gauss._raw(self.a - o.a, self.b - o.b, self.d)
        return Gauss._raw(self.a * o.d - o.a * self.d, self.b * o.d - o.b * self.d, self.d * o.d)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, acb):
                return other - self.to_acb()
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if type(other) is int:
            return Gauss._raw(self.a * other, self.b * other, self.d)
        o = _coerce(other)
        if o is None:
            if isinstance(other, acb):
                return self.to_acb() * other
            return NotImplemented
        return Gauss._raw(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a, self.d * o.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, acb):
                return self.to_acb() / other
            return NotImplemented
        n2 = o.a * o.a + o.b * o.b
        if n2 == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        # x / y = x * conj(y) * d_y / |num_y|^2
        a = (self.a * o.a + self.b * o.b) * o.d
        b = (self.b * o.a - self.a * o.b) * o.d
        return Gauss._raw(a, b, self.d * n2)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            if isinstance(other, acb):
                return other / self.to_acb()
            return NotImplemented
        return o / self

    def __neg__(self):
        return Gauss._raw(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Gauss":
        return ONE / self

    # -- comparisons ---------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- conversion ----------------------------------------------------------
    def __complex__(self):
        return complex(self.a / self.d, self.b / self.d)

    def to_acb(self):
        return acb(arb(fmpq(self.a, self.d)), arb(fmpq(self.b, self.d)))

    def to_pair(self) -> list:
        """JSON-friendly ``[re, im]`` with exact string components."""
        return [_frac_str(self.real), _frac_str(self.imag)]

    def __repr__(self):
        return f"Gauss({_frac_str(self.real)!r}, {_frac_str(self.imag)!r})"

    def __str__(self):
        re_, im_ = self.real, self.imag
        if im_ == 0:
            return _frac_str(re_)
        if re_ == 0:
            return f"{_frac_str(im_)}i"
        sign = "+" if im_ > 0 else "-"
        return f"{_frac_str(re_)}{sign}{_frac_str(abs(im_))}i"


ZERO = Gauss._raw(0, 0, 1)
ONE = Gauss._raw(1, 0, 1)
I = Gauss._raw(0, 1, 1)


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


_NUM_RE = re.compile(r"^\s*[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?\s*$")


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # decimal repr of the float, not its binary expansion
        return Fraction(Decimal(repr(x)))
    if isinstance(x, str):
        return parse_component(x)
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def parse_component(x) -> Fraction:
    """Parse one real component: int, decimal string, ``"p/q"`` or ``[p, q]``."""
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"rational pair must have two entries, got {x!r}")
        num, den = (_to_fraction(v) for v in x)
        if den == 0:
            raise ValueError("zero denominator")
        return num / den
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        if not _NUM_RE.match(s):
            raise ValueError(f"not an exact decimal: {x!r}")
        return Fraction(Decimal(s))
    return _to_fraction(x)


def _coerce(x):
    if isinstance(x, Gauss):
        return x
    if isinstance(x, int):
        return Gauss._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return Gauss._raw(x.numerator, 0, x.denominator)
    return None


def as_gauss(x) -> Gauss:
    """Coerce ints, fractions, strings, ``[re, im]`` pairs and Python complex."""
    if isinstance(x, Gauss):
        return x
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"complex coefficient must be [re, im], got {x!r}")
        return Gauss(parse_component(x[0]), parse_component(x[1]))
    if isinstance(x, complex):
        return Gauss(x.real, x.imag)
    if isinstance(x, str):
        return Gauss(parse_component(x), 0)
    return Gauss(x, 0)
