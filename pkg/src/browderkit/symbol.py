"""Trigonometric-polynomial (Laurent) symbols and 2x2 matrix symbols.

All integer invariants (circle zeros, winding numbers) are decided exactly
from Gaussian-rational coefficients.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping

from .errors import CircleZero, DimensionMismatch, SpecParseError, ZeroSymbol
from .gauss import ONE, ZERO, Gauss, as_gauss
from .poly import count_inside_schur_cohn, has_circle_zero

__all__ = [
    "LaurentSymbol",
    "MatrixSymbol",
    "circle_zero_test",
    "winding_number",
    "numerical_winding",
    "multiply",
    "det_symbol",
    "parse_symbol",
]


class LaurentSymbol:
    """``p(z) = sum_j c_j z^j`` with finitely many nonzero Gaussian-rational ``c_j``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        out = {}
        for j, c in (coeffs or {}).items():
            c = as_gauss(c)
            if c:
                out[int(j)] = c
        self._coeffs = dict(sorted(out.items()))

    @classmethod
    def constant(cls, c) -> "LaurentSymbol":
        return cls({0: c})

    @classmethod
    def monomial(cls, j: int, c=1) -> "LaurentSymbol":
        return cls({j: c})

    @classmethod
    def from_poly(cls, coeffs, shift: int = 0) -> "LaurentSymbol":
        """Symbol ``z^shift * sum_k coeffs[k] z^k``."""
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, j: int) -> Gauss:
        return self._coeffs.get(j, ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def low(self) -> int:
        return next(iter(self._coeffs)) if self._coeffs else 0

    @property
    def high(self) -> int:
        return next(reversed(self._coeffs)) if self._coeffs else 0

    def polynomial(self) -> tuple[int, list[Gauss]]:
        """``(m, q)`` with ``q(z) = z^m p(z)`` an ordinary polynomial and ``-m`` the lowest exponent."""
        if not self._coeffs:
            return 0, []
        lo = self.low
        q = [ZERO] * (self.high - lo + 1)
        for j, c in self._coeffs.items():
            q[j - lo] = c
        return -lo, q

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "LaurentSymbol") -> "LaurentSymbol":
        out = dict(self._coeffs)
        for j, c in other.items():
            out[j] = out.get(j, ZERO) + c
        return LaurentSymbol(out)

    def __neg__(self) -> "LaurentSymbol":
        return LaurentSymbol({j: -c for j, c in self.items()})

    def __sub__(self, other: "LaurentSymbol") -> "LaurentSymbol":
        return self + (-other)

    def __mul__(self, other) -> "LaurentSymbol":
        if isinstance(other, LaurentSymbol):
            return multiply(self, other)
        c = as_gauss(other)
        return LaurentSymbol({j: c * v for j, v in self.items()})

    __rmul__ = __mul__

    def reflect(self) -> "LaurentSymbol":
        """``conj(p)(1/z)``: the symbol of the adjoint Toeplitz operator."""
        return LaurentSymbol({-j: c.conjugate() for j, c in self.items()})

    def translate(self, lam) -> "LaurentSymbol":
        return self - LaurentSymbol.constant(lam)

    def __eq__(self, other):
        return isinstance(other, LaurentSymbol) and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __call__(self, z: complex) -> complex:
        return sum(complex(c) * z ** j for j, c in self.items())

    def __repr__(self):
        return f"LaurentSymbol({ {j: str(c) for j, c in self.items()} })"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for j, c in reversed(self._coeffs.items()):
            cs = str(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if j == 0:
                terms.append(cs)
            else:
                mono = "z" if j == 1 else f"z^{j}"
                terms.append(mono if c == ONE else f"-{mono}" if c == -ONE else f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {str(j): c.to_pair() for j, c in self.items()}


def multiply(p: LaurentSymbol, q: LaurentSymbol) -> LaurentSymbol:
    out: dict[int, Gauss] = {}
    for j, a in p.items():
        for k, b in q.items():
            out[j + k] = out.get(j + k, ZERO) + a * b
    return LaurentSymbol(out)


def circle_zero_test(p: LaurentSymbol) -> bool:
    """Exact test for a zero of ``p`` on ``|z| = 1``."""
    if p.is_zero():
        raise ZeroSymbol("symbol is identically zero")
    _, q = p.polynomial()
    return has_circle_zero(q)


def winding_number(p: LaurentSymbol) -> int:
    """Winding number of ``p(e^{it})`` about 0: zeros of ``z^m p`` inside the disk, minus ``m``."""
    if circle_zero_test(p):
        raise CircleZero(f"symbol {p} vanishes on the unit circle")
    m, q = p.polynomial()
    return count_inside_schur_cohn(q) - m


def numerical_winding(p: LaurentSymbol, samples: int = 4096) -> float:
    """Argument-principle estimate by trapezoid sampling (diagnostic only)."""
    total = 0.0
    prev = p(1.0)
    for k in range(1, samples + 1):
        cur = p(cmath.exp(2j * math.pi * k / samples))
        total += cmath.phase(cur / prev)
        prev = cur
    return total / (2 * math.pi)


@dataclass(frozen=True)
class MatrixSymbol:
    dim: int
    entries: tuple  # dim x dim tuple of tuples of LaurentSymbol

    def __post_init__(self):
        if self.dim < 1 or len(self.entries) != self.dim or any(len(r) != self.dim for r in self.entries):
            raise DimensionMismatch("matrix symbol must be square with dim >= 1")

    @classmethod
    def scalar(cls, p: LaurentSymbol) -> "MatrixSymbol":
        return cls(1, ((p,),))

    @classmethod
    def from_grid(cls, grid) -> "MatrixSymbol":
        return cls(len(grid), tuple(tuple(r) for r in grid))

    @classmethod
    def zero(cls, dim: int) -> "MatrixSymbol":
        z = LaurentSymbol()
        return cls(dim, tuple((z,) * dim for _ in range(dim)))

    @classmethod
    def identity(cls, dim: int) -> "MatrixSymbol":
        return cls(dim, tuple(tuple(LaurentSymbol.constant(1) if i == j else LaurentSymbol() for j in range(dim))
                              for i in range(dim)))

    def __getitem__(self, ij) -> LaurentSymbol:
        i, j = ij
        return self.entries[i][j]

    def _check(self, other: "MatrixSymbol"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"symbol dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other: "MatrixSymbol") -> "MatrixSymbol":
        self._check(other)
        return MatrixSymbol(self.dim, tuple(tuple(a + b for a, b in zip(r, s))
                                            for r, s in zip(self.entries, other.entries)))

    def scale(self, c) -> "MatrixSymbol":
        return MatrixSymbol(self.dim, tuple(tuple(a * c for a in r) for r in self.entries))

    def __matmul__(self, other: "MatrixSymbol") -> "MatrixSymbol":
        self._check(other)
        n = self.dim
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = LaurentSymbol()
                for k in range(n):
                    acc = acc + multiply(self[i, k], other[k, j])
                row.append(acc)
            out.append(tuple(row))
        return MatrixSymbol(n, tuple(out))

    def adjoint(self) -> "MatrixSymbol":
        n = self.dim
        return MatrixSymbol(n, tuple(tuple(self[j, i].reflect() for j in range(n)) for i in range(n)))

    def translate(self, lam) -> "MatrixSymbol":
        n = self.dim
        return MatrixSymbol(n, tuple(tuple(self[i, j].translate(lam) if i == j else self[i, j]
                                           for j in range(n)) for i in range(n)))

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    @property
    def low(self) -> int:
        lows = [e.low for r in self.entries for e in r if not e.is_zero()]
        return min(lows) if lows else 0

    @property
    def high(self) -> int:
        highs = [e.high for r in self.entries for e in r if not e.is_zero()]
        return max(highs) if highs else 0

    def coefficient(self, j: int) -> list[list[Gauss]]:
        return [[e[j] for e in r] for r in self.entries]

    def to_json(self):
        if self.dim == 1:
            return self[0, 0].to_json()
        return [[e.to_json() for e in r] for r in self.entries]


def det_symbol(P: MatrixSymbol) -> LaurentSymbol:
    if P.dim == 1:
        return P[0, 0]
    if P.dim == 2:
        return multiply(P[0, 0], P[1, 1]) - multiply(P[0, 1], P[1, 0])
    acc = LaurentSymbol()
    for j in range(P.dim):
        minor = MatrixSymbol(P.dim - 1, tuple(tuple(P[i, k] for k in range(P.dim) if k != j)
                                              for i in range(1, P.dim)))
        term = multiply(P[0, j], det_symbol(minor))
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def parse_symbol(obj, path: str = "symbol") -> LaurentSymbol:
    """Parse ``{"exponent": coefficient}``; a coefficient is ``[re, im]`` or a bare real."""
    if not isinstance(obj, dict):
        raise SpecParseError(f"symbol must be an object mapping exponents to coefficients", path=path)
    coeffs = {}
    for key, val in obj.items():
        try:
            j = int(key)
        except (TypeError, ValueError):
            raise SpecParseError(f"exponent {key!r} is not an integer", path=f"{path}.{key}") from None
        try:
            coeffs[j] = as_gauss(val)
        except (TypeError, ValueError) as exc:
            raise SpecParseError(f"bad coefficient: {exc}", path=f"{path}.{key}") from None
    return LaurentSymbol(coeffs)
