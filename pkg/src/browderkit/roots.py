"""Roots of exact polynomials: Gaussian-rational roots exactly, the rest as
certified algebraic roots.

An :class:`AlgebraicRoot` is identified by a monic polynomial irreducible
over Q(i) together with an index into a canonical, certified isolation of
its roots. Two such roots are equal iff both fields agree, so tails built
from the same root in different places can be recognised as identical
without any numerical comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from flint import acb, acb_poly, arb

from .balls import to_ball, working_precision
from .errors import PrecisionExhausted
from .gauss import ONE, Gauss, as_gauss
from .poly import pdivmod, peval, pmonic, squarefree_decomposition, trim

REFERENCE_PRECISION = 256
_MAX_REFERENCE_PRECISION = 8192


@dataclass(frozen=True)
class AlgebraicRoot:
    poly: tuple  # monic, irreducible over Q(i), degree >= 2, low-first Gauss
    index: int

    def ball(self, prec: int):
        """Enclosure computed at working precision ``prec``."""
        refs = _reference_roots(self.poly)
        if prec >= _reference_bits(self.poly):
            return refs[self.index]
        try:
            with working_precision(prec):
                cand = _isolate(self.poly, prec)
        except ValueError as exc:
            raise PrecisionExhausted(f"root isolation failed at {prec} bits") from exc
        target = refs[self.index]
        hits = [c for c in cand if c.overlaps(target)]
        if len(hits) != 1:
            raise PrecisionExhausted("root identification ambiguous at working precision")
        hit = hits[0]
        if any(c.overlaps(hit) for k, c in enumerate(refs) if k != self.index):
            raise PrecisionExhausted("root identification ambiguous at working precision")
        return hit

    def conjugate(self) -> "AlgebraicRoot":
        return _conjugate_root(self)

    def __complex__(self):
        b = _reference_roots(self.poly)[self.index]
        return complex(float(b.real.mid()), float(b.imag.mid()))

    def to_json(self) -> dict:
        return {"poly": [c.to_pair() for c in self.poly], "index": self.index}

    def __str__(self):
        c = complex(self)
        return f"root#{self.index}({c.real:.6g}{c.imag:+.6g}i)"


def root_value(r, prec: int):
    """Numeric value usable in arithmetic: Gauss stays exact, algebraic roots become balls."""
    if isinstance(r, AlgebraicRoot):
        return r.ball(prec)
    return r


def conjugate_root(r):
    return r.conjugate()


# -- isolation ---------------------------------------------------------------

def _isolate(poly: tuple, prec: int):
    p = acb_poly([c.to_acb() for c in poly])
    return p.roots(tol=arb(2) ** (-(prec - 16)), maxprec=prec)


_ref_cache: dict = {}


def _reference_bits(poly: tuple) -> int:
    _reference_roots(poly)
    return _ref_cache[poly][0]


def _reference_roots(poly: tuple) -> list:
    hit = _ref_cache.get(poly)
    if hit is not None:
        return hit[1]
    prec = REFERENCE_PRECISION
    while True:
        try:
            with working_precision(prec):
                balls = list(_isolate(poly, prec))
            break
        except ValueError:
            prec *= 2
            if prec > _MAX_REFERENCE_PRECISION:
                raise PrecisionExhausted("cannot isolate roots of an irreducible factor")
    balls.sort(key=lambda b: (float(b.real.mid()), float(b.imag.mid())))
    _ref_cache[poly] = (prec, balls)
    return balls


@lru_cache(maxsize=None)
def _conjugate_root(r: AlgebraicRoot) -> AlgebraicRoot:
    cpoly = tuple(c.conjugate() for c in r.poly)
    target = _reference_roots(r.poly)[r.index].conjugate()
    refs = _reference_roots(cpoly)
    hits = [k for k, b in enumerate(refs) if b.overlaps(target)]
    if len(hits) != 1:
        raise PrecisionExhausted("conjugate root identification ambiguous")
    return AlgebraicRoot(cpoly, hits[0])


# -- splitting ---------------------------------------------------------------

def _guess_gaussian_roots(s: list) -> list[Gauss]:
    """Gaussian-rational roots of a squarefree polynomial (numeric guess, exact check)."""
    s = [as_gauss(c) for c in trim(s)]
    found = []
    while len(s) > 1:
        if len(s) == 2:
            found.append(-s[0] / s[1])
            break
        scale = max(max(abs(float(c.real)), abs(float(c.imag))) for c in s) or 1.0
        coeffs = [complex(c) / scale for c in reversed(s)]
        try:
            approx = np.roots(coeffs)
        except (np.linalg.LinAlgError, ValueError):
            break
        den_cap = 10 ** 6
        progress = False
        for z in approx:
            cand = Gauss(
                Fraction(float(z.real)).limit_denominator(den_cap),
                Fraction(float(z.imag)).limit_denominator(den_cap),
            )
            if not peval(s, cand):
                found.append(cand)
                s = pdivmod(s, [-cand, ONE])[0]
                progress = True
                break
        if not progress:
            break
    return found


def _sympy_irreducible_factors(s: list) -> list[list[Gauss]]:
    import sympy as sp

    x = sp.Symbol("x")
    expr = sum((sp.Rational(c.real.numerator, c.real.denominator)
                + sp.I * sp.Rational(c.imag.numerator, c.imag.denominator)) * x ** k
               for k, c in enumerate(s))
    P = sp.Poly(expr, x, domain=sp.QQ_I)
    out = []
    for fac, _mult in P.factor_list()[1]:
        coeffs = []
        for c in reversed(fac.all_coeffs()):
            re_, im_ = sp.Rational(sp.re(c)), sp.Rational(sp.im(c))
            coeffs.append(Gauss(Fraction(int(re_.p), int(re_.q)), Fraction(int(im_.p), int(im_.q))))
        out.append(pmonic(coeffs))
    return out


@lru_cache(maxsize=4096)
def _roots_cached(poly: tuple) -> tuple:
    out = []
    for s, mult in squarefree_decomposition(list(poly)):
        exact = _guess_gaussian_roots(s)
        rest = s
        for r in exact:
            out.append((r, mult))
            rest = pdivmod(rest, [-r, ONE])[0]
        if len(rest) <= 1:
            continue
        for g in _sympy_irreducible_factors(rest):
            if len(g) == 2:
                out.append((-g[0] / g[1], mult))
            else:
                gt = tuple(g)
                for idx in range(len(g) - 1):
                    out.append((AlgebraicRoot(gt, idx), mult))
    return tuple(out)


def roots_with_multiplicity(p) -> list[tuple[object, int]]:
    """All roots of an exact polynomial: ``(Gauss | AlgebraicRoot, multiplicity)``."""
    p = trim([as_gauss(c) for c in p])
    return list(_roots_cached(tuple(p)))


def is_exact_root(r) -> bool:
    return isinstance(r, Gauss)


def root_key(r):
    """Hashable identity for tail merging."""
    return r


def modulus_key(r) -> float:
    """Approximate |r| for deterministic ordering only (never for decisions)."""
    return abs(complex(r))


__all__ = [
    "AlgebraicRoot",
    "roots_with_multiplicity",
    "root_value",
    "conjugate_root",
    "is_exact_root",
    "modulus_key",
    "to_ball",
    "acb",
]
