"""Exponential-polynomial vectors in l^2: a finite head plus decaying tails.

``x_n = head[n]`` for ``n < len(head)`` and ``x_n = sum_t q_t(n) r_t^n`` beyond,
with every ``|r_t| < 1``. Tail polynomials are in the absolute index ``n``.
Coefficients are exact :class:`Gauss` values, or ``acb`` balls once an
irrational root has entered the arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from flint import acb

from .balls import abs_less_than_one, ball_to_json, certainly_zero, to_ball, working_precision
from .errors import PrecisionExhausted, SpecParseError
from .gauss import ONE, ZERO, Gauss, as_gauss
from .roots import AlgebraicRoot, root_value

__all__ = [
    "ExpPolyVector",
    "inner",
    "tail_power_sum",
    "toeplitz_apply",
    "coeff_to_json",
    "parse_vector",
    "parse_coeff",
    "DEFAULT_PRECISION",
]

DEFAULT_PRECISION = 128


def _is_exact(c) -> bool:
    return isinstance(c, Gauss)


def _conj(c):
    return c.conjugate()


def _trim_coeffs(cs) -> tuple:
    cs = list(cs)
    while cs and certainly_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def _root_conj(r):
    return r.conjugate()


def _pow(r, n: int, prec: int):
    return root_value(r, prec) ** n


def _poly_eval(q: Sequence, n: int):
    acc = ZERO
    for c in reversed(q):
        acc = acc * n + c
    return acc


def _poly_add(p: Sequence, q: Sequence) -> tuple:
    n = max(len(p), len(q))
    return _trim_coeffs((p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n))


def _poly_shift(q: Sequence, j: int) -> list:
    """Coefficients of ``q(n - j)`` as a polynomial in ``n``."""
    out = [ZERO] * len(q)
    for k, a in enumerate(q):
        if certainly_zero(a):
            continue
        for l in range(k + 1):
            out[l] = out[l] + a * (comb(k, l) * (-j) ** (k - l))
    return out


class ExpPolyVector:
    __slots__ = ("head", "tails")

    def __init__(self, head: Sequence = (), tails: Sequence = ()):
        merged: dict = {}
        order = []
        for r, q in tails:
            if not isinstance(r, AlgebraicRoot):
                r = as_gauss(r)
                if not r:
                    continue
            q = tuple(as_gauss(c) if not isinstance(c, acb) else c for c in q)
            if r in merged:
                merged[r] = _poly_add(merged[r], q)
            else:
                merged[r] = _trim_coeffs(q)
                order.append(r)
        self.tails = tuple((r, merged[r]) for r in order if merged[r])
        h = [c if isinstance(c, acb) else as_gauss(c) for c in head]
        if not self.tails:
            while h and certainly_zero(h[-1]):
                h.pop()
        self.head = tuple(h)

    # -- construction ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "ExpPolyVector":
        return cls()

    @classmethod
    def basis(cls, k: int, c=ONE) -> "ExpPolyVector":
        return cls([ZERO] * k + [as_gauss(c)])

    @classmethod
    def geometric(cls, r, c=ONE) -> "ExpPolyVector":
        """``(c, c r, c r^2, ...)``."""
        return cls((), [(r, (as_gauss(c),))])

    # -- inspection -----------------------------------------------------------
    @property
    def start(self) -> int:
        return len(self.head)

    def is_exact(self) -> bool:
        return (all(_is_exact(c) for c in self.head)
                and all(isinstance(r, Gauss) and all(_is_exact(c) for c in q) for r, q in self.tails))

    def is_zero(self) -> bool:
        """Certified zero (exactly zero data)."""
        return not self.tails and not self.head

    def is_finite(self) -> bool:
        return not self.tails

    def roots(self) -> list:
        return [r for r, _ in self.tails]

    def tail_value(self, n: int, prec: int = DEFAULT_PRECISION):
        acc = ZERO
        for r, q in self.tails:
            acc = acc + _poly_eval(q, n) * _pow(r, n, prec)
        return acc

    def value(self, n: int, prec: int = DEFAULT_PRECISION):
        if n < 0:
            return ZERO
        if n < len(self.head):
            return self.head[n]
        return self.tail_value(n, prec)

    def window(self, N: int, prec: int = DEFAULT_PRECISION) -> list:
        with working_precision(prec):
            return [self.value(n, prec) for n in range(N)]

    def extend_head(self, N: int, prec: int = DEFAULT_PRECISION) -> "ExpPolyVector":
        """Same vector with the head materialized up to index ``N``."""
        if N <= len(self.head):
            return self
        with working_precision(prec):
            h = list(self.head) + [self.tail_value(n, prec) for n in range(len(self.head), N)]
        out = ExpPolyVector.__new__(ExpPolyVector)
        out.head, out.tails = tuple(h), self.tails
        return out

    # -- linear structure ----------------------------------------------------
    def __add__(self, other: "ExpPolyVector") -> "ExpPolyVector":
        return self.combine(other, ONE, ONE)

    def __sub__(self, other: "ExpPolyVector") -> "ExpPolyVector":
        return self.combine(other, ONE, -ONE)

    def __neg__(self) -> "ExpPolyVector":
        return self.scale(-ONE)

    def combine(self, other: "ExpPolyVector", a, b, prec: int = DEFAULT_PRECISION) -> "ExpPolyVector":
        """``a*self + b*other``."""
        N = max(len(self.head), len(other.head))
        x, y = self.extend_head(N, prec), other.extend_head(N, prec)
        with working_precision(prec):
            head = [a * u + b * v for u, v in zip(x.head, y.head)]
            tails = [(r, [a * c for c in q]) for r, q in x.tails] + [(r, [b * c for c in q]) for r, q in y.tails]
            return ExpPolyVector(head, tails)

    def scale(self, c, prec: int = DEFAULT_PRECISION) -> "ExpPolyVector":
        if not isinstance(c, acb):
            c = as_gauss(c)
        if certainly_zero(c) and _is_exact(c):
            return ExpPolyVector()
        with working_precision(prec):
            return ExpPolyVector([c * v for v in self.head], [(r, [c * a for a in q]) for r, q in self.tails])

    def conjugate(self) -> "ExpPolyVector":
        return ExpPolyVector([_conj(c) for c in self.head],
                             [(_root_conj(r), [_conj(c) for c in q]) for r, q in self.tails])

    def __eq__(self, other):
        """Structural equality (same head and tails after normalization)."""
        if not isinstance(other, ExpPolyVector):
            return NotImplemented
        if not (self.is_exact() and other.is_exact()):
            return False
        d = self - other
        return d.is_zero()

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "head": [coeff_to_json(c) for c in self.head],
            "tails": [{"root": root_to_json(r), "poly": [coeff_to_json(c) for c in q]} for r, q in self.tails],
        }

    def __repr__(self):
        tails = ", ".join(f"({r}, [{', '.join(str(c) for c in q)}])" for r, q in self.tails)
        return f"ExpPolyVector(head=[{', '.join(str(c) for c in self.head)}], tails=[{tails}])"


# -- sums ------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def _geometric_moment(j: int, w):
    """``sum_{m>=0} m^j w^m`` for ``|w| < 1``."""
    one_minus = ONE - w
    acc = ZERO
    fact = 1
    for i in range(j + 1):
        if i:
            fact *= i
        s = _stirling2(j, i)
        if s:
            acc = acc + (s * fact) * w ** i / one_minus ** (i + 1)
    return acc


def tail_power_sum(k: int, w, N: int):
    """``sum_{n>=N} n^k w^n`` in closed form (``|w| < 1``)."""
    acc = ZERO
    for j in range(k + 1):
        acc = acc + comb(k, j) * N ** (k - j) * _geometric_moment(j, w)
    return w ** N * acc


def _poly_mul(p, q) -> list:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def inner(x: ExpPolyVector, y: ExpPolyVector, prec: int = DEFAULT_PRECISION):
    """``<x, y> = sum_n x_n conj(y_n)`` (linear in ``x``)."""
    N = max(len(x.head), len(y.head))
    with working_precision(prec):
        xe, ye = x.extend_head(N, prec), y.extend_head(N, prec)
        acc = ZERO
        for a, b in zip(xe.head, ye.head):
            if not (certainly_zero(a) or certainly_zero(b)):
                acc = acc + a * _conj(b)
        for r, q in xe.tails:
            rv = root_value(r, prec)
            for s, p in ye.tails:
                w = rv * _conj(root_value(s, prec))
                prod = _poly_mul(q, [_conj(c) for c in p])
                for k, c in enumerate(prod):
                    if not certainly_zero(c):
                        acc = acc + c * tail_power_sum(k, w, N)
        return acc


def toeplitz_apply(p, x: ExpPolyVector, prec: int = DEFAULT_PRECISION) -> ExpPolyVector:
    """``T(p) x`` with ``T(p)_{n,k} = p_{n-k}``; ``p`` is a LaurentSymbol."""
    if p.is_zero() or x.is_zero():
        return ExpPolyVector()
    lo, hi = p.low, p.high
    coeffs = list(p.items())
    s = len(x.head)
    new_start = max(0, s + hi) if x.tails else max(0, s + hi)
    with working_precision(prec):
        head = []
        for n in range(new_start):
            acc = ZERO
            for j, c in coeffs:
                m = n - j
                if m < 0:
                    continue
                v = x.value(m, prec)
                if not certainly_zero(v):
                    acc = acc + c * v
            head.append(acc)
        tails = []
        for r, q in x.tails:
            rv = root_value(r, prec)
            new_q = [ZERO] * len(q)
            for j, c in coeffs:
                shifted = _poly_shift(q, j)
                f = c * (rv ** (-j) if j else ONE)
                for l, a in enumerate(shifted):
                    new_q[l] = new_q[l] + f * a
            tails.append((r, new_q))
        return ExpPolyVector(head, tails)


# -- JSON ------------------------------------------------------------------

def coeff_to_json(c):
    if isinstance(c, acb):
        return ball_to_json(c)
    return c.to_pair()


def root_to_json(r):
    if isinstance(r, AlgebraicRoot):
        return r.to_json()
    return r.to_pair()


def parse_coeff(obj, path: str = "coefficient"):
    """Exact coefficient, or a ball written as ``{"mid": [re, im], "rad": r}``."""
    if isinstance(obj, dict) and "mid" in obj:
        try:
            from flint import arb

            re_, im_ = obj["mid"]
            rad = arb(obj.get("rad", "0"))
            return acb(arb(re_) + arb(0, rad), arb(im_) + arb(0, rad))
        except (TypeError, ValueError, KeyError) as exc:
            raise SpecParseError(f"bad ball coefficient: {exc}", path=path) from None
    try:
        return as_gauss(obj)
    except (TypeError, ValueError) as exc:
        raise SpecParseError(f"bad coefficient: {exc}", path=path) from None


def _parse_root(obj, path: str):
    if isinstance(obj, dict) and "poly" in obj:
        poly = tuple(parse_coeff(c, f"{path}.poly[{k}]") for k, c in enumerate(obj["poly"]))
        r = AlgebraicRoot(poly, int(obj.get("index", 0)))
        try:
            ok = abs_less_than_one(r.ball(256))
        except PrecisionExhausted:
            ok = False
    else:
        r = parse_coeff(obj, path)
        ok = r.abs2() < 1
    if not ok:
        raise SpecParseError("tail root must satisfy |r| < 1", path=path)
    return r


def parse_vector(obj, path: str = "vector") -> ExpPolyVector:
    """Parse ``{"head": [...], "tails": [{"root": c, "poly": [...]}, ...]}``."""
    if not isinstance(obj, dict):
        raise SpecParseError("vector spec must be an object with 'head' and 'tails'", path=path)
    unknown = set(obj) - {"head", "tails"}
    if unknown:
        raise SpecParseError(f"unknown vector keys {sorted(unknown)}", path=path)
    head = [parse_coeff(c, f"{path}.head[{k}]") for k, c in enumerate(obj.get("head", []))]
    tails = []
    for t, tail in enumerate(obj.get("tails", [])):
        tp = f"{path}.tails[{t}]"
        if not isinstance(tail, dict) or "root" not in tail:
            raise SpecParseError("tail needs 'root' and 'poly'", path=tp)
        root = _parse_root(tail["root"], f"{tp}.root")
        poly = [parse_coeff(c, f"{tp}.poly[{k}]") for k, c in enumerate(tail.get("poly", [1]))]
        tails.append((root, poly))
    return ExpPolyVector(head, tails)
