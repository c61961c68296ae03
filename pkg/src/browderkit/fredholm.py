"""Fredholm data of banded eventually-Toeplitz operators.

Kernels are computed as l^2 solutions of the banded recurrence: a finite
head of free entries, followed by an exponential-polynomial tail built from
the roots ``rho`` (``|rho| < 1``) of the reversed determinant polynomial.
Matching the head equations with the tail identities gives a finite linear
system whose null space is the kernel. With Gaussian-rational roots the
system is solved exactly; otherwise by certified ball elimination, where a
rank is accepted only once it meets a known lower bound on the nullity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .balls import abs_less_than_one, ball_elimination, precision_ladder, working_precision
from .errors import CircleZero, PrecisionExhausted
from .expoly import DEFAULT_PRECISION, ExpPolyVector, tail_power_sum
from .gauss import ONE, ZERO, Gauss
from .linalg import RationalMatrix, rank, solve, sparse_nullspace
from .linalg import asc_des as matrix_asc_des
from .operator import BetOperator, bet_adjoint, bet_compose, block_inner
from .poly import reverse
from .roots import AlgebraicRoot, roots_with_multiplicity, root_value
from .symbol import MatrixSymbol, circle_zero_test, det_symbol, winding_number

__all__ = [
    "ExtNat",
    "Finite",
    "INFINITE",
    "ExceedsCap",
    "FredholmData",
    "kernel_data",
    "solve_kernel",
    "fredholm_data",
    "asc_des",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 16


# -- extended naturals -------------------------------------------------------

@dataclass(frozen=True)
class ExtNat:
    kind: str  # "finite" | "infinite" | "exceeds"
    value: int = 0

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinite"

    @property
    def is_unknown(self) -> bool:
        return self.kind == "exceeds"

    def __add__(self, other: "ExtNat") -> "ExtNat":
        if self.is_unknown or other.is_unknown:
            return self if self.is_unknown else other
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return Finite(self.value + other.value)

    def same_as(self, other: "ExtNat"):
        """Tri-state equality: ``None`` when either side is undetermined."""
        if self.is_unknown or other.is_unknown:
            return None
        return self == other

    def to_json(self):
        if self.is_finite:
            return self.value
        if self.is_infinite:
            return "inf"
        return {"exceeds_cap": self.value}

    def __str__(self):
        if self.is_finite:
            return str(self.value)
        if self.is_infinite:
            return "inf"
        return f">{self.value}?" if self.value else "?"


def Finite(k: int) -> ExtNat:
    return ExtNat("finite", int(k))


def ExceedsCap(cap: int) -> ExtNat:
    return ExtNat("exceeds", int(cap))


INFINITE = ExtNat("infinite")


@dataclass
class FredholmData:
    alpha: ExtNat
    beta: ExtNat
    index: int | None
    semi_fredholm: bool
    kernel_basis: list = field(default_factory=list)
    ascent: ExtNat = field(default_factory=lambda: ExceedsCap(0))
    descent: ExtNat = field(default_factory=lambda: ExceedsCap(0))

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "index": self.index,
            "semi_fredholm": self.semi_fredholm,
            "ascent": self.ascent.to_json(),
            "descent": self.descent.to_json(),
            "kernel_basis": [[c.to_json() for c in x] if len(x) > 1 else x[0].to_json()
                             for x in self.kernel_basis],
        }


# -- the kernel engine -----------------------------------------------------

def _decaying_roots(P: MatrixSymbol) -> list[tuple[object, int]]:
    """Roots ``rho`` with ``|rho| < 1`` of ``z^N det P(1/z)``, with multiplicity."""
    m, q = det_symbol(P).polynomial()
    out = []
    for r, mult in roots_with_multiplicity(reverse(q)):
        inside = r.abs2() < 1 if isinstance(r, Gauss) else abs_less_than_one(r.ball(256))
        if inside:
            out.append((r, mult))
    return out


def _is_exact_block(x) -> bool:
    return all(c.is_exact() for c in x)


class _System:
    """Unknown layout and row assembly for one kernel problem."""

    def __init__(self, P, columns, orth, roots, H):
        self.P, self.columns, self.orth, self.H = P, columns, orth, H
        self.d = P.dim
        self.roots = roots  # list of (rho, kdim)
        self.n_head = self.d * H
        self.tail_offset = {}
        off = self.n_head
        for t, (_, kdim) in enumerate(roots):
            self.tail_offset[t] = off
            off += kdim * self.d
        self.c_offset = off
        self.ncols = off + len(columns)

    def head(self, b: int, i: int) -> int:
        return b * self.H + i

    def tail(self, t: int, k: int, b: int) -> int:
        return self.tail_offset[t] + k * self.d + b

    def rows(self, bits: int):
        P, d, H = self.P, self.d, self.H
        lo, hi = min(0, P.low), max(0, P.high)
        n_rows = H + hi
        rvals = [root_value(r, bits) for r, _ in self.roots]
        pow_cache: dict = {}

        def rpow(t, i):
            key = (t, i)
            if key not in pow_cache:
                pow_cache[key] = rvals[t] ** i
            return pow_cache[key]

        rows = []
        for a in range(d):
            for n in range(n_rows):
                row: dict = {}
                for b in range(d):
                    for j, coef in P[a, b].items():
                        i = n - j
                        if i < 0:
                            continue
                        if i < H:
                            col = self.head(b, i)
                            row[col] = row.get(col, ZERO) + coef
                        else:
                            for t, (_, kdim) in enumerate(self.roots):
                                base = coef * rpow(t, i)
                                ik = 1
                                for k in range(kdim):
                                    col = self.tail(t, k, b)
                                    row[col] = row.get(col, ZERO) + base * ik
                                    ik *= i
                for ci, (g, _) in enumerate(self.columns):
                    val = g[a].value(n, bits)
                    if val:
                        row[self.c_offset + ci] = val
                rows.append(row)
        # tail identities: coefficient of n^l rho^n for n >= H + hi
        for t, (r, kdim) in enumerate(self.roots):
            rv = rvals[t]
            for a in range(d):
                for l in range(kdim):
                    row = {}
                    for b in range(d):
                        for j, coef in P[a, b].items():
                            f = coef * (rv ** (-j) if j else ONE)
                            for k in range(l, kdim):
                                w = comb(k, l) * (-j) ** (k - l)
                                if w:
                                    col = self.tail(t, k, b)
                                    row[col] = row.get(col, ZERO) + f * w
                    for ci, (g, _) in enumerate(self.columns):
                        for s, q in g[a].tails:
                            if s == r and l < len(q):
                                row[self.c_offset + ci] = row.get(self.c_offset + ci, ZERO) + q[l]
                    rows.append(row)
        # inner-product rows
        for ci, (_, v) in enumerate(self.columns):
            if v is None:
                continue
            row = self._inner_row(v, bits, rvals, -ONE)
            row[self.c_offset + ci] = row.get(self.c_offset + ci, ZERO) + ONE
            rows.append(row)
        for w in self.orth:
            rows.append(self._inner_row(w, bits, rvals, ONE))
        return rows

    def _inner_row(self, v, bits, rvals, sign) -> dict:
        """Coefficients of ``sign * <x, v>`` in the unknowns."""
        H = self.H
        row: dict = {}
        for b in range(self.d):
            vb = v[b]
            for n in range(min(H, len(vb.head))):
                c = vb.head[n]
                if c:
                    row[self.head(b, n)] = sign * c.conjugate()
            for n in range(len(vb.head), H):
                c = vb.tail_value(n, bits) if vb.tails else ZERO
                if c:
                    row[self.head(b, n)] = sign * c.conjugate()
            for t, (_, kdim) in enumerate(self.roots):
                for k in range(kdim):
                    acc = ZERO
                    for s, q in vb.tails:
                        w = rvals[t] * root_value(s, bits).conjugate()
                        for l, c in enumerate(q):
                            if c:
                                acc = acc + c.conjugate() * tail_power_sum(k + l, w, H)
                    if acc:
                        row[self.tail(t, k, b)] = sign * acc
        return row

    def vectors(self, basis) -> list:
        out = []
        for vec in basis:
            comps = []
            for b in range(self.d):
                head = [vec[self.head(b, i)] for i in range(self.H)]
                tails = [(r, [vec[self.tail(t, k, b)] for k in range(kdim)])
                         for t, (r, kdim) in enumerate(self.roots)]
                comps.append(ExpPolyVector(head, tails))
            out.append(tuple(comps))
        return out


def solve_kernel(P: MatrixSymbol, columns: Sequence = (), orth: Sequence = (),
                 precision: int = DEFAULT_PRECISION, lower: int = 0) -> list:
    """Basis of ``{x in l^2 : T(P) x + sum_i c_i g_i = 0}`` (x-parts).

    ``columns`` holds pairs ``(g, v)``: with ``v`` given the scalar is tied to
    ``c = <x, v>`` (a perturbation term ``g (x) v``); with ``v = None`` it is a
    free bordering unknown. ``orth`` adds constraints ``<x, w> = 0``.
    ``lower`` is a known lower bound on the dimension, used to certify ball
    ranks.
    """
    if det_symbol(P).is_zero():
        raise ValueError("kernel engine needs a nonzero determinant")
    d = P.dim
    m, M = max(0, -P.low), max(0, P.high)
    char = _decaying_roots(P)
    kdims: dict = {}
    order = []
    for r, mult in char:
        kdims[r] = mult
        order.append(r)
    extra: dict = {}
    heads = [0]
    for g, v in columns:
        for comp in g:
            heads.append(len(comp.head))
            for r, q in comp.tails:
                extra[r] = max(extra.get(r, 0), len(q))
                if r not in kdims:
                    kdims[r] = 0
                    order.append(r)
        if v is not None:
            heads.extend(len(c.head) for c in v)
    for w in orth:
        heads.extend(len(c.head) for c in w)
    roots = [(r, kdims[r] + extra.get(r, 0)) for r in order]
    roots = [(r, k) for r, k in roots if k > 0]
    H = max(heads) + 2 * d * (m + M) + 1

    system = _System(P, list(columns), list(orth), roots, H)
    exact = (all(isinstance(r, Gauss) for r, _ in roots)
             and all(_is_exact_block(g) and (v is None or _is_exact_block(v)) for g, v in columns)
             and all(_is_exact_block(w) for w in orth))
    if exact:
        _, basis = sparse_nullspace(system.rows(precision), system.ncols)
        return system.vectors(basis)
    last = None
    for bits in precision_ladder(precision):
        with working_precision(bits):
            rows = system.rows(bits)
            dense = [[row.get(c, ZERO) for c in range(system.ncols)] for row in rows]
            rk, basis = ball_elimination(dense, system.ncols)
        nullity = system.ncols - rk
        if nullity == lower:
            with working_precision(bits):
                return system.vectors(basis)
        last = nullity
    raise PrecisionExhausted(
        f"kernel rank not certified at {precision} bits (nullity bound {last}, known lower bound {lower})"
    )


def _perturbation_columns(T: BetOperator) -> list:
    return [(u, v) for u, v in T.perturbation]


def kernel_data(T: BetOperator, precision: int = DEFAULT_PRECISION, lower: int | None = None):
    """``(alpha, basis)`` for a semi-Fredholm operator in the class."""
    det = det_symbol(T.symbol)
    if det.is_zero() or circle_zero_test(det):
        raise CircleZero("kernel_data needs a determinant free of zeros on the unit circle")
    if lower is None:
        lower = max(0, -winding_number(det))
    try:
        basis = solve_kernel(T.symbol, _perturbation_columns(T), precision=precision, lower=lower)
    except PrecisionExhausted:
        better = _triangular_lower_bound(T, precision)
        if better <= lower:
            raise
        basis = solve_kernel(T.symbol, _perturbation_columns(T), precision=precision, lower=better)
    return len(basis), basis


def _triangular_lower_bound(T: BetOperator, precision: int) -> int:
    """Exact lower bound on the kernel of a block triangular operator.

    With ``D1`` the diagonal block whose kernel embeds and ``D2`` the other one,
    ``N(T)`` maps onto ``{y in N(D2) : Cy in R(D1)}`` with kernel ``N(D1)``, so
    ``alpha(T) >= alpha(D1) + alpha(D2) - beta(D1)``.
    """
    if T.dim != 2:
        return 0
    best = 0
    for first, second, (r, c) in ((0, 1, (1, 0)), (1, 0, (0, 1))):
        if not _vanishing_block(T, r, c):
            continue
        D1, D2 = _diagonal_block(T, first), _diagonal_block(T, second)
        a1, _ = kernel_data(D1, precision)
        a2, _ = kernel_data(D2, precision)
        b1 = a1 + winding_number(D1.symbol[0, 0])
        best = max(best, a1 + max(0, a2 - b1))
    return best


def _coburn(T: BetOperator):
    """Scalar Toeplitz with nonvanishing symbol on the circle: one of alpha, beta is zero."""
    ind = -winding_number(T.symbol[0, 0])
    return max(0, ind), max(0, -ind), ind


def _alpha_of_power(T: BetOperator, k: int, ind: int, precision: int, cache: dict) -> int:
    if k == 0:
        return 0
    if k not in cache:
        Tk = T
        start = 1
        prev = [j for j in cache if isinstance(j, int)]
        if prev:
            start = max(prev)
            Tk = cache[("op", start)]
        for j in range(start + 1, k + 1):
            Tk = bet_compose(Tk, T, precision)
            cache[("op", j)] = Tk
        cache[("op", 1)] = T
        op = cache.get(("op", k), T)
        # kernels of successive powers are nested
        alpha, _ = kernel_data(op, precision, lower=max(0, k * ind, cache.get(k - 1, 0)))
        cache[k] = alpha
    return cache[k]


def _vanishing_block(T: BetOperator, i: int, j: int) -> bool:
    """Is the ``(i, j)`` block of a 2x2 block operator structurally zero?"""
    if not T.symbol[i, j].is_zero():
        return False
    return all(u[i].is_zero() or v[j].is_zero() for u, v in T.perturbation)


def _diagonal_block(T: BetOperator, i: int) -> BetOperator:
    terms = tuple(((u[i],), (v[i],)) for u, v in T.perturbation if not (u[i].is_zero() or v[i].is_zero()))
    return BetOperator(MatrixSymbol.scalar(T.symbol[i, i]), terms)


def _diagonal_ascent_infinite(T: BetOperator, cap: int, precision: int) -> bool:
    """For ``[[A, C], [0, B]]`` the kernels of ``A^k`` sit inside those of ``T^k``,
    so infinite ascent of ``A`` forces infinite ascent of ``T``; dually for the
    lower triangular shape with ``B``.
    """
    if T.dim != 2:
        return False
    for i, (r, c) in ((0, (1, 0)), (1, (0, 1))):
        if not _vanishing_block(T, r, c):
            continue
        D = _diagonal_block(T, i)
        fd = fredholm_data(D, cap, precision, with_ascent=False, with_basis=False)
        if fd.semi_fredholm and _ascent(D, fd.alpha.value, fd.index, cap, precision).is_infinite:
            return True
    return False


def _ascent(T: BetOperator, alpha1: int, ind: int, cap: int, precision: int) -> ExtNat:
    if alpha1 == 0:
        return Finite(0)
    if ind > 0:
        return INFINITE
    if T.dim == 1 and T.is_pure_toeplitz():
        return INFINITE if alpha1 > 0 else Finite(0)
    if _diagonal_ascent_infinite(T, cap, precision):
        return INFINITE
    cache: dict = {1: alpha1, ("op", 1): T}
    for k in range(1, cap + 1):
        a_k = _alpha_of_power(T, k, ind, precision, cache)
        a_next = _alpha_of_power(T, k + 1, ind, precision, cache)
        if a_k == a_next:
            return Finite(k)
    return ExceedsCap(cap)


def asc_des(T: BetOperator, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION,
            data: FredholmData | None = None) -> tuple[ExtNat, ExtNat]:
    """Ascent and descent with index shortcuts; descent is the ascent of the adjoint."""
    if data is None:
        data = fredholm_data(T, cap, precision, with_ascent=False)
    if not data.semi_fredholm:
        return ExceedsCap(0), ExceedsCap(0)
    ind = data.index
    asc = _ascent(T, data.alpha.value, ind, cap, precision)
    if ind < 0:
        des = INFINITE
    else:
        des = _ascent(bet_adjoint(T), data.beta.value, -ind, cap, precision)
    return asc, des


def fredholm_data(T: BetOperator, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION,
                  with_ascent: bool = True, with_basis: bool = True) -> FredholmData:
    det = det_symbol(T.symbol)
    if det.is_zero():
        data = FredholmData(INFINITE, INFINITE, None, False)
        if with_ascent and T.symbol == MatrixSymbol.zero(T.dim) and T.is_exact():
            data.ascent, data.descent = _finite_rank_asc_des(T)
        return data
    if circle_zero_test(det):
        try:
            _, basis = _kernel_any(T, precision)
            alpha = Finite(len(basis))
        except PrecisionExhausted:
            alpha, basis = ExceedsCap(0), []
        return FredholmData(alpha, INFINITE, None, False, basis)
    if T.dim == 1 and T.is_pure_toeplitz() and not with_basis:
        a, b, ind = _coburn(T)
        data = FredholmData(Finite(a), Finite(b), ind, True)
    else:
        ind = -winding_number(det)
        alpha, basis = kernel_data(T, precision, lower=max(0, ind))
        data = FredholmData(Finite(alpha), Finite(alpha - ind), ind, True, basis)
    if with_ascent:
        data.ascent, data.descent = asc_des(T, cap, precision, data)
    return data


def _finite_rank_asc_des(T: BetOperator) -> tuple[ExtNat, ExtNat]:
    """A finite-rank ``T`` is ``F (+) 0`` on ``W (+) W^perp`` with ``W`` spanned by its factors."""
    W: list = []
    for u, v in T.perturbation:
        for w in (u, v):
            trial = W + [w]
            G = [[block_inner(a, b) for a in trial] for b in trial]
            if rank(RationalMatrix.from_rows(G)) == len(trial):
                W = trial
    if not W:
        return Finite(1), Finite(1)
    G = RationalMatrix.from_rows([[block_inner(a, b) for a in W] for b in W])
    cols = []
    for w in W:
        image = T.apply(w)
        cols.append(solve(G, [block_inner(image, b) for b in W]))
    F = RationalMatrix.from_rows([[cols[j][i] for j in range(len(W))] for i in range(len(W))])
    a, d = matrix_asc_des(F)
    # the zero part on the infinite-dimensional complement forces both to be at least 1
    return Finite(max(a, 1)), Finite(max(d, 1))


def _kernel_any(T: BetOperator, precision: int):
    """Kernel of an operator whose symbol may vanish on the circle (no lower bound beyond 0)."""
    basis = solve_kernel(T.symbol, _perturbation_columns(T), precision=precision, lower=0)
    return len(basis), basis
