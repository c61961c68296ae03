"""Certified ball arithmetic on top of Arb (python-flint ``acb``).

Arb keeps its working precision in a process-global context; every entry
point here takes the precision explicitly and scopes the global setting to
the call with :func:`working_precision`.
"""

from __future__ import annotations

from contextlib import contextmanager

from flint import acb, ctx

from .errors import PrecisionExhausted
from .gauss import Gauss

MIN_PRECISION = 64


@contextmanager
def working_precision(bits: int):
    old = ctx.prec
    ctx.prec = int(bits)
    try:
        yield
    finally:
        ctx.prec = old


def precision_ladder(max_bits: int):
    """Working precisions tried in turn: 64, 128, ... up to ``max_bits``."""
    bits = MIN_PRECISION
    while bits < max_bits:
        yield bits
        bits *= 2
    yield max_bits


def to_ball(x):
    if isinstance(x, acb):
        return x
    if isinstance(x, Gauss):
        return x.to_acb()
    return acb(x)


def is_ball(x) -> bool:
    return isinstance(x, acb)


def certainly_zero(x) -> bool:
    if isinstance(x, acb):
        return x.is_zero()
    return not x


def certainly_nonzero(x) -> bool:
    if isinstance(x, acb):
        return not x.contains(0)
    return bool(x)


def abs_less_than_one(x) -> bool:
    """Certified ``|x| < 1``; raises PrecisionExhausted when the ball straddles the circle."""
    if isinstance(x, Gauss):
        return x.abs2() < 1
    a = abs(x)
    if a < 1:
        return True
    if a > 1:
        return False
    raise PrecisionExhausted(f"cannot separate |{x}| from 1")


def ball_to_json(x) -> dict:
    mid = x.mid()
    return {
        "mid": [mid.real.str(40, radius=False), mid.imag.str(40, radius=False)],
        "rad": x.rad().str(5, radius=False),
    }


def ball_elimination(rows: list[list], ncols: int):
    """Certified-rank elimination with full pivoting on a dense ball matrix.

    Returns ``(rank, basis)`` where ``rank`` is a certified lower bound for
    the rank of every matrix enclosed by the input, and ``basis`` encloses a
    null-space basis of the pivot rows. When the true rank equals the
    returned rank, ``basis`` encloses a basis of the true null space.
    """
    m = [[to_ball(x) for x in r] for r in rows]
    nrows = len(m)
    col_perm = list(range(ncols))
    r = 0
    while r < min(nrows, ncols):
        best = None
        best_mag = None
        for i in range(r, nrows):
            row = m[i]
            for j in range(r, ncols):
                x = row[j]
                if x.contains(0):
                    continue
                mag = abs(x).lower()
                if best is None or mag > best_mag:
                    best, best_mag = (i, j), mag
        if best is None:
            break
        i, j = best
        m[r], m[i] = m[i], m[r]
        if j != r:
            for row in m:
                row[r], row[j] = row[j], row[r]
            col_perm[r], col_perm[j] = col_perm[j], col_perm[r]
        piv = m[r][r]
        inv = 1 / piv
        prow = [x * inv for x in m[r]]
        m[r] = prow
        for k in range(r + 1, nrows):
            f = m[k][r]
            if f.is_zero():
                continue
            row = m[k]
            for c in range(r, ncols):
                row[c] = row[c] - f * prow[c]
        r += 1
    rank = r
    basis = []
    for f in range(rank, ncols):
        x = [acb(0)] * ncols
        x[f] = acb(1)
        for p in range(rank - 1, -1, -1):
            s = acb(0)
            row = m[p]
            for c in range(p + 1, ncols):
                if not x[c].is_zero():
                    s += row[c] * x[c]
            x[p] = -s
        vec = [acb(0)] * ncols
        for pos, orig in enumerate(col_perm):
            vec[orig] = x[pos]
        basis.append(vec)
    return rank, basis
