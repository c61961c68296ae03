"""Small dense matrices whose entries are exact Gaussian rationals or balls.

Exact matrices go through :mod:`linalg`; anything containing a ball goes
through Arb's ``acb_mat`` or certified elimination.
"""

from __future__ import annotations

from flint import acb, acb_mat

from .balls import ball_elimination, certainly_zero, to_ball
from .errors import PrecisionExhausted
from .gauss import ONE, ZERO, Gauss, as_gauss
from .linalg import RationalMatrix, rank, solve

__all__ = ["is_exact", "mrank", "full_rank", "msolve", "minv", "mmul", "mpow", "mzero", "meye",
           "mat_to_json", "mat_from_json", "is_zero_matrix"]


def is_exact(M) -> bool:
    return all(isinstance(x, Gauss) for r in M for x in r)


def mzero(n: int, m: int) -> list:
    return [[ZERO] * m for _ in range(n)]


def meye(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mmul(A, B) -> list:
    n = len(A)
    k = len(B)
    m = len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if not (certainly_zero(a) or certainly_zero(b)):
                    acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def mpow(A, k: int) -> list:
    out = meye(len(A))
    for _ in range(k):
        out = mmul(out, A)
    return out


def is_zero_matrix(A) -> bool | None:
    """True/False when certain; None when some ball entry straddles zero."""
    unsure = False
    for r in A:
        for x in r:
            if isinstance(x, acb):
                if x.is_zero():
                    continue
                if x.contains(0):
                    unsure = True
                    continue
                return False
            elif x:
                return False
    return None if unsure else True


def mrank(M, ncols: int | None = None) -> tuple[int, bool]:
    """``(rank, certain)``; for ball matrices the rank is a certified lower bound."""
    if not M:
        return 0, True
    if is_exact(M):
        return rank(RationalMatrix.from_rows(M)), True
    rk, _ = ball_elimination([list(r) for r in M], len(M[0]))
    return rk, rk == min(len(M), len(M[0]))


def full_rank(M, rows: int, cols: int) -> bool | None:
    """Is the ``rows x cols`` matrix of full rank ``min(rows, cols)``?  None if undecided."""
    if rows == 0 or cols == 0:
        return True
    rk, certain = mrank(M)
    if rk == min(rows, cols):
        return True
    return False if certain else None


def _to_acb_mat(M):
    return acb_mat([[to_ball(x) for x in r] for r in M])


def msolve(G, B) -> list:
    """``G^{-1} B`` for square invertible ``G``."""
    n = len(G)
    if n == 0:
        return []
    if is_exact(G) and is_exact(B):
        RG = RationalMatrix.from_rows(G)
        cols = []
        for j in range(len(B[0])):
            x = solve(RG, [B[i][j] for i in range(n)])
            if x is None:
                raise ZeroDivisionError("singular Gram matrix")
            cols.append(x)
        return [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    try:
        X = _to_acb_mat(G).solve(_to_acb_mat(B))
    except ZeroDivisionError as exc:
        raise PrecisionExhausted("cannot certify a Gram matrix as invertible") from exc
    return [[X[i, j] for j in range(X.ncols())] for i in range(X.nrows())]


def minv(G) -> list:
    return msolve(G, meye(len(G)))


def mat_to_json(M) -> list:
    from .expoly import coeff_to_json

    return [[coeff_to_json(x) for x in r] for r in M]


def mat_from_json(obj) -> list:
    from .expoly import parse_coeff

    return [[parse_coeff(x, "matrix") for x in r] for r in obj]
