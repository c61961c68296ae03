"""Banded eventually-Toeplitz operators: Toeplitz(matrix symbol) + finite rank.

A :class:`BetOperator` of symbol dimension ``d`` acts on ``(l^2)^d``. Vectors
in that space are tuples of ``d`` :class:`ExpPolyVector` components; the
perturbation is a list of rank-one terms ``u (x) v : x -> <x, v> u``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, SpecParseError
from .expoly import DEFAULT_PRECISION, ExpPolyVector, inner, parse_vector, toeplitz_apply
from .gauss import ONE, ZERO, Gauss, as_gauss
from .linalg import RationalMatrix, kernel_basis, rank, solve
from .symbol import LaurentSymbol, MatrixSymbol, det_symbol, parse_symbol

__all__ = [
    "BetOperator",
    "BlockVector",
    "bet_add",
    "bet_scale",
    "bet_compose",
    "bet_adjoint",
    "bet_power",
    "translate",
    "assemble_MC",
    "block_inner",
    "block_combine",
    "block_scale",
    "symbol_apply",
    "normalize",
    "windows_equal",
    "toeplitz",
    "identity",
    "zero_operator",
    "rank_one",
    "parse_operator",
    "load_operator",
]

BlockVector = tuple  # tuple of d ExpPolyVector


def _zero_block(d: int) -> BlockVector:
    return tuple(ExpPolyVector() for _ in range(d))


def block_inner(x: BlockVector, y: BlockVector, prec: int = DEFAULT_PRECISION):
    acc = ZERO
    for a, b in zip(x, y):
        if not (a.is_zero() or b.is_zero()):
            acc = acc + inner(a, b, prec)
    return acc


def block_combine(x: BlockVector, y: BlockVector, a, b, prec: int = DEFAULT_PRECISION) -> BlockVector:
    return tuple(u.combine(v, a, b, prec) for u, v in zip(x, y))


def block_scale(x: BlockVector, c, prec: int = DEFAULT_PRECISION) -> BlockVector:
    return tuple(u.scale(c, prec) for u in x)


def block_is_zero(x: BlockVector) -> bool:
    return all(u.is_zero() for u in x)


def block_is_exact(x: BlockVector) -> bool:
    return all(u.is_exact() for u in x)


def symbol_apply(P: MatrixSymbol, x: BlockVector, prec: int = DEFAULT_PRECISION) -> BlockVector:
    out = []
    for a in range(P.dim):
        acc = ExpPolyVector()
        for b in range(P.dim):
            if not P[a, b].is_zero() and not x[b].is_zero():
                acc = acc.combine(toeplitz_apply(P[a, b], x[b], prec), ONE, ONE, prec)
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class BetOperator:
    symbol: MatrixSymbol
    perturbation: tuple = ()  # tuple of (u: BlockVector, v: BlockVector)

    def __post_init__(self):
        d = self.symbol.dim
        for u, v in self.perturbation:
            if len(u) != d or len(v) != d:
                raise DimensionMismatch("perturbation factor has the wrong number of components")

    @property
    def dim(self) -> int:
        return self.symbol.dim

    def is_pure_toeplitz(self) -> bool:
        return not self.perturbation

    def is_exact(self) -> bool:
        return all(block_is_exact(u) and block_is_exact(v) for u, v in self.perturbation)

    def apply(self, x: BlockVector, prec: int = DEFAULT_PRECISION) -> BlockVector:
        y = symbol_apply(self.symbol, x, prec)
        for u, v in self.perturbation:
            c = block_inner(x, v, prec)
            if c:
                y = block_combine(y, u, ONE, c, prec)
        return y

    def entry(self, a: int, n: int, b: int, k: int, prec: int = DEFAULT_PRECISION):
        """Matrix entry from component ``b`` index ``k`` to component ``a`` index ``n``."""
        val = self.symbol[a, b][n - k]
        for u, v in self.perturbation:
            uv = u[a].value(n, prec)
            if uv:
                val = val + uv * v[b].value(k, prec).conjugate()
        return val

    def window(self, N: int, prec: int = DEFAULT_PRECISION) -> list[list]:
        """Dense ``dN x dN`` section, component-major (rows ``a*N + n``)."""
        d = self.dim
        M = [[ZERO] * (d * N) for _ in range(d * N)]
        for a in range(d):
            for b in range(d):
                for j, c in self.symbol[a, b].items():
                    for n in range(max(0, j), min(N, N + j)):
                        M[a * N + n][b * N + n - j] = c
        for u, v in self.perturbation:
            uw = [x.window(N, prec) for x in u]
            vw = [[c.conjugate() for c in x.window(N, prec)] for x in v]
            for a in range(d):
                for n, un in enumerate(uw[a]):
                    if not un:
                        continue
                    for b in range(d):
                        row = M[a * N + n]
                        for k, vk in enumerate(vw[b]):
                            if vk:
                                row[b * N + k] = row[b * N + k] + un * vk
        return M

    def to_json(self) -> dict:
        return {
            "symbol": self.symbol.to_json(),
            "perturbation": [
                {"u": _block_json(u), "v": _block_json(v)} for u, v in self.perturbation
            ],
        }

    def __str__(self):
        if self.dim == 1:
            s = f"T({self.symbol[0, 0]})"
        else:
            s = "T([" + "; ".join(", ".join(str(e) for e in r) for r in self.symbol.entries) + "])"
        if self.perturbation:
            s += f" + rank<={len(self.perturbation)}"
        return s


def _block_json(x: BlockVector):
    return x[0].to_json() if len(x) == 1 else [c.to_json() for c in x]


# -- constructors ---------------------------------------------------------

def toeplitz(p) -> BetOperator:
    if isinstance(p, MatrixSymbol):
        return BetOperator(p)
    if not isinstance(p, LaurentSymbol):
        p = LaurentSymbol(p)
    return BetOperator(MatrixSymbol.scalar(p))


def identity(dim: int = 1) -> BetOperator:
    return BetOperator(MatrixSymbol.identity(dim))


def zero_operator(dim: int = 1) -> BetOperator:
    return BetOperator(MatrixSymbol.zero(dim))


def rank_one(u, v) -> BetOperator:
    """Scalar operator ``u (x) v``; ``u``, ``v`` are ExpPolyVectors (or blocks)."""
    if isinstance(u, ExpPolyVector):
        u, v = (u,), (v,)
    return BetOperator(MatrixSymbol.zero(len(u)), ((tuple(u), tuple(v)),))


# -- algebra ---------------------------------------------------------------

def _check(S: BetOperator, T: BetOperator):
    if S.dim != T.dim:
        raise DimensionMismatch(f"operators act on (l2)^{S.dim} and (l2)^{T.dim}")


def bet_add(S: BetOperator, T: BetOperator, prec: int = DEFAULT_PRECISION) -> BetOperator:
    _check(S, T)
    return normalize(BetOperator(S.symbol + T.symbol, S.perturbation + T.perturbation), prec)


def bet_scale(T: BetOperator, c, prec: int = DEFAULT_PRECISION) -> BetOperator:
    c = as_gauss(c)
    if not c:
        return zero_operator(T.dim)
    return BetOperator(T.symbol.scale(c), tuple((block_scale(u, c, prec), v) for u, v in T.perturbation))


def bet_adjoint(T: BetOperator) -> BetOperator:
    return BetOperator(T.symbol.adjoint(),
                       tuple((v, u) for u, v in T.perturbation))


def _hankel_correction(P: MatrixSymbol, Q: MatrixSymbol, prec: int) -> tuple:
    """Rank-one terms of ``T(P) T(Q) - T(PQ)`` (one per input coordinate)."""
    d = P.dim
    hi = max(0, P.high)
    lo = min(0, Q.low)
    if hi == 0 or lo == 0:
        return ()
    terms = []
    # column (c, k): sum_b sum_l H(P_ab)[j, l] H(Q~_bc)[l, k]
    for c in range(d):
        for k in range(-lo):
            cols = []
            nonzero = False
            for a in range(d):
                col = [ZERO] * hi
                for b in range(d):
                    Pab, Qbc = P[a, b], Q[b, c]
                    if Pab.is_zero() or Qbc.is_zero():
                        continue
                    for l in range(hi):
                        qv = Qbc[-l - k - 1]
                        if not qv:
                            continue
                        for j in range(hi):
                            pv = Pab[j + l + 1]
                            if pv:
                                col[j] = col[j] + pv * qv
                vec = ExpPolyVector([-x for x in col])
                nonzero = nonzero or not vec.is_zero()
                cols.append(vec)
            if nonzero:
                e = tuple(ExpPolyVector.basis(k) if cc == c else ExpPolyVector() for cc in range(d))
                terms.append((tuple(cols), e))
    return tuple(terms)


def bet_compose(S: BetOperator, T: BetOperator, prec: int = DEFAULT_PRECISION) -> BetOperator:
    """Exact product ``S T`` in the class."""
    _check(S, T)
    P, Q = S.symbol, T.symbol
    terms = list(_hankel_correction(P, Q, prec))
    Qadj = Q.adjoint()
    for u, v in T.perturbation:
        terms.append((symbol_apply(P, u, prec), v))
    for u, v in S.perturbation:
        terms.append((u, symbol_apply(Qadj, v, prec)))
    for u, v in S.perturbation:
        for u2, v2 in T.perturbation:
            c = block_inner(u2, v, prec)
            if c:
                terms.append((block_scale(u, c, prec), v2))
    return normalize(BetOperator(P @ Q, tuple(terms)), prec)


def bet_power(T: BetOperator, k: int, prec: int = DEFAULT_PRECISION) -> BetOperator:
    out = identity(T.dim)
    for _ in range(k):
        out = bet_compose(out, T, prec)
    return out


def translate(T: BetOperator, lam) -> BetOperator:
    lam = as_gauss(lam)
    if not lam:
        return T
    return BetOperator(T.symbol.translate(lam), T.perturbation)


def assemble_MC(A: BetOperator, B: BetOperator, C: BetOperator) -> BetOperator:
    for name, X in (("A", A), ("B", B), ("C", C)):
        if X.dim != 1:
            raise DimensionMismatch(f"{name} must act on a single copy of l2")
    zero = LaurentSymbol()
    sym = MatrixSymbol(2, ((A.symbol[0, 0], C.symbol[0, 0]), (zero, B.symbol[0, 0])))
    z = ExpPolyVector()
    terms = []
    for u, v in A.perturbation:
        terms.append(((u[0], z), (v[0], z)))
    for u, v in C.perturbation:
        terms.append(((u[0], z), (z, v[0])))
    for u, v in B.perturbation:
        terms.append(((z, u[0]), (z, v[0])))
    return BetOperator(sym, tuple(terms))


# -- normalization ---------------------------------------------------------

def _independent_combination(vecs: list, prec: int):
    """Basis indices of ``vecs`` and coefficients writing each vector in that basis.

    Exact vectors only: the Gram matrix decides independence exactly.
    """
    n = len(vecs)
    G = [[block_inner(vecs[i], vecs[j], prec) for j in range(n)] for i in range(n)]
    chosen: list[int] = []
    for i in range(n):
        trial = chosen + [i]
        M = RationalMatrix.from_rows([[G[a][b] for b in trial] for a in trial])
        if rank(M) == len(trial):
            chosen = trial
    coeffs = []
    Gc = RationalMatrix.from_rows([[G[b][a] for b in chosen] for a in chosen]) if chosen else None
    for i in range(n):
        if i in chosen:
            coeffs.append([ONE if c == i else ZERO for c in chosen])
            continue
        # vec_i = sum_k a_k vec_{chosen_k}: <vec_i, vec_m> = sum_k a_k <vec_k, vec_m>
        rhs = [G[i][m] for m in chosen]
        a = solve(Gc, rhs) if chosen else []
        coeffs.append(a)
    return chosen, coeffs


def normalize(T: BetOperator, prec: int = DEFAULT_PRECISION) -> BetOperator:
    """Drop zero terms; compress exact perturbations to at most their rank."""
    terms = [(u, v) for u, v in T.perturbation if not (block_is_zero(u) or block_is_zero(v))]
    if len(terms) <= 1 or not all(block_is_exact(u) and block_is_exact(v) for u, v in terms):
        return BetOperator(T.symbol, tuple(terms))
    d = T.dim
    for side in (0, 1):
        if len(terms) <= 1:
            break
        vecs = [t[side] for t in terms]
        chosen, coeffs = _independent_combination(vecs, prec)
        new = []
        for k, idx in enumerate(chosen):
            other = _zero_block(d)
            for i, t in enumerate(terms):
                a = coeffs[i][k]
                if a:
                    # (a b) (x) w = b (x) conj(a) w, and symmetrically on the v side
                    other = block_combine(other, t[1 - side], ONE, a.conjugate(), prec)
            if not block_is_zero(other):
                new.append((vecs[idx], other) if side == 0 else (other, vecs[idx]))
        terms = new
    return BetOperator(T.symbol, tuple(terms))


# -- JSON ------------------------------------------------------------------

def _parse_block(obj, d: int, path: str) -> BlockVector:
    if d == 1:
        return (parse_vector(obj, path),)
    if not isinstance(obj, list) or len(obj) != d:
        raise SpecParseError(f"block vector needs {d} components", path=path)
    return tuple(parse_vector(o, f"{path}[{k}]") for k, o in enumerate(obj))


def parse_operator(obj, path: str = "$") -> BetOperator:
    """Operator spec ``{"symbol": ..., "perturbation": [{"u": ..., "v": ...}]}``.

    A 2x2 block operator gives ``symbol`` as a 2x2 list of symbols and each
    ``u``/``v`` as a list of two vector specs.
    """
    if not isinstance(obj, dict) or "symbol" not in obj:
        raise SpecParseError("operator spec needs a 'symbol' field", path=path)
    unknown = set(obj) - {"symbol", "perturbation"}
    if unknown:
        raise SpecParseError(f"unknown operator keys {sorted(unknown)}", path=path)
    sym = obj["symbol"]
    if isinstance(sym, list):
        d = len(sym)
        if d not in (1, 2) or any(not isinstance(r, list) or len(r) != d for r in sym):
            raise SpecParseError("matrix symbol must be 1x1 or 2x2", path=f"{path}.symbol")
        P = MatrixSymbol(d, tuple(tuple(parse_symbol(e, f"{path}.symbol[{i}][{j}]") for j, e in enumerate(r))
                                  for i, r in enumerate(sym)))
    else:
        P = MatrixSymbol.scalar(parse_symbol(sym, f"{path}.symbol"))
    terms = []
    for t, term in enumerate(obj.get("perturbation", [])):
        tp = f"{path}.perturbation[{t}]"
        if not isinstance(term, dict) or set(term) != {"u", "v"}:
            raise SpecParseError("perturbation term needs exactly 'u' and 'v'", path=tp)
        terms.append((_parse_block(term["u"], P.dim, f"{tp}.u"), _parse_block(term["v"], P.dim, f"{tp}.v")))
    return BetOperator(P, tuple(terms))


def load_operator(path: str) -> BetOperator:
    with open(path) as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, line=exc.lineno, column=exc.colno, path=path) from None
    return parse_operator(obj)


def windows_equal(S: BetOperator, T: BetOperator, N: int, prec: int = DEFAULT_PRECISION) -> bool:
    return S.window(N, prec) == T.window(N, prec)


def operator_det(T: BetOperator) -> LaurentSymbol:
    return det_symbol(T.symbol)
