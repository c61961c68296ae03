"""Completions of upper-triangular operator matrices ``M_C = [[A, C], [0, B]]``.

Everything constructed here is finite rank with ExpPolyVector factors in the
original coordinates; the compressions of ``A`` and ``B`` to the pieces of
their decompositions are used for bookkeeping only and never materialized.

Decompositions (orthogonal complements throughout):

* ``X = X1 + X2`` with ``X1 = N(A^p)``, ``p = asc(A)``; ``A`` is nilpotent on
  ``X1`` and its compression ``A2`` to ``X2`` is injective with closed range.
* ``Y = Y1 + Y2`` with ``Y1 = R(B^q)``, ``q = des(B)``, ``Y2 = N(B*^q)``; the
  restriction ``B1`` of ``B`` to ``Y1`` is onto.

``M_C`` is Browder as soon as the compression of ``C`` mapping
``F = N(B1) = N(B) cap Y1`` into ``E = R(A2)^perp`` (inside ``X2``) is
invertible: the middle block ``[[A2, *], [0, B1]]`` is then invertible and the
outer diagonal blocks are nilpotent and finite dimensional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .balls import certainly_zero
from .classify import OperatorClass, Tri, classify_data, tri_of
from .errors import (
    ClosedRangeUnknown,
    DimensionCheckFailed,
    NotLeftSemiBrowder,
    NotRightSemiBrowder,
    PrecisionExhausted,
    PreconditionFailed,
)
from .expoly import DEFAULT_PRECISION, ExpPolyVector
from .fmat import full_rank, is_exact, is_zero_matrix, mat_from_json, mat_to_json, meye, mpow, msolve, mrank
from .fredholm import DEFAULT_CAP, ExtNat, FredholmData, Finite, fredholm_data, kernel_data, solve_kernel
from .gauss import ONE, ZERO
from .operator import (
    BetOperator,
    assemble_MC,
    bet_adjoint,
    bet_compose,
    bet_power,
    block_combine,
    block_inner,
    block_scale,
    identity,
    parse_operator,
)
from .roots import modulus_key
from .symbol import MatrixSymbol

__all__ = [
    "OperatorInfo",
    "operator_info",
    "exists_completion",
    "LeftDecomposition",
    "RightDecomposition",
    "CompletionCertificate",
    "VerificationResult",
    "left_decompose",
    "right_decompose",
    "construct_browder_C",
    "construct_invertible_C",
    "corner_tests",
    "verify_certificate",
    "certificate_from_json",
    "browder_by_classification",
]


# -- operator summaries ---------------------------------------------------

@dataclass
class OperatorInfo:
    data: FredholmData
    cls: OperatorClass


def operator_info(T: BetOperator, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION) -> OperatorInfo:
    fd = fredholm_data(T, cap, precision)
    return OperatorInfo(fd, classify_data(fd))


def _tri_clause(flag: Tri, what: str, reasons: list) -> Tri:
    if flag is Tri.NO:
        reasons.append(f"{what} fails")
    elif flag is Tri.UNDECIDED:
        reasons.append(f"{what} undecided")
    return flag


def _balance(a: OperatorInfo, b: OperatorInfo, reasons: list) -> Tri:
    lhs = a.data.alpha + b.data.alpha
    rhs = a.data.beta + b.data.beta
    same = lhs.same_as(rhs)
    if same is None:
        reasons.append("condition (c) undecided: a defect number is not determined")
        return Tri.UNDECIDED
    if not same:
        reasons.append(f"condition (c) fails: alpha(A)+alpha(B) = {lhs} but beta(A)+beta(B) = {rhs}")
    return tri_of(same)


def exists_completion(info_a: OperatorInfo, info_b: OperatorInfo, kind: str) -> tuple[Tri, list[str]]:
    """Is there a ``C`` making ``M_C`` invertible / Weyl / Browder?"""
    reasons: list[str] = []
    if kind == "invertible":
        ans = _tri_clause(info_a.cls.left_invertible, "A left invertible", reasons)
        ans = ans & _tri_clause(info_b.cls.right_invertible, "B right invertible", reasons)
        same = info_a.data.beta.same_as(info_b.data.alpha)
        if same is None:
            reasons.append("beta(A) = alpha(B) undecided")
        elif not same:
            reasons.append(f"beta(A) = {info_a.data.beta} differs from alpha(B) = {info_b.data.alpha}")
        ans = ans & tri_of(same)
    elif kind == "weyl":
        ans = _tri_clause(info_a.cls.left_semi_fredholm, "A left semi-Fredholm", reasons)
        ans = ans & _tri_clause(info_b.cls.right_semi_fredholm, "B right semi-Fredholm", reasons)
        ans = ans & _balance(info_a, info_b, reasons)
    elif kind == "browder":
        ans = _tri_clause(info_a.cls.left_semi_browder, "A left semi-Browder", reasons)
        ans = ans & _tri_clause(info_b.cls.right_semi_browder, "B right semi-Browder", reasons)
        ans = ans & _balance(info_a, info_b, reasons)
    else:
        raise ValueError(f"unknown completion kind {kind!r}")
    return ans, reasons


# -- finite-dimensional helpers on spans of ExpPolyVectors -------------------

def _gram(basis: list, precision: int) -> list:
    """``G[i][j] = <b_j, b_i>``, so coordinates solve ``G c = [<x, b_i>]``."""
    return [[block_inner(basis[j], basis[i], precision) for j in range(len(basis))] for i in range(len(basis))]


def _coordinates(vectors: list, basis: list, precision: int, gram=None) -> list:
    """Matrix whose column ``l`` holds the coordinates of the projection of ``vectors[l]``."""
    if not basis or not vectors:
        return [[ZERO] * len(vectors) for _ in basis]
    G = gram if gram is not None else _gram(basis, precision)
    rhs = [[block_inner(v, b, precision) for v in vectors] for b in basis]
    return msolve(G, rhs)


def _dual_basis(basis: list, precision: int) -> list:
    """``d_k`` in the span with ``<b_l, d_k> = delta_lk``."""
    if not basis:
        return []
    Ginv = msolve(_gram(basis, precision), meye(len(basis)))
    d = len(basis[0])
    out = []
    for k in range(len(basis)):
        acc = tuple(ExpPolyVector() for _ in range(d))
        for m, b in enumerate(basis):
            c = Ginv[m][k]
            if not certainly_zero(c):
                acc = block_combine(acc, b, ONE, c, precision)
        out.append(acc)
    return out


def _matrix_of(T: BetOperator, basis: list, precision: int) -> list:
    images = [T.apply(b, precision) for b in basis]
    return _coordinates(images, basis, precision)


def _order_key(x) -> tuple:
    moduli = [modulus_key(r) for comp in x for r, _ in comp.tails]
    first = min((n for comp in x for n, c in enumerate(comp.head) if not certainly_zero(c)), default=0)
    return (max(moduli) if moduli else 0.0, first)


def _ordered(basis: list) -> list:
    return sorted(basis, key=_order_key)


def _independent_extension(start: list, candidates: list, precision: int) -> list:
    """``start`` (independent) extended greedily by candidates that enlarge the span."""
    out = list(start)
    for c in candidates:
        trial = out + [c]
        G = _gram(trial, precision)
        rk, certain = mrank(G)
        if rk == len(trial):
            out = trial
        elif not certain:
            raise PrecisionExhausted("cannot decide linear independence of completion vectors")
    return out


# -- decompositions ----------------------------------------------------------

@dataclass
class LeftDecomposition:
    p: int
    X1_basis: list
    A1_matrix: list
    alpha_A2: int = 0  # injectivity of the compression, certified by the ascent

    def to_json(self) -> dict:
        return {"p": self.p, "dim_X1": len(self.X1_basis), "A1": mat_to_json(self.A1_matrix)}


@dataclass
class RightDecomposition:
    q: int
    complement_basis: list  # spans N(B*^q) = R(B^q)^perp
    B2_matrix: list  # matrix of B* on the complement (nilpotent)
    beta_B1: int = 0

    def to_json(self) -> dict:
        return {"q": self.q, "dim_Y2": len(self.complement_basis), "B2": mat_to_json(self.B2_matrix)}


def _scalar_dim(T: BetOperator):
    if T.dim != 1:
        raise PreconditionFailed("completion operands act on a single copy of l2", ["dimension"])


def left_decompose(A: BetOperator, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION,
                   info: OperatorInfo | None = None) -> LeftDecomposition:
    info = info or operator_info(A, cap, precision)
    if info.cls.left_semi_browder is not Tri.YES:
        raise NotLeftSemiBrowder("A is not (certifiably) left semi-Browder",
                                 [f"left semi-Browder: {info.cls.left_semi_browder}"])
    p = info.data.ascent.value
    if p == 0:
        return LeftDecomposition(0, [], [])
    ind = info.data.index
    _, basis = kernel_data(bet_power(A, p, precision), precision, lower=max(0, p * ind))
    basis = _ordered(basis)
    return LeftDecomposition(p, basis, _matrix_of(A, basis, precision))


def right_decompose(B: BetOperator, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION,
                    info: OperatorInfo | None = None) -> RightDecomposition:
    info = info or operator_info(B, cap, precision)
    if info.cls.right_semi_browder is not Tri.YES:
        raise NotRightSemiBrowder("B is not (certifiably) right semi-Browder",
                                  [f"right semi-Browder: {info.cls.right_semi_browder}"])
    q = info.data.descent.value
    if q == 0:
        return RightDecomposition(0, [], [])
    Bs = bet_adjoint(B)
    ind = -info.data.index
    _, basis = kernel_data(bet_power(Bs, q, precision), precision, lower=max(0, q * ind))
    basis = _ordered(basis)
    return RightDecomposition(q, basis, _matrix_of(Bs, basis, precision))


def _corner_spaces(A: BetOperator, B: BetOperator, left: LeftDecomposition, right: RightDecomposition,
                   info_a: OperatorInfo, info_b: OperatorInfo, precision: int) -> tuple[list, list]:
    """Bases of ``F = N(B) cap R(B^q)`` and ``E = {x perp N(A^p) : A* x in N(A^p)}``."""
    dim_f = info_b.data.alpha.value - info_b.data.beta.value
    dim_e = info_a.data.beta.value - info_a.data.alpha.value
    F = solve_kernel(B.symbol, list(B.perturbation), orth=right.complement_basis,
                     precision=precision, lower=dim_f)
    As = bet_adjoint(A)
    columns = list(As.perturbation) + [(k, None) for k in left.X1_basis]
    E = solve_kernel(As.symbol, columns, orth=left.X1_basis, precision=precision, lower=dim_e)
    if len(F) != dim_f:
        raise DimensionCheckFailed(f"dim N(B1) = {len(F)} but alpha(B) - beta(B) = {dim_f}")
    if len(E) != dim_e:
        raise DimensionCheckFailed(f"dim R(A2)^perp = {len(E)} but beta(A) - alpha(A) = {dim_e}")
    return _ordered(F), _ordered(E)


def _corner_matrix(C: BetOperator, F: list, E: list, precision: int) -> list:
    images = [C.apply(f, precision) for f in F]
    return _coordinates(images, E, precision)


# -- certificates -----------------------------------------------------------

@dataclass
class CompletionCertificate:
    kind: str  # "browder" | "invertible_C"
    A: BetOperator
    B: BetOperator
    C: BetOperator
    left: LeftDecomposition
    right: RightDecomposition
    corner: list
    dimension_checks: list  # (name, lhs, rhs)
    C_inverse: BetOperator | None = None
    precision: int = DEFAULT_PRECISION
    cap: int = DEFAULT_CAP

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "precision_bits": self.precision,
            "power_cap": self.cap,
            "A": self.A.to_json(),
            "B": self.B.to_json(),
            "C": self.C.to_json(),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "corner": mat_to_json(self.corner),
            "dimension_checks": [
                {"name": n, "lhs": l, "rhs": r, "holds": l == r} for n, l, r in self.dimension_checks
            ],
        }
        if self.C_inverse is not None:
            out["C_inverse"] = self.C_inverse.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def certificate_from_json(obj) -> CompletionCertificate:
    left = LeftDecomposition(int(obj["left"]["p"]), [None] * int(obj["left"]["dim_X1"]),
                             mat_from_json(obj["left"]["A1"]))
    right = RightDecomposition(int(obj["right"]["q"]), [None] * int(obj["right"]["dim_Y2"]),
                               mat_from_json(obj["right"]["B2"]))
    checks = [(c["name"], c["lhs"], c["rhs"]) for c in obj["dimension_checks"]]
    inv = parse_operator(obj["C_inverse"]) if "C_inverse" in obj else None
    return CompletionCertificate(
        obj["kind"], parse_operator(obj["A"]), parse_operator(obj["B"]), parse_operator(obj["C"]),
        left, right, mat_from_json(obj["corner"]), checks, inv,
        int(obj.get("precision_bits", DEFAULT_PRECISION)), int(obj.get("power_cap", DEFAULT_CAP)),
    )


def _dimension_checks(A, B, left, right, F, E, info_a, info_b, precision) -> list:
    ind_a, ind_b = info_a.data.index, info_b.data.index
    alpha_next = kernel_data(bet_power(A, left.p + 1, precision), precision,
                             lower=max(0, (left.p + 1) * ind_a))[0]
    Bs = bet_adjoint(B)
    beta_next = kernel_data(bet_power(Bs, right.q + 1, precision), precision,
                            lower=max(0, -(right.q + 1) * ind_b))[0]
    return [
        ("X1 = N(A^p) is the whole stable kernel", len(left.X1_basis), alpha_next),
        ("beta(A2) = beta(A) - alpha(A)", len(E), info_a.data.beta.value - info_a.data.alpha.value),
        ("Y2 = N(B*^q) is the whole stable cokernel", len(right.complement_basis), beta_next),
        ("alpha(B1) = alpha(B) - beta(B)", len(F), info_b.data.alpha.value - info_b.data.beta.value),
        ("alpha(B1) = beta(A2)", len(F), len(E)),
    ]


def _prepare(A, B, cap, precision):
    _scalar_dim(A)
    _scalar_dim(B)
    info_a = operator_info(A, cap, precision)
    info_b = operator_info(B, cap, precision)
    ans, reasons = exists_completion(info_a, info_b, "browder")
    if ans is not Tri.YES:
        raise PreconditionFailed("no Browder completion: " + "; ".join(reasons), reasons)
    left = left_decompose(A, cap, precision, info_a)
    right = right_decompose(B, cap, precision, info_b)
    F, E = _corner_spaces(A, B, left, right, info_a, info_b, precision)
    checks = _dimension_checks(A, B, left, right, F, E, info_a, info_b, precision)
    for name, lhs, rhs in checks:
        if lhs != rhs:
            raise DimensionCheckFailed(f"{name}: {lhs} != {rhs}")
    return info_a, info_b, left, right, F, E, checks


def construct_browder_C(A: BetOperator, B: BetOperator, cap: int = DEFAULT_CAP,
                        precision: int = DEFAULT_PRECISION) -> tuple[BetOperator, CompletionCertificate]:
    """Finite-rank ``C`` mapping ``N(B1)`` isomorphically onto ``R(A2)^perp`` and vanishing elsewhere."""
    _, _, left, right, F, E, checks = _prepare(A, B, cap, precision)
    duals = _dual_basis(F, precision)
    terms = tuple((e, fd) for e, fd in zip(E, duals))
    C = BetOperator(MatrixSymbol.zero(1), terms)
    corner = _corner_matrix(C, F, E, precision)
    cert = CompletionCertificate("browder", A, B, C, left, right, corner, checks,
                                 precision=precision, cap=cap)
    return C, cert


def _identity_plus(pairs_from: list, pairs_to: list, precision: int) -> BetOperator:
    """``I + sum_i (to_i - from_i) (x) dual(from)_i``: sends ``from_i`` to ``to_i``, identity off their span."""
    duals = _dual_basis(pairs_from, precision)
    terms = []
    for f, t, d in zip(pairs_from, pairs_to, duals):
        diff = block_combine(t, f, ONE, -ONE, precision)
        if not all(c.is_zero() for c in diff):
            terms.append((diff, d))
    return BetOperator(MatrixSymbol.identity(1), tuple(terms))


def _woodbury_inverse(C: BetOperator, precision: int) -> BetOperator | None:
    """Inverse of ``I + sum u_i (x) v_i`` when the capacitance matrix is certifiably invertible."""
    us = [u for u, _ in C.perturbation]
    vs = [v for _, v in C.perturbation]
    n = len(us)
    M = [[(ONE if i == j else ZERO) + block_inner(us[j], vs[i], precision) for j in range(n)] for i in range(n)]
    if full_rank(M, n, n) is not True:
        return None
    Minv = msolve(M, meye(n))
    d = C.dim
    terms = []
    for i in range(n):
        acc = tuple(ExpPolyVector() for _ in range(d))
        for j in range(n):
            if not certainly_zero(Minv[j][i]):
                acc = block_combine(acc, us[j], ONE, -Minv[j][i], precision)
        terms.append((acc, vs[i]))
    return BetOperator(MatrixSymbol.identity(d), tuple(terms))


def construct_invertible_C(A: BetOperator, B: BetOperator, cap: int = DEFAULT_CAP,
                           precision: int = DEFAULT_PRECISION) -> tuple[BetOperator, CompletionCertificate]:
    """Invertible ``C`` whose corner ``N(B1) -> R(A2)^perp`` is the identity in the computed bases.

    First try ``C = I + sum (e_k - f_k) (x) dual(f)_k``, which sends ``f_k`` to
    ``e_k``, is the identity on ``F^perp`` and is invertible exactly when the
    pairing between ``E`` and ``F`` is nondegenerate.  Otherwise ``C`` is the
    identity off ``Z = span(F, E)`` and maps a basis of ``Z`` starting with
    ``F`` onto one starting with ``E``.
    """
    _, _, left, right, F, E, checks = _prepare(A, B, cap, precision)
    C = _identity_plus(F, E, precision)
    C_inv = _woodbury_inverse(C, precision)
    if C_inv is None:
        z_from = _independent_extension(F, E, precision)
        z_to = _independent_extension(E, F, precision)
        if len(z_from) != len(z_to):
            raise DimensionCheckFailed("completed bases of span(F, E) differ in size")
        checks = checks + [("dim span(F, E) from both sides", len(z_from), len(z_to))]
        C = _identity_plus(z_from, z_to, precision)
        C_inv = _identity_plus(z_to, z_from, precision)
    corner = _corner_matrix(C, F, E, precision)
    cert = CompletionCertificate("invertible_C", A, B, C, left, right, corner, checks, C_inv,
                                 precision=precision, cap=cap)
    return C, cert


# -- corner criteria ----------------------------------------------------------

def corner_tests(A: BetOperator, B: BetOperator, C: BetOperator, cap: int = DEFAULT_CAP,
                 precision: int = DEFAULT_PRECISION):
    """Left/right/two-sided invertibility of ``M_C`` from ``A``, ``B`` and the corner of ``C``.

    The corner is the compression of ``C`` from ``N(B)`` into ``R(A)^perp``.
    """
    fa = fredholm_data(A, cap, precision, with_ascent=False)
    fb = fredholm_data(B, cap, precision, with_ascent=False)
    if not fa.semi_fredholm or not fb.semi_fredholm:
        raise ClosedRangeUnknown("corner criteria need A and B with closed range")
    ca, cb = classify_data(fa), classify_data(fb)
    NB = fb.kernel_basis
    _, MA = kernel_data(bet_adjoint(A), precision, lower=max(0, -fa.index))
    C1 = _coordinates([C.apply(n, precision) for n in NB], MA, precision)
    rows, cols = len(MA), len(NB)
    rk, certain = mrank(C1) if rows and cols else (0, True)

    def rank_is(target: int) -> Tri:
        if rk == target:
            return Tri.YES
        return Tri.NO if certain else Tri.UNDECIDED

    col_full = rank_is(cols)
    row_full = rank_is(rows)
    left = ca.left_invertible & col_full
    right = cb.right_invertible & row_full
    inv = ca.left_invertible & cb.right_invertible & col_full & row_full
    return left, right, inv, C1


# -- verification ------------------------------------------------------------

@dataclass
class VerificationResult:
    ok: bool
    reasons: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _matrices_agree(X, Y) -> bool:
    if len(X) != len(Y) or any(len(a) != len(b) for a, b in zip(X, Y)):
        return False
    for a, b in zip(X, Y):
        for x, y in zip(a, b):
            if is_exact([[x]]) and is_exact([[y]]):
                if x != y:
                    return False
            elif not (x - y).contains(0):
                return False
    return True


def _nilpotent_of_degree(M, k: int) -> bool | None:
    """Is ``M^k = 0`` and (for ``k >= 1``) ``M^(k-1) != 0``?"""
    n = len(M)
    if k < 0:
        return False
    if n == 0:
        return k == 0
    top = is_zero_matrix(mpow(M, k))
    if top is not True:
        return top
    if k == 0:
        return True
    below = is_zero_matrix(mpow(M, k - 1))
    return None if below is None else not below


def _is_identity_operator(T: BetOperator, precision: int) -> bool | None:
    if T.symbol != MatrixSymbol.identity(T.dim):
        return False
    if not T.perturbation:
        return True
    if T.is_exact():
        return False
    # Hilbert-Schmidt norm of the finite-rank part must enclose zero
    hs = ZERO
    for u, v in T.perturbation:
        for u2, v2 in T.perturbation:
            hs = hs + block_inner(u, u2, precision) * block_inner(v2, v, precision)
    return None if hs.contains(0) else False


def verify_certificate(cert: CompletionCertificate) -> VerificationResult:
    """Re-derive every recorded fact from ``A``, ``B`` and ``C`` alone."""
    reasons: list[str] = []
    prec, cap = cert.precision, cert.cap
    n_rows = len(cert.corner)
    n_cols = len(cert.corner[0]) if cert.corner else 0
    if n_rows != n_cols or full_rank(cert.corner, n_rows, n_cols) is not True:
        reasons.append("corner not invertible")
    try:
        info_a = operator_info(cert.A, cap, prec)
        info_b = operator_info(cert.B, cap, prec)
        if not (info_a.data.ascent.is_finite and info_b.data.descent.is_finite):
            reasons.append("ascent of A or descent of B is not finite")
            return VerificationResult(False, reasons)
        left = left_decompose(cert.A, cap, prec, info_a)
        right = right_decompose(cert.B, cap, prec, info_b)
        if cert.left.p != left.p or len(cert.left.X1_basis) != len(left.X1_basis):
            reasons.append(f"recorded p = {cert.left.p}, recomputed {left.p}")
        if _nilpotent_of_degree(left.A1_matrix, cert.left.p) is not True:
            reasons.append(f"A1 is not nilpotent of degree {cert.left.p}")
        if cert.right.q != right.q or len(cert.right.complement_basis) != len(right.complement_basis):
            reasons.append(f"recorded q = {cert.right.q}, recomputed {right.q}")
        if _nilpotent_of_degree(right.B2_matrix, cert.right.q) is not True:
            reasons.append(f"B2 is not nilpotent of degree {cert.right.q}")
        F, E = _corner_spaces(cert.A, cert.B, left, right, info_a, info_b, prec)
        checks = _dimension_checks(cert.A, cert.B, left, right, F, E, info_a, info_b, prec)
        for name, lhs, rhs in checks:
            if lhs != rhs:
                reasons.append(f"dimension identity fails: {name} ({lhs} != {rhs})")
        recorded = {n: (l, r) for n, l, r in cert.dimension_checks}
        for name, lhs, rhs in checks:
            if name in recorded and recorded[name] != (lhs, rhs):
                reasons.append(f"recorded dimension data differ for {name}")
        corner = _corner_matrix(cert.C, F, E, prec)
        if not _matrices_agree(corner, cert.corner):
            reasons.append("recorded corner does not match the corner of C")
        if full_rank(corner, len(corner), len(corner[0]) if corner else 0) is not True or len(F) != len(E):
            if "corner not invertible" not in reasons:
                reasons.append("corner not invertible")
        if cert.kind == "invertible_C":
            if cert.C_inverse is None:
                reasons.append("no inverse recorded for C")
            else:
                for prod in (bet_compose(cert.C, cert.C_inverse, prec), bet_compose(cert.C_inverse, cert.C, prec)):
                    if _is_identity_operator(prod, prec) is False:
                        reasons.append("recorded inverse of C does not invert C")
                        break
    except (PreconditionFailed, DimensionCheckFailed, PrecisionExhausted) as exc:
        reasons.append(f"recomputation failed: {exc}")
    return VerificationResult(not reasons, reasons)


def browder_by_classification(A: BetOperator, B: BetOperator, C: BetOperator, cap: int = DEFAULT_CAP,
                              precision: int = DEFAULT_PRECISION) -> Tri:
    """Direct check: classify the assembled ``M_C``."""
    M = assemble_MC(A, B, C)
    return classify_data(fredholm_data(M, cap, precision, with_basis=False)).browder
