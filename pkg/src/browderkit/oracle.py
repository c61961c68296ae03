"""Seeded finite-dimensional property suites.

Each suite draws random exact matrices and checks an identity or criterion by
brute force.  A failure carries the offending matrices so it can be replayed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .gauss import ZERO, Gauss
from .linalg import RationalMatrix, asc_des, assemble_block, kernel_basis, rank

__all__ = ["SUITES", "ALIASES", "OracleReport", "run_suite", "random_matrix", "finite_classes", "corner_verdicts",
           "product_defect_identity"]


def random_matrix(rng: random.Random, rows: int, cols: int, complex_entries: bool = True) -> RationalMatrix:
    """Random Gaussian-integer matrix, often rank deficient."""
    def entry() -> Gauss:
        im = rng.randint(-2, 2) if complex_entries and rng.random() < 0.3 else 0
        return Gauss(rng.randint(-3, 3), im)

    if rows and cols and rng.random() < 0.5:
        r = rng.randint(0, min(rows, cols))
        L = RationalMatrix(rows, r, tuple(entry() for _ in range(rows * r)))
        R = RationalMatrix(r, cols, tuple(entry() for _ in range(r * cols)))
        return L @ R if r else RationalMatrix.zeros(rows, cols)
    return RationalMatrix(rows, cols, tuple(entry() for _ in range(rows * cols)))


def _fmt(M: RationalMatrix) -> list[list[str]]:
    return [[str(x) for x in M.row(i)] for i in range(M.rows)]


# -- kernel/cokernel bookkeeping for a product --------------------------------

def product_defect_identity(T: RationalMatrix, S: RationalMatrix) -> tuple[int, int]:
    """Both sides of ``a(T) + a(S) + b(ST) = a(ST) + b(T) + b(S)`` for ``T: X->Y``, ``S: Y->Z``.

    ``a`` is the kernel dimension, ``b`` the codimension of the range.
    """
    ST = S @ T
    rt, rs, rst = rank(T), rank(S), rank(ST)
    a_t, b_t = T.cols - rt, T.rows - rt
    a_s, b_s = S.cols - rs, S.rows - rs
    a_st, b_st = ST.cols - rst, ST.rows - rst
    return a_t + a_s + b_st, a_st + b_t + b_s


# -- classes of finite matrices --------------------------------------------

def finite_classes(M: RationalMatrix) -> dict[str, bool]:
    """Membership of a linear map between finite-dimensional spaces in each class.

    Every such map is Fredholm with index ``cols - rows``.  Ascent and descent
    only make sense for maps of a space into itself.
    """
    rk = rank(M)
    square = M.is_square
    out = {
        "invertible": square and rk == M.rows,
        "fredholm": True,
        "weyl": M.cols - rk == M.rows - rk,
    }
    if square:
        asc, des = asc_des(M)
        out["browder"] = asc == des
    else:
        out["browder"] = False
    return out


def _two_of_three(a: bool, b: bool, m: bool) -> bool:
    return [a, b, m].count(True) != 2


# -- corner criterion -------------------------------------------------------

def _inner(x, y) -> Gauss:
    acc = ZERO
    for a, b in zip(x, y):
        if a and b:
            acc = acc + a * b.conjugate()
    return acc


def corner_verdicts(A: RationalMatrix, B: RationalMatrix, C: RationalMatrix) -> tuple[bool, bool, bool]:
    """Left, right and two-sided invertibility of ``[[A, C], [0, B]]`` from the corner of ``C``.

    The corner compresses ``C`` from ``N(B)`` into ``R(A)^perp = N(A^*)``.
    Coordinates relative to the two bases differ from the pairing matrix only
    by an invertible Gram factor, so ranks can be read off the pairing.
    """
    NB = kernel_basis(B)
    MA = kernel_basis(A.conj_transpose())
    pairing = RationalMatrix.from_rows([[_inner(C.apply(n), m) for n in NB] for m in MA], len(NB))
    rk = rank(pairing) if MA and NB else 0
    a_left = rank(A) == A.cols
    b_right = rank(B) == B.rows
    col_full = rk == len(NB)
    row_full = rk == len(MA)
    return a_left and col_full, b_right and row_full, a_left and b_right and col_full and row_full


def _block(A, B, C):
    return assemble_block([[A, C], [RationalMatrix.zeros(B.rows, A.cols), B]])


# -- suites ------------------------------------------------------------------

@dataclass
class OracleReport:
    suite: str
    trials: int
    seed: int
    elapsed: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.suite, "trials": self.trials, "seed": self.seed, "passed": self.passed,
                "elapsed_seconds": round(self.elapsed, 3), "failures": self.failures}


def _trial_product(rng: random.Random):
    m, n, p = (rng.randint(0, 8) for _ in range(3))
    T = random_matrix(rng, n, m)
    S = random_matrix(rng, p, n)
    lhs, rhs = product_defect_identity(T, S)
    if lhs != rhs:
        return {"T": _fmt(T), "S": _fmt(S), "lhs": lhs, "rhs": rhs}
    return None


def _trial_two_of_three(rng: random.Random):
    # square blocks most of the time so that every class is exercised
    n1 = rng.randint(1, 4)
    m1 = n1 if rng.random() < 0.7 else rng.randint(1, 4)
    n2 = rng.randint(1, 4)
    m2 = n2 if rng.random() < 0.7 else rng.randint(1, 4)
    if rng.random() < 0.2:
        # one defect balancing the other, so M can be square with rectangular blocks
        m2 = n1 + n2 - m1
        if m2 < 1:
            m2, n2 = 1, 1
    A = random_matrix(rng, n1, m1)
    B = random_matrix(rng, n2, m2)
    C = random_matrix(rng, n1, m2)
    M = _block(A, B, C)
    ca, cb, cm = finite_classes(A), finite_classes(B), finite_classes(M)
    bad = [k for k in ("invertible", "fredholm", "weyl") if not _two_of_three(ca[k], cb[k], cm[k])]
    # Browder is only meaningful when the blocks act on their own spaces
    if A.is_square and B.is_square and not _two_of_three(ca["browder"], cb["browder"], cm["browder"]):
        bad.append("browder")
    if bad:
        return {"A": _fmt(A), "B": _fmt(B), "C": _fmt(C), "classes": bad}
    return None


def _trial_corner(rng: random.Random):
    n1, m1, n2, m2 = (rng.randint(0, 4) for _ in range(4))
    A = random_matrix(rng, n1, m1)
    B = random_matrix(rng, n2, m2)
    C = random_matrix(rng, n1, m2)
    M = _block(A, B, C)
    rk = rank(M)
    brute = (rk == M.cols, rk == M.rows, rk == M.cols == M.rows)
    got = corner_verdicts(A, B, C)
    if got != brute:
        return {"A": _fmt(A), "B": _fmt(B), "C": _fmt(C), "corner": got, "brute_force": brute}
    return None


SUITES = {"product-defects": _trial_product, "two-of-three": _trial_two_of_three, "corner": _trial_corner}
# names accepted by the command line for the first two suites
ALIASES = {"lemma23": "product-defects", "lemma24": "two-of-three"}


def run_suite(name: str, trials: int = 500, seed: int = 0) -> OracleReport:
    name = ALIASES.get(name, name)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    rng = random.Random(f"{name}:{seed}")
    report = OracleReport(name, trials, seed)
    start = time.perf_counter()
    for k in range(trials):
        bad = SUITES[name](rng)
        if bad is not None:
            bad["trial"] = k
            report.failures.append(bad)
    report.elapsed = time.perf_counter() - start
    return report
