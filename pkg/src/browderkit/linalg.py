"""Exact finite-dimensional linear algebra over the Gaussian rationals.

Everything here is exact; nothing rounds. It is the brute-force oracle
against which the operator-level machinery is checked, and it also hosts the
sparse echelon solver used by the kernel engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .gauss import ONE, ZERO, Gauss, as_gauss

__all__ = [
    "RationalMatrix",
    "rank",
    "kernel_basis",
    "power_defects",
    "asc_des",
    "assemble_block",
    "sparse_nullspace",
    "solve",
]


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols, Gauss values

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(n, cols, tuple(as_gauss(x) for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_lists(self) -> list[list[Gauss]]:
        return [self.row(i) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def conj_transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(self[i, j].conjugate() for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        ocols = [other.entries[j::other.cols] for j in range(other.cols)] if other.cols else []
        for i in range(self.rows):
            r = self.entries[i * self.cols:(i + 1) * self.cols]
            nz = [(k, x) for k, x in enumerate(r) if x]
            for j in range(other.cols):
                col = ocols[j]
                s = ZERO
                for k, x in nz:
                    y = col[k]
                    if y:
                        s = s + x * y
                out.append(s)
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return RationalMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in subtraction")
        return RationalMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "RationalMatrix":
        c = as_gauss(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def power(self, k: int) -> "RationalMatrix":
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise DimensionMismatch("vector length mismatch")
        return [sum((self[i, j] * v[j] for j in range(self.cols) if v[j]), ZERO) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows)) + "]"


def rank(M: RationalMatrix) -> int:
    """Exact rank by fraction-free (Bareiss) elimination over Z[i]."""
    m = []
    for i in range(M.rows):
        r = M.row(i)
        den = lcm(*(x.d for x in r)) if r else 1
        m.append([x * den for x in r])
    nrows, ncols = M.rows, M.cols
    prev = ONE
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        pivrow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (row[j] * piv - f * pivrow[j]) / prev
            row[c] = ZERO
        prev = piv
        r += 1
    return r


def _rref(rows: list[list[Gauss]], ncols: int):
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(M: RationalMatrix) -> list[list[Gauss]]:
    """Exact null-space basis; one vector per free column of the RREF."""
    red, pivots = _rref(M.to_lists(), M.cols)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M: RationalMatrix, rhs: Sequence) -> list[Gauss] | None:
    """One exact solution of ``M x = rhs``, or ``None`` when inconsistent."""
    aug = [M.row(i) + [as_gauss(rhs[i])] for i in range(M.rows)]
    red, pivots = _rref(aug, M.cols + 1)
    if M.cols in pivots:
        return None
    x = [ZERO] * M.cols
    for row, pc in zip(red, pivots):
        x[pc] = row[M.cols]
    return x


def power_defects(M: RationalMatrix, kmax: int) -> list[tuple[int, int]]:
    """``(alpha(M^k), beta(M^k))`` for ``k = 1..kmax``."""
    if not M.is_square:
        raise DimensionMismatch("power_defects needs a square matrix")
    out = []
    P = M
    for _ in range(kmax):
        rk = rank(P)
        out.append((M.cols - rk, M.rows - rk))
        P = P @ M
    return out


def asc_des(M: RationalMatrix) -> tuple[int, int]:
    """Ascent and descent of a square matrix (always finite, at most n)."""
    if not M.is_square:
        raise DimensionMismatch("asc_des needs a square matrix")
    n = M.rows
    defects = [(0, 0)] + power_defects(M, n + 1)
    asc = next(k for k in range(n + 1) if defects[k][0] == defects[k + 1][0])
    des = next(k for k in range(n + 1) if defects[k][1] == defects[k + 1][1])
    return asc, des


def assemble_block(blocks: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
    """Assemble a 2x2 (or any rectangular) grid of conformable blocks."""
    heights = [row[0].rows for row in blocks]
    widths = [b.cols for b in blocks[0]]
    for i, row in enumerate(blocks):
        if len(row) != len(widths):
            raise DimensionMismatch("ragged block grid")
        for j, b in enumerate(row):
            if b.rows != heights[i] or b.cols != widths[j]:
                raise DimensionMismatch(
                    f"block ({i},{j}) is {b.rows}x{b.cols}, expected {heights[i]}x{widths[j]}"
                )
    out = []
    for i, row in enumerate(blocks):
        for r in range(heights[i]):
            for b in row:
                out.extend(b.row(r))
    return RationalMatrix(sum(heights), sum(widths), tuple(out))


def sparse_nullspace(rows: Iterable[dict], ncols: int) -> tuple[int, list[list[Gauss]]]:
    """Exact rank and null-space basis of a sparse system.

    ``rows`` are dicts ``{column: value}``. Rows are reduced one at a time
    against an echelon set keyed by leading column, which keeps fill-in
    within the band for the banded systems produced by the kernel engine.
    """
    pivots: dict[int, dict] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = ONE / r[c]
                pivots[c] = {k: v * inv for k, v in r.items()}
                break
            f = r[c]
            for k, v in prow.items():
                nv = r.get(k, ZERO) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    free = [c for c in range(ncols) if c not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        x = {f: ONE}
        for c in order:
            s = ZERO
            for k, v in pivots[c].items():
                if k != c and k in x:
                    s = s + v * x[k]
            if s:
                x[c] = -s
        basis.append([x.get(i, ZERO) for i in range(ncols)])
    return len(pivots), basis
