"""Pointwise and grid classification of the spectral set

    SPR(A, B) = sigma_lb(A) | sigma_rb(B) | {lam : a(A-lam) + a(B-lam) != b(A-lam) + b(B-lam)}

which is the intersection of sigma_b(M_C) over all C, and equally over all
Fredholm or all invertible C in the Hilbert setting.  The verdict therefore
does not depend on the mode; the mode only decides which witness completion
is built on request.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import Tri
from .completion import construct_invertible_C, exists_completion, operator_info, verify_certificate
from .errors import BrowderError, PrecisionExhausted
from .expoly import DEFAULT_PRECISION
from .fredholm import DEFAULT_CAP
from .gauss import Gauss, as_gauss, parse_component
from .operator import BetOperator, parse_operator, translate

__all__ = ["MODES", "PointVerdict", "SpectralGrid", "classify_point", "scan", "grid_points", "parse_region"]

MODES = ("all_C", "fredholm_C", "invertible_C")

_COLUMNS = ("re", "im", "in_sigma_lb_A", "in_sigma_rb_B", "index_condition_fails", "in_SPR", "mode")


def _frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass
class PointVerdict:
    lam: Gauss
    in_sigma_lb_A: Tri
    in_sigma_rb_B: Tri
    index_condition_fails: Tri
    witness: dict | str | None = None  # certificate summary, "skipped", or None

    @property
    def in_SPR(self) -> Tri:
        return self.in_sigma_lb_A | self.in_sigma_rb_B | self.index_condition_fails

    def row(self, mode: str) -> list[str]:
        return [_frac(self.lam.real), _frac(self.lam.imag), str(self.in_sigma_lb_A), str(self.in_sigma_rb_B),
                str(self.index_condition_fails), str(self.in_SPR), mode]

    def to_json(self) -> dict:
        out = {
            "lambda": self.lam.to_pair(),
            "in_sigma_lb_A": str(self.in_sigma_lb_A),
            "in_sigma_rb_B": str(self.in_sigma_rb_B),
            "index_condition_fails": str(self.index_condition_fails),
            "in_SPR": str(self.in_SPR),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _witness(A: BetOperator, B: BetOperator, cap: int, precision: int) -> dict:
    # an invertible C is also Fredholm, so it serves both restricted modes
    try:
        C, cert = construct_invertible_C(A, B, cap, precision)
    except BrowderError as exc:
        return {"kind": "invertible_C", "verified": False, "error": str(exc)}
    result = verify_certificate(cert)
    return {"kind": cert.kind, "verified": result.ok, "reasons": result.reasons, "C": C.to_json()}


def classify_point(A: BetOperator, B: BetOperator, lam, mode: str = "all_C", witness: bool = False,
                   cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION) -> PointVerdict:
    """Evaluate the three clauses of SPR at ``lam``.

    Precision failures make the point undecided instead of raising.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    lam = as_gauss(lam)
    Al, Bl = translate(A, lam), translate(B, lam)
    u = Tri.UNDECIDED
    try:
        ia = operator_info(Al, cap, precision)
        ib = operator_info(Bl, cap, precision)
    except PrecisionExhausted:
        return PointVerdict(lam, u, u, u)
    lhs = ia.data.alpha + ib.data.alpha
    rhs = ia.data.beta + ib.data.beta
    same = lhs.same_as(rhs)
    fails = u if same is None else (Tri.NO if same else Tri.YES)
    verdict = PointVerdict(lam, ~ia.cls.left_semi_browder, ~ib.cls.right_semi_browder, fails)
    if witness and verdict.in_SPR is Tri.NO and mode != "all_C":
        ans, _ = exists_completion(ia, ib, "browder")
        verdict.witness = _witness(Al, Bl, cap, precision) if ans is Tri.YES else "skipped"
    return verdict


@dataclass
class SpectralGrid:
    re_min: Fraction
    re_max: Fraction
    im_min: Fraction
    im_max: Fraction
    step: Fraction
    mode: str
    ncols: int
    nrows: int
    verdicts: list = field(default_factory=list)  # row-major, rows by increasing imaginary part

    def counts(self) -> dict:
        out = {"yes": 0, "no": 0, "undecided": 0}
        for v in self.verdicts:
            out[str(v.in_SPR)] += 1
        return out

    def summary(self) -> str:
        c = self.counts()
        return f"yes: {c['yes']} no: {c['no']} undecided: {c['undecided']}"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(_COLUMNS)
        for v in self.verdicts:
            w.writerow(v.row(self.mode))
        return buf.getvalue()

    def to_svg(self, cell: int = 6) -> str:
        palette = {"yes": "#b2182b", "no": "#f7f7f7", "undecided": "#fdb863"}
        width, height = self.ncols * cell, self.nrows * cell
        legend_h = 3 * 16 + 8
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height + legend_h}" '
            f'viewBox="0 0 {width} {height + legend_h}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="{palette["no"]}"/>',
        ]
        for idx, v in enumerate(self.verdicts):
            key = str(v.in_SPR)
            if key == "no":
                continue
            r, c = divmod(idx, self.ncols)
            y = (self.nrows - 1 - r) * cell  # larger imaginary parts on top
            out.append(f'<rect x="{c * cell}" y="{y}" width="{cell}" height="{cell}" fill="{palette[key]}"/>')
        for k, (name, color) in enumerate(palette.items()):
            y = height + 4 + 16 * k
            out.append(f'<rect x="4" y="{y}" width="12" height="12" fill="{color}" stroke="#000000"/>')
            out.append(f'<text x="22" y="{y + 11}" font-size="11" font-family="monospace">'
                       f'in SPR: {name}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def to_json(self) -> dict:
        return {
            "region": [_frac(self.re_min), _frac(self.re_max), _frac(self.im_min), _frac(self.im_max)],
            "step": _frac(self.step),
            "mode": self.mode,
            "shape": [self.nrows, self.ncols],
            "counts": self.counts(),
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def parse_region(text: str) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"region must be 're0,re1,im0,im1', got {text!r}")
    r0, r1, i0, i1 = (parse_component(p) for p in parts)
    if r0 > r1 or i0 > i1:
        raise ValueError(f"empty region {text!r}")
    return r0, r1, i0, i1


def grid_points(region, step) -> tuple[list[Gauss], int, int]:
    r0, r1, i0, i1 = (parse_component(x) if not isinstance(x, Fraction) else x for x in region)
    step = step if isinstance(step, Fraction) else parse_component(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if r0 > r1 or i0 > i1:
        raise ValueError("region is empty")
    ncols = int((r1 - r0) // step) + 1
    nrows = int((i1 - i0) // step) + 1
    pts = [Gauss(r0 + c * step, i0 + r * step) for r in range(nrows) for c in range(ncols)]
    return pts, nrows, ncols


# -- worker plumbing: operators travel as JSON so nothing flint-specific is pickled

_WORKER: dict = {}


def _init_worker(a_json, b_json, mode, witness, cap, precision):
    _WORKER.update(A=parse_operator(a_json), B=parse_operator(b_json), mode=mode, witness=witness,
                   cap=cap, precision=precision)


def _work(chunk: list[tuple[int, list]]) -> list[tuple[int, tuple]]:
    w = _WORKER
    out = []
    for idx, pair in chunk:
        v = classify_point(w["A"], w["B"], as_gauss(pair), w["mode"], w["witness"], w["cap"], w["precision"])
        out.append((idx, (v.in_sigma_lb_A.value, v.in_sigma_rb_B.value, v.index_condition_fails.value, v.witness)))
    return out


def scan(A: BetOperator, B: BetOperator, region, step, mode: str = "all_C", threads: int | None = None,
         witness: bool = False, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION) -> SpectralGrid:
    """Classify every point of the rational grid ``region`` with spacing ``step``."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if isinstance(region, str):
        region = parse_region(region)
    pts, nrows, ncols = grid_points(region, step)
    r0, r1, i0, i1 = (x if isinstance(x, Fraction) else parse_component(x) for x in region)
    step = step if isinstance(step, Fraction) else parse_component(step)
    threads = threads or os.cpu_count() or 1
    slots: list = [None] * len(pts)
    if threads <= 1 or len(pts) < 64:
        for idx, lam in enumerate(pts):
            slots[idx] = classify_point(A, B, lam, mode, witness, cap, precision)
    else:
        items = [(idx, lam.to_pair()) for idx, lam in enumerate(pts)]
        size = max(1, len(items) // (threads * 8))
        chunks = [items[k:k + size] for k in range(0, len(items), size)]
        init = (A.to_json(), B.to_json(), mode, witness, cap, precision)
        with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=init) as pool:
            for res in pool.map(_work, chunks):
                for idx, (a, b, c, wit) in res:
                    slots[idx] = PointVerdict(pts[idx], Tri(a), Tri(b), Tri(c), wit)
    return SpectralGrid(r0, r1, i0, i1, step, mode, ncols, nrows, slots)
