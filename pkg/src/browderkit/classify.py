"""Tri-state classification of operators into the Fredholm/Browder taxonomy.

In the Hilbert-space setting every closed subspace is complemented, so the
one-sided semi-Fredholm classes reduce to closed range plus a finite kernel
(left) or finite cokernel (right).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields

from .expoly import DEFAULT_PRECISION
from .fredholm import DEFAULT_CAP, ExtNat, FredholmData, fredholm_data
from .operator import BetOperator, translate

__all__ = ["Tri", "OperatorClass", "classify", "classify_data", "membership", "SPECTRA", "tri_of"]


class Tri(enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"

    def __and__(self, other: "Tri") -> "Tri":
        if self is Tri.NO or other is Tri.NO:
            return Tri.NO
        if self is Tri.YES and other is Tri.YES:
            return Tri.YES
        return Tri.UNDECIDED

    def __or__(self, other: "Tri") -> "Tri":
        if self is Tri.YES or other is Tri.YES:
            return Tri.YES
        if self is Tri.NO and other is Tri.NO:
            return Tri.NO
        return Tri.UNDECIDED

    def __invert__(self) -> "Tri":
        return {Tri.YES: Tri.NO, Tri.NO: Tri.YES, Tri.UNDECIDED: Tri.UNDECIDED}[self]

    @property
    def decided(self) -> bool:
        return self is not Tri.UNDECIDED

    def __str__(self):
        return self.value


def tri_of(flag) -> Tri:
    if flag is None:
        return Tri.UNDECIDED
    return Tri.YES if flag else Tri.NO


def _finite(x: ExtNat) -> Tri:
    if x.is_unknown:
        return Tri.UNDECIDED
    return tri_of(x.is_finite)


@dataclass(frozen=True)
class OperatorClass:
    invertible: Tri
    left_invertible: Tri
    right_invertible: Tri
    fredholm: Tri
    weyl: Tri
    left_semi_fredholm: Tri
    right_semi_fredholm: Tri
    browder: Tri
    left_semi_browder: Tri
    right_semi_browder: Tri
    drazin_flag: Tri

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name).value for f in fields(self)}

    def all_decided(self) -> bool:
        return all(getattr(self, f.name).decided for f in fields(self))


def classify_data(fd: FredholmData) -> OperatorClass:
    if not fd.semi_fredholm:
        no = Tri.NO
        return OperatorClass(no, no, no, no, no, no, no, no, no, no, _drazin(fd))
    yes = Tri.YES
    left_inv = tri_of(fd.alpha.value == 0)
    right_inv = tri_of(fd.beta.value == 0)
    weyl = tri_of(fd.index == 0)
    lsb = _finite(fd.ascent)
    rsb = _finite(fd.descent)
    if weyl is Tri.NO:
        browder = Tri.NO
    else:
        browder = lsb & rsb
        if browder is Tri.YES and fd.ascent != fd.descent:
            browder = Tri.NO
    return OperatorClass(
        invertible=left_inv & right_inv,
        left_invertible=left_inv,
        right_invertible=right_inv,
        fredholm=yes,
        weyl=weyl,
        left_semi_fredholm=yes,
        right_semi_fredholm=yes,
        browder=browder,
        left_semi_browder=lsb,
        right_semi_browder=rsb,
        drazin_flag=_drazin(fd),
    )


def _drazin(fd: FredholmData) -> Tri:
    if not fd.semi_fredholm and not fd.alpha.is_infinite:
        # a nonvanishing determinant keeps every power's kernel finite, so closed
        # range of T^p would make T^p semi-Fredholm, which it is not
        return Tri.NO
    eq = fd.ascent.same_as(fd.descent)
    if eq is None:
        return Tri.UNDECIDED
    return tri_of(eq and fd.ascent.is_finite)


def classify(T: BetOperator, cap: int = DEFAULT_CAP, precision: int = DEFAULT_PRECISION) -> OperatorClass:
    return classify_data(fredholm_data(T, cap, precision, with_basis=False))


SPECTRA = {
    "sigma": "invertible",
    "l": "left_invertible",
    "r": "right_invertible",
    "e": "fredholm",
    "w": "weyl",
    "le": "left_semi_fredholm",
    "re": "right_semi_fredholm",
    "b": "browder",
    "lb": "left_semi_browder",
    "rb": "right_semi_browder",
}


def membership(T: BetOperator, lam, which: str, cap: int = DEFAULT_CAP,
               precision: int = DEFAULT_PRECISION) -> Tri:
    """Is ``lam`` in the named spectrum of ``T``?"""
    if which not in SPECTRA:
        raise ValueError(f"unknown spectrum {which!r}; expected one of {sorted(SPECTRA)}")
    cls = classify(translate(T, lam), cap, precision)
    return ~getattr(cls, SPECTRA[which])
