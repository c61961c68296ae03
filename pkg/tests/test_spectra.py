from fractions import Fraction

import pytest

from browderkit.classify import Tri
from browderkit.completion import browder_by_classification
from browderkit.gauss import Gauss
from browderkit.operator import identity, parse_operator, toeplitz, translate
from browderkit.spectra import classify_point, grid_points, parse_region, scan

YES, NO = Tri.YES, Tri.NO
S = toeplitz({1: 1})
Ss = toeplitz({-1: 1})
I = identity()


def modulus_sq(lam: Gauss) -> Fraction:
    return lam.real ** 2 + lam.imag ** 2


def test_point_examples():
    v = classify_point(S, Ss, 0)
    assert v.in_SPR is NO and v.in_sigma_lb_A is NO and v.in_sigma_rb_B is NO
    v = classify_point(S, S, 0)
    assert v.in_SPR is YES and v.index_condition_fails is YES
    v = classify_point(I, I, 1)
    assert v.in_SPR is YES and v.in_sigma_lb_A is YES


def test_point_on_circle_off_axis():
    lam = Gauss(Fraction(3, 5), Fraction(4, 5))
    assert classify_point(S, Ss, lam).in_SPR is YES
    assert classify_point(S, Ss, Gauss(Fraction(3, 5), Fraction(3, 5))).in_SPR is NO


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        classify_point(S, Ss, 0, mode="some_C")


def test_shift_pair_scan_marks_only_circle_points():
    grid = scan(S, Ss, "-2,2,-2,2", "1/2", threads=1)
    assert (grid.nrows, grid.ncols) == (9, 9)
    for v in grid.verdicts:
        assert v.in_SPR is (YES if modulus_sq(v.lam) == 1 else NO)


def test_equal_shifts_scan_is_closed_disk():
    grid = scan(S, S, "-2,2,-2,2", "1/2", threads=1)
    for v in grid.verdicts:
        assert v.in_SPR is (YES if modulus_sq(v.lam) <= 1 else NO)


def test_identity_scan():
    grid = scan(I, I, "0,2,-1,1", "1/2", threads=1)
    yes = [v.lam for v in grid.verdicts if v.in_SPR is YES]
    assert yes == [Gauss(1)]


def test_mode_invariance_small_grid():
    A, B = toeplitz({1: 1, 0: Fraction(-1, 2)}), toeplitz({-1: 1})
    csvs = []
    for mode in ("all_C", "fredholm_C", "invertible_C"):
        text = scan(A, B, "-3/2,3/2,-3/2,3/2", "1/2", mode=mode, threads=1).to_csv()
        csvs.append([line.rsplit(",", 1)[0] for line in text.splitlines()])
    assert csvs[0] == csvs[1] == csvs[2]


def test_scan_is_deterministic_and_parallel_safe():
    a = scan(S, Ss, "-2,2,-2,2", "1/4", threads=1)
    b = scan(S, Ss, "-2,2,-2,2", "1/4", threads=2)
    assert a.to_csv() == b.to_csv()
    assert a.to_svg() == b.to_svg()


def test_refinement_keeps_verdicts():
    coarse = scan(S, S, "-1,1,-1,1", "1/2", threads=1)
    fine = scan(S, S, "-1,1,-1,1", "1/4", threads=1)
    fine_by_lam = {(v.lam.real, v.lam.imag): v.in_SPR for v in fine.verdicts}
    for v in coarse.verdicts:
        assert fine_by_lam[(v.lam.real, v.lam.imag)] is v.in_SPR


def test_witnesses_are_verified_and_sound():
    A, B = toeplitz({1: 1}), toeplitz({-1: 1})
    for lam in (0, Fraction(1, 2), Gauss(0, Fraction(-1, 3)), 2):
        v = classify_point(A, B, lam, mode="invertible_C", witness=True)
        assert v.in_SPR is NO
        if v.witness == "skipped":
            continue
        assert v.witness["verified"], v.witness
        C = parse_operator(v.witness["C"])
        assert browder_by_classification(translate(A, lam), translate(B, lam), C) is YES
    assert classify_point(A, B, 1, mode="invertible_C", witness=True).witness is None
    assert classify_point(A, B, 0, mode="all_C", witness=True).witness is None


def test_output_formats():
    grid = scan(S, Ss, "-1,1,0,1", "1", threads=1)
    lines = grid.to_csv().splitlines()
    assert lines[0].split(",")[:6] == ["re", "im", "in_sigma_lb_A", "in_sigma_rb_B", "index_condition_fails", "in_SPR"]
    assert len(lines) == 1 + 6
    svg = grid.to_svg()
    assert svg.startswith("<svg") and "in SPR: undecided" in svg
    assert grid.to_json()["counts"] == grid.counts()
    assert grid.summary() == "yes: 3 no: 3 undecided: 0"


def test_region_parsing():
    assert parse_region("-2, 2, -1/2, 1/2") == (-2, 2, Fraction(-1, 2), Fraction(1, 2))
    for bad in ("1,2,3", "2,1,0,0", "a,b,c,d"):
        with pytest.raises(ValueError):
            parse_region(bad)
    with pytest.raises(ValueError):
        grid_points(parse_region("0,1,0,1"), Fraction(0))
