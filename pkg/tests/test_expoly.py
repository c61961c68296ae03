import random
from fractions import Fraction

import numpy as np
import pytest
from flint import acb

from browderkit.balls import ball_elimination, certainly_nonzero, certainly_zero, to_ball
from browderkit.errors import SpecParseError
from browderkit.expoly import ExpPolyVector, inner, parse_vector, tail_power_sum, toeplitz_apply
from browderkit.gauss import Gauss
from browderkit.roots import AlgebraicRoot, roots_with_multiplicity
from browderkit.symbol import LaurentSymbol

half = Fraction(1, 2)
N = 400  # dense truncation length for the numpy oracle


def dense(x: ExpPolyVector, n: int = N) -> np.ndarray:
    return np.array([complex(x.value(k)) for k in range(n)])


def random_vector(rng, with_tail=True):
    head = [Gauss(rng.randint(-3, 3), rng.randint(-1, 1)) for _ in range(rng.randint(0, 4))]
    tails = []
    if with_tail:
        for r in rng.sample([Gauss(half), Gauss(Fraction(-1, 3)), Gauss(0, half)], rng.randint(0, 2)):
            tails.append((r, tuple(Gauss(rng.randint(-2, 2)) for _ in range(rng.randint(1, 2)))))
    return ExpPolyVector(head, tails)


def test_geometric_values():
    g = ExpPolyVector.geometric(half)
    assert [g.value(k) for k in range(4)] == [1, half, half ** 2, half ** 3]


def test_head_overrides_tail():
    x = ExpPolyVector([5, 6], [(Gauss(half), (Gauss(1),))])
    assert x.value(0) == 5 and x.value(1) == 6 and x.value(2) == Fraction(1, 4)


def test_tail_power_sum_against_direct_sum():
    w = Gauss(Fraction(1, 3), Fraction(1, 4))
    for k in range(4):
        for start in (0, 3):
            exact = tail_power_sum(k, w, start)
            approx = sum(complex(n) ** k * complex(w) ** n for n in range(start, 400))
            assert abs(complex(exact) - approx) < 1e-12


def test_inner_matches_numpy():
    rng = random.Random(5)
    for _ in range(30):
        x, y = random_vector(rng), random_vector(rng)
        got = complex(to_ball(inner(x, y)).mid())
        want = np.vdot(dense(y), dense(x))  # <x, y> is linear in x
        assert abs(got - want) < 1e-9


def test_inner_exact_when_rational():
    g = ExpPolyVector.geometric(half)
    assert inner(g, g) == Fraction(4, 3)


def test_toeplitz_apply_matches_dense_convolution():
    rng = random.Random(9)
    for _ in range(20):
        p = LaurentSymbol({k: Gauss(rng.randint(-2, 2)) for k in range(-2, 3)})
        x = random_vector(rng)
        y = toeplitz_apply(p, x)
        xs = dense(x, N + 10)
        for n in range(40):
            want = sum(complex(c) * xs[n - j] for j, c in p.items() if 0 <= n - j < N + 10)
            assert abs(complex(to_ball(y.value(n)).mid()) - want) < 1e-9


def test_vector_json_roundtrip_and_validation():
    x = ExpPolyVector([1, Gauss(0, half)], [(Gauss(half), (Gauss(1), Gauss(2)))])
    assert parse_vector(x.to_json()) == x
    with pytest.raises(SpecParseError):
        parse_vector({"head": [], "tails": [{"root": [2, 0], "poly": [1]}]})
    with pytest.raises(SpecParseError):
        parse_vector({"head": [], "tails": [{"root": [1, 0], "poly": [1]}]})


def test_roots_exact_and_algebraic():
    # (z - 1/2)^2 (z^2 - 2): one exact double root and two irrational ones
    p = [Gauss(Fraction(-1, 2)), Gauss(2), Gauss(Fraction(-7, 4)), Gauss(-1), Gauss(1)]
    roots = roots_with_multiplicity(p)
    exact = [(r, m) for r, m in roots if isinstance(r, Gauss)]
    algebraic = [(r, m) for r, m in roots if isinstance(r, AlgebraicRoot)]
    assert exact == [(Gauss(half), 2)]
    assert len(algebraic) == 2
    for r, m in algebraic:
        b = r.ball(128)
        assert m == 1 and (b * b - 2).contains(0) and certainly_nonzero(b)


def test_ball_helpers():
    assert certainly_zero(Gauss(0))
    assert not certainly_zero(acb(0, 0) + acb("1e-30"))
    assert certainly_nonzero(acb(1))
    assert not certainly_nonzero(acb(0) * acb("0 +/- 1e-10"))


def test_ball_elimination_certified_rank():
    rows = [[acb(1), acb(2)], [acb(2), acb(4) + acb("1e-10")]]
    rank, _ = ball_elimination(rows, 2)
    assert rank == 2
    rank, basis = ball_elimination([[Gauss(1), Gauss(2)], [Gauss(2), Gauss(4)]], 2)
    assert rank == 1 and len(basis) == 1
