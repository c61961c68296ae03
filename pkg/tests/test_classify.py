import itertools
import random
from fractions import Fraction

import pytest

import randops
from browderkit.classify import Tri, classify, membership
from browderkit.errors import PrecisionExhausted
from browderkit.gauss import Gauss
from browderkit.operator import assemble_MC, bet_adjoint, identity, toeplitz

YES, NO, UNDECIDED = Tri.YES, Tri.NO, Tri.UNDECIDED
S = toeplitz({1: 1})
Ss = toeplitz({-1: 1})


def implies(p: Tri, q: Tri) -> bool:
    return not (p is YES and q is NO)


def lattice_holds(c) -> bool:
    return all([
        implies(c.invertible, c.browder),
        implies(c.browder, c.weyl),
        implies(c.weyl, c.fredholm),
        implies(c.browder, c.left_semi_browder),
        implies(c.browder, c.right_semi_browder),
        implies(c.left_semi_browder, c.left_semi_fredholm),
        implies(c.right_semi_browder, c.right_semi_fredholm),
        implies(c.invertible, c.left_invertible),
        implies(c.invertible, c.right_invertible),
    ])


def test_shift_classification():
    c = classify(S)
    assert c.left_invertible is YES and c.left_semi_browder is YES
    assert c.right_semi_browder is NO and c.browder is NO and c.weyl is NO
    assert c.fredholm is YES and c.invertible is NO


def test_backward_shift_classification():
    c = classify(Ss)
    assert c.right_invertible is YES and c.right_semi_browder is YES
    assert c.left_semi_browder is NO and c.left_invertible is NO


def test_identity_all_yes():
    assert all(v is YES for v in vars(classify(identity())).values())


def test_circle_zero_classification_is_decided():
    c = classify(toeplitz({1: 1, 0: -1}))
    assert c.fredholm is NO and c.left_semi_fredholm is NO and c.browder is NO
    assert c.all_decided()


def test_membership_examples():
    assert membership(S, 0, "lb") is NO
    assert membership(S, 0, "b") is YES
    assert membership(identity(), 1, "sigma") is YES
    assert membership(S, Gauss(Fraction(3, 5), Fraction(4, 5)), "e") is YES
    assert membership(S, 2, "sigma") is NO
    with pytest.raises(ValueError):
        membership(S, 0, "zz")


def test_lattice_on_pool_and_random_operators():
    rng = random.Random(3)
    ops = randops.pool() + [randops.operator(rng, terms=2) for _ in range(30)]
    for T in ops:
        try:
            c = classify(T)
        except PrecisionExhausted:
            continue
        assert lattice_holds(c), T.to_json()


def _triples(rng, count):
    pool = randops.pool()
    for _ in range(count):
        A, B = rng.choice(pool), rng.choice(pool)
        C = randops.finite_rank(rng, tails=False) if rng.random() < 0.8 else identity()
        yield A, B, C


def _classified_triples(seed, count):
    rng = random.Random(seed)
    out = []
    for A, B, C in _triples(rng, count):
        cs = [classify(A), classify(B), classify(assemble_MC(A, B, C))]
        if all(c.all_decided() for c in cs):
            out.append(cs)
    return out


@pytest.fixture(scope="module")
def triples():
    out = _classified_triples(2468, 120)
    assert len(out) >= 110
    return out


@pytest.mark.parametrize("flag", ["invertible", "fredholm", "weyl", "browder"])
def test_two_of_three(triples, flag):
    for cs in triples:
        for i, j in itertools.combinations(range(3), 2):
            if getattr(cs[i], flag) is YES and getattr(cs[j], flag) is YES:
                k = 3 - i - j
                assert getattr(cs[k], flag) is YES


def test_left_semi_browder_transfer(triples):
    for a, b, m in triples:
        if a.browder is YES:
            assert b.left_semi_browder == m.left_semi_browder


def test_right_semi_browder_transfer(triples):
    for a, b, m in triples:
        if b.browder is YES:
            assert a.right_semi_browder == m.right_semi_browder


def test_browder_block_needs_finite_ascent_and_descent():
    rng = random.Random(99)
    found = 0
    for A, B, C in _triples(rng, 80):
        m = classify(assemble_MC(A, B, C))
        if m.browder is not YES:
            continue
        found += 1
        a, b = classify(A), classify(B)
        assert a.left_semi_browder is YES and b.right_semi_browder is YES
        assert classify(bet_adjoint(A)).right_semi_browder is YES
        assert classify(bet_adjoint(B)).left_semi_browder is YES
    assert found > 0


def test_spectrum_containments():
    rng = random.Random(17)
    lams = [0, 1, -1, Gauss(0, 1), Fraction(1, 2), Gauss(Fraction(1, 2), Fraction(1, 2)), 2, Fraction(-3, 2)]
    ops = randops.pool()[:7] + [randops.operator(rng, terms=1, tails=False) for _ in range(6)]
    for T in ops:
        for lam in lams:
            b, w, e = (membership(T, lam, k) for k in ("b", "w", "e"))
            assert implies(e, w) and implies(w, b)
