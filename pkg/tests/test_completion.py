import copy
import itertools
import json
import random
from fractions import Fraction

import pytest

import randops
from browderkit.classify import Tri, classify
from browderkit.completion import (
    browder_by_classification,
    certificate_from_json,
    construct_browder_C,
    construct_invertible_C,
    corner_tests,
    exists_completion,
    left_decompose,
    operator_info,
    right_decompose,
    verify_certificate,
)
from browderkit.errors import NotLeftSemiBrowder, NotRightSemiBrowder, PreconditionFailed
from browderkit.expoly import ExpPolyVector
from browderkit.fredholm import fredholm_data, kernel_data
from browderkit.operator import (
    assemble_MC,
    bet_add,
    bet_adjoint,
    bet_compose,
    bet_scale,
    identity,
    rank_one,
    toeplitz,
    zero_operator,
)

YES, NO = Tri.YES, Tri.NO
half = Fraction(1, 2)
S = toeplitz({1: 1})
Ss = toeplitz({-1: 1})
I = identity()
e = ExpPolyVector.basis
A_half = toeplitz({1: 1, 0: -half})
B_half = toeplitz({-1: 1, 0: -half})


def window(T, N=20):
    return T.window(N)


def shifted_jordan():
    """``J_2`` on coordinates 0, 1 and the shift from coordinate 2 onwards."""
    T = bet_add(S, bet_scale(rank_one(e(1), e(0)), -1))
    T = bet_add(T, bet_scale(rank_one(e(2), e(1)), -1))
    return bet_add(T, rank_one(e(0), e(1)))


def exists(A, B, kind):
    return exists_completion(operator_info(A), operator_info(B), kind)


def test_exists_examples():
    assert exists(S, Ss, "browder")[0] is YES
    ans, reasons = exists(S, S, "browder")
    assert ans is NO and any("condition (c)" in r for r in reasons)
    assert exists(I, I, "invertible")[0] is YES
    assert exists(Ss, S, "weyl")[0] is YES
    ans, reasons = exists(toeplitz({1: 1, 0: -1}), Ss, "weyl")
    assert ans is NO and any("A left semi-Fredholm" in r for r in reasons)
    with pytest.raises(ValueError):
        exists(I, I, "nonsense")


def test_left_decompose_examples():
    assert left_decompose(S).p == 0 and left_decompose(S).X1_basis == []
    d = left_decompose(shifted_jordan())
    assert d.p == 2 and len(d.X1_basis) == 2
    assert left_decompose(I).p == 0
    with pytest.raises(NotLeftSemiBrowder):
        left_decompose(Ss)


def test_right_decompose_examples():
    assert right_decompose(Ss).q == 0
    d = right_decompose(bet_adjoint(shifted_jordan()))
    assert d.q == 2 and len(d.complement_basis) == 2
    assert right_decompose(I).q == 0
    with pytest.raises(NotRightSemiBrowder):
        right_decompose(S)


def test_shift_pair_gives_projection():
    C, cert = construct_browder_C(S, Ss)
    assert window(C) == window(rank_one(e(0), e(0)))
    assert verify_certificate(cert)
    M = assemble_MC(S, Ss, C)
    for P in (bet_compose(bet_adjoint(M), M), bet_compose(M, bet_adjoint(M))):
        assert window(P, 15) == window(identity(2), 15)


def test_identity_pair_gives_zero():
    C, cert = construct_browder_C(I, I)
    assert window(C) == window(zero_operator())
    assert verify_certificate(cert)


def scalar(x):
    return x[0] if isinstance(x, tuple) else x


def parallel(x, y, terms=6):
    """Both vectors are nonzero multiples of each other on their first entries."""
    xs = [complex(x.value(n)) for n in range(terms)]
    ys = [complex(y.value(n)) for n in range(terms)]
    return all(abs(a * ys[0] - b * xs[0]) < 1e-12 for a, b in zip(xs, ys)) and abs(xs[0]) > 0


def test_geometric_pair():
    C, cert = construct_browder_C(A_half, B_half)
    assert len(C.perturbation) == 1
    (ker_b,) = kernel_data(B_half)[1]
    (coker_a,) = kernel_data(bet_adjoint(A_half))[1]
    u, _ = C.perturbation[0]
    # C maps the kernel line of B onto the cokernel line of A
    assert parallel(scalar(u), scalar(coker_a))
    assert parallel(scalar(C.apply(ker_b if isinstance(ker_b, tuple) else (ker_b,))), scalar(coker_a))
    assert verify_certificate(cert)
    assert browder_by_classification(A_half, B_half, C) is YES


def test_precondition_failure_lists_reasons():
    with pytest.raises(PreconditionFailed) as info:
        construct_browder_C(S, S)
    assert any("condition (c)" in r for r in info.value.reasons)


def test_corner_examples():
    left, right, inv, C1 = corner_tests(S, Ss, I)
    assert [[complex(x) for x in row] for row in C1] == [[1]]
    assert inv is YES and left is YES and right is YES
    _, _, inv, C1 = corner_tests(S, Ss, zero_operator())
    assert inv is NO
    _, _, inv, C1 = corner_tests(I, I, rank_one(e(0), e(3)))
    assert inv is YES and len(C1) == 0
    assert classify(assemble_MC(S, Ss, I)).invertible is YES


def test_invertible_completion_examples():
    for A, B in ((S, Ss), (I, I), (A_half, B_half), (shifted_jordan(), bet_adjoint(shifted_jordan()))):
        C, cert = construct_invertible_C(A, B)
        assert classify(C).invertible is YES
        assert verify_certificate(cert), verify_certificate(cert).reasons
        assert corner_tests(A, B, C)[2] is YES or classify(A).left_invertible is not YES
        assert browder_by_classification(A, B, C) is YES


def test_tampered_corner_is_rejected():
    _, cert = construct_browder_C(S, Ss)
    bad = copy.copy(cert)
    bad.corner = [[0 * x for x in row] for row in cert.corner]
    result = verify_certificate(bad)
    assert not result and "corner not invertible" in result.reasons


def test_tampered_nilpotency_degree_is_rejected():
    A = shifted_jordan()
    _, cert = construct_browder_C(A, bet_adjoint(A))
    assert verify_certificate(cert)
    bad = copy.deepcopy(cert)
    bad.left.p = 1
    assert not verify_certificate(bad)


def test_certificate_json_roundtrip():
    for A, B in ((S, Ss), (A_half, B_half)):
        for build in (construct_browder_C, construct_invertible_C):
            _, cert = build(A, B)
            obj = json.loads(cert.dumps())
            assert verify_certificate(certificate_from_json(obj))
            assert {c["holds"] for c in obj["dimension_checks"]} == {True}


def test_soundness_on_pool():
    pool = randops.pool()
    built = 0
    for A, B in itertools.product(pool, repeat=2):
        if exists(A, B, "browder")[0] is not YES:
            continue
        C, cert = construct_browder_C(A, B)
        assert browder_by_classification(A, B, C) is YES
        assert verify_certificate(cert)
        built += 1
    assert built >= 10


def test_soundness_on_random_pairs():
    rng = random.Random(55)
    built = 0
    for _ in range(40):
        A = randops.operator(rng, terms=1, tails=False)
        B = randops.operator(rng, terms=1, tails=False)
        if exists(A, B, "browder")[0] is not YES:
            continue
        C, cert = construct_browder_C(A, B)
        assert browder_by_classification(A, B, C) is YES
        built += 1
    assert built > 0


def test_necessity_on_random_triples():
    rng = random.Random(21)
    pool = randops.pool()
    seen = 0
    for _ in range(60):
        A, B = rng.choice(pool), rng.choice(pool)
        C = randops.finite_rank(rng, tails=False)
        if classify(assemble_MC(A, B, C)).browder is not YES:
            continue
        seen += 1
        a, b = fredholm_data(A), fredholm_data(B)
        assert classify(A).left_semi_browder is YES and classify(B).right_semi_browder is YES
        assert a.alpha + b.alpha == a.beta + b.beta
    assert seen > 0
