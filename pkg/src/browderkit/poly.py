"""Exact univariate polynomials over the Gaussian rationals.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``). Real-coefficient helpers
(Sturm sequences) accept ``Fraction`` lists as well.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .gauss import ONE, ZERO, Gauss, as_gauss

Poly = list


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def padd(p, q) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p, q) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def pscale(p, c) -> Poly:
    return trim([c * x for x in p])


def pmul(p, q) -> Poly:
    if not p or not q:
        return []
    out = [ZERO if isinstance(p[0], Gauss) or isinstance(q[0], Gauss) else 0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return trim(out)


def ppow(p, k: int) -> Poly:
    out = [ONE]
    for _ in range(k):
        out = pmul(out, p)
    return out


def pdivmod(p, q) -> tuple[Poly, Poly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(trim(p))
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], r
    inv = ONE / q[-1] if isinstance(q[-1], Gauss) else Fraction(1) / q[-1]
    quot = [0] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] * inv
        quot[k] = c
        if c:
            for j in range(dq + 1):
                r[k + j] = r[k + j] - c * q[j]
    return trim(quot), trim(r[:dq])


def pmonic(p) -> Poly:
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    inv = (ONE / lead) if isinstance(lead, Gauss) else Fraction(1) / lead
    return [x * inv for x in p]


def pgcd(p, q) -> Poly:
    """Monic gcd (Euclid); gcd(0, 0) is ``[]``."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pderiv(p) -> Poly:
    return trim([k * p[k] for k in range(1, len(p))])


def peval(p, x):
    acc = ZERO if isinstance(x, Gauss) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def conj_reverse(p) -> Poly:
    """``p*(z) = z^n conj(p)(1/z)`` for ``n = deg p``: roots reflect through the circle."""
    p = trim(p)
    return trim([as_gauss(c).conjugate() for c in reversed(p)])


def reverse(p) -> Poly:
    """``z^n p(1/z)`` (roots inverted, no conjugation)."""
    return trim(list(reversed(trim(p))))


def squarefree_decomposition(p) -> list[tuple[Poly, int]]:
    """Yun's algorithm: pairwise coprime monic squarefree factors with multiplicities."""
    f = pmonic(p)
    if len(f) <= 1:
        return []
    out = []
    fp = pderiv(f)
    a = pgcd(f, fp)
    b = pdivmod(f, a)[0]
    c = pdivmod(fp, a)[0]
    d = psub(c, pderiv(b))
    i = 1
    while len(b) > 1:
        a = pgcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = pdivmod(b, a)[0]
        c = pdivmod(d, a)[0]
        d = psub(c, pderiv(b))
        i += 1
    return out


def mobius_substitute(p, num: tuple, den: tuple) -> Poly:
    """``den(t)^n * p(num(t)/den(t))`` for linear ``num``/``den`` given low-first."""
    p = trim(p)
    n = len(p) - 1
    if n < 0:
        return []
    num = [as_gauss(x) for x in num]
    den = [as_gauss(x) for x in den]
    out: Poly = []
    num_pows = [[ONE]]
    den_pows = [[ONE]]
    for _ in range(n):
        num_pows.append(pmul(num_pows[-1], num))
        den_pows.append(pmul(den_pows[-1], den))
    for k, c in enumerate(p):
        if c:
            out = padd(out, pscale(pmul(num_pows[k], den_pows[n - k]), as_gauss(c)))
    return out


def split_re_im(p) -> tuple[list[Fraction], list[Fraction]]:
    return trim([as_gauss(c).real for c in p]), trim([as_gauss(c).imag for c in p])


# -- real polynomials: Sturm machinery ---------------------------------------

def _sign_changes(signs: Sequence[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(f0, f1) -> list[Poly]:
    chain = [trim(f0), trim(f1)]
    while chain[-1]:
        r = pdivmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(pscale(r, -1))
    return [c for c in chain if c]


def _changes_at_infinity(chain, positive: bool) -> int:
    signs = []
    for c in chain:
        s = _sign(c[-1])
        if not positive and (len(c) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _sign_changes(signs)


def cauchy_index(num, den) -> int:
    """Cauchy index of ``num/den`` over the whole real line (real rational polys)."""
    chain = sturm_chain(den, num)
    return _changes_at_infinity(chain, False) - _changes_at_infinity(chain, True)


def count_real_roots(h) -> int:
    """Number of distinct real roots of a real rational polynomial."""
    h = trim(h)
    if len(h) <= 1:
        return 0
    return cauchy_index(pderiv(h), h)


# -- unit-disk root counting ------------------------------------------------

def count_inside_cauchy(q) -> int:
    """Roots strictly inside the unit disk via the Cauchy index; no circle zeros allowed.

    ``z = (t - i)/(t + i)`` sends the upper half-plane onto the disk, so the
    count is the number of upper half-plane roots of the transformed
    polynomial, read off from the winding of its argument along the real
    line.
    """
    q = trim(q)
    n = len(q) - 1
    if n <= 0:
        return 0
    Q = mobius_substitute(q, (-Gauss(0, 1), 1), (Gauss(0, 1), 1))
    Q = pmonic(Q)
    if len(Q) - 1 != n:
        raise ValueError("polynomial vanishes at z=1")
    re_, im_ = split_re_im(Q)
    ind = cauchy_index(im_, re_)
    return (n - ind) // 2


def count_inside_schur_cohn(f) -> int:
    """Exact number of roots with ``|z| < 1``, counted with multiplicity.

    Schur-Cohn reduction ``g = conj(a_0) f - a_n f*``; a step with
    ``|a_0| = |a_n|`` is finished either by the self-inversive rule (when
    ``g`` vanishes) or by the Cauchy-index count of the current polynomial.
    Requires ``f`` to have no zeros on the unit circle.
    """
    f = [as_gauss(c) for c in trim(f)]
    n = len(f) - 1
    if n <= 0:
        return 0
    a0, an = f[0], f[-1]
    delta = a0.abs2() - an.abs2()
    # conj_reverse(f) has lower degree when a0 == 0; that is still f* of formal degree n
    g = psub(pscale(f, a0.conjugate()), pscale(conj_reverse(f), an))
    if delta > 0:
        return count_inside_schur_cohn(g)
    if delta < 0:
        return n - count_inside_schur_cohn(g)
    if not g:
        return n // 2
    return count_inside_cauchy(f)


def circle_roots_count(g) -> int:
    """Number of distinct roots of ``g`` on the unit circle (exact)."""
    g = trim(g)
    if len(g) <= 1:
        return 0
    count = 1 if not peval([as_gauss(c) for c in g], Gauss(-1)) else 0
    # z = (1 + i t)/(1 - i t) covers the circle minus z = -1
    G = mobius_substitute(g, (1, Gauss(0, 1)), (1, -Gauss(0, 1)))
    re_, im_ = split_re_im(G)
    common = pgcd(re_, im_) if (re_ and im_) else pmonic(re_ or im_)
    return count + count_real_roots(common)


def has_circle_zero(q) -> bool:
    q = [as_gauss(c) for c in trim(q)]
    if len(q) <= 1:
        return False
    g = pgcd(q, conj_reverse(q))
    return circle_roots_count(g) > 0
