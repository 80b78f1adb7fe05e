"""Independent reference computations used only by the tests."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from brieskorn.laurent import LaurentPolynomial


def brute_seifert(multiplicities):
    """All normalized solutions found by exhausting 0 < b_i < a_i."""
    A = math.prod(multiplicities)
    out = []
    for bs in product(*(range(1, a) for a in multiplicities)):
        rest = 1 - sum(b * (A // a) for a, b in zip(multiplicities, bs))
        if rest % A == 0:
            out.append((rest // A, bs))
    return out


def milnor_signature(p, q, r):
    """Signature of the Milnor fiber of x^p + y^q + z^r by Brieskorn's count."""
    pos = neg = 0
    for i in range(1, p):
        for j in range(1, q):
            for k in range(1, r):
                s = (Fraction(i, p) + Fraction(j, q) + Fraction(k, r)) % 2
                if 0 < s < 1:
                    pos += 1
                elif 1 < s < 2:
                    neg += 1
    return pos - neg


def casson_from_milnor(p, q, r):
    # counting convention: lambda(2,3,5) = +1 while the E8 fiber has signature -8
    return -milnor_signature(p, q, r) // 8


def rotation_vectors_by_cosines(data):
    """Rotation data via the cosine bounds cos(t1+t2) < cos t3 < cos(t1-t2), in floats."""
    (p, q, r), (b1, b2, b3), b = data.multiplicities, data.pair_weights, data.base_weight
    out = []
    for h in (-1, 1):
        eps = (h**b1, h**b2, h ** (b3 - r * b))
        for l1, l2, l3 in product(range(1, p), range(1, q), range(1, r)):
            if any((l % 2 == 0) != (e == 1) for l, e in zip((l1, l2, l3), eps)):
                continue
            t1, t2, t3 = math.pi * l1 / p, math.pi * l2 / q, math.pi * l3 / r
            lo, hi = math.cos(t1 + t2), math.cos(t1 - t2)
            c = math.cos(t3)
            if lo + 1e-12 < c < hi - 1e-12:
                out.append((h, l1, l2, l3))
    return sorted(out)


def torus_jones(p, q):
    """Jones polynomial of the positive (p, q) torus knot (right trefoil = t + t^3 - t^4)."""
    num = {0: 1, p + 1: -1, q + 1: -1, p + q: 1}
    # divide by 1 - t^2 term by term
    quotient = {}
    rem = dict(num)
    for e in range(0, p + q - 1):
        c = rem.get(e, 0)
        if c:
            quotient[e] = c
            rem[e] = 0
            rem[e + 2] = rem.get(e + 2, 0) + c
    assert not any(rem.values())
    shift = (p - 1) * (q - 1) // 2
    return LaurentPolynomial({e + shift: c for e, c in quotient.items()})


def torus_signature(p, q):
    """Signature of the positive (p, q) torus knot by lattice-point counting."""
    total = 0
    for i in range(1, p):
        for j in range(1, q):
            s = Fraction(i, p) + Fraction(j, q)
            total += -1 if abs(s - 1) < Fraction(1, 2) else 1
    return total
