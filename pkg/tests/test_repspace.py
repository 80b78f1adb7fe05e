import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from brieskorn.errors import SeifertError
from brieskorn.repspace import (
    QuaternionRep,
    RotationVector,
    casson_lambda,
    enumerate_rotation_vectors,
    newton_search,
    qconj,
    qmul,
    qpow,
    realize_representation,
    sigma_star_images,
    trace_free_count,
    triangle_ok,
    verify_rho_invariance,
)
from brieskorn.seifert import coprime_triples, solve_seifert_invariants
from oracles import casson_from_milnor, rotation_vectors_by_cosines

S235 = solve_seifert_invariants((2, 3, 5))
S237 = solve_seifert_invariants((2, 3, 7))
S357 = solve_seifert_invariants((3, 5, 7))


def _rows(data):
    return [(v.h_sign, *v.ells) for v in enumerate_rotation_vectors(data)]


def test_enumeration_examples():
    assert _rows(S235) == [(-1, 1, 1, 2), (-1, 1, 1, 4)]
    assert _rows(S237) == [(-1, 1, 2, 2), (-1, 1, 2, 4)]
    assert all(v.h_sign == -1 for v in enumerate_rotation_vectors(S235))


def test_excluded_vector_of_sigma_237():
    # (1,2,6): 6/7 is not below 2 - 1/2 - 2/3 = 5/6
    assert not triangle_ok(Fraction(1, 2), Fraction(2, 3), Fraction(6, 7))


def test_enumeration_sorted_and_vector_invariants():
    for t in coprime_triples(1000):
        data = solve_seifert_invariants(t)
        vs = enumerate_rotation_vectors(data)
        assert vs == sorted(vs)
        for v in vs:
            assert all(0 < l < a for l, a in zip(v.ells, t))
            assert triangle_ok(*v.angles)


def test_enumeration_matches_cosine_oracle():
    for t in coprime_triples(1000):
        data = solve_seifert_invariants(t)
        assert _rows(data) == rotation_vectors_by_cosines(data), t


def test_casson_examples():
    assert casson_lambda(S235) == 1
    assert casson_lambda(S237) == 1
    assert casson_lambda(S357) == 4
    assert len(rotation_vectors_by_cosines(S357)) == 8


def test_casson_matches_milnor_fiber_signature():
    for t in coprime_triples(1000):
        assert casson_lambda(solve_seifert_invariants(t)) == casson_from_milnor(*t), t


def test_counts_even_and_nonempty_up_to_5000():
    for t in coprime_triples(5000):
        n = len(enumerate_rotation_vectors(solve_seifert_invariants(t)))
        assert n % 2 == 0 and n >= 2, t


def test_trace_free_count():
    assert trace_free_count(S235) == 4
    assert trace_free_count(S237) == 4
    assert trace_free_count(S357) == 4 * casson_lambda(S357)


def test_three_fibers_required():
    with pytest.raises(SeifertError):
        enumerate_rotation_vectors(solve_seifert_invariants((2, 3, 5, 7)))


def _trace(q):
    return 2 * q[0]


def test_realization_examples():
    v = RotationVector(-1, (1, 1, 2), (2, 3, 5))
    rep = realize_representation(S235, v)
    assert abs(_trace(rep.x)) < 1e-12
    assert abs(_trace(rep.y) - 1) < 1e-12
    assert max(rep.residuals().values()) < 1e-9
    rep = realize_representation(S237, RotationVector(-1, (1, 2, 2), (2, 3, 7)))
    assert abs(_trace(rep.y) + 1) < 1e-12
    assert max(rep.residuals().values()) < 1e-9
    assert rep.commutator_distance() > 1e-6


def test_realization_rejects_bad_vectors():
    # equality on the boundary is degenerate (reducible), hence rejected
    assert not triangle_ok(Fraction(1, 2), Fraction(1, 3), Fraction(5, 6))
    assert not triangle_ok(Fraction(1, 2), Fraction(1, 3), Fraction(1, 6))
    with pytest.raises(SeifertError):
        realize_representation(S237, RotationVector(-1, (1, 2, 6), (2, 3, 7)))
    with pytest.raises(SeifertError):
        realize_representation(S235, RotationVector(-1, (1, 1, 3), (2, 3, 5)))  # parity
    with pytest.raises(SeifertError):
        realize_representation(S235, RotationVector(-1, (1, 1, 2), (2, 3, 7)))


def test_every_class_realizes_with_rho_up_to_1000():
    for t in coprime_triples(1000):
        data = solve_seifert_invariants(t)
        for v in enumerate_rotation_vectors(data):
            rep = realize_representation(data, v)
            assert max(rep.residuals().values()) < 1e-9
            rho = verify_rho_invariance(rep)
            assert np.linalg.norm(qmul(rho, rho) + np.array([1.0, 0, 0, 0])) < 1e-9
            # rho = j c with c a unit complex number
            assert abs(rho[0]) < 1e-9 and abs(rho[1]) < 1e-9


def test_rho_equivariance_under_conjugation():
    rng = np.random.default_rng(3)
    rep = realize_representation(S237, RotationVector(-1, (1, 2, 4), (2, 3, 7)))
    rho = verify_rho_invariance(rep)
    for _ in range(10):
        g = rng.normal(size=4)
        g /= np.linalg.norm(g)
        moved = verify_rho_invariance(rep.conjugated(g))
        expect = qmul(qmul(g, rho), qconj(g))
        assert min(np.linalg.norm(moved - expect), np.linalg.norm(moved + expect)) < 1e-8


def test_rho_rejects_reducible_input():
    h = np.array([-1.0, 0, 0, 0])
    x = np.array([0.0, 1.0, 0, 0])
    rep = QuaternionRep(h, x, x.copy(), qconj(qmul(x, x)), S235)
    with pytest.raises(SeifertError):
        verify_rho_invariance(rep)


def test_sigma_star_is_an_involution_on_images():
    rep = realize_representation(S235, RotationVector(-1, (1, 1, 4), (2, 3, 5)))
    once = sigma_star_images(rep)
    twice = sigma_star_images(QuaternionRep(once["h"], once["x"], once["y"], once["z"], S235))
    for k, v in rep.images().items():
        assert np.linalg.norm(twice[k] - v) < 1e-12


def _words(max_len):
    gens = ["x", "X", "y", "Y"]
    for n in range(1, max_len + 1):
        yield from product(gens, repeat=n)


def test_realizations_with_different_phase_are_conjugate():
    for data in (S235, S237, S357):
        for v in enumerate_rotation_vectors(data):
            a = realize_representation(data, v, phase=0.0)
            b = realize_representation(data, v, phase=1.234)
            for word in _words(4):
                ta = tb = np.array([1.0, 0, 0, 0])
                for g in word:
                    pick = {"x": lambda r: r.x, "X": lambda r: qconj(r.x),
                            "y": lambda r: r.y, "Y": lambda r: qconj(r.y)}[g]
                    ta, tb = qmul(ta, pick(a)), qmul(tb, pick(b))
                assert abs(ta[0] - tb[0]) < 1e-8


def test_qpow_matches_repeated_product():
    q = np.array([0.3, 0.5, -0.1, 0.8])
    q /= np.linalg.norm(q)
    acc = np.array([1.0, 0, 0, 0])
    for n in range(1, 9):
        acc = qmul(acc, q)
        assert np.allclose(qpow(q, n), acc)
        assert np.allclose(qpow(q, -n), qconj(acc))


def test_newton_finds_the_enumerated_classes_small():
    found = set()
    for h in (-1, 1):
        hits, conv, irr = newton_search(S235, h, restarts=2000, seed=1)
        found |= hits
    assert sorted(found) == _rows(S235)


def test_rotation_vector_text():
    v = RotationVector(-1, (1, 1, 2), (2, 3, 5))
    assert str(v) == "(-1; 1, 1, 2)"
    assert v.angles == (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5))
    assert v.radians()[0] == pytest.approx(math.pi / 2)
