import cmath
import itertools

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from weilrel.arith.intlinalg import rank
from weilrel.errors import InvalidInput, TooLarge
from weilrel.relations import (
    ADDITIVELY_FREE,
    HAS_RELATIONS,
    MULT_TRIVIAL_ONLY,
    PROVEN_FALSE,
    PROVEN_TRUE,
    _roots,
    angle_vector_to_exponents,
    detect_additive,
    detect_multiplicative,
    independence_report,
    positive_form,
    small_relations,
    verify_additive_exact,
    verify_multiplicative_exact,
)
from weilrel.weil import QSymplecticPoly, rh_check


def F(a, q):
    return QSymplecticPoly((1, -a, q), q)


def numeric_roots(polys):
    rs = _roots(polys, 96)
    return [complex(r.center) for r in rs.roots], rs


# -- exact verification -------------------------------------------------------


def test_additive_verdicts():
    # roots of 1 + 5T^2 are +-i sqrt 5 and cancel
    assert verify_additive_exact([F(0, 5)], (1, 1)).verdict == PROVEN_TRUE
    # alpha + conj(alpha) = a != 0
    assert verify_additive_exact([F(3, 5)], (1, 1)).verdict == PROVEN_FALSE
    # traces 2 and -2 cancel across factors
    assert verify_additive_exact([F(2, 5), F(-2, 5)], (1, 1, 1, 1)).holds
    assert not verify_additive_exact([F(2, 5), F(-2, 5)], (1, 0, 1, 0)).holds


def test_multiplicative_verdicts():
    # alpha = i sqrt 5, normalized root i: i^4 = 1 but i^2 = -1
    assert verify_multiplicative_exact([F(0, 5)], (4, 0)).holds
    assert not verify_multiplicative_exact([F(0, 5)], (2, 0)).holds
    # alpha conj(alpha) = q is a forced relation
    assert verify_multiplicative_exact([F(3, 7)], (1, 1)).holds
    assert not verify_multiplicative_exact([F(3, 7)], (1, 0)).holds


def test_verification_rejects_wrong_length():
    with pytest.raises(InvalidInput):
        verify_additive_exact([F(1, 5)], (1, 1, 1))
    with pytest.raises(InvalidInput):
        verify_multiplicative_exact([F(1, 5)], (1,))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_positive_form_is_equivalent(exponents):
    assume(any(exponents))
    values, rs = numeric_roots([F(2, 7), F(-3, 7)])
    k, t = positive_form(exponents, rs.pairing)
    assert all(x >= 0 for x in k)
    lhs = 1
    for e, a in zip(exponents, values):
        lhs *= (a / cmath.sqrt(7)) ** e
    rhs = 1
    for e, a in zip(k, values):
        rhs *= a**e
    rhs /= 7**t
    # the doubled form holds iff the square of the original holds
    doubled = sum(k) != sum(abs(x) for x in exponents)
    assert abs((lhs * lhs if doubled else lhs) - rhs) < 1e-6


def test_verifier_agrees_with_numerics_on_random_vectors():
    values, rs = numeric_roots([F(1, 11), F(4, 11)])
    for v in ([1, -1, 2, 0], [0, 1, 1, 0], [2, 2, -1, -1], [1, 1, 1, 1]):
        numeric = abs(sum(c * a for c, a in zip(v, values))) < 1e-9
        assert verify_additive_exact([F(1, 11), F(4, 11)], v).holds == numeric


# -- detection ------------------------------------------------------------------


def test_detected_relations_are_proven_and_complete_for_small_heights():
    polys = [F(17, 541), F(29, 541), F(46, 541)]
    rs = _roots(polys, 256)
    add = detect_additive(rs)
    mul = detect_multiplicative(rs)
    for v in add.basis:
        assert verify_additive_exact(polys, v).holds
    for v in mul.basis:
        assert verify_multiplicative_exact(polys, v).holds
    assert add.rank == 4 and add.nontrivial_rank == 2
    assert mul.nontrivial_rank == 2
    for v in small_relations(rs, "additive", 2):
        assert add.contains(v)
    for v in small_relations(rs, "multiplicative", 4):
        assert mul.contains(angle_vector_to_exponents(v, rs.size))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-12, 12).filter(bool), min_size=1, max_size=3, unique_by=abs),
       st.sampled_from([37, 41, 53, 61]))
def test_detection_matches_brute_force(traces, q):
    polys = [F(a, q) for a in traces]
    rs = _roots(polys, 192)
    add = detect_additive(rs, bits=192)
    mul = detect_multiplicative(rs, bits=192)
    brute_add = small_relations(rs, "additive", 2)
    brute_mul = small_relations(rs, "multiplicative", 3)
    for v in brute_add:
        assert add.contains(v)
    for v in brute_mul:
        assert mul.contains(angle_vector_to_exponents(v, rs.size))
    # every detected vector is a genuine relation, checked numerically as well
    with mpmath.workprec(200):
        values = [r.center for r in rs.roots]
        for v in add.basis:
            assert abs(mpmath.fsum(c * a for c, a in zip(v, values))) < mpmath.mpf(2) ** -120
    assert add.rank >= (rank(brute_add) if brute_add else 0)


def test_small_relations_cap():
    polys = [F(1, 5), F(2, 5), F(3, 5)]
    with pytest.raises(TooLarge):
        small_relations(polys, "additive", 20)
    with pytest.raises(InvalidInput):
        small_relations(polys, "bogus", 1)


# -- independence report ----------------------------------------------------------------


def test_certificate_path_for_independent_pair():
    report = independence_report([F(2, 25), F(3, 25)])
    assert report.path == "certificate"
    assert MULT_TRIVIAL_ONLY in report.verdicts


def test_certificate_path_single_curve():
    report = independence_report([QSymplecticPoly((1, 1, 3, 7, 49), 7)])
    assert report.verdicts == [ADDITIVELY_FREE, MULT_TRIVIAL_ONLY]


def test_detection_path_for_honda_tate_system():
    report = independence_report([F(17, 541), F(29, 541), F(46, 541)])
    assert report.path == "detection"
    assert report.verdicts == [HAS_RELATIONS]
    assert report.additive_rank == 2 and report.multiplicative_rank == 2
    as_dict = report.to_dict()
    assert {r["kind"] for r in as_dict["relations"]} == {"additive", "multiplicative"}


def test_detection_without_certificate_agrees_with_certificate():
    # the two paths are independent; for a certified pair detection finds nothing nontrivial
    polys = [F(2, 25), F(3, 25)]
    detected = independence_report(polys, use_certificate=False)
    assert detected.path == "detection"
    assert detected.nontrivial_rank == 0


# -- further properties ----------------------------------------------------------


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=3), st.sampled_from([29, 31, 37]))
def test_trivial_relations_are_multiplicative_relations(traces, q):
    polys = [F(a, q) for a in traces]
    mul = detect_multiplicative(_roots(polys, 192), bits=192)
    for v in mul.trivial_generators():
        assert verify_multiplicative_exact(polys, v).holds


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4), st.sampled_from(["additive", "multiplicative"]))
def test_doubling_precision_keeps_the_verdict(v, kind):
    polys = [F(2, 13), F(-2, 13)]
    verify = verify_additive_exact if kind == "additive" else verify_multiplicative_exact
    first = verify(polys, v)
    again = verify(polys, v, start_bits=2 * max(first.precision_used, 64))
    assert again.verdict == first.verdict


def _canonical(v):
    lead = next(x for x in v if x)
    return tuple(x if lead > 0 else -x for x in v)


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([
    ((1, 0, 3, 0, 9), 3), ((1, 2, 6, 14, 49), 7), ((1, 0, -2, 0, 25), 5),
    ((1, 1, 3, 7, 49), 7), ((1, -4, 8, -20, 25), 5), ((1, 0, 0, 0, 49), 7),
    ((1, -2, 5), 5), ((1, 0, 7), 7), ((1, 3, 9), 9), ((1, -5, 25), 25),
]))
def test_single_polynomial_detection_is_complete_at_height_3(case):
    coeffs, q = case
    P = QSymplecticPoly(coeffs, q)
    assert rh_check(P)
    rs = _roots([P], 256)
    add = detect_additive(rs, bits=256)
    mul = detect_multiplicative(rs, bits=256)
    brute_add = {_canonical(v) for v in small_relations(rs, "additive", 3)}
    brute_mul = [angle_vector_to_exponents(v, rs.size) for v in small_relations(rs, "multiplicative", 3)]
    for v in brute_add:
        assert add.contains(v)
    for v in brute_mul:
        assert mul.contains(v)
    # and in the other direction, every small vector the lattices contain was enumerated
    for v in itertools.product(range(-3, 4), repeat=rs.size):
        if any(v) and add.contains(v):
            assert _canonical(v) in brute_add
    angle_set = {_canonical(v) for v in small_relations(rs, "multiplicative", 3)}
    for w in itertools.product(range(-3, 4), repeat=len(rs.angles)):
        if any(w) and mul.contains(angle_vector_to_exponents(w, rs.size)):
            assert _canonical(w) in angle_set


def test_duplicated_factor_has_relations():
    report = independence_report([F(3, 11), F(3, 11)])
    assert HAS_RELATIONS in report.verdicts
    assert verify_additive_exact([F(3, 11), F(3, 11)], (1, 0, -1, 0)).holds
