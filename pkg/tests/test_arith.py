from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weilrel.arith import polyfp, qpoly
from weilrel.arith.fields import field_create, quadratic_character, smallest_irreducible
from weilrel.arith.interval import HPComplex
from weilrel.arith.intlinalg import hnf, integer_kernel, lll_reduce, rank
from weilrel.arith.numtheory import factorize, is_prime, prime_power, squarefree_part
from weilrel.errors import EvenCharacteristic, InvalidInput, NotPrime, TooLarge

SMALL_PRIMES = [3, 5, 7, 11, 13]


def _trial_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


# -- number theory -----------------------------------------------------------


@given(st.integers(min_value=-5, max_value=20000))
def test_is_prime_matches_trial_division(n):
    assert is_prime(n) == _trial_prime(n)


@given(st.integers(min_value=1, max_value=10**9))
def test_factorize_multiplies_back(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert _trial_prime(p) if p < 10**5 else is_prime(p)
        prod *= p**e
    assert prod == n


def test_prime_power_and_squarefree_part():
    assert prime_power(5**8) == (5, 8)
    assert prime_power(12) is None
    assert squarefree_part(1875) == 3
    assert squarefree_part(48) == 3
    assert squarefree_part(1323) == 3


# -- finite fields -----------------------------------------------------------


def test_prime_field_matches_integers():
    F = field_create(7)
    for a in range(7):
        for b in range(7):
            assert F.mul(a, b) == a * b % 7
            assert F.add(a, b) == (a + b) % 7
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (3, 3), (7, 2)])
def test_extension_field_structure(p, n):
    F = field_create(p, n)
    assert polyfp.is_irreducible(list(F.modulus), p)
    gen = F.generator
    seen, x = set(), 1
    for _ in range(F.q - 1):
        seen.add(x)
        x = F.mul(x, gen)
    assert x == 1 and len(seen) == F.q - 1
    for a in range(F.q):
        assert F.pow(a, F.q) == a


field_elems = st.tuples(st.sampled_from([(3, 2), (5, 2), (3, 3)]), st.integers(0, 10**6),
                        st.integers(0, 10**6), st.integers(0, 10**6))


@given(field_elems)
def test_field_axioms(data):
    (p, n), a, b, c = data
    F = field_create(p, n)
    a, b, c = a % F.q, b % F.q, c % F.q
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1


def test_quadratic_character_counts_half():
    F = field_create(5, 2)
    values = [quadratic_character(x, F) for x in range(F.q)]
    assert values.count(1) == values.count(-1) == (F.q - 1) // 2
    assert all(values[F.mul(x, x)] == 1 for x in range(1, F.q))


def test_field_errors():
    with pytest.raises(NotPrime):
        field_create(9)
    with pytest.raises(EvenCharacteristic):
        field_create(2, 3)
    with pytest.raises(TooLarge):
        field_create(7, 20)
    with pytest.raises(InvalidInput):
        field_create(5, 2, modulus=(1, 0, 1))  # x^2 + 1 splits over F_5


def test_smallest_irreducible_is_minimal():
    f = smallest_irreducible(3, 2)
    assert f == (1, 0, 1)


# -- polynomials over F_p ------------------------------------------------------


@settings(max_examples=60)
@given(st.sampled_from(SMALL_PRIMES), st.lists(st.integers(0, 12), min_size=2, max_size=8), st.integers(0, 5))
def test_factorization_reconstructs(p, low, seed):
    f = polyfp.monic(polyfp.trim(low + [1], p), p)
    factors = polyfp.factor(f, p, seed=seed)
    prod = [1]
    for h, m in factors:
        assert polyfp.is_irreducible(h, p)
        for _ in range(m):
            prod = polyfp.mul(prod, h, p)
    assert prod == f
    # linear factors agree with a direct root search
    roots = {x for x in range(p) if polyfp.evaluate(f, x, p) == 0}
    linear = {(-h[0]) % p for h, _ in factors if polyfp.deg(h) == 1}
    assert roots == linear


@given(st.sampled_from(SMALL_PRIMES), st.lists(st.integers(0, 12), min_size=1, max_size=6),
       st.lists(st.integers(0, 12), min_size=1, max_size=6))
def test_divmod_identity(p, a, b):
    a, b = polyfp.trim(a, p), polyfp.trim(b, p)
    if not b:
        return
    quo, rem = polyfp.divmod_(a, b, p)
    assert polyfp.add(polyfp.mul(quo, b, p), rem, p) == a
    assert polyfp.deg(rem) < polyfp.deg(b)


def test_rational_squarefree():
    assert qpoly.is_squarefree([1, 0, 1])
    assert not qpoly.is_squarefree(qpoly.qmul([1, 1], [1, 1]))


# -- integer linear algebra ------------------------------------------------------


def _fraction_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=1, max_size=4))


@given(matrices)
def test_rank_and_kernel(rows):
    assert rank(rows) == _fraction_rank(rows)
    kern = integer_kernel(rows)
    ncols = len(rows[0])
    assert len(kern) == ncols - _fraction_rank(rows)
    for v in kern:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(matrices)
def test_hnf_and_lll_preserve_lattice(rows):
    if rank(rows) == 0:
        return
    H = hnf(rows)
    reduced = lll_reduce(H)
    assert hnf(reduced) == H
    assert rank(reduced) == rank(rows)


# -- disc arithmetic -------------------------------------------------------------


@given(st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50), st.floats(-50, 50))
def test_disc_arithmetic_encloses(a, b, c, d):
    x, y = HPComplex.exact(a, b, 96), HPComplex.exact(c, d, 96)
    with mpmath.workprec(300):
        zx, zy = mpmath.mpc(a, b), mpmath.mpc(c, d)
        exact = {"+": zx + zy, "*": zx * zy, "-": zx - zy}
        if abs(zy) > 1e-6:
            exact["/"] = zx / zy
    got = {"+": x + y, "*": x * y, "-": x - y}
    if "/" in exact:
        got["/"] = x / y
    for op, disc in got.items():
        with mpmath.workprec(300):
            assert abs(exact[op] - mpmath.mpc(disc.re, disc.im)) <= disc.rad, op
