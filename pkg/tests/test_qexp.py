from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from galrep.arith import CycloElement, FieldDescriptor, embedding_make, ext_field_make
from galrep.characters import DirichletCharacter, char_make
from galrep.qexp import (DomainMismatch, MissingEigenvalue, QExpansion, WeightMismatch, expand_from_eigenvalues,
                         op_pi, op_pi_p, op_theta, op_U, op_V, reduce_mod_lambda, series_add, series_mul,
                         squarefree_level_part)
from oracles import tau_by_eta

ONE = DirichletCharacter.trivial(1)
RUNS = settings(max_examples=200, deadline=None)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=9)
levels = st.sampled_from([1, 2, 3, 4, 6, 9, 10, 12, 15, 30, 36, 105, 210])
primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def rational_series(draw, min_size=1, max_size=40):
    coeffs = draw(st.lists(rationals, min_size=min_size, max_size=max_size))
    return QExpansion(tuple(coeffs), draw(st.integers(2, 12)), draw(levels), ONE)


@st.composite
def finite_series(draw, field, size):
    coords = st.lists(st.integers(0, field.ell - 1), min_size=field.degree, max_size=field.degree)
    coeffs = [field.coerce(c) for c in draw(st.lists(coords, min_size=size, max_size=size))]
    return QExpansion(tuple(coeffs), 2, 1, ONE)


def test_squarefree_level_part():
    assert squarefree_level_part(1) == 1
    assert squarefree_level_part(11) == 11
    assert squarefree_level_part(12) == 3
    assert squarefree_level_part(36) == 1
    assert squarefree_level_part(90) == 10


@RUNS
@given(rational_series(), primes)
def test_U_after_V_is_identity(f, p):
    g = op_U(op_V(f, p), p)
    assert g.precision == (f.precision - 1) // p + 1
    assert g.coeffs == f.coeffs[:g.precision]
    assert g.level == f.level * p


@RUNS
@given(rational_series(), primes)
def test_pi_p_is_V_after_U(f, p):
    f = f.with_coeffs(f.coeffs, level=f.level * p)
    direct = op_pi_p(f, p)
    composed = op_V(op_U(f, p), p)
    assert direct.precision == f.precision
    # V after U only knows (B-1)//p + 1 coefficients
    assert composed.coeffs == direct.coeffs[:composed.precision]


@RUNS
@given(rational_series(min_size=2))
def test_pi_matches_gcd_filter(f):
    g = op_pi(f)
    N = f.level
    expected = tuple(c if n and gcd(n, N) == 1 else Fraction(0) for n, c in enumerate(f.coeffs))
    assert g.coeffs == expected
    assert g.level == N * squarefree_level_part(N)


def test_operator_metadata():
    f = QExpansion((1, 2, 3, 4, 5, 6, 7), 4, 6, ONE)
    assert op_U(f, 2).level == 6 and op_U(f, 5).level == 30
    assert op_pi_p(f, 2).level == 12
    assert op_pi_p(op_pi_p(f, 2), 2).level == 12
    assert op_V(f, 3).level == 18
    with pytest.raises(ValueError):
        op_pi_p(f, 5)
    with pytest.raises(ValueError):
        op_U(f, 4)


F9 = ext_field_make(3, 2)
F7 = FieldDescriptor(7)


@pytest.mark.parametrize("field", [F7, F9], ids=str)
def test_theta_leibniz(field):
    @RUNS
    @given(st.data())
    def check(data):
        size = data.draw(st.integers(1, 25))
        f = data.draw(finite_series(field, size))
        g = data.draw(finite_series(field, size))
        lhs = op_theta(series_mul(f, g))
        rhs = series_add(series_mul(op_theta(f), g), series_mul(f, op_theta(g)))
        assert lhs.coeffs == rhs.coeffs
    check()


def test_theta_needs_finite_field():
    with pytest.raises(DomainMismatch):
        op_theta(QExpansion((1, 2), 2, 1, ONE))


def test_mixed_weights_need_permission():
    f, g = QExpansion((1, 2), 2, 1, ONE), QExpansion((1, 2), 4, 1, ONE)
    with pytest.raises(WeightMismatch):
        series_add(f, g)
    h = series_add(f, g, allow_mixed=True)
    assert h.mixed_weight and h.weight == 4


@st.composite
def cyclo_series(draw, m, ell):
    deg = len(CycloElement.root_of_unity(m).coeffs)
    coeff = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(
        lambda q: q.denominator % ell), min_size=deg, max_size=deg)
    coeffs = [CycloElement(m, tuple(c)) for c in draw(st.lists(coeff, min_size=2, max_size=30))]
    return QExpansion(tuple(coeffs), 3, draw(levels), ONE)


@pytest.mark.parametrize("m,ell", [(4, 5), (3, 7), (5, 11)])
def test_reduction_commutes_with_operators(m, ell):
    emb = embedding_make(m, ell)

    @RUNS
    @given(cyclo_series(m, ell), primes, st.integers(1, 4))
    def check(f, p, d):
        r = reduce_mod_lambda(f, emb)
        assert reduce_mod_lambda(op_U(f, p), emb) == op_U(r, p)
        assert reduce_mod_lambda(op_V(f, d), emb) == op_V(r, d)
        assert reduce_mod_lambda(op_pi(f), emb) == op_pi(r)
        if f.level % p == 0:
            assert reduce_mod_lambda(op_pi_p(f, p), emb) == op_pi_p(r, p)
    check()



def test_expansion_reproduces_tau():
    B = 120
    tau = tau_by_eta(B)
    table = {p: tau[p] for p in primerange(2, B)}
    f = expand_from_eigenvalues(table, ONE, 12, B)
    assert list(f.coeffs) == tau


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(st.sampled_from(list(primerange(2, 60))), st.integers(-30, 30), min_size=17, max_size=17),
       st.sampled_from([ONE, char_make(4, [(2, 1)]), char_make(5, [(2, 1)])]), st.integers(2, 8))
def test_expansion_is_multiplicative(table, eps, k):
    B = 60
    f = expand_from_eigenvalues(table, eps, k, B)
    for m in range(2, B):
        for n in range(2, (B - 1) // m + 1):
            if gcd(m, n) == 1:
                assert f[m * n] == f[m] * f[n]


def test_expansion_bad_prime_powers():
    # p | level: a_{p^r} = a_p^r
    f = expand_from_eigenvalues({2: 3, 3: 1, 5: 0, 7: 2}, ONE, 2, 9, level=2)
    assert f[4] == 9 and f[8] == 27
    g = expand_from_eigenvalues({2: 3, 3: 1, 5: 0, 7: 2}, ONE, 2, 9)
    assert g[4] == 9 - 2 and g[8] == 3 * 7 - 2 * 3


def test_missing_eigenvalue_names_prime():
    with pytest.raises(MissingEigenvalue) as exc:
        expand_from_eigenvalues({2: 1, 3: 1}, ONE, 2, 10)
    assert exc.value.p == 5


def test_operator_examples():
    f = QExpansion((0, 1, 2, 0, 0, 0, 0), 2, 1, ONE)
    assert op_V(f, 3).coeffs == (0, 0, 0, 1, 0, 0, 2)
    ones = QExpansion((0,) + (1,) * 12, 2, 2, ONE)
    assert op_pi_p(ones, 2).coeffs == tuple(1 if n and n % 2 == 0 else 0 for n in range(13))
    g = op_pi(ones.with_coeffs(ones.coeffs, level=6))
    assert [n for n in range(13) if g[n]] == [1, 5, 7, 11]
    assert g.level == 36
