import random

import pytest
from sympy import primerange

from galrep.arith import ext_field_make, field_embed
from galrep.characters import DirichletCharacter, char_enumerate, char_make
from galrep.eisenstein import sigma_twisted
from galrep.representations import (BadPrime, Eigenform, Reducible, artin_conductor_reducible, frob_charpoly,
                                    oddness_check, repr_validate, shared_embedding)

ONE = DirichletCharacter.trivial(1)
CHI4 = char_make(4, [(2, 1)])
CHI5_4 = char_make(5, [(4, 1)])
CHI7_3 = char_make(7, [(3, 1)])


@pytest.mark.parametrize("psi,phi,a,b,ell", [
    (ONE, CHI5_4, 1, 2, 13), (CHI7_3, CHI4, 0, 3, 5), (CHI5_4, CHI5_4, 2, 2, 3), (CHI7_3, ONE, 0, 0, 2),
])
def test_det_is_character_times_cyclotomic_power(psi, phi, a, b, ell):
    src = Reducible(psi, phi, a, b, ell)
    emb = shared_embedding([src], ell)
    rng = random.Random(ell)
    pool = [p for p in primerange(2, 2000) if src.bad_modulus % p]
    for p in rng.sample(pool, 50):
        data = frob_charpoly(src, p, emb)
        # psi(p) phi(p) = product of the two reduced roots of unity
        expected = emb.char_value(psi * phi, p) * pow(p, src.a + src.b, ell)
        assert data.det == expected


@pytest.mark.parametrize("psi,phi,k,ell", [
    (ONE, ONE, 4, 5), (ONE, CHI4, 3, 7), (CHI4, ONE, 3, 7), (ONE, CHI5_4, 3, 13), (ONE, CHI5_4, 3, 3),
    (CHI7_3, CHI5_4, 5, 11), (ONE, ONE, 12, 691),
])
def test_eisenstein_eigenform_matches_reducible(psi, phi, k, ell):
    level = psi.modulus * phi.modulus
    eps = (psi * phi).extend(level)
    primes = list(primerange(2, 300))
    table = {p: sigma_twisted(p, k, psi, phi) for p in primes if (ell * level) % p}
    form = Eigenform(level, k, eps, table, ell)
    red = Reducible(psi, phi, 0, k - 1, ell)
    emb = shared_embedding([form, red], ell)
    for p in table:
        lhs, rhs = frob_charpoly(form, p, emb), frob_charpoly(red, p, emb)
        assert (lhs.trace, lhs.det) == (rhs.trace, rhs.det), p


def test_oddness_symmetric_under_swap():
    for ell in (3, 5, 7):
        for N in (1, 3, 4, 5, 7):
            for psi in char_enumerate(N):
                for phi in char_enumerate(N):
                    for a in range(ell - 1):
                        for b in range(ell - 1):
                            src = Reducible(psi, phi, a, b, ell)
                            assert oddness_check(src) == oddness_check(src.swapped())


def test_oddness_examples():
    assert oddness_check(Reducible(ONE, ONE, 0, 3, 5))
    assert not oddness_check(Reducible(ONE, ONE, 0, 2, 5))
    assert oddness_check(Reducible(ONE, CHI4, 0, 0, 5))
    assert oddness_check(Eigenform(1, 12, ONE, {}, 691))
    assert oddness_check(Reducible(ONE, ONE, 0, 0, 2))


def test_bad_primes_rejected():
    src = Reducible(ONE, CHI4, 0, 0, 5)
    emb = shared_embedding([src], 5)
    for p in (2, 5):
        with pytest.raises(BadPrime):
            frob_charpoly(src, p, emb)


def test_exponents_normalized():
    src = Reducible(ONE, ONE, 4, 9, 5)
    assert (src.a, src.b) == (0, 1)
    with pytest.raises(ValueError):
        Reducible(char_make(9, [(3, 1)]), ONE, 0, 0, 3)


def test_artin_conductor_and_validation():
    src = Reducible(CHI4, char_make(15, [(1, 0), (2, 1)]), 0, 1, 5)
    # phi is the quadratic character of conductor 5, all of it at ell
    assert artin_conductor_reducible(src) == 4
    assert repr_validate(src, 4, 5)
    assert not repr_validate(src, 2, 5)
    assert not repr_validate(src, 4, 7)
    src = Reducible(CHI4, CHI7_3, 1, 1, 5)
    assert artin_conductor_reducible(src) == 28
    form = Eigenform(11, 2, DirichletCharacter.trivial(11), {}, 5, serre_minimal=True)
    assert repr_validate(form, 11, 5)
    assert not repr_validate(Eigenform(11, 30, DirichletCharacter.trivial(11), {}, 5, serre_minimal=True), 11, 5)
    assert not repr_validate(Eigenform(11, 6, DirichletCharacter.trivial(11), {}, 2, serre_minimal=True), 11, 2)


def test_shared_embedding_covers_finite_field_tables():
    F9 = ext_field_make(3, 2)
    form = Eigenform(1, 2, ONE, {2: F9.gen, 5: F9.one}, 3)
    red = Reducible(ONE, CHI4, 0, 0, 3)
    emb = shared_embedding([form, red], 3)
    assert emb.field.degree == 2
    assert frob_charpoly(form, 2, emb).trace == field_embed(F9.gen, emb.field)
