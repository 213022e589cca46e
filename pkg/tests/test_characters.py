from math import gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import totient

from galrep.characters import (CharacterError, DirichletCharacter, char_conductor, char_enumerate,
                               char_eval, char_make, char_parity, char_primitive_part, char_product,
                               parse_character, unit_generators)
from oracles import conductor_by_search


def test_enumeration_sizes():
    for N in range(1, 61):
        chars = char_enumerate(N)
        assert len(chars) == totient(N), N
        assert len(set(chars)) == len(chars)


def test_generators_reach_every_unit():
    for N in range(2, 61):
        reached = {1}
        for g, order in unit_generators(N):
            reached = {(r * pow(g, i, N)) % N for r in reached for i in range(order)}
        assert reached == {n for n in range(1, N) if gcd(n, N) == 1}, N


def test_values_off_units_are_zero():
    chi = char_make(12, [(2, 1), (2, 1)])
    for n in range(24):
        assert (chi(n) == 0) == (gcd(n, 12) > 1)


@pytest.mark.parametrize("N", [5, 7, 8, 12, 15, 16, 21, 24, 35])
def test_multiplicativity(N):
    chars = char_enumerate(N)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, len(chars) - 1), st.integers(1, 10 * N), st.integers(1, 10 * N))
    def check(i, m, n):
        chi = chars[i]
        assert chi(m * n) == chi(m) * chi(n)
    check()


def test_conductor_matches_search():
    for N in range(1, 41):
        for chi in char_enumerate(N):
            values = {n: chi(n) for n in range(1, N) if gcd(n, N) == 1}
            assert char_conductor(chi) == conductor_by_search(values, N), chi.serialize()


def test_primitive_part_agrees_on_units():
    for N in range(1, 37):
        for chi in char_enumerate(N):
            prim = char_primitive_part(chi)
            assert prim.modulus == chi.conductor()
            assert prim.is_primitive()
            for n in range(1, 2 * N):
                if gcd(n, N) == 1:
                    assert char_eval(prim, n) == char_eval(chi, n)


def test_product_conductor_divides_lcm():
    for M1 in range(1, 25):
        for M2 in range(M1, 25):
            for a in char_enumerate(M1):
                for b in char_enumerate(M2):
                    prod = char_product(a, b)
                    assert lcm(a.conductor(), b.conductor()) % prod.conductor() == 0


def test_known_characters():
    chi4 = char_make(4, [(2, 1)])
    assert char_parity(chi4) == "odd"
    assert [chi4(n) for n in range(1, 8)] == [1, 0, -1, 0, 1, 0, -1]
    chi5 = char_make(5, [(4, 1)])  # chi(2) = i
    assert chi5.value_order == 4
    assert chi5(2) ** 2 == -1
    assert chi5.parity() == "odd"
    assert (chi5 * chi5).parity() == "even"
    assert char_make(15, [(1, 0), (2, 1)]).conductor() == 5


def test_parity_matches_value_at_minus_one():
    for N in range(2, 41):
        for chi in char_enumerate(N):
            assert chi.sign() == chi(N - 1)


def test_bad_images_rejected():
    with pytest.raises(CharacterError):
        char_make(5, [(3, 1)])  # 2 has order 4 mod 5
    with pytest.raises(CharacterError):
        char_make(5, [(2, 1), (2, 1)])


def test_serialize_roundtrip():
    for N in (1, 8, 12, 35):
        for chi in char_enumerate(N):
            assert parse_character(chi.serialize()) == chi


def test_extend_keeps_values():
    chi = char_make(5, [(4, 1)])
    big = chi.extend(15)
    for n in range(1, 60):
        if gcd(n, 15) == 1:
            assert big(n) == chi(n)
        else:
            assert big(n) == 0
    assert big.conductor() == 5
    assert DirichletCharacter.trivial(7).conductor() == 1
