"""Dirichlet characters stored by the images of fixed CRT generators.

For each prime power p^e || N the generators are: the smallest primitive root
mod p^e (p odd), -1 for 4, and -1 and 5 for 2^e with e >= 3.  Each generator is
lifted to Z/N by CRT (congruent to 1 at the other prime powers).  A character
sends generator g to zeta_m^e, recorded as ``(g, m, e)`` with gcd(m, e) = 1
(``(g, 1, 0)`` for the trivial image).
"""
from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from functools import cache
from itertools import product
from math import gcd, lcm

from sympy import factorint, primitive_root

from .arith import CycloElement, euler_phi


class CharacterError(ValueError):
    pass


@dataclass(frozen=True)
class _Component:
    q: int  # prime power
    p: int
    gens_local: tuple[int, ...]
    orders: tuple[int, ...]
    lifts: tuple[int, ...]
    dlog: dict  # unit mod q -> exponent tuple


@cache
def _structure(N: int) -> tuple[_Component, ...]:
    comps = []
    for p, e in sorted(factorint(N).items()):
        q = p**e
        if p == 2:
            if e == 1:
                gens, orders = (), ()
                dlog = {1: ()}
            elif e == 2:
                gens, orders = (3,), (2,)
                dlog = {1: (0,), 3: (1,)}
            else:
                gens, orders = (q - 1, 5), (2, q // 4)
                dlog = {}
                for i in range(2):
                    x = 1 if i == 0 else q - 1
                    for j in range(q // 4):
                        dlog[x] = (i, j)
                        x = x * 5 % q
        else:
            g = int(primitive_root(q))
            n = q - q // p
            gens, orders = (g,), (n,)
            dlog = {}
            x = 1
            for i in range(n):
                dlog[x] = (i,)
                x = x * g % q
        rest = N // q
        lifts = tuple(_crt(gl, q, 1, rest) for gl in gens)
        comps.append(_Component(q, p, gens, orders, lifts, dlog))
    return tuple(comps)


def _crt(a: int, m: int, b: int, n: int) -> int:
    if n == 1:
        return a % m
    return (a * n * pow(n, -1, m) + b * m * pow(m, -1, n)) % (m * n)


def unit_generators(N: int) -> tuple[tuple[int, int], ...]:
    """The canonical generators of (Z/N)^* as ``(g, order)`` pairs."""
    return tuple((g, o) for c in _structure(N) for g, o in zip(c.lifts, c.orders))


def _normalize(m: int, e: int) -> tuple[int, int]:
    e %= m
    d = gcd(m, e)  # gcd(m, 0) = m
    return m // d, e // d


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    images: tuple[tuple[int, int, int], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def value_order(self) -> int:
        return lcm(1, *(m for _, m, _ in self.images))

    @classmethod
    def trivial(cls, N: int = 1) -> DirichletCharacter:
        return char_make(N, [(1, 0)] * len(unit_generators(N)))

    # -- evaluation --------------------------------------------------------

    def _table(self) -> list[int]:
        # populated once; later reads are lock-free
        table = self._cache.get("table")
        if table is None:
            table = _value_table(self)
            self._cache["table"] = table
        return table

    def exponent(self, n: int) -> int | None:
        """E with chi(n) = zeta_M^E for M = value_order, or None off the units."""
        e = self._table()[n % self.modulus]
        return None if e < 0 else e

    def __call__(self, n: int) -> CycloElement:
        return char_eval(self, n)

    # -- structure ---------------------------------------------------------

    def conductor(self) -> int:
        return char_conductor(self)

    def primitive_part(self) -> DirichletCharacter:
        return char_primitive_part(self)

    def is_primitive(self) -> bool:
        return char_conductor(self) == self.modulus

    def is_trivial(self) -> bool:
        return self.value_order == 1

    def parity(self) -> str:
        return char_parity(self)

    def sign(self) -> int:
        """chi(-1) as an integer."""
        return 1 if char_parity(self) == "even" else -1

    def extend(self, N: int) -> DirichletCharacter:
        """The character mod a multiple N of the modulus induced by this one."""
        if N % self.modulus:
            raise CharacterError(f"{N} is not a multiple of {self.modulus}")
        M = self.value_order
        return char_make(N, [(M, self.exponent(g)) for g, _ in unit_generators(N)])

    def __mul__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return char_product(self, other)

    def serialize(self) -> str:
        body = ",".join(f"({g},{m},{e})" for g, m, e in self.images)
        return f"modulus={self.modulus} images=[{body}]"

    def __str__(self):
        return self.serialize()


def _value_table(chi: DirichletCharacter) -> list[int]:
    N = chi.modulus
    M = chi.value_order
    # weight of each generator exponent in Z/M
    weights = [e * (M // m) for _, m, e in chi.images]
    comps = _structure(N)
    table = [-1] * N
    if N == 1:
        table[0] = 0
        return table
    offsets = []
    i = 0
    for c in comps:
        offsets.append(weights[i : i + len(c.orders)])
        i += len(c.orders)
    for n in range(N):
        if gcd(n, N) != 1:
            continue
        total = 0
        for c, w in zip(comps, offsets):
            for x, wt in zip(c.dlog[n % c.q], w):
                total += x * wt
        table[n] = total % M
    return table


def char_make(N: int, generator_images) -> DirichletCharacter:
    """Build a character mod N from generator images.

    ``generator_images`` lists one image per canonical generator, either as
    ``(m, e)`` (meaning zeta_m^e) or ``(g, m, e)`` with g the generator.
    """
    if N < 1:
        raise CharacterError("modulus must be positive")
    gens = unit_generators(N)
    images = list(generator_images)
    if len(images) != len(gens):
        raise CharacterError(f"modulus {N} has {len(gens)} generators, got {len(images)} images")
    out = []
    for (g, order), img in zip(gens, images):
        if len(img) == 3:
            g_given, m, e = img
            if g_given % N != g % N:
                raise CharacterError(f"generator {g_given} does not match canonical generator {g} mod {N}")
        else:
            m, e = img
        if m < 1:
            raise CharacterError("root of unity order must be positive")
        m, e = _normalize(m, e)
        if order % m:
            raise CharacterError(f"image of order {m} incompatible with generator {g} of order {order}")
        out.append((g, m, e))
    return DirichletCharacter(N, tuple(out))


def char_eval(chi: DirichletCharacter, n: int) -> CycloElement:
    e = chi.exponent(n)
    M = chi.value_order
    if e is None:
        return CycloElement.zero(M)
    return CycloElement.root_of_unity(M, e)


def _local_conductor_exponent(chi: DirichletCharacter, comp: _Component) -> int:
    q, p = comp.q, comp.p
    rest = chi.modulus // q
    e_max = 0
    while p ** (e_max + 1) <= q:
        e_max += 1
    for j in range(e_max + 1):
        pj = p**j
        ok = True
        for u in range(1, q, pj):
            if u % p == 0 and pj == 1:
                continue
            if chi.exponent(_crt(u, q, 1, rest)) != 0:
                ok = False
                break
        if ok:
            return j
    return e_max


def char_conductor(chi: DirichletCharacter) -> int:
    """Smallest f | N through which chi factors, assembled prime by prime."""
    f = 1
    for comp in _structure(chi.modulus):
        f *= comp.p ** _local_conductor_exponent(chi, comp)
    return f


def char_primitive_part(chi: DirichletCharacter) -> DirichletCharacter:
    f = char_conductor(chi)
    N = chi.modulus
    # N = N_f * N_r with N_f supported on the primes of f
    N_f = 1
    for p, e in factorint(N).items():
        if f % p == 0:
            N_f *= p**e
    N_r = N // N_f
    M = chi.value_order
    images = []
    for g, _ in unit_generators(f):
        n = _crt(g % N_f, N_f, 1, N_r) if N_f > 1 else _crt(0, 1, 1, N_r)
        images.append((M, chi.exponent(n)))
    return char_make(f, images)


def char_parity(chi: DirichletCharacter) -> str:
    return "even" if chi.exponent(-1) == 0 else "odd"


def char_product(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    L = lcm(chi1.modulus, chi2.modulus)
    a, b = chi1.extend(L), chi2.extend(L)
    M = lcm(a.value_order, b.value_order)
    images = []
    for (g, m1, e1), (_, m2, e2) in zip(a.images, b.images):
        images.append((M, e1 * (M // m1) + e2 * (M // m2)))
    return char_make(L, images)


def char_enumerate(N: int) -> list[DirichletCharacter]:
    gens = unit_generators(N)
    return [char_make(N, [(o, e) for (_, o), e in zip(gens, exps)])
            for exps in product(*(range(o) for _, o in gens))]


_SERIAL = re.compile(r"^\s*modulus\s*=\s*(\d+)\s+images\s*=\s*(\[.*\])\s*$")


def parse_character(text: str) -> DirichletCharacter:
    """Inverse of :meth:`DirichletCharacter.serialize`."""
    match = _SERIAL.match(text)
    if not match:
        raise CharacterError(f"malformed character: {text!r}")
    images = ast.literal_eval(match.group(2))
    return char_make(int(match.group(1)), [tuple(x) for x in images])
