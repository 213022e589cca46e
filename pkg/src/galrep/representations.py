"""Presentations of semisimple 2-dimensional mod-ell representations and the
characteristic polynomial of Frobenius they determine.

An :class:`Eigenform` gives Tr Frob_p = a_p and det Frob_p = eps(p) p^(k-1).
A :class:`Reducible` source is psi chi_ell^a + phi chi_ell^b with chi_ell the
mod-ell cyclotomic character, so chi_ell(Frob_p) = p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

from sympy import isprime, n_order

from .arith import CycloElement, Embedding, FieldDescriptor, FieldElement, embedding_make, prime_to_part
from .bounds import weight_range
from .characters import DirichletCharacter
from .qexp import MissingEigenvalue


class BadPrime(ValueError):
    pass


@dataclass(frozen=True)
class Eigenform:
    level: int
    weight: int
    character: DirichletCharacter
    ap_table: Mapping[int, object] = field(hash=False)
    ell: int
    field: FieldDescriptor | None = None
    serre_minimal: bool = False

    def __post_init__(self):
        if not isprime(self.ell):
            raise ValueError(f"ell = {self.ell} is not prime")
        if self.level % self.character.modulus:
            raise ValueError(f"character modulus {self.character.modulus} does not divide level {self.level}")
        table = {int(p): (Fraction(v) if isinstance(v, int) else v) for p, v in self.ap_table.items()}
        object.__setattr__(self, "ap_table", table)
        if self.field is None:
            fe = next((v for v in table.values() if isinstance(v, FieldElement)), None)
            if fe is not None:
                object.__setattr__(self, "field", fe.descriptor)
        if self.field is not None and self.field.ell != self.ell:
            raise ValueError("coefficient field has the wrong characteristic")

    @property
    def bad_modulus(self) -> int:
        return self.ell * self.level


@dataclass(frozen=True)
class Reducible:
    psi: DirichletCharacter
    phi: DirichletCharacter
    a: int
    b: int
    ell: int

    def __post_init__(self):
        if not isprime(self.ell):
            raise ValueError(f"ell = {self.ell} is not prime")
        for chi in (self.psi, self.phi):
            if chi.modulus % (self.ell * self.ell) == 0:
                raise ValueError(f"character modulus {chi.modulus} has more than one factor of ell")
        object.__setattr__(self, "a", self.a % (self.ell - 1) if self.ell > 2 else 0)
        object.__setattr__(self, "b", self.b % (self.ell - 1) if self.ell > 2 else 0)

    @property
    def bad_modulus(self) -> int:
        return self.ell * lcm(self.psi.modulus, self.phi.modulus)

    def swapped(self) -> Reducible:
        return Reducible(self.phi, self.psi, self.b, self.a, self.ell)


ReprSource = Union[Eigenform, Reducible]


@dataclass(frozen=True)
class CharPolyData:
    """1 - trace T + det T^2 at the prime p."""

    p: int
    trace: FieldElement
    det: FieldElement

    def __str__(self):
        return f"p={self.p} trace={_fmt(self.trace)} det={_fmt(self.det)}"


def _fmt(x: FieldElement) -> str:
    return str(x.coords[0]) if x.descriptor.degree == 1 else str(list(x.coords))


def frob_charpoly(src: ReprSource, p: int, emb: Embedding) -> CharPolyData:
    if src.bad_modulus % p == 0:
        raise BadPrime(f"p = {p} divides {src.bad_modulus}")
    if emb.ell != src.ell:
        raise ValueError("embedding has the wrong characteristic")
    if isinstance(src, Eigenform):
        try:
            ap = src.ap_table[p]
        except KeyError:
            raise MissingEigenvalue(p) from None
        trace = emb.reduce(ap)
        det = emb.char_value(src.character, p) * pow(p, src.weight - 1, src.ell)
        return CharPolyData(p, trace, det)
    x = emb.char_value(src.psi, p) * pow(p, src.a, src.ell)
    y = emb.char_value(src.phi, p) * pow(p, src.b, src.ell)
    return CharPolyData(p, x + y, x * y)


def oddness_check(src: ReprSource) -> bool:
    """det(rho)(c) == -1 in the residue field (always true when ell = 2)."""
    if isinstance(src, Eigenform):
        sign = src.character.sign() * (-1) ** (src.weight - 1)
    else:
        sign = src.psi.sign() * src.phi.sign() * (-1) ** (src.a + src.b)
    return src.ell == 2 or sign == -1


def artin_conductor_reducible(src: Reducible) -> int:
    """Prime-to-ell part of cond(psi) * cond(phi)."""
    if not isinstance(src, Reducible):
        raise TypeError("artin_conductor_reducible needs a Reducible source")
    return prime_to_part(src.psi.conductor() * src.phi.conductor(), src.ell)


def repr_validate(src: ReprSource, N: int, ell: int) -> bool:
    """Whether ``src`` is a mod-``ell`` source with conductor dividing N."""
    if src.ell != ell:
        return False
    if isinstance(src, Reducible):
        return N % artin_conductor_reducible(src) == 0
    if N % prime_to_part(src.level, ell):
        return False
    if src.serre_minimal:
        lo, hi = weight_range(ell)
        if ell == 2 and src.weight not in (2, 4):
            return False
        if not lo <= src.weight <= hi:
            return False
    return True


def _value_orders(src) -> Iterable[int]:
    if isinstance(src, DirichletCharacter):
        yield src.value_order
    elif isinstance(src, Reducible):
        yield src.psi.value_order
        yield src.phi.value_order
    else:
        yield src.character.value_order
        for v in src.ap_table.values():
            if isinstance(v, CycloElement):
                yield v.order


def _field_degrees(src) -> Iterable[int]:
    if isinstance(src, Eigenform) and src.field is not None:
        yield src.field.degree


def shared_embedding(sources: Iterable, ell: int) -> Embedding:
    """One reduction map able to reduce every value occurring in ``sources``
    (representation sources or characters), landing in a single field."""
    sources = list(sources)
    m = lcm(1, *(prime_to_part(o, ell) for s in sources for o in _value_orders(s)))
    k0 = 1 if m == 1 else int(n_order(ell, m))
    k = lcm(k0, *(d for s in sources for d in _field_degrees(s)))
    return embedding_make(m, ell, k)
