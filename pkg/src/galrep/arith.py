"""Exact arithmetic: prime and extension finite fields, cyclotomic field
elements, generalized Bernoulli numbers and reduction modulo a prime above ell.

Rationals are plain :class:`fractions.Fraction` values, which are always stored
gcd-reduced with a positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import product as _cartesian
from math import comb, gcd, lcm
from typing import Iterator, Sequence, Union

from sympy import factorint, isprime, n_order, totient

Rational = Fraction


class NotEllIntegral(ArithmeticError):
    """A value has a denominator divisible by ell, so it has no reduction."""

    def __init__(self, value, ell: int, index: int | None = None):
        self.value = value
        self.ell = ell
        self.index = index
        where = f" (coefficient index {index})" if index is not None else ""
        super().__init__(f"{value} is not {ell}-integral{where}")


class FieldMismatch(ValueError):
    pass


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def euler_phi(n: int) -> int:
    return int(totient(n))


def prime_to_part(n: int, ell: int) -> int:
    """Largest divisor of ``n`` coprime to ``ell``."""
    while n % ell == 0:
        n //= ell
    return n


# ---------------------------------------------------------------------------
# polynomials over F_ell, ascending coefficient lists

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], ell: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % ell for c in out])


def _poly_divmod(a: Sequence[int], b: Sequence[int], ell: int) -> tuple[list[int], list[int]]:
    a = _trim([c % ell for c in a])
    b = _trim([c % ell for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, ell)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv % ell
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % ell
        _trim(a)
    return q, a


def _poly_mod(a: Sequence[int], b: Sequence[int], ell: int) -> list[int]:
    return _poly_divmod(a, b, ell)[1]


def _poly_gcd(a: Sequence[int], b: Sequence[int], ell: int) -> list[int]:
    a = _trim([c % ell for c in a])
    b = _trim([c % ell for c in b])
    while b:
        a, b = b, _poly_mod(a, b, ell)
    if a:
        inv = pow(a[-1], -1, ell)
        a = [c * inv % ell for c in a]
    return a


def _poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], ell: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, mod, ell)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, ell), mod, ell)
        base = _poly_mod(_poly_mul(base, base, ell), mod, ell)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], ell: int) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_ell."""
    f = _trim([c % ell for c in f])
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    # x^(ell^j) mod f for j = 0..k
    frob = [x]
    for _ in range(k):
        frob.append(_poly_powmod(frob[-1], ell, f, ell))
    if _poly_mod([a - b for a, b in _zip_pad(frob[k], x)], f, ell):
        return False
    for r in prime_factors(k):
        diff = [a - b for a, b in _zip_pad(frob[k // r], x)]
        if len(_poly_gcd(f, diff, ell)) > 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


# ---------------------------------------------------------------------------
# finite fields

@dataclass(frozen=True)
class FieldDescriptor:
    """F_ell (degree 1, no modulus) or F_ell[t]/(modulus) of the given degree.

    ``modulus`` is the ascending coefficient tuple of a monic irreducible
    polynomial of degree ``degree`` (length ``degree + 1``).
    """

    ell: int
    degree: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not isprime(self.ell):
            raise ValueError(f"{self.ell} is not prime")
        if self.degree == 1:
            # every monic linear modulus gives the same field
            object.__setattr__(self, "modulus", None)
            return
        mod = tuple(c % self.ell for c in self.modulus or ())
        if len(mod) != self.degree + 1 or mod[-1] != 1:
            raise ValueError(f"modulus {self.modulus} is not monic of degree {self.degree}")
        object.__setattr__(self, "modulus", mod)

    @property
    def order(self) -> int:
        return self.ell**self.degree

    def __call__(self, value) -> FieldElement:
        return self.coerce(value)

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.descriptor != self:
                raise FieldMismatch(f"element of {value.descriptor} used in {self}")
            return value
        if isinstance(value, (int, Fraction)):
            v = Fraction(value)
            if v.denominator % self.ell == 0:
                raise NotEllIntegral(v, self.ell)
            c = v.numerator * pow(v.denominator, -1, self.ell) % self.ell
            return FieldElement(self, (c,) + (0,) * (self.degree - 1))
        if isinstance(value, (list, tuple)):
            coords = [int(c) % self.ell for c in value]
            if len(coords) > self.degree:
                raise ValueError(f"{len(coords)} coordinates for a degree {self.degree} field")
            return FieldElement(self, tuple(coords + [0] * (self.degree - len(coords))))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.degree)

    @property
    def one(self) -> FieldElement:
        return self.coerce(1)

    @property
    def gen(self) -> FieldElement:
        """The class of t (equal to 1 in the prime field)."""
        if self.degree == 1:
            return self.one
        return FieldElement(self, (0, 1) + (0,) * (self.degree - 2))

    def elements(self, include_zero: bool = True) -> Iterator[FieldElement]:
        """All elements, ordered by their coordinates read from the top
        coordinate down (so the constant coordinate varies fastest)."""
        for v in range(0 if include_zero else 1, self.order):
            coords = []
            for _ in range(self.degree):
                v, r = divmod(v, self.ell)
                coords.append(r)
            yield FieldElement(self, tuple(coords))

    def __str__(self):
        if self.degree == 1:
            return f"F_{self.ell}"
        return f"F_{self.ell}^{self.degree}[{list(self.modulus)}]"


@cache
def ext_field_make(ell: int, k: int = 1) -> FieldDescriptor:
    """F_{ell^k} with the first monic irreducible modulus in lexicographic
    order of (c_{k-1}, ..., c_0)."""
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if k < 1:
        raise ValueError("degree must be positive")
    if k == 1:
        return FieldDescriptor(ell)
    for top in _cartesian(range(ell), repeat=k):
        poly = list(reversed(top)) + [1]
        if poly[0] and is_irreducible(poly, ell):
            return FieldDescriptor(ell, k, tuple(poly))
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


@dataclass(frozen=True, eq=False)
class FieldElement:
    descriptor: FieldDescriptor
    coords: tuple[int, ...]

    @property
    def ell(self) -> int:
        return self.descriptor.ell

    def _other(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.descriptor != self.descriptor:
                raise FieldMismatch(f"{other.descriptor} vs {self.descriptor}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.descriptor.coerce(other)
        return None

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.descriptor == other.descriptor and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.descriptor.coerce(other)
            except NotEllIntegral:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.descriptor, self.coords))

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        ell = self.ell
        return FieldElement(self.descriptor, tuple((a + b) % ell for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        ell = self.ell
        return FieldElement(self.descriptor, tuple(-a % ell for a in self.coords))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        d = self.descriptor
        if d.degree == 1:
            return FieldElement(d, (self.coords[0] * o.coords[0] % d.ell,))
        prod_ = _poly_mod(_poly_mul(self.coords, o.coords, d.ell), d.modulus, d.ell)
        return FieldElement(d, tuple(prod_ + [0] * (d.degree - len(prod_))))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        d = self.descriptor
        if d.degree == 1:
            return FieldElement(d, (pow(self.coords[0], -1, d.ell),))
        return self ** (d.order - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        d = self.descriptor
        if d.degree == 1:
            return FieldElement(d, (pow(self.coords[0], e, d.ell),))
        result, base = d.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.descriptor.order - 1
        order = n
        for r, _ in factorint(n).items():
            while order % r == 0 and self ** (order // r) == 1:
                order //= r
        return order

    def __repr__(self):
        if self.descriptor.degree == 1:
            return f"{self.coords[0]} (mod {self.ell})"
        return f"{list(self.coords)} in {self.descriptor}"


def first_generator(field: FieldDescriptor) -> FieldElement:
    """First generator of the multiplicative group in the element ordering of
    :meth:`FieldDescriptor.elements`."""
    n = field.order - 1
    cofactors = [n // r for r in prime_factors(n)]
    for x in field.elements(include_zero=False):
        if all(x**c != 1 for c in cofactors):
            return x
    raise AssertionError("finite field without a generator")


@cache
def _field_map(source: FieldDescriptor, target: FieldDescriptor) -> FieldElement:
    """Image of t under a fixed embedding ``source -> target``: the first root
    of the source modulus in the target's element ordering."""
    if source.ell != target.ell or target.degree % source.degree:
        raise FieldMismatch(f"{source} does not embed into {target}")
    if source.degree == 1:
        return target.one
    mod = source.modulus
    for x in target.elements():
        acc = target.zero
        for c in reversed(mod):
            acc = acc * x + c
        if acc.is_zero():
            return x
    raise AssertionError("irreducible modulus without a root in an extension of its degree")


def field_embed(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Move ``x`` into ``target`` (identity when the fields coincide)."""
    if x.descriptor == target:
        return x
    t = _field_map(x.descriptor, target)
    acc = target.zero
    for c in reversed(x.coords):
        acc = acc * t + c
    return acc


# ---------------------------------------------------------------------------
# cyclotomic fields

@cache
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _int_poly_exact_div(num, cyclotomic_polynomial(d))
    return tuple(num)


def _int_poly_exact_div(a: list[int], b: Sequence[int]) -> list[int]:
    # b is monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for shift in range(len(q) - 1, -1, -1):
        c = a[shift + len(b) - 1]
        q[shift] = c
        if c:
            for i, y in enumerate(b):
                a[shift + i] -= c * y
    assert not any(a), "inexact cyclotomic division"
    return q


@cache
def _power_table(m: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta_m^j (0 <= j < m) in the basis 1, zeta_m, ..."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(m):
        rows.append(tuple(cur))
        # multiply by zeta and reduce by the monic phi
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    return tuple(rows)


Scalar = Union[int, Fraction]


@dataclass(frozen=True, eq=False)
class CycloElement:
    """Element of Q(zeta_m) in the power basis 1, zeta_m, ..., zeta_m^(phi(m)-1)."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != euler_phi(self.order):
            raise ValueError(f"need {euler_phi(self.order)} coordinates for order {self.order}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_rational(cls, q: Scalar, order: int = 1) -> CycloElement:
        return cls(order, (Fraction(q),) + (Fraction(0),) * (euler_phi(order) - 1))

    @classmethod
    def zero(cls, order: int = 1) -> CycloElement:
        return cls.from_rational(0, order)

    @classmethod
    def root_of_unity(cls, m: int, e: int = 1) -> CycloElement:
        return cls(m, _power_table(m)[e % m])

    @classmethod
    def from_exponent_sums(cls, m: int, sums) -> CycloElement:
        """sum_j sums[j] * zeta_m^j; ``sums`` is a sequence or mapping over j."""
        table = _power_table(m)
        acc = [Fraction(0)] * euler_phi(m)
        items = sums.items() if hasattr(sums, "items") else enumerate(sums)
        for j, c in items:
            if c:
                for i, t in enumerate(table[j % m]):
                    if t:
                        acc[i] += c * t
        return cls(m, tuple(acc))

    def lift(self, m: int) -> CycloElement:
        """The same element written in Q(zeta_m); requires order | m."""
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"Q(zeta_{self.order}) is not contained in Q(zeta_{m})")
        step = m // self.order
        return CycloElement.from_exponent_sums(m, {i * step: c for i, c in enumerate(self.coeffs) if c})

    def _common(self, other) -> tuple[CycloElement, CycloElement] | None:
        if isinstance(other, (int, Fraction)):
            other = CycloElement.from_rational(other, self.order)
        elif not isinstance(other, CycloElement):
            return None
        m = lcm(self.order, other.order)
        return self.lift(m), other.lift(m)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        return pair[0].coeffs == pair[1].coeffs

    def __hash__(self):
        return hash(self.coeffs[0]) if self.is_rational() else hash((self.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloElement(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        return pair[0] + (-pair[1])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElement(self.order, tuple(c * other for c in self.coeffs))
        pair = self._common(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        m = a.order
        sums: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        sums[i + j] = sums.get(i + j, 0) + x * y
        return CycloElement.from_exponent_sums(m, sums)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers of cyclotomic elements are not supported")
        result = CycloElement.from_rational(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        return f"[{','.join(str(c) for c in self.coeffs)}]@{self.order}"


# ---------------------------------------------------------------------------
# reduction modulo a prime above ell

@dataclass(frozen=True)
class Embedding:
    """A fixed reduction Z[zeta_order] -> F_{ell^degree}, zeta_order -> root_image."""

    order: int
    ell: int
    degree: int
    root_image: FieldElement

    @property
    def field(self) -> FieldDescriptor:
        return self.root_image.descriptor

    def root_power(self, m: int, e: int = 1) -> FieldElement:
        """Image of zeta_m^e.

        The ell-power part of ``m`` maps to 1 (the only ell-power root of unity
        in characteristic ell); the prime-to-ell part must divide ``order``.
        """
        mp = prime_to_part(m, self.ell)
        if self.order % mp:
            raise ValueError(f"embedding of order {self.order} cannot reduce zeta_{m}")
        s = m // mp
        # 1/m = u/s + v/mp  with  u*mp + v*s = 1
        v = pow(s, -1, mp) if mp > 1 else 0
        return self.root_image ** ((v * e % mp) * (self.order // mp))

    def reduce(self, x, index: int | None = None) -> FieldElement:
        return cyclo_reduce(x, self, index=index)

    def char_value(self, chi, n: int) -> FieldElement:
        """chi(n) reduced through this embedding (zero off the units)."""
        e = chi.exponent(n)
        if e is None:
            return self.field.zero
        return self.root_power(chi.value_order, e)


@cache
def embedding_make(m: int, ell: int, degree: int | None = None) -> Embedding:
    """Reduction map for Q(zeta_m) at a prime above ``ell``.

    ``degree`` defaults to the multiplicative order of ell mod m; a multiple of
    it may be requested so that several embeddings share one residue field.
    """
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if m < 1 or m % ell == 0:
        raise ValueError(f"ell={ell} divides m={m}")
    k0 = 1 if m == 1 else int(n_order(ell, m))
    k = k0 if degree is None else degree
    if k % k0:
        raise ValueError(f"F_{ell}^{k} contains no primitive {m}-th root of unity")
    field = ext_field_make(ell, k)
    g = first_generator(field)
    root = g ** ((field.order - 1) // m)
    return Embedding(m, ell, k, root)


def cyclo_reduce(x, emb: Embedding, index: int | None = None) -> FieldElement:
    """Ring homomorphism sending rationals q to num * den^-1 and zeta_m to the
    embedding's root image."""
    field = emb.field
    ell = emb.ell
    if isinstance(x, FieldElement):
        return field_embed(x, field)
    if isinstance(x, (int, Fraction)):
        q = Fraction(x)
        if q.denominator % ell == 0:
            raise NotEllIntegral(q, ell, index)
        return field.coerce(q)
    if isinstance(x, CycloElement):
        for c in x.coeffs:
            if c.denominator % ell == 0:
                raise NotEllIntegral(x, ell, index)
        z = emb.root_power(x.order, 1)
        acc = field.zero
        for c in reversed(x.coeffs):
            acc = acc * z + field.coerce(c)
        return acc
    raise TypeError(f"cannot reduce {type(x).__name__}")


# ---------------------------------------------------------------------------
# Bernoulli numbers and L-values

@cache
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa; produces B_1 = +1/2, flipped below to the
    # polynomial convention B_1 = -1/2
    out = []
    a = []
    for m in range(n + 1):
        a.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli_number(n: int) -> Fraction:
    """Classical B_n with B_1 = -1/2."""
    return _bernoulli_table(n)[n]


def bernoulli_polynomial(n: int, x: Scalar) -> Fraction:
    b = _bernoulli_table(n)
    x = Fraction(x)
    return sum((comb(n, j) * b[j] * x ** (n - j) for j in range(n + 1)), Fraction(0))


def bernoulli_generalized(k: int, phi) -> CycloElement:
    """B_{k,phi} = f^(k-1) sum_{a=1}^{f} phi(a) B_k(a/f), f the modulus of phi.

    This is the generating-function definition
    sum_a phi(a) t e^(at) / (e^(ft) - 1) = sum_n B_{n,phi} t^n / n!,
    which gives B_{1,1} = +1/2 for the trivial character mod 1.
    """
    if k < 1:
        raise ValueError("k must be positive")
    f = phi.modulus
    m = phi.value_order
    sums: dict[int, Fraction] = {}
    for a in range(1, f + 1):
        e = phi.exponent(a)
        if e is not None:
            sums[e] = sums.get(e, 0) + bernoulli_polynomial(k, Fraction(a, f))
    scale = Fraction(f) ** (k - 1)
    return CycloElement.from_exponent_sums(m, {e: c * scale for e, c in sums.items()})


def lvalue_at_nonpositive(k: int, phi) -> CycloElement:
    """L(1 - k, phi) = -B_{k,phi} / k."""
    return bernoulli_generalized(k, phi) * Fraction(-1, k)
