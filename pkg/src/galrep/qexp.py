"""Truncated q-expansions with exact coefficients and the operators acting on
them: V(d), U(p), pi_p = V(p) o U(p), pi, theta, series arithmetic,
expansion from Hecke eigenvalues and reduction modulo a prime above ell.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .arith import CycloElement, Embedding, FieldElement, NotEllIntegral, cyclo_reduce, prime_factors
from .characters import DirichletCharacter

__all__ = [
    "QExpansion",
    "DomainMismatch",
    "WeightMismatch",
    "MissingEigenvalue",
    "coefficient_domain",
    "op_V",
    "op_U",
    "op_pi_p",
    "op_pi",
    "op_theta",
    "series_add",
    "series_sub",
    "series_scale",
    "series_mul",
    "expand_from_eigenvalues",
    "reduce_mod_lambda",
    "squarefree_level_part",
]


class DomainMismatch(TypeError):
    pass


class WeightMismatch(ValueError):
    pass


class MissingEigenvalue(KeyError):
    def __init__(self, p: int):
        self.p = p
        super().__init__(f"missing eigenvalue for prime {p}")

    def __str__(self):
        return self.args[0]


def coefficient_domain(x) -> str:
    if isinstance(x, FieldElement):
        return "finite"
    if isinstance(x, CycloElement):
        return "cyclotomic"
    if isinstance(x, (int, Fraction)):
        return "rational"
    raise DomainMismatch(f"unsupported coefficient type {type(x).__name__}")


def _zero_like(x):
    if isinstance(x, FieldElement):
        return x.descriptor.zero
    if isinstance(x, CycloElement):
        return CycloElement.zero(x.order)
    return Fraction(0)


def _one_like(x):
    if isinstance(x, FieldElement):
        return x.descriptor.one
    if isinstance(x, CycloElement):
        return CycloElement.from_rational(1, x.order)
    return Fraction(1)


def squarefree_level_part(N: int) -> int:
    """N' = product of the primes p | N with p^2 not dividing N."""
    out = 1
    for p in prime_factors(N):
        if N % (p * p):
            out *= p
    return out


@dataclass(frozen=True)
class QExpansion:
    """sum_{n < precision} a_n q^n with weight/level/character metadata."""

    coeffs: tuple
    weight: int
    level: int
    character: DirichletCharacter
    mixed_weight: bool = False

    def __post_init__(self):
        coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in self.coeffs)
        if not coeffs:
            raise ValueError("precision must be at least 1")
        dom = coefficient_domain(coeffs[0])
        for c in coeffs:
            if coefficient_domain(c) != dom:
                raise DomainMismatch("coefficients from more than one domain")
        if dom == "finite":
            d = coeffs[0].descriptor
            if any(c.descriptor != d for c in coeffs):
                raise DomainMismatch("coefficients from more than one finite field")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def domain(self) -> str:
        return coefficient_domain(self.coeffs[0])

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def with_coeffs(self, coeffs, **changes) -> QExpansion:
        return replace(self, coeffs=tuple(coeffs), **changes)

    def truncate(self, B: int) -> QExpansion:
        return self.with_coeffs(self.coeffs[:B])

    def __add__(self, other):
        return series_add(self, other) if isinstance(other, QExpansion) else NotImplemented

    def __sub__(self, other):
        return series_sub(self, other) if isinstance(other, QExpansion) else NotImplemented

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_coeffs(-c for c in self.coeffs)


# ---------------------------------------------------------------------------
# operators

def op_V(f: QExpansion, d: int) -> QExpansion:
    """sum a_n q^(dn); precision kept, level multiplied by d."""
    if d < 1:
        raise ValueError("d must be positive")
    zero = _zero_like(f[0])
    out = [zero] * f.precision
    for n in range(0, (f.precision - 1) // d + 1):
        out[d * n] = f[n]
    return f.with_coeffs(out, level=f.level * d)


def op_U(f: QExpansion, p: int) -> QExpansion:
    """sum a_(pn) q^n.

    Precision becomes floor((B-1)/p) + 1.  The level is kept when p divides it
    and multiplied by p otherwise.
    """
    if p < 2 or prime_factors(p) != [p]:
        raise ValueError(f"{p} is not prime")
    B = (f.precision - 1) // p + 1
    level = f.level if f.level % p == 0 else f.level * p
    return f.with_coeffs((f[p * n] for n in range(B)), level=level)


def op_pi_p(f: QExpansion, p: int) -> QExpansion:
    """sum a_(pn) q^(pn), computed at full precision."""
    if f.level % p:
        raise ValueError(f"pi_p needs p | level, got p={p}, level={f.level}")
    zero = _zero_like(f[0])
    out = [c if n % p == 0 else zero for n, c in enumerate(f.coeffs)]
    level = f.level * p if f.level % (p * p) else f.level
    return f.with_coeffs(out, level=level)


def op_pi(f: QExpansion) -> QExpansion:
    """prod_{p | N} (id - pi_p), then the constant term is dropped so the
    result is sum_{n >= 1, (n, N) = 1} a_n q^n at every level, including 1."""
    N = f.level
    coeffs = list(f.coeffs)
    for p in prime_factors(N):
        projected = op_pi_p(f.with_coeffs(coeffs, level=N), p).coeffs
        coeffs = [a - b for a, b in zip(coeffs, projected)]
    coeffs[0] = _zero_like(f[0])
    return f.with_coeffs(coeffs, level=N * squarefree_level_part(N))


def op_theta(f: QExpansion) -> QExpansion:
    """q d/dq on a series over a finite field: a_n -> n a_n."""
    if f.domain != "finite":
        raise DomainMismatch("theta acts only on series over a finite field")
    return f.with_coeffs(c * n for n, c in enumerate(f.coeffs))


# ---------------------------------------------------------------------------
# series arithmetic

def _check_domains(f: QExpansion, g: QExpansion):
    if f.domain != g.domain:
        raise DomainMismatch(f"{f.domain} series combined with {g.domain} series")
    if f.domain == "finite" and f[0].descriptor != g[0].descriptor:
        raise DomainMismatch("series over different finite fields")


def _common_character(f: QExpansion, g: QExpansion) -> DirichletCharacter:
    L = lcm(f.character.modulus, g.character.modulus)
    a, b = f.character.extend(L), g.character.extend(L)
    if a != b:
        raise ValueError("series with different characters cannot be added")
    return f.character if f.character.modulus == L else a


def _linear(f: QExpansion, g: QExpansion, sign: int, allow_mixed: bool) -> QExpansion:
    _check_domains(f, g)
    mixed = f.mixed_weight or g.mixed_weight
    if f.weight != g.weight:
        if not allow_mixed:
            raise WeightMismatch(f"weights {f.weight} and {g.weight}; pass allow_mixed=True")
        mixed = True
    B = min(f.precision, g.precision)
    coeffs = [a + b if sign > 0 else a - b for a, b in zip(f.coeffs[:B], g.coeffs[:B])]
    return QExpansion(tuple(coeffs), max(f.weight, g.weight), lcm(f.level, g.level),
                      _common_character(f, g), mixed)


def series_add(f: QExpansion, g: QExpansion, allow_mixed: bool = False) -> QExpansion:
    return _linear(f, g, 1, allow_mixed)


def series_sub(f: QExpansion, g: QExpansion, allow_mixed: bool = False) -> QExpansion:
    return _linear(f, g, -1, allow_mixed)


def series_scale(f: QExpansion, c) -> QExpansion:
    return f.with_coeffs(a * c for a in f.coeffs)


def series_mul(f: QExpansion, g: QExpansion) -> QExpansion:
    """Cauchy product truncated to the smaller precision; weights add."""
    _check_domains(f, g)
    B = min(f.precision, g.precision)
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(B):
        acc = _zero_like(a[0])
        for i in range(n + 1):
            if a[i] and b[n - i]:
                acc = acc + a[i] * b[n - i]
        out.append(acc)
    return QExpansion(tuple(out), f.weight + g.weight, lcm(f.level, g.level),
                      f.character * g.character, f.mixed_weight or g.mixed_weight)


# ---------------------------------------------------------------------------
# eigenform expansion and reduction

def _smallest_prime_factors(B: int) -> list[int]:
    spf = list(range(B))
    for i in range(2, int(B**0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, B, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def _character_value(eps: DirichletCharacter, p: int, template, emb: Embedding | None):
    e = eps.exponent(p)
    if e is None:
        return 0
    M = eps.value_order
    if M <= 2:
        return 1 if e == 0 else -1
    if isinstance(template, FieldElement):
        if emb is None:
            raise ValueError("an embedding is needed to reduce character values")
        return emb.root_power(M, e)
    return CycloElement.root_of_unity(M, e)


def expand_from_eigenvalues(ap_table: Mapping[int, object], eps: DirichletCharacter, k: int, B: int,
                            level: int | None = None, emb: Embedding | None = None) -> QExpansion:
    """Normalized eigenform coefficients a_0 .. a_{B-1} from prime eigenvalues.

    a_1 = 1, a_mn = a_m a_n for coprime m, n, and for p not dividing the level
    a_{p^r} = a_p a_{p^(r-1)} - eps(p) p^(k-1) a_{p^(r-2)}; for p | level
    a_{p^r} = a_p^r.  a_0 is set to 0.
    """
    level = eps.modulus if level is None else level
    if not ap_table:
        if B > 2:
            raise MissingEigenvalue(2)
        sample = Fraction(0)
    else:
        sample = next(iter(ap_table.values()))
        if isinstance(sample, int):
            sample = Fraction(sample)
    zero, one = _zero_like(sample), _one_like(sample)

    def ap(p):
        try:
            v = ap_table[p]
        except KeyError:
            raise MissingEigenvalue(p) from None
        return Fraction(v) if isinstance(v, int) else v

    spf = _smallest_prime_factors(max(B, 2))
    a = [zero] * B
    if B > 1:
        a[1] = one
    for n in range(2, B):
        p = spf[n]
        pr, m = 1, n
        while m % p == 0:
            m //= p
            pr *= p
        if m > 1:
            a[n] = a[pr] * a[m]
        elif pr == p:
            a[n] = ap(p)
        elif level % p == 0:
            a[n] = a[pr // p] * a[p]
        else:
            c = _character_value(eps, p, sample, emb) * p ** (k - 1)
            a[n] = a[p] * a[pr // p] - a[pr // (p * p)] * c
    return QExpansion(tuple(a), k, level, eps)


def reduce_mod_lambda(f: QExpansion, emb: Embedding) -> QExpansion:
    """Coefficientwise reduction; NotEllIntegral carries the offending index."""
    out = []
    for n, c in enumerate(f.coeffs):
        try:
            out.append(cyclo_reduce(c, emb))
        except NotEllIntegral as exc:
            raise NotEllIntegral(exc.value, exc.ell, n) from None
    return f.with_coeffs(out)
