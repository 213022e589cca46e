"""Twisted Eisenstein series E_k^{psi,phi}, their oldform variants
E_k^{psi,phi,t}, the reduced forms (1/2) theta^a E attached to reducible
representations, and Delta as a utility series."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .arith import CycloElement, Embedding, embedding_make, lvalue_at_nonpositive, prime_to_part
from .characters import DirichletCharacter
from .qexp import QExpansion, op_theta, reduce_mod_lambda, series_mul, series_scale, series_sub


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class EisensteinSpec:
    k: int
    psi: DirichletCharacter
    phi: DirichletCharacter
    t: int = 1
    N: int | None = None

    def __post_init__(self):
        u, v = self.psi.modulus, self.phi.modulus
        N = self.t * u * v if self.N is None else self.N
        object.__setattr__(self, "N", N)
        if self.k < 2:
            raise ValueError("Eisenstein weight must be at least 2")
        if self.t < 1:
            raise ValueError("t must be positive")
        if not self.phi.is_primitive():
            raise ValueError("phi must be primitive")
        if N % (self.t * u * v):
            raise ValueError(f"t*u*v = {self.t * u * v} does not divide N = {N}")
        if self.psi.sign() * self.phi.sign() != (-1) ** self.k:
            raise ParityError(f"(psi phi)(-1) != (-1)^k for k = {self.k}")

    @property
    def exceptional(self) -> bool:
        """k = 2 with both characters trivial mod 1: E_2 is not holomorphic."""
        return self.k == 2 and self.psi.modulus == 1 and self.phi.modulus == 1

    @property
    def character(self) -> DirichletCharacter:
        return (self.psi * self.phi).extend(self.N)


def _value_order(psi, phi) -> int:
    return lcm(psi.value_order, phi.value_order)


def _as_coefficient(sums: dict, M: int):
    if M <= 2:
        total = Fraction(0)
        for e, c in sums.items():
            total += c if e == 0 else -c
        return total
    return CycloElement.from_exponent_sums(M, sums)


def _sigma_sums(B: int, k: int, psi: DirichletCharacter, phi: DirichletCharacter) -> list[dict]:
    """Exponent sums of sigma_{k-1}^{psi,phi}(n) for n < B, by a divisor sieve."""
    M = _value_order(psi, phi)
    wpsi, wphi = M // psi.value_order, M // phi.value_order
    out: list[dict] = [dict() for _ in range(B)]
    for d in range(1, B):
        ephi = phi.exponent(d)
        if ephi is None:
            continue
        dk = d ** (k - 1)
        for m in range(1, (B - 1) // d + 1):
            epsi = psi.exponent(m)
            if epsi is None:
                continue
            e = (epsi * wpsi + ephi * wphi) % M
            bucket = out[d * m]
            bucket[e] = bucket.get(e, 0) + dk
    return out


def sigma_twisted(n: int, k: int, psi: DirichletCharacter, phi: DirichletCharacter) -> CycloElement:
    """sum_{d | n} psi(n/d) phi(d) d^(k-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    M = _value_order(psi, phi)
    wpsi, wphi = M // psi.value_order, M // phi.value_order
    sums: dict[int, int] = {}
    for d in range(1, n + 1):
        if n % d:
            continue
        a, b = psi.exponent(n // d), phi.exponent(d)
        if a is None or b is None:
            continue
        e = (a * wpsi + b * wphi) % M
        sums[e] = sums.get(e, 0) + d ** (k - 1)
    return CycloElement.from_exponent_sums(M, sums)


def _raw_coefficients(spec: EisensteinSpec, B: int) -> list:
    M = _value_order(spec.psi, spec.phi)
    if spec.psi.is_primitive():
        const = lvalue_at_nonpositive(spec.k, spec.phi).lift(M)
        a0 = const.to_rational() if M <= 2 else const
    else:
        a0 = Fraction(0) if M <= 2 else CycloElement.zero(M)
    sums = _sigma_sums(B, spec.k, spec.psi, spec.phi)
    out = [a0]
    for n in range(1, B):
        out.append(_as_coefficient(sums[n], M) * 2)
    return out[:B]


def eisenstein_qexp(spec: EisensteinSpec, B: int) -> QExpansion:
    """E_k^{psi,phi} = delta(psi) L(1-k, phi) + 2 sum sigma_{k-1}^{psi,phi}(n) q^n.

    Coefficients are rationals when all character values are +-1 and
    cyclotomic otherwise.  The standalone E_2 (k = 2, both characters trivial
    mod 1) is refused; use :func:`eisenstein_qexp_t` with t > 1.
    """
    if spec.exceptional:
        raise ValueError("E_2 with trivial characters is not holomorphic; use eisenstein_qexp_t with t > 1")
    return QExpansion(tuple(_raw_coefficients(spec, B)), spec.k, spec.N, spec.character)


def eisenstein_qexp_t(spec: EisensteinSpec, B: int) -> QExpansion:
    """E_k^{psi,phi,t}: E(z) - t E(tz) in the exceptional weight-2 case, E(tz)
    otherwise."""
    raw = _raw_coefficients(spec, B)
    t = spec.t
    zero = raw[0] * 0
    shifted = [zero] * B
    for n in range(0, (B - 1) // t + 1):
        shifted[t * n] = raw[n]
    if spec.exceptional:
        coeffs = [a - b * t for a, b in zip(raw, shifted)]
    else:
        coeffs = shifted
    return QExpansion(tuple(coeffs), spec.k, spec.N, spec.character)


def reducible_attached_form(psi: DirichletCharacter, phi: DirichletCharacter, a: int, k: int, t: int,
                            ell: int, B: int, b: int | None = None, N: int | None = None,
                            emb: Embedding | None = None) -> QExpansion:
    """(1/2) theta^a E_k^{psi,phi,t} reduced modulo a prime above ell.

    Raises NotEllIntegral if a coefficient (typically the constant term) has
    ell in its denominator; another weight in the same class mod ell - 1 may
    then work.
    """
    if ell == 2:
        raise ValueError("ell = 2: the factor 1/2 is not invertible")
    if not 2 <= k <= ell + 1:
        raise ValueError(f"weight {k} outside [2, {ell + 1}]")
    if b is not None and (k - (b - a + 1)) % (ell - 1):
        raise ValueError(f"weight {k} is not congruent to b - a + 1 = {b - a + 1} mod {ell - 1}")
    spec = EisensteinSpec(k, psi, phi, t, N)
    series = eisenstein_qexp_t(spec, B)
    if emb is None:
        emb = embedding_make(prime_to_part(_value_order(psi, phi), ell), ell)
    f = reduce_mod_lambda(series, emb)
    f = series_scale(f, emb.field.coerce(2).inverse())
    for _ in range(a):
        f = op_theta(f)
    return f


def delta_qexp(B: int) -> QExpansion:
    """Delta = (E_4^3 - E_6^2) / 1728 with E_4, E_6 normalized to a_0 = 1."""
    if B < 2:
        raise ValueError("precision must be at least 2")
    one = DirichletCharacter.trivial(1)
    e4 = eisenstein_qexp(EisensteinSpec(4, one, one), B)
    e6 = eisenstein_qexp(EisensteinSpec(6, one, one), B)
    e4 = series_scale(e4, 1 / e4[0])
    e6 = series_scale(e6, 1 / e6[0])
    diff = series_sub(series_mul(series_mul(e4, e4), e4), series_mul(e6, e6))
    return series_scale(diff, Fraction(1, 1728))
