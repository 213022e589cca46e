"""Congruence-subgroup indices and the coefficient/prime bounds built on them.

Every bound is an exact rational; the usable integer bound is its floor and
comparisons are inclusive ("p <= floor(bound)").
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, inf, lcm, nextafter

import mpmath
from sympy import isprime

from .arith import euler_phi, prime_factors
from .qexp import squarefree_level_part


class EllDividesN(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    exact_value: Fraction
    formula_id: str
    inputs: dict = field(default_factory=dict)

    @property
    def kappa(self) -> int:
        return floor(self.exact_value)

    def __str__(self):
        args = " ".join(f"{k}={v}" for k, v in self.inputs.items())
        return f"{self.formula_id}: exact={self.exact_value} floor={self.kappa} ({args})"


def index_gamma0(N: int) -> int:
    """[SL_2(Z) : Gamma_0(N)] = N prod_{p | N} (1 + 1/p)."""
    if N < 1:
        raise ValueError("N must be positive")
    out = Fraction(N)
    for p in prime_factors(N):
        out *= Fraction(p + 1, p)
    return int(out)


def index_gamma0_gamma1(A: int, B: int) -> int:
    """[SL_2(Z) : Gamma_0(A) cap Gamma_1(B)] = phi(B) [SL_2(Z) : Gamma_0(lcm(A, B))].

    The group is {c = 0 mod lcm(A, B), d = 1 mod B}; d mod B maps Gamma_0(L)
    onto (Z/B)^* with exactly this kernel.
    """
    if A < 1 or B < 1:
        raise ValueError("A and B must be positive")
    return euler_phi(B) * index_gamma0(lcm(A, B))


def sturm_bound(k: int, N: int) -> BoundReport:
    return BoundReport(Fraction(k, 12) * index_gamma0(N), "sturm", {"k": k, "N": N})


def kohnen_bound(k1: int, k2: int, N: int, ell: int) -> BoundReport:
    """max(k1, k2)/12 [SL_2(Z) : Gamma_0(N) cap Gamma_1(ell or 4)].

    Valid for k1 = k2 as well; ell = 2 always uses Gamma_1(4).
    """
    if min(k1, k2) < 2:
        raise ValueError("weights must be at least 2")
    B = 4 if ell == 2 else ell
    value = Fraction(max(k1, k2), 12) * index_gamma0_gamma1(N, B)
    return BoundReport(value, "kohnen", {"k1": k1, "k2": k2, "N": N, "ell": ell})


def _check_ell_N(N: int, ell: int):
    if not isprime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    if N < 1:
        raise ValueError("N must be positive")
    if N % ell == 0:
        raise EllDividesN(f"ell = {ell} divides N = {N}")


def kappa(N: int, ell: int) -> BoundReport:
    """ell (ell^2 - 1)^2 / 12 * N N' prod_{p | N}(1 + 1/p) for ell > 2, and
    4 N N' prod_{p | N}(1 + 1/p) for ell = 2."""
    _check_ell_N(N, ell)
    Np = squarefree_level_part(N)
    base = Fraction(N * Np)
    for p in prime_factors(N):
        base *= Fraction(p + 1, p)
    if ell == 2:
        value = 4 * base
    else:
        value = Fraction(ell * (ell * ell - 1) ** 2, 12) * base
    return BoundReport(value, "kappa", {"ell": ell, "N": N, "N'": Np})


def kappa_index_identity_check(N: int, ell: int) -> bool:
    """kappa(N, ell) == (ell^2 - 1)/12 [SL_2(Z) : Gamma_0(ell^2 N N') cap Gamma_1(ell)]
    (ell > 2), or 4/12 [SL_2(Z) : Gamma_0(4 N N') cap Gamma_1(4)] (ell = 2)."""
    k = kappa(N, ell).exact_value
    Np = squarefree_level_part(N)
    if ell == 2:
        other = Fraction(4, 12) * index_gamma0_gamma1(4 * N * Np, 4)
    else:
        other = Fraction(ell * ell - 1, 12) * index_gamma0_gamma1(ell * ell * N * Np, ell)
    return k == other


@dataclass(frozen=True)
class OneDimBounds:
    trivial: int
    burgess_exponent: Fraction | float
    ankeny_form: tuple[float, float]  # enclosure of (log(ell N))^2
    implied_constants: str = "unspecified"


def onedim_bounds(N: int, ell: int, r: int = 1, epsilon: Fraction | float = 0) -> OneDimBounds:
    """The three one-dimensional prime bounds: ell N itself, the exponent
    (r + 1)/(4r) + r eps of ell N from Burgess' character-sum estimate, and
    (log ell N)^2 from Ankeny's GRH estimate.  Implied constants are not
    known and are never invented."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if isinstance(epsilon, (int, Fraction)):
        exponent = Fraction(r + 1, 4 * r) + r * Fraction(epsilon)
    else:
        exponent = (r + 1) / (4 * r) + r * epsilon
    iv = mpmath.iv.log(mpmath.iv.mpf(ell * N)) ** 2
    # widen by one ulp each side so the float pair still encloses the value
    lo, hi = nextafter(float(iv.a), -inf), nextafter(float(iv.b), inf)
    return OneDimBounds(ell * N, exponent, (lo, hi))


def weight_range(ell: int) -> tuple[int, int]:
    """Smallest and largest weight of a form attached to a mod-ell representation."""
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    return (2, 4) if ell == 2 else (2, ell * ell - 1)
