"""Decision procedures: the 2-dimensional comparison up to kappa(N, ell), the
1-dimensional comparison up to ell N, Sturm/Kohnen congruence checks of
q-expansions and the least-distinguishing-prime search."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Union

from sympy import sieve

from .arith import Embedding, FieldElement
from .bounds import BoundReport, kappa, kohnen_bound, sturm_bound
from .characters import DirichletCharacter
from .qexp import QExpansion
from .representations import (CharPolyData, Eigenform, ReprSource, frob_charpoly, oddness_check,
                              repr_validate, shared_embedding)


class ValidationError(ValueError):
    pass


class InsufficientPrecision(ValueError):
    def __init__(self, required: int, available: int):
        self.required = required
        self.available = available
        super().__init__(f"need precision {required}, have {available}")


@dataclass(frozen=True)
class Isomorphic:
    kappa_used: int
    primes_checked: int
    exit_code = 0

    def __str__(self):
        return f"Isomorphic (kappa={self.kappa_used}, primes checked={self.primes_checked})"


@dataclass(frozen=True)
class DistinguishedAt:
    p: int
    left: CharPolyData
    right: CharPolyData
    kappa_used: int
    mismatch: str  # "det" or "trace"; "value" for characters
    exit_code = 1

    def __str__(self):
        return f"DistinguishedAt p={self.p} ({self.mismatch} differs): left {self.left}; right {self.right}"


@dataclass(frozen=True)
class Indeterminate:
    reason: str
    exit_code = 2

    def __str__(self):
        return f"Indeterminate: {self.reason}"


@dataclass(frozen=True)
class Congruent:
    bound: BoundReport
    indices_checked: int
    exit_code = 0

    def __str__(self):
        return f"Congruent up to n <= {self.bound.kappa} ({self.bound})"


@dataclass(frozen=True)
class MismatchAt:
    n: int
    left: FieldElement
    right: FieldElement
    bound: BoundReport
    exit_code = 1

    def __str__(self):
        return f"Mismatch at n={self.n}: {self.left!r} vs {self.right!r} ({self.bound})"


Verdict = Union[Isomorphic, DistinguishedAt, Indeterminate, Congruent, MismatchAt]


def good_primes(bound: int, bad: int) -> list[int]:
    """Primes p <= bound with p not dividing ``bad``."""
    return [p for p in sieve.primerange(2, bound + 1) if bad % p]


def _charpoly(src, p: int, emb: Embedding) -> CharPolyData:
    if isinstance(src, DirichletCharacter):
        v = emb.char_value(src, p)
        return CharPolyData(p, v, v)
    return frob_charpoly(src, p, emb)


def _first_mismatch(left, right, primes, emb):
    """Smallest prime in ``primes`` where the data differ; det is checked first."""
    one_dim = isinstance(left, DirichletCharacter)
    for p in primes:
        lp, rp = _charpoly(left, p, emb), _charpoly(right, p, emb)
        if lp.det != rp.det:
            return p, lp, rp, "value" if one_dim else "det"
        if lp.trace != rp.trace:
            return p, lp, rp, "trace"
    return None


def _chunks(seq, n):
    size = -(-len(seq) // n)
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _scan(left, right, primes, emb, jobs: int):
    if jobs <= 1 or len(primes) < 2 * jobs:
        return _first_mismatch(left, right, primes, emb)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = pool.map(_first_mismatch, *zip(*[(left, right, c, emb) for c in _chunks(primes, jobs)]))
        hits = [h for h in parts if h is not None]
    # global minimum regardless of partitioning
    return min(hits, key=lambda h: h[0]) if hits else None


def compare_2dim(left: ReprSource, right: ReprSource, N: int, ell: int,
                 emb: Embedding | None = None, jobs: int = 1) -> Verdict:
    """Compare Frobenius characteristic polynomials at all primes p <= kappa(N, ell)
    with p not dividing ell N.

    Raises ValidationError when a source is not a mod-ell source of conductor
    dividing N.  Returns Indeterminate when ``left`` is not odd or when an
    eigenvalue table misses a prime below kappa.
    """
    for name, src in (("left", left), ("right", right)):
        if not repr_validate(src, N, ell):
            raise ValidationError(f"{name} source is not a mod-{ell} source with conductor dividing {N}")
    if not oddness_check(left):
        return Indeterminate("left representation is not odd")
    bound = kappa(N, ell).kappa
    primes = good_primes(bound, ell * N)
    for name, src in (("left", left), ("right", right)):
        if isinstance(src, Eigenform):
            missing = [p for p in primes if p not in src.ap_table]
            if missing:
                return Indeterminate(f"{name} eigenform: missing prime {missing[0]} (need all primes <= {bound})")
    if emb is None:
        emb = shared_embedding([left, right], ell)
    # det agreement below ell N (which forces right to be odd as well) is part
    # of the same ascending scan, so the witness is always the smallest prime
    hit = _scan(left, right, primes, emb, jobs)
    if hit is None:
        return Isomorphic(bound, len(primes))
    p, lp, rp, kind = hit
    return DistinguishedAt(p, lp, rp, bound, kind)


def compare_1dim(chi1: DirichletCharacter, chi2: DirichletCharacter, N: int, ell: int,
                 emb: Embedding | None = None) -> Verdict:
    """Compare two characters (moduli dividing ell N) reduced mod a prime above
    ell at the primes p <= ell N coprime to ell N."""
    M = ell * N
    for chi in (chi1, chi2):
        if M % chi.modulus:
            raise ValidationError(f"character modulus {chi.modulus} does not divide ell N = {M}")
    if emb is None:
        emb = shared_embedding([chi1, chi2], ell)
    primes = good_primes(M, M)
    hit = _first_mismatch(chi1, chi2, primes, emb)
    if hit is None:
        return Isomorphic(M, len(primes))
    p, lp, rp, kind = hit
    return DistinguishedAt(p, lp, rp, M, kind)


def least_distinguishing_prime(left, right, ell: int, N: int, cap: int,
                               emb: Embedding | None = None) -> int | None:
    """Smallest prime p <= cap, p not dividing ell N, where two sources (or
    two characters) disagree; None if they agree throughout."""
    if cap < 2:
        raise ValueError("cap must be at least 2")
    if emb is None:
        emb = shared_embedding([left, right], ell)
    bad = ell * N
    for src in (left, right):
        bad *= src.modulus if isinstance(src, DirichletCharacter) else src.bad_modulus // src.ell
    primes = [p for p in good_primes(cap, bad)]
    hit = _first_mismatch(left, right, primes, emb)
    return None if hit is None else hit[0]


def sturm_compare(f: QExpansion, g: QExpansion) -> Verdict:
    """Check f = g mod lambda on the first floor(bound) + 1 coefficients.

    Equal weights and characters use the Sturm bound for Gamma_0(level);
    otherwise the Kohnen bound for Gamma_0(level) cap Gamma_1(ell) (Gamma_1(4)
    when ell = 2).
    """
    if f.domain != "finite" or g.domain != "finite":
        raise TypeError("sturm_compare needs series over a finite field")
    fd, gd = f[0].descriptor, g[0].descriptor
    if fd != gd:
        raise ValueError("series over different residue fields")
    if f.level != g.level:
        raise ValueError(f"levels differ: {f.level} vs {g.level}")
    if min(f.weight, g.weight) < 2:
        raise ValueError("weights must be at least 2")
    if f.weight == g.weight and f.character == g.character and not (f.mixed_weight or g.mixed_weight):
        bound = sturm_bound(f.weight, f.level)
    else:
        bound = kohnen_bound(f.weight, g.weight, f.level, fd.ell)
    need = bound.kappa + 1
    have = min(f.precision, g.precision)
    if have < need:
        raise InsufficientPrecision(need, have)
    for n in range(need):
        if f[n] != g[n]:
            return MismatchAt(n, f[n], g[n], bound)
    return Congruent(bound, need)
