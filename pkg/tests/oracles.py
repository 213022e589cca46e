"""Independent reference computations used by the tests.

Nothing here imports the package; each routine recomputes a quantity from
its definition by the most direct method available.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, gcd, lcm

import numpy as np


def has_monic_factor(f, ell):
    """Trial division of f (ascending coefficients) by every monic polynomial
    of degree 1..deg/2 over F_ell."""
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in product(range(ell), repeat=d):
            g = list(low) + [1]
            r = list(f)
            for shift in range(deg - d, -1, -1):
                c = r[shift + d] % ell
                if c:
                    for i, gi in enumerate(g):
                        r[shift + i] = (r[shift + i] - c * gi) % ell
            if not any(x % ell for x in r[:d]):
                return True
    return False


def bernoulli_recurrence(n):
    """sum_{j<=m} C(m+1, j) B_j = 0 with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def tau_by_eta(B):
    """Coefficients 0..B-1 of q prod (1 - q^n)^24."""
    poly = [0] * B
    poly[0] = 1
    for n in range(1, B):
        for _ in range(24):
            for i in range(B - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    return [0] + poly[:B - 1]


def sigma(n, k):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


@lru_cache(maxsize=None)
def _sl2_solutions(M):
    """count[c, d] = #{(a, b) mod M : ad - bc = 1 mod M}."""
    a = np.arange(M).reshape(-1, 1)
    b = np.arange(M).reshape(1, -1)
    count = np.zeros((M, M), dtype=np.int64)
    for c in range(M):
        for d in range(M):
            count[c, d] = np.count_nonzero((a * d - b * c) % M == 1 % M)
    return count


def index_by_enumeration(A, B=1):
    """[SL_2(Z/M) : image of {c = 0 mod M, d = 1 mod B}] with M = lcm(A, B)."""
    M = lcm(A, B)
    count = _sl2_solutions(M)
    total = int(count.sum())
    sub = sum(int(count[0, d]) for d in range(M) if d % B == 1 % B)
    assert total % sub == 0
    return total // sub


def conductor_by_search(values, N):
    """Least d | N with chi(n) = 1 for every unit n = 1 mod d; ``values`` maps
    units mod N to their character values."""
    for d in range(1, N + 1):
        if N % d:
            continue
        if all(values[n] == 1 for n in range(1, N) if gcd(n, N) == 1 and n % d == 1 % d):
            return d
    return N
