"""Class numbers of imaginary quadratic fields, the analytic upper bound,
the resulting divergence thresholds, and the genus of X_0(p)."""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .arith import is_prime, kronecker, primes_between


def is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldDiscriminant:
    d: int
    D: int


def field_discriminant(d: int) -> FieldDiscriminant:
    """Discriminant of Q(sqrt(-d)) for squarefree d >= 1."""
    if not is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    D = -d if (-d) % 4 == 1 else -4 * d
    return FieldDiscriminant(d, D)


def count_reduced_forms(D: int) -> int:
    """Reduced primitive positive definite forms of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad discriminant {D}")
    count = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                count += 1
        a += 1
    return count


_cache: dict[int, int] = {}
_cache_lock = threading.Lock()


def class_number(d: int) -> int:
    """h(sqrt(-d)) for squarefree d >= 1, memoized."""
    h = _cache.get(d)
    if h is not None:
        return h
    h = count_reduced_forms(field_discriminant(d).D)
    with _cache_lock:
        _cache[d] = h
    return h


def class_number_bound(N: int, p: int) -> float:
    """Upper bound (2 sqrt(Np)/pi) log(4Np) for h(sqrt(-Np))."""
    n = N * p
    if n < 5:
        raise ValueError("bound stated for N*p >= 5")
    return 2 * math.sqrt(n) / math.pi * math.log(4 * n)


def _chain_2star(p: float) -> float:
    # (p-1)/8 minus the bound on L^(2)/2 + h(sqrt(-2p))/4, with L^(2) <= 3 h(sqrt(-p))
    return (p - 1) / 8 - math.sqrt(p) / (2 * math.pi) * (
        6 * math.log(4 * p) + math.sqrt(2) * math.log(8 * p)
    )


def _chain_3star(p: float) -> float:
    # (p-1)/6 minus the bound on L^(3)/2 + a_p h(sqrt(-3p))/4 with L^(3) <= 4 h(sqrt(-p)), a_p <= 4
    return (p - 1) / 6 - math.sqrt(p) / math.pi * (
        4 * math.log(4 * p) + 2 * math.sqrt(3) * math.log(12 * p)
    )


_CHAINS = {"2*": _chain_2star, "3*": _chain_3star}


def threshold_chain(level: str, p: float) -> float:
    return _CHAINS[level](p)


def divergence_threshold(level: str, search_limit: int = 100000) -> int:
    """Smallest prime P with the lower-bound chain positive at every prime >= P.

    Past the last prime in the scanned range the chain is increasing (its
    derivative is positive there), which is checked before returning.
    """
    chain = _CHAINS[level]
    primes = primes_between(2, search_limit)
    last_bad = None
    for q in primes:
        if chain(q) <= 0:
            last_bad = q
    if last_bad is None:
        return 2
    idx = primes.index(last_bad)
    answer = primes[idx + 1]
    # monotonicity beyond the scan: derivative check on a fine grid from answer on
    x = float(answer)
    while x < 10 * search_limit:
        if chain(x * 1.01) <= chain(x):
            raise ArithmeticError("chain not increasing; widen the scan")
        x *= 1.01
    if chain(search_limit) <= 0:
        raise ArithmeticError("scan limit too small")
    return answer


def genus_x0(p: int) -> int:
    """Genus of X_0(p) for a prime p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    e2 = 1 + kronecker(-1, p) if p != 2 else 1
    e3 = 1 + kronecker(-3, p) if p != 3 else 1
    g = 1 + Fraction(p + 1, 12) - Fraction(e2, 4) - Fraction(e3, 3) - 1
    assert g.denominator == 1
    return int(g)
