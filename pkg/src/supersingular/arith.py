"""Primes, quadratic symbols and small exact fields F_p, F_{p^2}."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

# Deterministic for every n < 3.3e24, in particular all 64-bit integers.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# Primes dividing the order of the Monster group.
MONSTER_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p <= hi (sieve)."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(hi ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [i for i in range(max(lo, 2), hi + 1) if sieve[i]]


def nth_prime_index(p: int) -> int:
    """Index n with p = p_n (p_1 = 2)."""
    return len(primes_between(2, p))


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), the full extension of the Jacobi symbol."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre(a: int, p: int) -> int:
    return kronecker(a, p)


@dataclass(frozen=True)
class CharExponents:
    """The 0/1 exponents built from (-1/p), (-3/p), (-2/p) and (-N/p).

    ``mu`` maps an auxiliary level N to (1 - (-N/p))/2, or to ``None`` when
    p divides N and the symbol vanishes.
    """

    p: int
    eps: int
    delta: int
    nu: int
    mu: dict = field(default_factory=dict)

    def mu_of(self, N: int) -> int:
        value = self.mu.get(N)
        if value is None:
            raise ValueError(f"(-{N}/{self.p}) is 0: exponent undefined for p | N")
        return value


def _half_gap(symbol: int) -> int:
    return (1 - symbol) // 2


def char_exponents(p: int, aux_levels: Iterable[int] = ()) -> CharExponents:
    if p < 5 or not is_prime(p):
        raise ValueError(f"character exponents need a prime p >= 5, got {p}")
    mu: dict[int, Optional[int]] = {}
    for N in aux_levels:
        s = kronecker(-N, p)
        mu[N] = None if s == 0 else _half_gap(s)
    return CharExponents(
        p,
        _half_gap(kronecker(-1, p)),
        _half_gap(kronecker(-3, p)),
        _half_gap(kronecker(-2, p)),
        mu,
    )


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Square root of a mod an odd prime p (Tonelli-Shanks).

    Returns the root with even representative, 0 for a = 0 and None for
    non-residues.
    """
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r if r % 2 == 0 else p - r


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def frac_mod(num: int, den: int, p: int) -> int:
    """num/den reduced into F_p."""
    return num * inv_mod(den, p) % p


@dataclass(frozen=True)
class FpElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError("moduli differ")
            return other.value
        return other % self.p

    def __add__(self, other):
        return FpElem(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FpElem(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return FpElem(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return FpElem(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def inverse(self) -> "FpElem":
        return FpElem(inv_mod(self.value, self.p), self.p)

    def __truediv__(self, other):
        return self * FpElem(self._coerce(other), self.p).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FpElem(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


@dataclass(frozen=True)
class Fp2Elem:
    """a + b*t in F_p(t) with t^2 = r."""

    a: int
    b: int
    p: int
    r: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    def _lift(self, other) -> "Fp2Elem":
        if isinstance(other, Fp2Elem):
            if (other.p, other.r % other.p) != (self.p, self.r % self.p):
                raise ValueError("different quadratic extensions")
            return other
        if isinstance(other, FpElem):
            other = other.value
        return Fp2Elem(other, 0, self.p, self.r)

    def __add__(self, other):
        o = self._lift(other)
        return Fp2Elem(self.a + o.a, self.b + o.b, self.p, self.r)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Fp2Elem(self.a - o.a, self.b - o.b, self.p, self.r)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Fp2Elem(-self.a, -self.b, self.p, self.r)

    def __mul__(self, other):
        o = self._lift(other)
        p = self.p
        return Fp2Elem(
            (self.a * o.a + self.r * self.b * o.b) % p,
            (self.a * o.b + self.b * o.a) % p,
            p,
            self.r,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Fp2Elem":
        return Fp2Elem(self.a, -self.b, self.p, self.r)

    def norm(self) -> int:
        return (self.a * self.a - self.r * self.b * self.b) % self.p

    def inverse(self) -> "Fp2Elem":
        n = inv_mod(self.norm(), self.p)
        return Fp2Elem(self.a * n, -self.b * n, self.p, self.r)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Fp2Elem(1, 0, self.p, self.r)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def in_base_field(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, (int, FpElem)):
            other = self._lift(other)
        if isinstance(other, Fp2Elem):
            return (self.a, self.b, self.p) == (other.a, other.b, other.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.p, self.r))

    def __repr__(self):
        return f"{self.a} + {self.b}*sqrt({self.r}) (mod {self.p})"
