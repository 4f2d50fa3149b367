"""Dense polynomials over F_p backed by numpy integer arrays.

Coefficients are stored low degree first.  Arrays are int64 whenever the
products fit, otherwise Python-int object arrays.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .arith import inv_mod, kronecker

_INT64_LIMIT = 1 << 63
# Below this length numpy's direct convolution beats Karatsuba splitting.
KARATSUBA_THRESHOLD = 2048
_LIMB = 16


def _dtype_for(p: int):
    return np.int64 if p < (1 << 31) else object


def _karatsuba(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    n = min(len(a), len(b))
    if n < KARATSUBA_THRESHOLD:
        return np.convolve(a, b) % p
    half = max(len(a), len(b)) // 2
    a0, a1 = a[:half], a[half:]
    b0, b1 = b[:half], b[half:]
    if len(a1) == 0 or len(b1) == 0:
        # unbalanced: fall back to splitting only the long operand
        long_, short = (a, b) if len(a) > len(b) else (b, a)
        out = np.zeros(len(a) + len(b) - 1, dtype=a.dtype)
        for start in range(0, len(long_), len(short)):
            piece = _karatsuba(long_[start:start + len(short)], short, p)
            out[start:start + len(piece)] += piece
        return out % p
    z0 = _karatsuba(a0, b0, p)
    z2 = _karatsuba(a1, b1, p)
    sa = _add_arrays(a0, a1) % p
    sb = _add_arrays(b0, b1) % p
    z1 = _karatsuba(sa, sb, p)
    z1 = _add_arrays(z1, -z0)
    z1 = _add_arrays(z1, -z2) % p
    out = np.zeros(len(a) + len(b) - 1, dtype=a.dtype)
    out[: len(z0)] += z0
    out[half: half + len(z1)] += z1
    out[2 * half: 2 * half + len(z2)] += z2
    return out % p


def _add_arrays(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if len(x) < len(y):
        x, y = y, x
    out = x.copy()
    out[: len(y)] += y
    return out


def _mul_arrays(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=a.dtype)
    if a.dtype == object:
        return np.convolve(a, b) % p
    n = min(len(a), len(b))
    if n * (p - 1) ** 2 < _INT64_LIMIT:
        return _karatsuba(a, b, p)
    if n < (1 << 14):
        # split one operand into 16-bit limbs so partial sums stay in int64
        if len(a) > len(b):
            a, b = b, a
        lo = a & ((1 << _LIMB) - 1)
        hi = a >> _LIMB
        top = (np.convolve(hi, b) % p) * (1 << _LIMB)
        return (top + np.convolve(lo, b)) % p
    obj = np.convolve(a.astype(object), b.astype(object)) % p
    return obj.astype(np.int64)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class FpPoly:
    """Immutable polynomial over F_p."""

    __slots__ = ("c", "p")

    def __init__(self, coeffs, p: int, _clean: bool = False):
        self.p = p
        if _clean:
            self.c = coeffs
            return
        dtype = _dtype_for(p)
        if isinstance(coeffs, np.ndarray) and coeffs.dtype != object and dtype != object:
            arr = coeffs.astype(np.int64) % p
        else:
            arr = np.array([int(x) % p for x in coeffs], dtype=dtype)
        self.c = _trim(arr)

    # constructors
    @classmethod
    def zero(cls, p: int) -> "FpPoly":
        return cls([], p)

    @classmethod
    def one(cls, p: int) -> "FpPoly":
        return cls([1], p)

    @classmethod
    def x(cls, p: int) -> "FpPoly":
        return cls([0, 1], p)

    @classmethod
    def monomial(cls, n: int, p: int, coeff: int = 1) -> "FpPoly":
        return cls([0] * n + [coeff], p)

    @classmethod
    def from_roots(cls, roots: Iterable[int], p: int) -> "FpPoly":
        out = cls.one(p)
        for r in roots:
            out = out * cls([-r, 1], p)
        return out

    @classmethod
    def from_descending(cls, coeffs: Sequence[int], p: int) -> "FpPoly":
        return cls(list(coeffs)[::-1], p)

    def _new(self, arr: np.ndarray) -> "FpPoly":
        return FpPoly(_trim(arr), self.p, _clean=True)

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def coeffs(self) -> list[int]:
        return [int(x) for x in self.c]

    def leading(self) -> int:
        return int(self.c[-1]) if len(self.c) else 0

    def __getitem__(self, i: int) -> int:
        return int(self.c[i]) if 0 <= i < len(self.c) else 0

    def __len__(self):
        return len(self.c)

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and np.array_equal(self.c, other.c)
        if isinstance(other, int):
            return self == FpPoly([other], self.p)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, tuple(self.coeffs())))

    def __repr__(self):
        return f"FpPoly({self.coeffs()}, p={self.p})"

    def __str__(self):
        return format_poly(self)

    # arithmetic
    def _coerce(self, other) -> "FpPoly":
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise ValueError(f"moduli differ: {self.p} vs {other.p}")
            return other
        return FpPoly([int(other)], self.p)

    def __add__(self, other):
        o = self._coerce(other)
        return self._new(_add_arrays(self.c, o.c) % self.p)

    __radd__ = __add__

    def __neg__(self):
        return self._new((-self.c) % self.p)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new(self.c * (other % self.p) % self.p)
        o = self._coerce(other)
        return self._new(_mul_arrays(self.c, o.c, self.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = FpPoly.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, n: int) -> "FpPoly":
        """Multiply by X^n."""
        if self.is_zero():
            return self
        return self._new(np.concatenate([np.zeros(n, dtype=self.c.dtype), self.c]))

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        return self * inv_mod(self.leading(), self.p)

    def derivative(self) -> "FpPoly":
        if len(self.c) <= 1:
            return FpPoly.zero(self.p)
        k = np.arange(1, len(self.c), dtype=self.c.dtype) % self.p
        return self._new(self.c[1:] * k % self.p)

    def divmod(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        g = self._coerce(other)
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        m = g.degree
        if self.degree < m:
            return FpPoly.zero(p), self
        r = self.c.copy()
        lead_inv = inv_mod(g.leading(), p)
        gc = g.c
        q = np.zeros(self.degree - m + 1, dtype=r.dtype)
        for i in range(self.degree - m, -1, -1):
            t = r[i + m] * lead_inv % p
            if t:
                q[i] = t
                r[i: i + m + 1] = (r[i: i + m + 1] - t * gc) % p
        return self._new(q), self._new(r[:m].copy())

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        g = self._coerce(other)
        if g.degree >= 1 and self.degree >= 2 * g.degree - 1 and g.degree > 64:
            return _Reducer(g).reduce(self)
        return self.divmod(g)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for coeff in reversed(self.coeffs()):
            acc = (acc * x + coeff) % self.p
        return acc

    def compose(self, inner: "FpPoly") -> "FpPoly":
        acc = FpPoly.zero(self.p)
        for coeff in reversed(self.coeffs()):
            acc = acc * inner + coeff
        return acc

    def pth_root(self) -> "FpPoly":
        """g with g(X)^p = self, assuming self' = 0 (coefficients are fixed by Frobenius)."""
        return self._new(self.c[:: self.p].copy())


class _Reducer:
    """Reduction modulo a fixed polynomial through a precomputed inverse of
    its reversal (two multiplications per reduction)."""

    def __init__(self, g: FpPoly):
        self.g = g.monic() if g.leading() != 1 else g
        self.m = g.degree
        self.p = g.p
        rev = self.g.c[::-1]
        self.inv = _series_inverse(rev, self.m, self.p)

    def reduce(self, f: FpPoly) -> FpPoly:
        m, p = self.m, self.p
        n = f.degree
        if n < m:
            return f
        k = n - m + 1
        inv = self.inv
        if k > len(inv):
            inv = self.inv = _series_inverse(self.g.c[::-1], k, p)
        rev_f = f.c[::-1][:k]
        q_rev = _mul_arrays(rev_f, inv[:k], p)[:k]
        q = f._new(q_rev[::-1].copy())
        return f - q * self.g


def _series_inverse(a: np.ndarray, n: int, p: int) -> np.ndarray:
    """First n coefficients of 1/a(X) for a(0) invertible (Newton iteration)."""
    b = np.array([inv_mod(int(a[0]), p)], dtype=a.dtype)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = _mul_arrays(a[:k], b, p)[:k]
        # b <- b * (2 - a*b)
        corr = (-ab) % p
        corr[0] = (corr[0] + 2) % p
        b = _mul_arrays(b, corr, p)[:k]
    out = np.zeros(n, dtype=a.dtype)
    out[: len(b)] = b[:n]
    return out


def format_poly(f: FpPoly, var: str = "X") -> str:
    """Descending powers, coefficients as least nonnegative residues."""
    if f.is_zero():
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mon = var if i == 1 else f"{var}^{i}"
            terms.append(mon if c == 1 else f"{c}*{mon}")
    return " + ".join(terms)


def poly_gcd(f: FpPoly, g: FpPoly) -> FpPoly:
    """Monic gcd; gcd(f, 0) = monic(f)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def pow_mod(base: FpPoly, e: int, f: FpPoly) -> FpPoly:
    """base^e mod f by square-and-multiply."""
    if f.degree < 1:
        return FpPoly.zero(f.p)
    red = _Reducer(f) if f.degree > 64 else None
    mod = (lambda h: red.reduce(h)) if red else (lambda h: h.divmod(f)[1])
    result = FpPoly.one(f.p)
    base = mod(base)
    for bit in bin(e)[2:]:
        result = mod(result * result)
        if bit == "1":
            result = mod(result * base)
    return result


def pow_x_mod(f: FpPoly, e: int) -> FpPoly:
    """X^e mod f; multiplication by X is a shift followed by one reduction step."""
    if f.degree < 1:
        raise ValueError("pow_x_mod needs deg f >= 1")
    p = f.p
    red = _Reducer(f) if f.degree > 64 else None
    mod = (lambda h: red.reduce(h)) if red else (lambda h: h.divmod(f)[1])
    result = FpPoly.one(p)
    for bit in bin(e)[2:]:
        result = mod(result * result)
        if bit == "1":
            result = result.shift(1)
            if result.degree >= f.degree:
                result = result.divmod(f)[1]
    return result


def count_linear_factors(f: FpPoly) -> int:
    """Number of distinct roots of f in F_p."""
    if f.is_zero():
        raise ValueError("zero polynomial has every element as a root")
    if f.degree < 1:
        return 0
    xp = pow_x_mod(f, f.p)
    return poly_gcd(f, xp - FpPoly.x(f.p)).degree


def squarefree_part(f: FpPoly) -> FpPoly:
    """Monic product of the distinct irreducible factors of f."""
    if f.is_zero():
        raise ValueError("squarefree part of 0 is undefined")
    f = f.monic()
    if f.degree < 1:
        return f
    df = f.derivative()
    if df.is_zero():
        return squarefree_part(f.pth_root())
    g = poly_gcd(f, df)
    if g.degree == 0:
        return f
    h = f // g  # every factor whose multiplicity is prime to p
    rg = squarefree_part(g)
    return (h * rg // poly_gcd(h, rg)).monic()


def factor_degree_profile(f: FpPoly) -> tuple[int, int, int]:
    """(distinct linear, distinct irreducible quadratic, distinct higher) factor counts."""
    s = squarefree_part(f)
    p = f.p
    x = FpPoly.x(p)
    counts = {1: 0, 2: 0}
    higher = 0
    d = 0
    h = x
    while s.degree > 0:
        d += 1
        if s.degree < 2 * d:
            # what is left is a single irreducible factor
            if s.degree == 1 or s.degree == 2:
                counts[s.degree] += 1
            else:
                higher += 1
            break
        h = pow_mod(h, p, s)
        g = poly_gcd(s, h - x)
        if g.degree:
            if d <= 2:
                counts[d] += g.degree // d
            else:
                higher += g.degree // d
            s = s // g
            h = h % s if s.degree > 0 else h
    return counts[1], counts[2], higher


def count_x2_plus_c_factors(f: FpPoly) -> int:
    """Number of C with X^2 + C irreducible over F_p and dividing f.

    Writing f = E(X^2) + X*O(X^2), the condition (X^2 + C) | f is that
    z = -C is a common root of E and O; irreducibility asks z to be a
    non-residue.  Both are counted through gcds.
    """
    p = f.p
    if p < 3:
        raise ValueError("needs an odd prime")
    if f.is_zero():
        raise ValueError("zero polynomial")
    even = FpPoly(f.c[0::2], p)
    odd = FpPoly(f.c[1::2], p)
    common = poly_gcd(even, odd)
    if common.degree < 1:
        return 0
    common = squarefree_part(common)
    nonres = pow_x_mod(common, (p - 1) // 2) + 1
    return poly_gcd(common, nonres).degree


def count_x2_plus_c_factors_scan(f: FpPoly) -> int:
    """Direct divisibility scan over C (slow reference version)."""
    p = f.p
    total = 0
    for C in range(1, p):
        if kronecker(-C, p) == -1 and (f % FpPoly([C, 0, 1], p)).is_zero():
            total += 1
    return total


def squarefree_decomposition(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """[(g_i, i)] with f = lc * prod g_i^i, each g_i squarefree and pairwise coprime."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    p = f.p
    out: dict[int, FpPoly] = {}

    def merge(g: FpPoly, k: int) -> None:
        if g.degree > 0:
            out[k] = out[k] * g if k in out else g

    def rec(f: FpPoly, scale: int) -> None:
        df = f.derivative()
        if df.is_zero():
            if f.degree > 0:
                rec(f.pth_root(), scale * p)
            return
        c = poly_gcd(f, df)
        w = f // c
        i = 1
        while w.degree > 0:
            y = poly_gcd(w, c)
            merge((w // y).monic(), i * scale)
            w, c = y, c // y
            i += 1
        if c.degree > 0:
            rec(c.monic().pth_root(), scale * p)

    rec(f.monic(), 1)
    return [(g, k) for k, g in sorted(out.items())]


def _split_equal_degree(f: FpPoly, d: int, rng) -> list[FpPoly]:
    """Monic irreducible factors of a squarefree f whose factors all have degree d."""
    if f.degree == d:
        return [f.monic()]
    p = f.p
    if p < 64:
        # small fields: try every monic candidate of degree d
        found = []
        rest = f
        for tail in range(p ** d):
            if rest.degree == d:
                break
            digits = [(tail // p ** i) % p for i in range(d)]
            g = FpPoly(digits + [1], p)
            if (rest % g).is_zero():
                found.append(g)
                rest = rest // g
        found.append(rest.monic())
        return sorted(found, key=lambda g: g.coeffs())
    e = (p ** d - 1) // 2
    while True:
        a = FpPoly([rng.randrange(p) for _ in range(f.degree)], p)
        if a.degree < 1:
            continue
        g = poly_gcd(f, pow_mod(a, e, f) - 1)
        if 0 < g.degree < f.degree:
            return sorted(_split_equal_degree(g, d, rng) + _split_equal_degree(f // g, d, rng),
                          key=lambda g: g.coeffs())


def split_factors(f: FpPoly, seed: int = 0) -> list[tuple[FpPoly, int]] | None:
    """Factorization into monic linear and quadratic pieces with multiplicities.

    Returns None when some irreducible factor has degree > 2.  Factors are
    sorted by degree, then by coefficients.
    """
    import random

    rng = random.Random(seed)
    p = f.p
    x = FpPoly.x(p)
    out = []
    for g, k in squarefree_decomposition(f):
        lin = poly_gcd(g, pow_x_mod(g, p) - x) if g.degree > 0 else g
        rest = g // lin
        quad = poly_gcd(rest, pow_x_mod(rest, p * p) - x) if rest.degree > 0 else rest
        if rest.degree != quad.degree:
            return None
        for piece, d in ((lin, 1), (quad, 2)):
            if piece.degree > 0:
                out.extend((h, k) for h in _split_equal_degree(piece, d, rng))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs(), t[1]))
    return out


def format_factored(factors: list[tuple[FpPoly, int]], var: str = "X") -> str:
    parts = []
    for g, k in factors:
        s = f"({format_poly(g, var)})"
        parts.append(s if k == 1 else f"{s}^{k}")
    return "".join(parts) if parts else "1"


def homogeneous_substitute(f: FpPoly, num: FpPoly, den: FpPoly, d: int | None = None) -> FpPoly:
    """den^d * f(num/den), with d defaulting to deg f."""
    if d is None:
        d = f.degree
    if d < f.degree:
        raise ValueError("d must be at least deg f")
    p = f.p
    # Horner in the homogeneous form: G_k = G_{k-1}*num + f_{n-k}*den^k
    acc = FpPoly.zero(p)
    den_pow = FpPoly.one(p)
    coeffs = f.coeffs() + [0] * (d - max(f.degree, 0))
    for k, coeff in enumerate(reversed(coeffs[: d + 1])):
        if k:
            den_pow = den_pow * den
        acc = acc * num + den_pow * coeff
    return acc


class FpBivar:
    """Polynomial in X whose coefficients are FpPoly in Y, monic in X."""

    def __init__(self, x_coeffs: Sequence[FpPoly]):
        if not x_coeffs:
            raise ValueError("empty bivariate polynomial")
        self.x_coeffs = list(x_coeffs)
        self.p = self.x_coeffs[0].p

    @classmethod
    def from_integer_rows(cls, rows: Sequence[Sequence[int]], p: int) -> "FpBivar":
        """rows[i] are integer Y-coefficients (low first) of X^i."""
        return cls([FpPoly(row, p) for row in rows])

    @property
    def x_degree(self) -> int:
        return len(self.x_coeffs) - 1

    def is_monic(self) -> bool:
        return self.x_coeffs[-1] == FpPoly.one(self.p)

    def at_x(self, x: int) -> FpPoly:
        acc = FpPoly.zero(self.p)
        for coeff in reversed(self.x_coeffs):
            acc = acc * x + coeff
        return acc

    def reduce_univariate(self, f: FpPoly) -> list[FpPoly]:
        """f(X) mod self as d coefficients (low X-degree first) in F_p[Y]."""
        d = self.x_degree
        p = self.p
        zero = FpPoly.zero(p)
        r = [zero] * d
        low = self.x_coeffs[:d]
        for coeff in reversed(f.coeffs()):
            top = r[-1]
            r = [zero] + r[:-1]
            if not top.is_zero():
                r = [ri - top * gi for ri, gi in zip(r, low)]
            r[0] = r[0] + coeff
        return r


def resultant_y(f: FpPoly, g: FpBivar) -> FpPoly:
    """Res_X(f, g) = product of f over the roots of g, as a polynomial in Y."""
    if not g.is_monic():
        raise ValueError("resultant_y needs g monic in X")
    if f.is_zero():
        raise ValueError("f must be nonzero")
    p = f.p
    if g.x_degree == 2:
        # g = X^2 - a X + b ; track f mod g = u X + v
        b = g.x_coeffs[0]
        a = -g.x_coeffs[1]
        u = FpPoly.zero(p)
        v = FpPoly.zero(p)
        for coeff in reversed(f.coeffs()):
            u, v = a * u + v, -(b * u)
            v = v + coeff
        return b * u * u + a * u * v + v * v
    return _norm_resultant(f, g)


def _norm_resultant(f: FpPoly, g: FpBivar) -> FpPoly:
    """Determinant of multiplication-by-f on F_p[Y][X]/(g)."""
    d = g.x_degree
    p = f.p
    col = g.reduce_univariate(f)
    columns = [col]
    low = g.x_coeffs[:d]
    for _ in range(d - 1):
        top = col[-1]
        col = [FpPoly.zero(p)] + col[:-1]
        if not top.is_zero():
            col = [ci - top * gi for ci, gi in zip(col, low)]
        columns.append(col)
    matrix = [[columns[j][i] for j in range(d)] for i in range(d)]
    return determinant(matrix, p)


def determinant(matrix: Sequence[Sequence[FpPoly]], p: int) -> FpPoly:
    """Leibniz expansion; meant for the small sizes met here."""
    n = len(matrix)
    total = FpPoly.zero(p)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = FpPoly.one(p)
        for i in range(n):
            entry = matrix[i][perm[i]]
            if entry.is_zero():
                term = None
                break
            term = term * entry
        if term is not None:
            total = total + term * sign
    return total
