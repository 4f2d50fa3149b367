"""Truncated Laurent series in q with exact coefficients.

A series stores every coefficient from q^val through q^prec, so the
coefficient list always has length prec - val + 1.  Coefficients may be
Python ints, Fractions, or QuadraticNumber values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

INFINITE_PREC = 10 ** 9


class StructuralError(ArithmeticError):
    """Series data violates an integrality or vanishing requirement."""


class QuadraticNumber:
    """a + b*sqrt(d) with rational a, b (d a fixed non-square integer)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 5):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _lift(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise ValueError("different quadratic fields")
            return other
        return QuadraticNumber(other, 0, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadraticNumber(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticNumber(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        n = o.a * o.a - o.d * o.b * o.b
        c = o.conjugate()
        return self * QuadraticNumber(c.a / n, c.b / n, self.d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return QuadraticNumber(1, 0, self.d) / (self ** (-e))
        out = QuadraticNumber(1, 0, self.d)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"


def _is_zero(c) -> bool:
    return not c


def _convolve(a: Sequence, b: Sequence, n: int) -> list:
    """First n coefficients of the product of two coefficient lists."""
    if n <= 0 or not len(a) or not len(b):
        return [0] * max(n, 0)
    aa = np.array(list(a[:n]), dtype=object)
    bb = np.array(list(b[:n]), dtype=object)
    out = list(np.convolve(aa, bb)[:n])
    out += [0] * (n - len(out))
    return out


class LaurentSeries:
    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs: Sequence, prec: int):
        coeffs = list(coeffs)
        length = prec - val + 1
        if length < 0:
            raise ValueError("precision below valuation")
        if len(coeffs) < length:
            coeffs += [0] * (length - len(coeffs))
        else:
            coeffs = coeffs[:length]
        # strip leading zeros so val is the true valuation
        k = 0
        while k < len(coeffs) and _is_zero(coeffs[k]):
            k += 1
        self.val = val + k
        self.coeffs = coeffs[k:]
        self.prec = prec

    # constructors
    @classmethod
    def constant(cls, c, prec: int = INFINITE_PREC) -> "LaurentSeries":
        if prec == INFINITE_PREC:
            return _ExactConstant(c)
        return cls(0, [c], prec)

    @classmethod
    def monomial(cls, exponent: int, prec: int, c=1) -> "LaurentSeries":
        return cls(exponent, [c], prec)

    @classmethod
    def from_function(cls, val: int, prec: int, f: Callable[[int], object]) -> "LaurentSeries":
        return cls(val, [f(n) for n in range(val, prec + 1)], prec)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int):
        if n > self.prec:
            raise IndexError(f"coefficient of q^{n} beyond precision {self.prec}")
        i = n - self.val
        if i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    def coefficient_list(self, lo: int, hi: int) -> list:
        return [self[n] for n in range(lo, hi + 1)]

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        if self.val > prec:
            return LaurentSeries(prec + 1, [], prec)
        return LaurentSeries(self.val, self.coeffs, prec)

    def map(self, f) -> "LaurentSeries":
        return LaurentSeries(self.val, [f(c) for c in self.coeffs], self.prec)

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        return _ExactConstant(other)

    def __add__(self, other):
        o = self._coerce(other)
        if isinstance(o, _ExactConstant):
            if self.val > 0:
                o = LaurentSeries(0, [o.c], self.prec)
            else:
                out = list(self.coeffs)
                if -self.val < len(out):
                    out[-self.val] = out[-self.val] + o.c
                return LaurentSeries(self.val, out, self.prec)
        prec = min(self.prec, o.prec)
        val = min(self.val, o.val)
        out = [self[n] + o[n] if n <= prec else 0 for n in range(val, prec + 1)] if val <= prec else []
        return LaurentSeries(val, out, prec) if val <= prec else LaurentSeries(prec + 1, [], prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.val, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.val, [c * other for c in self.coeffs], self.prec)
        if isinstance(other, _ExactConstant):
            return self * other.c
        if self.is_zero() or other.is_zero():
            prec = min(self.prec + (other.val if not other.is_zero() else other.prec + 1),
                       other.prec + (self.val if not self.is_zero() else self.prec + 1))
            return LaurentSeries(prec + 1, [], prec)
        val = self.val + other.val
        prec = min(self.prec + other.val, other.prec + self.val)
        n = prec - val + 1
        return LaurentSeries(val, _convolve(self.coeffs, other.coeffs, n), prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentSeries":
        if self.is_zero():
            raise ZeroDivisionError("series is zero to its precision")
        lead = self.coeffs[0]
        if isinstance(lead, int):
            if lead in (1, -1):
                lead_inv = lead
            else:
                lead_inv = Fraction(1, lead)
        else:
            lead_inv = 1 / lead
        n = self.prec - self.val + 1
        a = self.coeffs
        b = [lead_inv]
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                if i < len(a):
                    ai = a[i]
                    if ai:
                        acc = acc + ai * b[k - i]
            b.append(-acc * lead_inv)
        return LaurentSeries(-self.val, b, self.prec - 2 * self.val)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        if isinstance(other, int):
            other = Fraction(other)
        return self * (1 / other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return _ExactConstant(1)
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, N: int) -> "LaurentSeries":
        """f(q^N), i.e. tau -> N*tau."""
        out = [0] * ((len(self.coeffs) - 1) * N + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * N] = c
        return LaurentSeries(self.val * N, out, self.prec * N + N - 1)

    def sqrt(self) -> "LaurentSeries":
        """Square root of a series with valuation 0 and leading coefficient 1."""
        if self.val != 0 or self.coeffs[0] != 1:
            raise ValueError("sqrt needs leading term 1")
        n = self.prec + 1
        a = self.coeffs
        b = [Fraction(1)]
        for k in range(1, n):
            acc = a[k] if k < len(a) else 0
            for i in range(1, k):
                acc -= b[i] * b[k - i]
            b.append(Fraction(acc) / 2)
        return LaurentSeries(0, [_maybe_int(x) for x in b], self.prec)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1) for c in self.coeffs)

    def to_integers(self) -> "LaurentSeries":
        if not self.is_integral():
            raise StructuralError("series has non-integral coefficients")
        return self.map(int)

    def vanishes_through(self, n: int) -> bool:
        if self.prec < n:
            raise StructuralError(f"precision {self.prec} too small to test vanishing through q^{n}")
        return all(_is_zero(self[k]) for k in range(self.val, n + 1))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val)
        return all(self[k] == other[k] for k in range(lo, prec + 1))

    def __repr__(self):
        shown = []
        for k in range(self.val, min(self.prec, self.val + 6) + 1):
            c = self[k]
            if c:
                shown.append(f"{c}*q^{k}")
        return " + ".join(shown) + f" + O(q^{self.prec + 1})"


class _ExactConstant(LaurentSeries):
    """A constant known exactly (infinite precision)."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = c
        self.val = 0 if c else INFINITE_PREC + 1
        self.coeffs = [c] if c else []
        self.prec = INFINITE_PREC

    def __mul__(self, other):
        if isinstance(other, _ExactConstant):
            return _ExactConstant(self.c * other.c)
        if isinstance(other, LaurentSeries):
            return other * self.c
        return _ExactConstant(self.c * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, _ExactConstant):
            return _ExactConstant(self.c + other.c)
        if isinstance(other, LaurentSeries):
            return other + self.c
        return _ExactConstant(self.c + other)

    __radd__ = __add__

    def __neg__(self):
        return _ExactConstant(-self.c)

    def __pow__(self, e: int):
        return _ExactConstant(self.c ** e)

    def __repr__(self):
        return f"{self.c} (exact)"


def _maybe_int(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def polynomial_in_series(coeffs: Sequence, h: LaurentSeries) -> LaurentSeries:
    """sum coeffs[k] * h^k by Horner's rule."""
    coeffs = list(coeffs)
    if not coeffs:
        return _ExactConstant(0)
    acc: LaurentSeries = _ExactConstant(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * h + c
    return acc
