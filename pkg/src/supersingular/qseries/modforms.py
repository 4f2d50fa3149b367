"""Eta quotients, Eisenstein series and the modular invariant j."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .series import LaurentSeries, StructuralError


@dataclass(frozen=True)
class EtaQuotientSpec:
    """prod eta(m*tau)^e over the (m, e) pairs."""

    factors: tuple = field(default_factory=tuple)

    @property
    def leading_power(self) -> Fraction:
        return Fraction(sum(m * e for m, e in self.factors), 24)


@lru_cache(maxsize=None)
def _euler_product(prec: int) -> tuple:
    """Coefficients of prod (1 - q^n) through q^prec (pentagonal numbers)."""
    out = [0] * (prec + 1)
    k = 0
    while True:
        progressed = False
        for kk in ((k, -k) if k else (0,)):
            g = kk * (3 * kk - 1) // 2
            if g <= prec:
                out[g] += -1 if kk % 2 else 1
                progressed = True
        if not progressed:
            break
        k += 1
    return tuple(out)


def eta_product_series(m: int, e: int, prec: int) -> LaurentSeries:
    """prod_n (1 - q^{mn})^e through q^prec (without the q^{m/24} factor)."""
    base = LaurentSeries(0, list(_euler_product(prec // m)), prec // m).scale(m).truncate(prec)
    return base ** e


def eta_quotient(spec: EtaQuotientSpec, precision: int) -> LaurentSeries:
    lead = spec.leading_power
    if lead.denominator != 1:
        raise ValueError(f"eta quotient has fractional leading power {lead}")
    v = int(lead)
    rel = precision - v
    out = LaurentSeries.constant(1, rel) if rel >= 0 else None
    if out is None:
        raise ValueError("precision below the valuation of the quotient")
    for m, e in spec.factors:
        if e:
            out = out * eta_product_series(m, e, rel)
    return LaurentSeries(v, out.coeffs if out.val == 0 else [0] * out.val + out.coeffs, precision)


def divisor_sum(n: int, k: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d * d != n:
                total += (n // d) ** k
        d += 1
    return total


def eisenstein(weight: int, precision: int) -> LaurentSeries:
    """Normalized E_2, E_4 or E_6 (constant term 1)."""
    factor = {2: -24, 4: 240, 6: -504}[weight]
    k = weight - 1
    return LaurentSeries(
        0, [1] + [factor * divisor_sum(n, k) for n in range(1, precision + 1)], precision
    )


def delta_series(precision: int) -> LaurentSeries:
    return eta_quotient(EtaQuotientSpec(((1, 24),)), precision)


def j_series(precision: int) -> LaurentSeries:
    """j = E_4^3 / Delta through q^precision."""
    e4 = eisenstein(4, precision + 1)
    return (e4 ** 3 * delta_series(precision + 2).inverse()).truncate(precision)


def j_series_eta(precision: int) -> LaurentSeries:
    """j from E_4 written as an eta quotient combination (independent route).

    E_4 = eta(t)^16/eta(2t)^8 + 256 eta(2t)^16/eta(t)^8.
    """
    p = precision + 1
    e4 = eta_quotient(EtaQuotientSpec(((1, 16), (2, -8))), p) + eta_quotient(
        EtaQuotientSpec(((1, -8), (2, 16))), p
    ) * 256
    return (e4 ** 3 * delta_series(precision + 2).inverse()).truncate(precision)


def level_combo(N: int, precision: int) -> LaurentSeries:
    """(N E_2(N tau) - E_2(tau)) / (N - 1)."""
    e2 = eisenstein(2, precision)
    combo = e2.scale(N).truncate(precision) * N - e2
    if 24 % (N - 1) == 0:
        return combo.map(lambda c: c // (N - 1))
    return combo / (N - 1)


_COMBOS = {"level2_combo": 2, "level3_combo": 3, "level5_combo": 5, "level7_combo": 7}


def eisenstein_combo(kind: str, precision: int) -> LaurentSeries:
    if kind == "E2":
        return eisenstein(2, precision)
    if kind == "E4":
        return eisenstein(4, precision)
    if kind == "E6":
        return eisenstein(6, precision)
    if kind in _COMBOS:
        return level_combo(_COMBOS[kind], precision)
    raise ValueError(f"unknown Eisenstein combination {kind!r}")
