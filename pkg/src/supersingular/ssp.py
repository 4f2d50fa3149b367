"""Constructions of supersingular polynomials and their relatives over F_p.

Every construction returns a monic polynomial tagged with its label and the
route used to build it, so routes can be compared against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any, Callable, Optional

from .arith import (
    Fp2Elem,
    char_exponents,
    frac_mod,
    inv_mod,
    is_prime,
    kronecker,
    sqrt_mod,
)
from .fppoly import (
    FpPoly,
    homogeneous_substitute,
    resultant_y,
    squarefree_part,
)

LEVEL_LABELS = ("level1", "G0(2)", "G0(3)")


@dataclass(frozen=True)
class SspPoly:
    p: int
    label: str
    route: str
    poly: FpPoly
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __str__(self):
        return f"{self.label} mod {self.p} [{self.route}]: {self.poly}"


def _require_prime(p: int, least: int = 2) -> None:
    if not is_prime(p) or p < least:
        raise ValueError(f"need a prime >= {least}, got {p}")


def truncated_hypergeometric(m: int, beta: int, z: int, p: int) -> FpPoly:
    """sum_{n<=m} (-m)_n (beta)_n / n!^2 * z^n X^{m-n} over F_p.

    This is the polynomial part of X^m 2F1(-m, beta; 1; z/X); beta is
    already reduced mod p and m < p.
    """
    coeffs = [0] * (m + 1)
    term = 1
    coeffs[m] = 1
    for n in range(m):
        # ratio of consecutive terms: (n - m)(n + beta) z / (n + 1)^2
        term = term * ((n - m) % p) % p * ((n + beta) % p) % p * z % p
        term = term * inv_mod((n + 1) * (n + 1), p) % p
        coeffs[m - n - 1] = term
    return FpPoly(coeffs, p)


def _x_power(n: int, p: int) -> FpPoly:
    return FpPoly.monomial(n, p)


def _linear(root: int, p: int) -> FpPoly:
    return FpPoly([-root, 1], p)


def ss_level1(p: int) -> SspPoly:
    """Supersingular polynomial of level one."""
    _require_prime(p)
    if p in (2, 3):
        return SspPoly(p, "level1", "small_prime", FpPoly.x(p))
    ce = char_exponents(p)
    m = p // 12
    beta = frac_mod(5 - 4 * ce.delta + 6 * ce.eps, 12, p)
    body = truncated_hypergeometric(m, beta, 1728 % p, p)
    poly = body * _x_power(ce.delta, p) * _linear(1728, p) ** ce.eps
    return SspPoly(p, "level1", "hypergeometric", poly.monic())


def ss_fricke_hg(N: int, p: int) -> SspPoly:
    """Hypergeometric polynomial for the Fricke groups of level 2 or 3."""
    _require_prime(p, 5)
    ce = char_exponents(p)
    if N == 2:
        m = p // 8
        beta = frac_mod(3 - 2 * ce.eps + 4 * ce.nu, 8, p)
        body = truncated_hypergeometric(m, beta, 256 % p, p)
        poly = body * _x_power(ce.eps, p) * _linear(256, p) ** ce.nu
    elif N == 3:
        m = p // 6
        beta = frac_mod(1 + ce.delta, 3, p)
        body = truncated_hypergeometric(m, beta, 108 % p, p)
        poly = body * _x_power(ce.delta, p) * _linear(108, p) ** ce.delta
    else:
        raise ValueError("hypergeometric Fricke polynomials exist for N = 2, 3")
    return SspPoly(p, f"{N}*", "hypergeometric", poly.monic())


def ss_gamma0(N: int, p: int) -> SspPoly:
    """Hypergeometric polynomial for Gamma_0(2) or Gamma_0(3)."""
    _require_prime(p)
    if N not in (2, 3):
        raise ValueError("Gamma_0(N) polynomials exist for N = 2, 3")
    if p in (2, 3):
        return SspPoly(p, f"G0({N})", "small_prime", FpPoly.x(p))
    ce = char_exponents(p)
    if N == 2:
        m = p // 4
        beta = frac_mod(3 - 2 * ce.eps, 4, p)
        body = truncated_hypergeometric(m, beta, 64, p)
        poly = body * _x_power(ce.eps, p)
    else:
        m = p // 3
        beta = frac_mod(2 - ce.delta, 3, p)
        body = truncated_hypergeometric(m, beta, 27, p)
        poly = body * _x_power(ce.delta, p)
    return SspPoly(p, f"G0({N})", "hypergeometric", poly.monic())


def ss_binomial(N: int, p: int) -> SspPoly:
    """Binomial-coefficient closed form of the Gamma_0(N) polynomial."""
    _require_prime(p, 5)
    ce = char_exponents(p)
    if N == 2:
        top = (p - 1 + 2 * ce.eps) // 4
        coeff = lambda n: comb(2 * n, n) * comb(4 * n, 2 * n)
    elif N == 3:
        top = (p - 1 + 2 * ce.delta) // 3
        coeff = lambda n: comb(2 * n, n) * comb(3 * n, n)
    else:
        raise ValueError("binomial forms exist for N = 2, 3")
    return SspPoly(p, f"G0({N})", "binomial", _descending_sum(top, coeff, p))


def _descending_sum(top: int, coeff: Callable[[int], int], p: int) -> FpPoly:
    """sum_{n=0}^{top} coeff(n) X^{top-n}."""
    return FpPoly([coeff(top - k) % p for k in range(top + 1)], p)


def ss_square_closed(label: str, p: int) -> FpPoly:
    """Closed forms for the squares of the level 1, 2* and 3* polynomials."""
    _require_prime(p, 5)
    ce = char_exponents(p)
    if label == "level1":
        top = (p - 1 + 8 * ce.delta) // 6
        body = _descending_sum(top, lambda n: comb(2 * n, n) * comb(3 * n, n) * comb(6 * n, 3 * n), p)
        return body * _linear(1728, p) ** ce.eps
    if label == "2*":
        top = (p - 1 + 6 * ce.eps) // 4
        body = _descending_sum(top, lambda n: comb(2 * n, n) ** 2 * comb(4 * n, 2 * n), p)
        return body * _linear(256, p) ** ce.nu
    if label == "3*":
        top = (p - 1 + 2 * ce.delta) // 3
        body = _descending_sum(top, lambda n: comb(2 * n, n) ** 2 * comb(3 * n, n), p)
        return body * (_x_power(1, p) * _linear(108, p)) ** ce.delta
    raise ValueError(f"no closed square form for {label!r}")


def legendre_poly(kind: str, m: int, p: int) -> FpPoly:
    """W_m = sum C(m,r)^2 X^r, or the Legendre polynomial P_m, over F_p."""
    if m >= p:
        raise ValueError(f"need m < p (m={m}, p={p})")
    w = FpPoly([comb(m, r) ** 2 for r in range(m + 1)], p)
    if kind == "W":
        return w
    if kind == "P":
        # P_m(x) = 2^-m sum C(m,r)^2 (x+1)^r (x-1)^(m-r)
        x = FpPoly.x(p)
        return homogeneous_substitute(w, x + 1, x - 1, m) * inv_mod(pow(2, m, p), p)
    raise ValueError("kind must be 'W' or 'P'")


def parse_label(label: str) -> tuple[str, int]:
    """('star', N) for 'N*', ('3C', 3) for '3C'."""
    if label == "3C":
        return "3C", 3
    if label.endswith("*") and label[:-1].isdigit():
        return "star", int(label[:-1])
    raise ValueError(f"unknown label {label!r}")


def ss_resultant(label: str, p: int, allow_ramified: bool = False) -> tuple[FpPoly, SspPoly]:
    """(V, ss) with V = Res_X(ss_p(X), R(X, Y)) and ss its monic radical."""
    from .qseries.relations import relation

    kind, N = parse_label(label)
    _require_prime(p)
    if kind == "star" and p == N and not allow_ramified:
        raise ValueError(f"p = N = {p} is outside the supported range for {label}")
    R = relation(label)
    V = resultant_y(ss_level1(p).poly, R.mod(p))
    route = "small_prime" if p in (2, 3) else "resultant_radical"
    ss = SspPoly(p, label, route, squarefree_part(V), {"ramified": p == N})
    return V, ss


# Heun local series ---------------------------------------------------------


@dataclass(frozen=True)
class HeunParams:
    a: Any
    w: Any
    alpha: Any
    beta: Any
    gamma: Any
    delta: Any

    @property
    def epsilon(self):
        return self.alpha + self.beta + 1 - self.gamma - self.delta

    def transformed(self) -> "HeunParams":
        """Parameters of the series on the right of the identity
        Hl(x) = (1-x)^(1-delta) (1-x/a)^(1-eps) Hl(transformed; x)."""
        eps = self.epsilon
        w2 = self.w - self.gamma * ((self.delta - 1) * self.a + eps - 1)
        return HeunParams(
            self.a, w2, -self.beta + self.gamma + 1, -self.alpha + self.gamma + 1,
            self.gamma, 2 - self.delta,
        )


def heun_series(params: HeunParams, n_terms: int) -> list:
    """c_0 .. c_{n_terms} of the Heun local series at 0."""
    a, w = params.a, params.w
    al, be, ga, de = params.alpha, params.beta, params.gamma, params.delta
    ep = params.epsilon
    one = a ** 0 if not isinstance(a, int) else Fraction(1)
    c = [one]
    prev = 0 * one
    for n in range(n_terms):
        den = (n + 1) * (n + ga) * a
        if den == 0:
            raise ZeroDivisionError(f"Heun recursion denominator vanishes at n={n}")
        num = (n * ((n - 1 + ga) * (1 + a) + a * de + ep) + w) * c[n] - (n - 1 + al) * (n - 1 + be) * prev
        prev = c[n]
        c.append(num / den)
    return c


def hypergeometric_series(a, b, c, n_terms: int) -> list:
    """Coefficients of 2F1(a, b; c; x) through x^n_terms."""
    out = [a ** 0 if not isinstance(a, (int, Fraction)) else Fraction(1)]
    for n in range(n_terms):
        out.append(out[-1] * (a + n) * (b + n) / ((c + n) * (n + 1)))
    return out


def binomial_series(e, n_terms: int, scale=1) -> list:
    """Coefficients of (1 - scale*x)^e."""
    out = [e ** 0 if not isinstance(e, (int, Fraction)) else Fraction(1)]
    for k in range(1, n_terms + 1):
        out.append(out[-1] * (e - k + 1) / k * (-scale))
    return out


def heun_identity_sides(params: HeunParams, order: int) -> tuple[list, list]:
    """Both sides of the (1-x)^(1-delta)(1-x/a)^(1-eps) transformation, as series."""
    lhs = heun_series(params, order)
    rhs = heun_series(params.transformed(), order)
    f1 = binomial_series(1 - params.delta, order)
    f2 = binomial_series(1 - params.epsilon, order, 1 / params.a)
    rhs = _series_mul(_series_mul(f1, f2, order), rhs, order)
    return lhs, rhs


def _series_mul(a: list, b: list, order: int) -> list:
    out = []
    for n in range(order + 1):
        acc = 0
        for i in range(n + 1):
            acc = acc + a[i] * b[n - i]
        out.append(acc)
    return out


def _fp2(x, p: int) -> Fp2Elem:
    """Embed an integer or Fraction into F_p(sqrt 5)."""
    x = Fraction(x)
    return Fp2Elem(frac_mod(x.numerator, x.denominator, p), 0, p, 5)


def heun_exponents(N: int, p: int) -> tuple[int, int]:
    """(m_N, mu_N) for the level 5 and 7 Heun polynomials."""
    if N == 5:
        mu = (1 - kronecker(-5, p)) // 2
        m = Fraction(p - 1, 4) + Fraction(1 - kronecker(-1, p), 4) - mu
    elif N == 7:
        mu = (1 - kronecker(-7, p)) // 2
        m = Fraction(p - 1, 3) + Fraction(1 - kronecker(-3, p), 3) - mu
    else:
        raise ValueError("Heun polynomials are given for N = 5, 7")
    assert m.denominator == 1
    return int(m), mu


def truncation_shift(N: int, p: int) -> int:
    """Offset between m_N and the length at which the Heun series terminates mod p.

    The printed parameter alpha = -m_N gives a terminating series only when
    (-1/p) = 1 (level 5) or (-3/p) = 1 (level 7); otherwise the series mod p
    terminates for alpha = -(m_N - 1), with the X^{m_N} prefactor unchanged.
    """
    symbol = kronecker(-1, p) if N == 5 else kronecker(-3, p)
    return (1 - symbol) // 2


def _heun_setup(N: int, p: int, sqrt5: Optional[Fp2Elem], shift: int = 0):
    m, mu = heun_exponents(N, p)
    X = FpPoly.x(p)
    alpha = _fp2(-(m - shift), p)
    if N == 5:
        phi = (sqrt5 + 1) / 2
        phi5 = phi ** 5
        params = HeunParams(
            -(phi ** 10),
            -(phi5 * (22 * mu + 3)) / 4,
            alpha,
            _fp2(mu + Fraction(1, 2) + Fraction(kronecker(-1, p), 4), p),
            _fp2(1, p),
            _fp2(mu + Fraction(1, 2), p),
        )
        z = phi5 * 4
        prefactor = (X * X - X * 44 - 16) ** mu
    else:
        params = HeunParams(
            _fp2(-27, p),
            _fp2(-(13 * mu + 2), p),
            alpha,
            _fp2(mu + Fraction(1, 2) + Fraction(kronecker(-3, p), 6), p),
            _fp2(1, p),
            _fp2(mu + Fraction(1, 2), p),
        )
        z = _fp2(27, p)
        prefactor = ((X + 1) * (X - 27)) ** mu
    return params, z, prefactor, m


def _sqrt5_choices(p: int) -> list[Fp2Elem]:
    s = sqrt_mod(5, p)
    if s is None:
        t = Fp2Elem(0, 1, p, 5)
        return [t, -t]
    return [Fp2Elem(s, 0, p, 5), Fp2Elem(-s, 0, p, 5)]


def heun_candidate(N: int, p: int, sqrt5: Optional[Fp2Elem] = None, shifted: bool = False) -> dict:
    """Assemble X^m (prefactor) Hl(z/X) for one choice of sqrt(5).

    The Heun series is summed up to the length given by alpha; the result
    records whether every coefficient lies in F_p and whether the series
    really terminates there (the next coefficient vanishes).
    """
    if N == 5 and sqrt5 is None:
        sqrt5 = _sqrt5_choices(p)[0]
    shift = truncation_shift(N, p) if shifted else 0
    params, z, prefactor, m = _heun_setup(N, p, sqrt5, shift)
    length = m - shift
    c = heun_series(params, length + 1)
    scaled = []
    zn = z ** 0
    for n in range(length + 1):
        scaled.append(c[n] * zn)
        zn = zn * z
    descends = all(x.in_base_field() for x in scaled)
    body = FpPoly([scaled[length - k].a for k in range(length + 1)], p)
    poly = (body * prefactor * _x_power(shift, p)).monic()
    return {
        "poly": poly,
        "descends": descends,
        "tail_vanishes": c[length + 1] == 0,
        "sqrt5": sqrt5,
    }


def ss_heun(N: int, p: int, shifted: bool = False) -> SspPoly:
    """Heun-series candidate for the level 5* / 7* polynomial.

    With shifted=False the parameters are exactly the conjectured ones;
    shifted=True uses the terminating length (see truncation_shift).  For
    N = 5 both square roots of 5 are tried and the notes record whether the
    results agree, descend to F_p and terminate.
    """
    _require_prime(p)
    if N == 5 and p < 7:
        raise ValueError("level 5 Heun form is stated for p >= 7")
    if N == 7 and not (p == 5 or p >= 11):
        raise ValueError("level 7 Heun form is stated for p = 5 or p >= 11")
    if N == 5:
        cands = [heun_candidate(5, p, s, shifted) for s in _sqrt5_choices(p)]
    elif N == 7:
        cands = [heun_candidate(7, p, None, shifted)]
    else:
        raise ValueError("Heun forms are given for N = 5, 7")
    first = cands[0]
    notes = {
        "descends": all(c["descends"] for c in cands),
        "root_independent": all(c["poly"] == first["poly"] for c in cands),
        "tail_vanishes": all(c["tail_vanishes"] for c in cands),
        "shifted": shifted,
    }
    return SspPoly(p, f"{N}*", "heun", first["poly"], notes)


# Apery-like numbers and squares -------------------------------------------


def apery(label: str, n: int) -> int:
    if label == "u5":
        return comb(2 * n, n) * sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))
    if label == "u7":
        return sum(comb(n, k) ** 2 * comb(2 * k, n) * comb(n + k, k) for k in range(n + 1))
    if label == "c3C":
        return comb(2 * n, n) * sum(
            (-3) ** (n - 3 * k) * comb(2 * k, k) * comb(3 * k, k) * comb(n, 3 * k)
            for k in range(n // 3 + 1)
        )
    raise ValueError(f"unknown sequence {label!r}")


def apery_sum(label: str, p: int) -> FpPoly:
    """sum_n u(n) X^{top-n} mod p, the part of the Apery square without its prefactor."""
    if label == "5*":
        m, mu = heun_exponents(5, p)
        return _descending_sum(2 * (m + mu), lambda n: apery("u5", n), p)
    if label == "7*":
        m, mu = heun_exponents(7, p)
        return _descending_sum(2 * (m + mu), lambda n: apery("u7", n), p)
    if label == "3C":
        return _descending_sum((p - 1) // 2, lambda n: apery("c3C", n), p)
    raise ValueError(f"no Apery sum for {label!r}")


def ss_square_apery(label: str, p: int) -> FpPoly:
    """Apery-number expression conjectured to equal the square of the polynomial."""
    _require_prime(p, 5)
    X = FpPoly.x(p)
    if label == "5*":
        if p < 7:
            raise ValueError("stated for p >= 7")
        mu = heun_exponents(5, p)[1]
        return (X * X - X * 44 - 16) ** mu * apery_sum(label, p)
    if label == "7*":
        if not (p == 5 or p >= 11):
            raise ValueError("stated for p = 5 or p >= 11")
        mu = heun_exponents(7, p)[1]
        return ((X + 1) * (X - 27)) ** mu * apery_sum(label, p)
    if label == "3C":
        eps = char_exponents(p).eps
        return (X ** 3 - 1728) ** eps * apery_sum(label, p)
    raise ValueError(f"no Apery square for {label!r}")


def shifted_square_3c(ss: FpPoly) -> tuple[FpPoly, FpPoly]:
    """Both sides of ss(X+12)^2 = ((X+12)^3 - 1728)^eps * apery_sum(3C).

    This is the form of the 3C Apery square that holds in the data: the sum
    lives in the variable X - 12 while the cubic prefactor does not move.
    """
    p = ss.p
    X = FpPoly.x(p)
    eps = char_exponents(p).eps
    shifted = ss.compose(X + 12)
    return shifted * shifted, ((X + 12) ** 3 - 1728) ** eps * apery_sum("3C", p)


# Polynomial identities between the constructions ---------------------------


def fricke_gamma0_relation(N: int, p: int) -> tuple[FpPoly, FpPoly]:
    """Both sides of the relation between the Fricke and Gamma_0(N) polynomials.

    N = 2: (X-64)^d f(X^2/(X-64)) = X^eps (X-128)^nu g(X)
    N = 3: (X-27)^d f(X^2/(X-27)) = X^delta (X-54)^delta g(X)
    with f the Fricke polynomial of degree d and g the Gamma_0(N) polynomial.
    """
    ce = char_exponents(p)
    f = ss_fricke_hg(N, p).poly
    g = ss_gamma0(N, p).poly
    X = FpPoly.x(p)
    if N == 2:
        lhs = homogeneous_substitute(f, X * X, X - 64)
        rhs = X ** ce.eps * (X - 128) ** ce.nu * g
    elif N == 3:
        lhs = homogeneous_substitute(f, X * X, X - 27)
        rhs = (X * (X - 54)) ** ce.delta * g
    else:
        raise ValueError("N must be 2 or 3")
    return lhs, rhs


def gamma0_legendre_relation(p: int) -> tuple[FpPoly, FpPoly]:
    """ss^(2)(Y) against Y^eps (Y-64)^m W_m(64/(64-Y)), m = [p/4]."""
    ce = char_exponents(p)
    m = p // 4
    Y = FpPoly.x(p)
    w = legendre_poly("W", m, p)
    rhs = Y ** ce.eps * homogeneous_substitute(w, FpPoly([-64], p), Y - 64, m)
    return ss_gamma0(2, p).poly, rhs


def legendre_quadratic_transform(p: int) -> tuple[FpPoly, FpPoly]:
    """W_{(p-1)/2}(X) against (1-2X)^eps W_{(p-1-2eps)/4}(4X(1-X))."""
    ce = char_exponents(p)
    X = FpPoly.x(p)
    lhs = legendre_poly("W", (p - 1) // 2, p)
    inner = X * 4 - X * X * 4
    rhs = (1 - X * 2) ** ce.eps * legendre_poly("W", (p - 1 - 2 * ce.eps) // 4, p).compose(inner)
    return lhs, rhs


def legendre_reflection(p: int) -> tuple[FpPoly, FpPoly]:
    """W_{(p-1)/2}(X) against (-1)^{(p-1)/2} W_{(p-1)/2}(1-X)."""
    X = FpPoly.x(p)
    w = legendre_poly("W", (p - 1) // 2, p)
    sign = -1 if ((p - 1) // 2) % 2 else 1
    return w, w.compose(1 - X) * sign


# Degree displays ------------------------------------------------------------


def expected_degree(label: str, p: int) -> Fraction:
    """Closed-form degree for the labels whose degree is established."""
    ce = char_exponents(p)
    if label == "level1":
        return Fraction(p // 12 + ce.delta + ce.eps)
    if label == "2*":
        return Fraction(p // 8 + ce.eps + ce.nu)
    if label == "3*":
        return Fraction(p // 6 + 2 * ce.delta)
    if label == "G0(2)":
        return Fraction(p - 1, 4) + Fraction(ce.eps, 2)
    if label == "G0(3)":
        return Fraction(p - 1, 3) + Fraction(2 * ce.delta, 3)
    raise ValueError(f"no established degree formula for {label!r}")


def first_difference(f: FpPoly, g: FpPoly) -> Optional[int]:
    """Lowest degree where f and g differ, or None if equal."""
    n = max(len(f), len(g))
    for i in range(n):
        if f[i] != g[i]:
            return i
    return None
