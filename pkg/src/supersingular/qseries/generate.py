"""Exact q-expansions of the normalized Hauptmoduls of the Fricke groups.

For a prime level N the Hauptmodul t of Gamma_0(N)+ is a quotient G/F of
two modular forms of equal weight that are both eigenforms of the Fricke
involution with the same eigenvalue.  F is a power of (eta(tau)eta(N tau))^b,
whose only zero is at the cusp, and G is the unique form in that eigenspace
whose expansion agrees with q^{-1} F through order ord(F).  The eigenspace
is spanned by symmetrized monomials in

    A = N E_2(N tau) - E_2(tau),  eta-product B,  E_4, E_4(N tau), E_6, E_6(N tau)

using the Fricke images  A -> -A,  B -> i^{-b} B,  E_4 <-> N^{+-2} E_4(N tau),
E_6 <-> N^{+-3} E_6(N tau).  Everything is exact: linear algebra over Q and
integer series.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np

from .modforms import divisor_sum, eta_product_series
from .series import StructuralError

_WORK_PRIME = (1 << 61) - 1


def _eis(k: int, c: int, n: int, scale: int = 1) -> list[int]:
    out = [0] * n
    out[0] = 1
    m = 1
    while m * scale < n:
        out[m * scale] = c * divisor_sum(m, k)
        m += 1
    return out


def _mul(a: list, b: list, n: int) -> list:
    return list(np.convolve(np.array(a[:n], dtype=object), np.array(b[:n], dtype=object))[:n])


def _weights_exponents(weight: int, gen_weights: list[int]):
    """All exponent tuples with the given total weight."""
    ranges = [range(weight // w + 1) for w in gen_weights]
    for ex in product(*ranges):
        if sum(e * w for e, w in zip(ex, gen_weights)) == weight:
            yield ex


def _rank_mod(rows: list[list[int]], ncols: int) -> tuple[int, list[int]]:
    """Rank mod a large prime of the first ncols columns and a maximal independent row subset."""
    P = _WORK_PRIME
    basis: list[tuple[int, list[int]]] = []  # (pivot, reduced row)
    chosen = []
    for idx, row in enumerate(rows):
        r = [x % P for x in row[:ncols]]
        for piv, brow in basis:
            if r[piv]:
                f = r[piv]
                r = [(x - f * y) % P for x, y in zip(r, brow)]
        nz = next((i for i, x in enumerate(r) if x), None)
        if nz is None:
            continue
        inv = pow(r[nz], P - 2, P)
        r = [x * inv % P for x in r]
        basis.append((nz, r))
        chosen.append(idx)
    return len(basis), chosen


def _solve_exact(matrix: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve the square system matrix^T x = rhs over Q (columns are the vectors)."""
    n = len(matrix)
    # rows of the linear system: equation for coefficient position c
    aug = [[Fraction(matrix[i][c]) for i in range(n)] + [Fraction(rhs[c])] for c in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def fricke_hauptmodul(N: int, precision: int, max_power: int = 12) -> list[int]:
    """Coefficients of q^-1 .. q^precision of the Hauptmodul of Gamma_0(N)+
    with constant term 0, for a prime N."""
    b0 = 2
    while (b0 * (N + 1)) % 24:
        b0 += 2
    ord_b = b0 * (N + 1) // 24
    eps_b = 1 if b0 % 4 == 0 else -1
    gen_weights = [2, b0, 4, 4, 6, 6]
    for k in range(1, max_power + 1):
        weight = k * b0
        nu = k * ord_b
        eps = eps_b ** k
        n = nu + precision + 2  # columns q^0 .. q^{nu+precision+1}
        e2, e2n = _eis(1, -24, n), _eis(1, -24, n, N)
        A = [N * x - y for x, y in zip(e2n, e2)]
        eta_part = eta_product_series(1, b0, n).coeffs
        eta_part = eta_part + [0] * (n - len(eta_part))
        eta_n = eta_product_series(N, b0, n)
        eta_n = [eta_n[i] for i in range(n)]
        B = [0] * ord_b + _mul(eta_part, eta_n, n - ord_b)
        gens = [A, B, _eis(3, 240, n), _eis(3, 240, n, N), _eis(5, -504, n), _eis(5, -504, n, N)]

        cache: dict = {}

        def mono(ex, length):
            key = (ex, length)
            if key not in cache:
                r = [1] + [0] * (length - 1)
                for g, e in zip(gens, ex):
                    for _ in range(e):
                        r = _mul(r, g[:length], length)
                cache[key] = r
            return cache[key]

        def projected(ex, length):
            a, b, c, d, e, f = ex
            wex = (a, b, d, c, f, e)
            sign = (-1) ** a * eps_b ** b * eps
            pw = 2 * c - 2 * d + 3 * e - 3 * f
            m1, m2 = mono(ex, length), mono(wex, length)
            if pw >= 0:
                return [x + sign * N ** pw * y for x, y in zip(m1, m2)]
            s = N ** (-pw)
            return [s * x + sign * y for x, y in zip(m1, m2)]

        seen = set()
        exps = []
        for ex in _weights_exponents(weight, gen_weights):
            a, b, c, d, e, f = ex
            key = tuple(sorted([ex, (a, b, d, c, f, e)]))
            if key not in seen:
                seen.add(key)
                exps.append(ex)
        short = [projected(ex, nu + 1) for ex in exps]
        rank, chosen = _rank_mod(short, nu + 1)
        if rank < nu + 1:
            continue
        F = mono((0, k, 0, 0, 0, 0), n)
        target = [0] * (nu - 1) + [1, F[nu + 1]]
        basis_short = [short[i] for i in chosen]
        coeffs = _solve_exact(basis_short, target)
        G = [Fraction(0)] * n
        for cf, idx in zip(coeffs, chosen):
            if cf:
                vec = projected(exps[idx], n)
                G = [g + cf * v for g, v in zip(G, vec)]
        # t = G / F with F = q^nu (1 + ...)
        g_shift = G[nu - 1:]
        f_shift = F[nu:]
        m = len(g_shift) - 1  # t through q^{m-2}
        t = []
        for i in range(m):
            acc = g_shift[i]
            for j in range(1, i + 1):
                acc -= f_shift[j] * t[i - j]
            t.append(acc)
        out = []
        for c in t[: precision + 2]:
            c = Fraction(c)
            if c.denominator != 1:
                raise StructuralError(f"non-integral Hauptmodul coefficient for N={N}")
            out.append(int(c))
        if out[0] != 1 or out[1] != 0:
            raise StructuralError(f"bad normalization for N={N}")
        return out
    raise StructuralError(f"no Fricke eigenspace of weight <= {max_power * b0} fit N={N}")
