"""Slow, independent reference implementations used only by the tests."""

import numpy as np


def sylvester_resultant(f, g, p):
    """Res(f, g) of two coefficient lists (low degree first) via the Sylvester matrix mod p."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + f[::-1] + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + g[::-1] + [0] * (size - n - 1 - i))
    det = 1
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col] % p
        inv = pow(rows[col][col], p - 2, p)
        for r in range(col + 1, size):
            factor = rows[r][col] * inv % p
            if factor:
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[col])]
    return det % p


def brute_class_number(D):
    """Reduced primitive forms of discriminant D, scanning every a in 1..|D| and every |b| <= a."""
    count = 0
    for a in range(1, -D + 1):
        b = np.arange(-a, a + 1, dtype=np.int64)
        num = b * b - D
        ok = num % (4 * a) == 0
        c = num // (4 * a)
        reduced = ok & (np.abs(b) <= a) & (a <= c)
        # boundary cases take b >= 0
        reduced &= ~(((np.abs(b) == a) | (a == c)) & (b < 0))
        g = np.gcd(np.gcd(a, b), c)
        count += int(np.sum(reduced & (g == 1)))
    return count
