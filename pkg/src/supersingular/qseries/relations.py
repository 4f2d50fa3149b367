"""Integer polynomial relations between j and the Hauptmoduls j_N*."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from ..arith import MONSTER_PRIMES
from ..fppoly import FpBivar, FpPoly
from .hauptmodul import HauptmodulRecord, hauptmodul
from .modforms import j_series
from .series import LaurentSeries, StructuralError, polynomial_in_series

DEFAULT_PRECISION_CHECK = 20


@dataclass(frozen=True)
class BivarZ:
    """Integer polynomial in X, Y; x_coeffs[i] lists the Y-coefficients of X^i (low first)."""

    x_coeffs: tuple

    @property
    def x_degree(self) -> int:
        return len(self.x_coeffs) - 1

    def is_monic(self) -> bool:
        return list(self.x_coeffs[-1]) == [1]

    def mod(self, p: int) -> FpBivar:
        return FpBivar.from_integer_rows(self.x_coeffs, p)

    def at_x(self, x: int) -> list[int]:
        """Y-coefficients of R(x, Y)."""
        width = max(len(r) for r in self.x_coeffs)
        out = [0] * width
        for i, row in enumerate(self.x_coeffs):
            for k, c in enumerate(row):
                out[k] += c * x ** i
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def evaluate_series(self, X: LaurentSeries, Y: LaurentSeries) -> LaurentSeries:
        acc = None
        for row in reversed(self.x_coeffs):
            coeff = polynomial_in_series(row, Y)
            acc = coeff if acc is None else acc * X + coeff
        return acc


def faber_reduce(s: LaurentSeries, h: HauptmodulRecord | LaurentSeries,
                 precision_check: int = DEFAULT_PRECISION_CHECK) -> list[int]:
    """Integer polynomial P (coefficients low first) with s - P(h) = O(q^{precision_check+1})."""
    hs = h.series if isinstance(h, HauptmodulRecord) else h
    if hs.val != -1 or hs[-1] != 1:
        raise StructuralError("Hauptmodul must start q^-1 with coefficient 1")
    d = -s.val
    if d < 0:
        raise StructuralError("series has no pole; nothing to reduce")
    powers = [LaurentSeries.constant(1)]
    for _ in range(d):
        powers.append(powers[-1] * hs)
    rem = s
    poly = [0] * (d + 1)
    for k in range(d, -1, -1):
        c = rem[-k]
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise StructuralError(f"non-integral coefficient {c} at Y^{k}")
            c = int(c)
        if c:
            poly[k] = c
            rem = rem - powers[k] * c
    if rem.prec < precision_check:
        raise StructuralError(
            f"precision {rem.prec} insufficient to check the remainder through q^{precision_check}"
        )
    if not rem.vanishes_through(precision_check):
        raise StructuralError("remainder does not vanish: Hauptmodul data inconsistent")
    return poly


def _checksum(a: Sequence[int], b: Sequence[int], N, const) -> str:
    h = hashlib.sha256()
    h.update(json.dumps([N, const, [str(x) for x in a], [str(x) for x in b]]).encode())
    return h.hexdigest()


_cache_dir: Path | None = None
_memory: dict = {}
_lock = threading.Lock()


def set_cache_dir(path) -> None:
    """Directory for R_N cache files (None keeps results in memory only)."""
    global _cache_dir
    _cache_dir = Path(path) if path is not None else None


def get_cache_dir() -> Path | None:
    return _cache_dir


def cache_path(N: int, cache_dir: Path) -> Path:
    return Path(cache_dir) / f"R{N}.json"


def _rn_from_record(rec: dict) -> BivarZ:
    a = [int(x) for x in rec["a_coeffs"]]
    b = [int(x) for x in rec["b_coeffs"]]
    return BivarZ((tuple(b), tuple(-x for x in a), (1,)))


def load_cached_RN(N: int, cache_dir: Path, precision_check: int = 0) -> BivarZ | None:
    path = cache_path(N, cache_dir)
    if not path.exists():
        return None
    try:
        rec = json.loads(path.read_text())
    except json.JSONDecodeError:
        return None
    if rec.get("N") != N or rec.get("precision_check", -1) < precision_check:
        return None
    a = [int(x) for x in rec["a_coeffs"]]
    b = [int(x) for x in rec["b_coeffs"]]
    if _checksum(a, b, N, rec["const_term"]) != rec.get("checksum"):
        raise StructuralError(f"cache file {path} fails its checksum")
    return _rn_from_record(rec)


def write_cached_RN(N: int, cache_dir: Path, a, b, const, precision_check) -> Path:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    rec = {
        "N": N,
        "const_term": const,
        "a_coeffs": [str(x) for x in a],
        "b_coeffs": [str(x) for x in b],
        "precision_check": precision_check,
        "checksum": _checksum(a, b, N, const),
    }
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=f".R{N}.", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(rec, fh, indent=1)
    os.replace(tmp, cache_path(N, cache_dir))
    return cache_path(N, cache_dir)


def compute_RN(N: int, precision_check: int = DEFAULT_PRECISION_CHECK) -> tuple[list[int], list[int], int]:
    """(a_N, b_N, constant term of j_N*) with all checks."""
    if N not in MONSTER_PRIMES:
        raise ValueError(f"level {N} is not a Monster prime")
    prec = precision_check + N + 2
    h = hauptmodul(N, prec)
    j = j_series(prec)
    jN = j.scale(N).truncate(prec)
    a = faber_reduce(j + jN, h, precision_check)
    b = faber_reduce(j * jN, h, precision_check)
    if len(a) - 1 != N or a[-1] != 1 or len(b) - 1 != N + 1 or b[-1] != 1:
        raise StructuralError(f"R_{N}: degrees ({len(a) - 1}, {len(b) - 1}) differ from ({N}, {N + 1})")
    R = BivarZ((tuple(b), tuple(-x for x in a), (1,)))
    contraction = R.evaluate_series(j, h.series)
    if not contraction.vanishes_through(precision_check):
        raise StructuralError(f"R_{N}(j, j_N*) does not vanish through q^{precision_check}")
    return a, b, h.constant_term


def build_RN(N: int, precision_check: int = DEFAULT_PRECISION_CHECK, cache_dir=None,
             refresh: bool = False) -> BivarZ:
    """R_N(X, Y) = X^2 - a_N(Y) X + b_N(Y), memoized and optionally cached on disk."""
    cache_dir = Path(cache_dir) if cache_dir is not None else _cache_dir
    key = N
    if not refresh:
        hit = _memory.get(key)
        if hit is not None and hit[1] >= precision_check:
            R, pc, const = hit
            if cache_dir is not None and not cache_path(N, cache_dir).exists():
                a, b = a_b_of(R)
                write_cached_RN(N, cache_dir, a, b, const, pc)
            return R
        if cache_dir is not None:
            R = load_cached_RN(N, cache_dir, precision_check)
            if R is not None:
                const = json.loads(cache_path(N, cache_dir).read_text())["const_term"]
                with _lock:
                    _memory[key] = (R, precision_check, const)
                return R
    a, b, const = compute_RN(N, precision_check)
    R = BivarZ((tuple(b), tuple(-x for x in a), (1,)))
    if cache_dir is not None:
        write_cached_RN(N, cache_dir, a, b, const, precision_check)
    with _lock:
        _memory[key] = (R, precision_check, const)
    return R


def a_b_of(R: BivarZ) -> tuple[list[int], list[int]]:
    return [-x for x in R.x_coeffs[1]], list(R.x_coeffs[0])


def phi3_terms() -> list[tuple[int, int, int]]:
    text = (resources.files("supersingular") / "data" / "phi3.json").read_text()
    return [(i, k, int(c)) for i, k, c in json.loads(text)["terms"]]


def phi3_bivar() -> BivarZ:
    rows: dict[int, dict[int, int]] = {}
    for i, k, c in phi3_terms():
        rows.setdefault(i, {})[k] = c
    out = []
    for i in range(max(rows) + 1):
        row = rows.get(i, {})
        width = max(row) + 1 if row else 1
        out.append(tuple(row.get(k, 0) for k in range(width)))
    return BivarZ(tuple(out))


def check_phi3(precision_check: int = DEFAULT_PRECISION_CHECK) -> bool:
    prec = precision_check + 13
    j = j_series(prec)
    return phi3_bivar().evaluate_series(j, j.scale(3).truncate(prec)).vanishes_through(precision_check)


_r3c: list = []


def build_R3C(precision_check: int = DEFAULT_PRECISION_CHECK) -> BivarZ:
    """Phi_3(X, Y^3) after validating Phi_3(j(tau), j(3 tau)) = 0."""
    if _r3c and _r3c[0][1] >= precision_check:
        return _r3c[0][0]
    if not check_phi3(precision_check):
        raise StructuralError("bundled Phi_3 table fails the q-series check")
    rows = []
    for row in phi3_bivar().x_coeffs:
        spread = [0] * (3 * (len(row) - 1) + 1)
        for k, c in enumerate(row):
            spread[3 * k] = c
        rows.append(tuple(spread))
    R = BivarZ(tuple(rows))
    _r3c[:] = [(R, precision_check)]
    return R


def relation(label: str) -> BivarZ:
    """R for a label 'N*' or '3C'."""
    if label == "3C":
        return build_R3C()
    return build_RN(int(label.rstrip("*")))


def expand_in_hauptmodul(F: LaurentSeries, h: HauptmodulRecord | LaurentSeries, n_terms: int,
                         integral: bool = True) -> list:
    """d_0..d_{n_terms} with F = sum d_n h^{-n} + O(q^{n_terms+1})."""
    hs = h.series if isinstance(h, HauptmodulRecord) else h
    if F.val < 0:
        raise StructuralError("F must have no pole")
    if hs.val != -1 or hs[-1] != 1:
        raise StructuralError("Hauptmodul must start q^-1 with coefficient 1")
    if F.prec < n_terms or hs.prec < n_terms - 2:
        raise StructuralError("insufficient precision for the requested number of terms")
    u = hs.inverse().truncate(n_terms)
    rem = F.truncate(n_terms)
    power = LaurentSeries.constant(1, n_terms)
    out = []
    for n in range(n_terms + 1):
        c = rem[n]
        if integral:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise StructuralError(f"non-integral expansion coefficient at n={n}")
                c = int(c)
            elif not isinstance(c, int):
                raise StructuralError(f"non-rational expansion coefficient at n={n}")
        out.append(c)
        if c:
            rem = rem - power * c
        power = power * u
    return out


def synthesize(d: Sequence, h: HauptmodulRecord | LaurentSeries, precision: int) -> LaurentSeries:
    """sum d_n h^{-n} through q^precision."""
    hs = h.series if isinstance(h, HauptmodulRecord) else h
    u = hs.inverse().truncate(precision)
    return polynomial_in_series(list(d), u).truncate(precision)
