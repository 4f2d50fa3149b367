"""Normalized Hauptmoduls j_N* of the Fricke groups for the fifteen
Monster primes, from eta quotients or from bundled coefficient files."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..arith import MONSTER_PRIMES
from .modforms import EtaQuotientSpec, eta_quotient
from .series import LaurentSeries, StructuralError

# Constant terms of the eta-quotient normalizations; every other level uses 0.
ETA_CONSTANTS = {2: 104, 3: 42, 5: 16, 7: 9}

# t = (eta(tau)/eta(N tau))^e,  j_N* = t + shift + scale/t
_ETA_FORMS = {
    2: (24, 128, 4096),
    3: (12, 54, 729),
    5: (6, 22, 125),
    7: (4, 13, 49),
    13: (2, 0, 13),
}


class HauptmodulDataError(StructuralError):
    pass


@dataclass(frozen=True)
class HauptmodulRecord:
    N: int
    constant_term: int
    series: LaurentSeries
    source: str

    @property
    def precision(self) -> int:
        return self.series.prec


def declared_constant(N: int) -> int:
    return ETA_CONSTANTS.get(N, 0)


def hauptmodul_from_eta(N: int, precision: int) -> HauptmodulRecord:
    """Eta-quotient construction (levels 2, 3, 5, 7 and, as a cross-check, 13)."""
    if N not in _ETA_FORMS:
        raise ValueError(f"no eta-quotient formula for level {N}")
    e, shift, scale = _ETA_FORMS[N]
    t = eta_quotient(EtaQuotientSpec(((1, e), (N, -e))), precision)
    inv = eta_quotient(EtaQuotientSpec(((1, -e), (N, e))), precision)
    series = t + shift + inv * scale
    # fix the constant at its declared normalization
    series = series + (declared_constant(N) - series[0])
    return HauptmodulRecord(N, declared_constant(N), series, "eta")


def data_dir() -> Path:
    return Path(str(resources.files("supersingular") / "data" / "hauptmodul"))


def data_path(N: int) -> Path:
    return data_dir() / f"N{N}.txt"


def read_data_file(path: Path, N: int | None = None, need: int = 0) -> HauptmodulRecord:
    try:
        lines = Path(path).read_text().split("\n")
    except FileNotFoundError:
        raise HauptmodulDataError(
            f"Hauptmodul data file for N={N} missing at {path} (need precision {need})"
        ) from None
    header = lines[0].split()
    fields = dict(zip(header[0::2], header[1::2]))
    try:
        n_file = int(fields["N"])
        const = int(fields["const"])
        prec = int(fields["prec"])
        source = " ".join(header[header.index("source") + 1:])
    except (KeyError, ValueError):
        raise HauptmodulDataError(f"malformed header in {path}: {lines[0]!r}") from None
    if N is not None and n_file != N:
        raise HauptmodulDataError(f"{path} holds level {n_file}, expected {N}")
    body = [ln.strip() for ln in lines[1:] if ln.strip()]
    if len(body) < prec + 2:
        raise HauptmodulDataError(
            f"Hauptmodul data for N={n_file} is short: {len(body)} coefficients, header says {prec + 2}"
        )
    if prec < need:
        raise HauptmodulDataError(
            f"Hauptmodul data for N={n_file} has precision {prec}, need {need}"
        )
    coeffs = [int(x) for x in body[: prec + 2]]
    if coeffs[0] != 1 or coeffs[1] != const:
        raise HauptmodulDataError(f"Hauptmodul data for N={n_file} is not normalized as declared")
    return HauptmodulRecord(n_file, const, LaurentSeries(-1, coeffs, prec), f"datafile:{source}")


def write_data_file(path: Path, N: int, coeffs: list[int], const: int, source: str) -> None:
    """coeffs run over q^-1 .. q^K."""
    prec = len(coeffs) - 2
    lines = [f"N {N} const {const} prec {prec} source {source}"] + [str(c) for c in coeffs]
    tmp = Path(str(path) + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


@lru_cache(maxsize=None)
def _load_bundled(N: int) -> HauptmodulRecord:
    return read_data_file(data_path(N), N)


def hauptmodul(N: int, precision: int) -> HauptmodulRecord:
    """j_N* through q^precision: eta quotients for N <= 7, bundled data otherwise."""
    if N not in MONSTER_PRIMES:
        raise ValueError(f"level {N} is not one of the Monster primes")
    if N in ETA_CONSTANTS:
        return hauptmodul_from_eta(N, precision)
    rec = _load_bundled(N)
    if rec.precision < precision:
        raise HauptmodulDataError(
            f"Hauptmodul data for N={N} has precision {rec.precision}, need {precision}"
        )
    return HauptmodulRecord(N, rec.constant_term, rec.series.truncate(precision), rec.source)


def bundled_hauptmodul(N: int) -> HauptmodulRecord:
    return _load_bundled(N)
