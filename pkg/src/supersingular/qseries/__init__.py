"""Exact q-series: eta quotients, Eisenstein series, j, the Hauptmoduls
j_N* and the relations R_N(j, j_N*) = 0."""

from .hauptmodul import (
    HauptmodulDataError,
    HauptmodulRecord,
    bundled_hauptmodul,
    hauptmodul,
    hauptmodul_from_eta,
)
from .modforms import (
    EtaQuotientSpec,
    eisenstein,
    eisenstein_combo,
    eta_quotient,
    j_series,
    j_series_eta,
)
from .relations import (
    BivarZ,
    build_R3C,
    build_RN,
    expand_in_hauptmodul,
    faber_reduce,
    relation,
    set_cache_dir,
    synthesize,
)
from .series import LaurentSeries, QuadraticNumber, StructuralError

__all__ = [
    "BivarZ", "EtaQuotientSpec", "HauptmodulDataError", "HauptmodulRecord", "LaurentSeries",
    "QuadraticNumber", "StructuralError", "build_R3C", "build_RN", "bundled_hauptmodul",
    "eisenstein", "eisenstein_combo", "eta_quotient", "expand_in_hauptmodul", "faber_reduce",
    "hauptmodul", "hauptmodul_from_eta", "j_series", "j_series_eta", "relation",
    "set_cache_dir", "synthesize",
]
