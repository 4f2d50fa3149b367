"""Command-line entry point: ``supersingular <command> ...``.

Exit codes: 0 success, 1 a theorem-kind check failed, 2 usage error,
3 structural error (corrupt data or cache files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

from . import ssp, verify
from .arith import MONSTER_PRIMES, is_prime
from .classnum import class_number, is_squarefree
from .fppoly import count_linear_factors, format_factored, format_poly, split_factors
from .qseries.series import StructuralError

EXIT_OK, EXIT_THEOREM, EXIT_USAGE, EXIT_STRUCTURAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    pmin: Optional[int] = None
    pmax: Optional[int] = None
    levels: Optional[tuple[int, ...]] = None
    fmt: str = "text"
    cache_dir: Optional[Path] = None
    prec: Optional[int] = None
    jobs: int = 1
    full: bool = False

    def validate(self) -> None:
        if self.pmin is not None and self.pmax is not None and self.pmin > self.pmax:
            raise UsageError(f"empty prime range {self.pmin}..{self.pmax}")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if self.levels is not None:
            bad = [N for N in self.levels if N not in MONSTER_PRIMES]
            if bad:
                raise UsageError(f"levels must be Monster primes, got {bad}")


def default_cache_dir() -> Path:
    env = os.environ.get("SUPERSINGULAR_CACHE")
    if env:
        return Path(env)
    return Path(os.path.expanduser("~")) / ".cache" / "supersingular"


def _ensure_writable(path: Path) -> Path:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise UsageError(f"cannot create cache directory {path}: {exc}") from None
    if not os.access(path, os.W_OK):
        raise UsageError(f"cache directory {path} is not writable")
    return path


def _emit(obj, fmt: str, out) -> None:
    if fmt == "text":
        out.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        out.write(json.dumps(obj) + "\n")


# ssp -----------------------------------------------------------------------------------


def _build_ssp(label: str, p: int, route: Optional[str]):
    """(SspPoly, resultant or None)"""
    if label == "level1":
        return ssp.ss_level1(p), None
    if label in ("G0(2)", "G0(3)"):
        N = int(label[3])
        if route == "binomial":
            return ssp.ss_binomial(N, p), None
        return ssp.ss_gamma0(N, p), None
    if label in ("2*", "3*") and route in (None, "hypergeometric") and p >= 5:
        return ssp.ss_fricke_hg(int(label[0]), p), None
    if label in ("5*", "7*") and route == "heun":
        return ssp.ss_heun(int(label[0]), p), None
    V, poly = ssp.ss_resultant(label, p)
    return poly, V


def _poly_record(f, var: str) -> dict:
    factors = split_factors(f)
    return {
        "degree": f.degree,
        "coefficients": list(reversed(f.coeffs())),
        "text": format_poly(f, var),
        "factored": format_factored(factors, var) if factors is not None else None,
        "factors": None if factors is None else [
            {"coefficients": list(reversed(g.coeffs())), "multiplicity": k} for g, k in factors
        ],
    }


def cmd_ssp(args, cfg: CliConfig, out) -> int:
    p = args.p
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    try:
        poly, V = _build_ssp(args.label, p, args.route)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    var = "X" if args.label in ("level1", "G0(2)", "G0(3)") else "Y"
    rec = {"label": args.label, "p": p, "route": poly.route, "notes": verify._jsonable(poly.notes)}
    rec.update(_poly_record(poly.poly, var))
    rec["linear_factors"] = count_linear_factors(poly.poly)
    if V is not None:
        rec["resultant"] = _poly_record(V.monic(), var)
    if cfg.fmt != "text":
        _emit(rec, "json", out)
        return EXIT_OK
    lines = [f"ss_{p}^({args.label}) via {poly.route}: degree {rec['degree']}, {rec['linear_factors']} linear factors",
             f"  coefficients (descending): {rec['coefficients']}",
             f"  {rec['text']}"]
    if rec["factored"] is not None:
        lines.append(f"  = {rec['factored']}")
    if V is not None:
        r = rec["resultant"]
        lines.append(f"  resultant (monic): {r['factored'] or r['text']}")
    _emit("\n".join(lines), "text", out)
    return EXIT_OK


def cmd_classnum(args, cfg: CliConfig, out) -> int:
    d = args.d
    if d < 1 or not is_squarefree(d):
        raise UsageError("d must be a positive squarefree integer")
    h = class_number(d)
    if cfg.fmt == "text":
        _emit(str(h), "text", out)
    else:
        _emit({"d": d, "h": h}, "json", out)
    return EXIT_OK


def _yfmt(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mon = "" if i == 0 else ("Y" if i == 1 else f"Y^{i}")
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def cmd_rn(args, cfg: CliConfig, out) -> int:
    from .qseries import relations

    label = args.N
    cache = _ensure_writable(cfg.cache_dir or default_cache_dir())
    pc = cfg.prec or relations.DEFAULT_PRECISION_CHECK
    if label.upper() == "3C":
        R = relations.build_R3C(pc)
        rows = {i: list(c) for i, c in enumerate(R.x_coeffs)}
        if cfg.fmt == "text":
            for i in sorted(rows, reverse=True):
                _emit(f"X^{i}: {_yfmt(rows[i])}", "text", out)
        else:
            _emit({"label": "3C", "x_coeffs": [[str(c) for c in rows[i]] for i in sorted(rows)]}, "json", out)
        return EXIT_OK
    try:
        N = int(label)
    except ValueError:
        raise UsageError(f"level must be a Monster prime or 3C, got {label!r}") from None
    if N not in MONSTER_PRIMES:
        raise UsageError(f"level must be a Monster prime, got {N}")
    R = relations.build_RN(N, precision_check=pc, cache_dir=cache)
    a, b = relations.a_b_of(R)
    if cfg.fmt == "text":
        _emit(f"R_{N}(X, Y) = X^2 - a_{N}(Y) X + b_{N}(Y)\n"
              f"a_{N} = {_yfmt(a)}\nb_{N} = {_yfmt(b)}", "text", out)
    else:
        _emit({"N": N, "a": [str(c) for c in a], "b": [str(c) for c in b],
               "cache": str(relations.cache_path(N, cache))}, "json", out)
    return EXIT_OK


def _series_by_name(name: str, prec: int):
    from .qseries import eisenstein_combo, hauptmodul, j_series, j_series_eta
    from .qseries.modforms import delta_series

    if name == "j":
        return j_series(prec)
    if name == "j_eta":
        return j_series_eta(prec)
    if name == "delta":
        return delta_series(prec)
    if name.startswith("j") and name.endswith("*") and name[1:-1].isdigit():
        return hauptmodul(int(name[1:-1]), prec).series
    try:
        return eisenstein_combo(name, prec)
    except ValueError:
        raise UsageError(f"unknown series {name!r}") from None


def cmd_series(args, cfg: CliConfig, out) -> int:
    if args.prec < 0:
        raise UsageError("precision must be nonnegative")
    s = _series_by_name(args.name, args.prec)
    lo = min(s.val, 0) if s.coeffs else 0
    coeffs = s.coefficient_list(lo, args.prec)
    if cfg.fmt == "text":
        _emit(" ".join(f"{c}" for c in coeffs) + f"    (q^{lo} .. q^{args.prec})", "text", out)
    else:
        _emit({"name": args.name, "first_exponent": lo, "coefficients": [str(c) for c in coeffs]}, "json", out)
    return EXIT_OK


# verify / report ---------------------------------------------------------------------------


def _domain_for(check_id: str, cfg: CliConfig) -> verify.Domain:
    dom = verify.resolve_domain(check_id, None, cfg.full)
    changes = {}
    if cfg.pmin is not None:
        changes["pmin"] = cfg.pmin
    if cfg.pmax is not None:
        changes["pmax"] = cfg.pmax
    if cfg.levels is not None:
        changes["levels"] = cfg.levels
    return replace(dom, **changes) if changes else dom


def _row_line(r: verify.CheckReport, kind: str) -> str:
    tag = {verify.PASS: "ok  ", verify.SKIP: "skip"}.get(r.verdict, "FAIL" if kind == "theorem" else "WARN")
    bits = [tag, r.check_id]
    for name in ("p", "N", "case", "deg", "L", "lhs", "rhs"):
        v = getattr(r, name)
        if v not in (None, ""):
            v = json.dumps(v) if isinstance(v, (list, dict)) else v
            bits.append(f"{name}={v}")
    if r.verdict == verify.FAIL and r.data:
        bits.append("data=" + json.dumps(verify._jsonable(r.data)))
    return " ".join(str(b) for b in bits)


def cmd_verify(args, cfg: CliConfig, out) -> int:
    ids = list(verify.CATALOG) if args.check_id == "all" else [args.check_id]
    for cid in ids:
        if cid not in verify.CATALOG:
            raise UsageError(f"unknown check {cid!r}; known: {', '.join(verify.CATALOG)}")
    if cfg.cache_dir is not None:
        from .qseries import relations

        relations.set_cache_dir(_ensure_writable(cfg.cache_dir))
    status = EXIT_OK
    all_rows = []
    for cid in ids:
        desc = verify.descriptor(cid)
        rows = verify.run_check(cid, _domain_for(cid, cfg), jobs=cfg.jobs, full=cfg.full)
        all_rows.extend(rows)
        counts = verify.summarize(rows)
        if desc.blocking and counts[verify.FAIL]:
            status = EXIT_THEOREM
        if cfg.fmt == "text":
            shown = rows if args.all_rows else [r for r in rows if r.verdict == verify.FAIL]
            for r in shown:
                _emit(_row_line(r, desc.kind), "text", out)
            verdict = "PASS" if not counts[verify.FAIL] else ("FAIL" if desc.blocking else "WARN")
            _emit(f"{verdict} {cid} [{desc.kind}] pass={counts[verify.PASS]} fail={counts[verify.FAIL]} "
                  f"skip={counts[verify.SKIP]}", "text", out)
    if cfg.fmt == "json":
        out.write(verify.rows_to_jsonl(all_rows))
    elif cfg.fmt == "csv":
        out.write(verify.rows_to_csv(all_rows))
    return status


def _summary_from_records(records: list[dict]) -> dict[str, dict]:
    table: dict[str, dict] = {}
    for rec in records:
        cid = rec.get("check_id")
        if cid is None:
            raise StructuralError("report record without check_id")
        entry = table.setdefault(cid, {verify.PASS: 0, verify.FAIL: 0, verify.SKIP: 0})
        if rec.get("summary"):
            for k in entry:
                entry[k] += int(rec.get(k, 0))
        elif "verdict" in rec:
            if rec["verdict"] not in entry:
                raise StructuralError(f"unknown verdict {rec['verdict']!r}")
            entry[rec["verdict"]] += 1
        else:
            raise StructuralError("record is neither a report row nor a summary")
    return table


def cmd_report(args, cfg: CliConfig, out) -> int:
    records = []
    for name in args.files:
        text = sys.stdin.read() if name == "-" else Path(name).read_text()
        for n, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                records.append(json.loads(line))
            except json.JSONDecodeError:
                raise StructuralError(f"{name}:{n}: not a JSON line") from None
    table = _summary_from_records(records)
    status = EXIT_OK
    for cid in sorted(table):
        kind = verify.CATALOG[cid].kind if cid in verify.CATALOG else "unknown"
        entry = table[cid]
        if kind == "theorem" and entry[verify.FAIL]:
            status = EXIT_THEOREM
        if cfg.fmt == "text":
            _emit(f"{cid:10s} {kind:12s} pass={entry[verify.PASS]:6d} fail={entry[verify.FAIL]:6d} "
                  f"skip={entry[verify.SKIP]:6d}", "text", out)
        else:
            _emit({"summary": True, "check_id": cid, "kind": kind, **entry}, "json", out)
    return status


# cache -------------------------------------------------------------------------------------


def cache_admin(action: str, cache_dir: Path) -> dict:
    """status / clear / rebuild over the R_N cache files in cache_dir."""
    from .qseries import relations

    cache_dir = Path(cache_dir)
    if action in ("status", "clear") and not cache_dir.is_dir():
        raise UsageError(f"cache directory {cache_dir} does not exist")
    files = sorted(cache_dir.glob("R*.json"), key=lambda f: f.name) if cache_dir.is_dir() else []
    levels = []
    for f in files:
        try:
            levels.append(int(f.stem[1:]))
        except ValueError:
            continue
    levels.sort()
    if action == "status":
        return {"action": action, "cache_dir": str(cache_dir), "entries": len(levels), "levels": levels}
    if action == "clear":
        _ensure_writable(cache_dir)
        for f in files:
            f.unlink()
        return {"action": action, "cache_dir": str(cache_dir), "removed": len(files), "entries": 0}
    if action == "rebuild":
        _ensure_writable(cache_dir)
        for N in levels:
            old = relations.load_cached_RN(N, cache_dir)
            relations.build_RN(N, cache_dir=cache_dir, refresh=True)
            new = relations.load_cached_RN(N, cache_dir)
            if old is not None and old.x_coeffs != new.x_coeffs:
                raise StructuralError(f"cached R_{N} disagrees with a fresh computation")
        return {"action": action, "cache_dir": str(cache_dir), "revalidated": len(levels), "levels": levels}
    raise UsageError(f"unknown cache action {action!r}")


def cmd_cache(args, cfg: CliConfig, out) -> int:
    summary = cache_admin(args.action, cfg.cache_dir or default_cache_dir())
    if cfg.fmt == "text":
        _emit(" ".join(f"{k}={v}" for k, v in summary.items()), "text", out)
    else:
        _emit(summary, "json", out)
    return EXIT_OK


# parser ------------------------------------------------------------------------------------


def _levels(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache-dir", type=Path, default=None)
    common.add_argument("--prec", type=int, default=None, help="q-series check precision for R_N")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", type=Path, default=None, help="write to a file instead of stdout")

    parser = argparse.ArgumentParser(prog="supersingular", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ssp", parents=[common], help="supersingular polynomial for a label and prime")
    sp.add_argument("label", help="level1, G0(2), G0(3), N* (N a Monster prime) or 3C")
    sp.add_argument("p", type=int)
    sp.add_argument("--route", choices=("hypergeometric", "binomial", "resultant", "heun"), default=None)
    sp.set_defaults(func=cmd_ssp)

    sp = sub.add_parser("classnum", parents=[common], help="class number of Q(sqrt(-d))")
    sp.add_argument("d", type=int)
    sp.set_defaults(func=cmd_classnum)

    sp = sub.add_parser("rn", parents=[common], help="build, cache and print R_N")
    sp.add_argument("N")
    sp.set_defaults(func=cmd_rn)

    sp = sub.add_parser("series", parents=[common], help="q-expansion of a named series")
    sp.add_argument("name", help="j, j_eta, delta, E2, E4, E6, levelN_combo, jN*")
    sp.add_argument("prec", type=int)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("verify", parents=[common], help="run a catalog check (or 'all')")
    sp.add_argument("check_id")
    sp.add_argument("--pmin", type=int, default=None)
    sp.add_argument("--pmax", type=int, default=None)
    sp.add_argument("--levels", type=_levels, default=None)
    sp.add_argument("--full", action="store_true", help="use the full proof-scale domain where defined")
    sp.add_argument("--all-rows", action="store_true", help="text mode: print passing rows too")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("report", parents=[common], help="summarize JSON-lines reports")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("cache", parents=[common], help="inspect or rebuild the R_N cache")
    sp.add_argument("action", choices=("status", "clear", "rebuild"))
    sp.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    cfg = CliConfig(
        command=args.command,
        pmin=getattr(args, "pmin", None),
        pmax=getattr(args, "pmax", None),
        levels=getattr(args, "levels", None),
        fmt=args.fmt,
        cache_dir=args.cache_dir,
        prec=args.prec,
        jobs=args.jobs,
        full=getattr(args, "full", False),
    )
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        cfg.validate()
        return args.func(args, cfg, out)
    except UsageError as exc:
        print(f"supersingular: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StructuralError as exc:
        print(f"supersingular: structural error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
