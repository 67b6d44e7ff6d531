"""Command-line front end.

Every subcommand reads its inputs from flags, from a positional file, or from
``-`` (standard input). Exit status: 0 when every check passes, 1 when a
mathematical check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Sequence

from .. import blowup as bl
from .. import numerics as nm
from ..algebra import MPoly, RationalFunction
from ..dicritical import classify
from ..errors import DomainError, FoliakitError
from ..foliation import (DarbouxFunction, VectorField, darboux_residual, independence_witness,
                         is_first_integral, lie_derivative)
from ..singular import (baum_bott_global_check, eigenvalue_ratio_rationality, linear_part,
                        singular_locus_on_curve)
from ..univariate import QuadraticSurd
from .formats import FormatError, parse_factored_pair, parse_job_file, parse_ledger, split_vars
from .parser import parse_function

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2

COMMANDS = ("verify-integral", "independence", "blowup", "singular", "baum-bott",
            "classify-dicritical", "trace", "conjugacy")
FILE_COMMANDS = ("baum-bott", "classify-dicritical")
FORMATS = ("json", "csv", "plain")
DEFAULT_TOL = {"trace": nm.DEFAULT_DRIFT_TOL, "conjugacy": 1e-10}


class InputError(ValueError):
    pass


@dataclass
class JobConfig:
    command: str
    vars: tuple = ("x", "y", "z")
    field: tuple | None = None
    integrals: tuple = ()
    chart: str | None = None
    point: tuple | None = None
    curve: tuple | None = None
    start: tuple | None = None
    direction: complex = 1
    step: float = nm.DEFAULT_STEP
    n_steps: int = 1000
    escape: float = nm.DEFAULT_ESCAPE
    tol: float | None = None
    grid: tuple = (20, 20, 5)
    format: str = "plain"
    document: str | None = None  # factored-pair or ledger text

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise InputError(f"format must be one of {', '.join(FORMATS)}")
        if self.format == "csv" and self.command not in ("trace", "conjugacy"):
            raise InputError("csv output is only available for trace and conjugacy")
        for name in ("step", "escape", "tol"):
            val = getattr(self, name)
            if val is not None and not (val > 0 and math.isfinite(val)):
                raise InputError(f"{name.replace('_', '-')} must be positive, got {val}")
        if self.n_steps < 1:
            raise InputError(f"n-steps must be positive, got {self.n_steps}")
        if len(self.grid) != 3 or any(g < 1 for g in self.grid):
            raise InputError("grid takes three positive counts nx,nt,nz")
        if self.tol is None:
            self.tol = DEFAULT_TOL.get(self.command, 0.0) or None

    @classmethod
    def from_mapping(cls, command: str, raw: dict) -> "JobConfig":
        """Build from string values (job files and flags); unknown keys are rejected."""
        known = {f.name for f in fields(cls)} - {"command", "document"}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise InputError(f"unknown key(s): {', '.join(unknown)}")
        kw = {}
        for key, val in raw.items():
            if val is None:
                continue
            try:
                kw[key] = _CONVERT[key](val)
            except (ValueError, TypeError) as exc:
                raise InputError(f"bad value for {key}: {exc}") from None
        return cls(command, **kw)


def _split(text, sep=","):
    if isinstance(text, (list, tuple)):
        return tuple(text)
    return tuple(p.strip() for p in text.split(sep) if p.strip())


def _integrals(val):
    if isinstance(val, (list, tuple)):
        out = []
        for v in val:
            out.extend(_split(v, ";"))
        return tuple(out)
    return _split(val, ";")


def _positive_int(text) -> int:
    n = int(text)
    if n < 1:
        raise ValueError(f"expected a positive integer, got {text}")
    return n


_CONVERT = {
    "vars": lambda v: split_vars(v) if isinstance(v, str) else tuple(v),
    "field": _split,
    "integrals": _integrals,
    "chart": str,
    "point": lambda v: tuple(Fraction(p) for p in _split(v)),
    "curve": _split,
    "start": lambda v: tuple(complex(p.replace("i", "j")) for p in _split(v)),
    "direction": lambda v: complex(str(v).replace("i", "j")),
    "step": float,
    "n_steps": int,
    "escape": float,
    "tol": float,
    "grid": lambda v: tuple(_positive_int(p) for p in _split(v)),
    "format": str,
}


@dataclass
class Outcome:
    code: int
    output: str = ""
    messages: list = field(default_factory=list)


# -- helpers -----------------------------------------------------------------------

def _field(cfg: JobConfig) -> VectorField:
    if not cfg.field:
        raise InputError("this command needs a vector field (--field 'a, b, c')")
    if len(cfg.field) != len(cfg.vars):
        raise InputError(f"field has {len(cfg.field)} components for {len(cfg.vars)} variables")
    comps = []
    for text in cfg.field:
        p = parse_function(text, cfg.vars)
        if not isinstance(p, MPoly):
            raise InputError(f"field component {text!r} is not a polynomial")
        comps.append(p)
    return VectorField(comps)


def _functions(cfg: JobConfig, needed: int | None = None) -> list:
    if needed is not None and len(cfg.integrals) != needed:
        raise InputError(f"this command needs exactly {needed} function(s) (--integral), got {len(cfg.integrals)}")
    return [parse_function(t, cfg.vars) for t in cfg.integrals]


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, complex):
        return {"im": _jsonable(obj.imag), "re": _jsonable(obj.real)}
    if isinstance(obj, (MPoly, RationalFunction, DarbouxFunction, QuadraticSurd)):
        return str(obj)
    if isinstance(obj, VectorField):
        return [str(c) for c in obj.components]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)


def _dump(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2) + "\n"


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _num(v) -> str:
    if isinstance(v, complex):
        return repr(v.real) if v.imag == 0 else f"{v.real!r}{'+' if v.imag >= 0 else '-'}{abs(v.imag)!r}i"
    return str(v)


# -- subcommands ---------------------------------------------------------------------

def _verify_integral(cfg: JobConfig) -> Outcome:
    v = _field(cfg)
    funcs = _functions(cfg)
    if not funcs:
        raise InputError("verify-integral needs at least one --integral")
    rows = []
    for text, f in zip(cfg.integrals, funcs):
        ok = is_first_integral(v, f)
        if isinstance(f, DarbouxFunction) and not f.is_rational():
            residual = darboux_residual(v, f)
        else:
            residual = lie_derivative(v, f.prefactor if isinstance(f, DarbouxFunction) else f)
        rows.append({"integral": str(f), "input": text, "first_integral": ok, "residual": str(residual)})
    code = EXIT_OK if all(r["first_integral"] for r in rows) else EXIT_FAILED
    if cfg.format == "json":
        return Outcome(code, _dump({"field": v, "results": rows}))
    lines = []
    for r in rows:
        verdict = "exact zero Lie derivative" if r["first_integral"] else f"nonzero Lie derivative: {r['residual']}"
        lines.append(f"{r['integral']}: {verdict}")
    return Outcome(code, "\n".join(lines) + "\n")


def _independence(cfg: JobConfig) -> Outcome:
    f, g = _functions(cfg, 2)
    verdict = independence_witness(f, g)
    code = EXIT_OK if verdict.independent else EXIT_FAILED
    if cfg.format == "json":
        return Outcome(code, _dump({"independent": verdict.independent,
                                    "minor": list(verdict.minor) if verdict.minor else None,
                                    "value": verdict.value}))
    return Outcome(code, str(verdict) + "\n")


def _blowup(cfg: JobConfig) -> Outcome:
    chart = bl.get_chart(cfg.chart or "z-axis-xtz")
    if cfg.vars != chart.source_vars:
        raise InputError(f"chart {chart.name} needs variables {','.join(chart.source_vars)}")
    funcs = _functions(cfg)
    v = _field(cfg) if cfg.field else None
    if v is None and not funcs:
        raise InputError("blowup needs a field (--field) or a function (--integral)")
    pulled = [bl.pullback_function(chart, f) for f in funcs]
    doc = {"chart": chart.name, "binding": [str(b) for b in chart.binding],
           "functions": [{"multiplicity": p.multiplicity, "reduced": p.reduced, "total": p.total}
                         for p in pulled]}
    lines = []
    for p in pulled:
        lines += [str(p.reduced), f"multiplicity: {p.multiplicity}"]
    code = EXIT_OK
    if v is not None:
        fp = bl.pullback_vector_field(chart, v)
        invariant = bl.is_divisor_invariant(fp.saturated, chart)
        checks = [is_first_integral(fp.saturated, p.total) for p in pulled]
        if not all(checks):
            code = EXIT_FAILED
        doc["field"] = {"multiplicity": fp.multiplicity, "saturated": fp.saturated,
                        "divisor_invariant": invariant, "integrals_preserved": checks}
        lines += [f"field: {fp.saturated}", f"field multiplicity: {fp.multiplicity}",
                  f"divisor invariant: {_yes(invariant)}"]
        for p, ok in zip(pulled, checks):
            lines.append(f"{p.total} first integral of the saturated field: {_yes(ok)}")
    if cfg.format == "json":
        return Outcome(code, _dump(doc))
    return Outcome(code, "\n".join(lines) + "\n")


def _singular(cfg: JobConfig) -> Outcome:
    v = _field(cfg)
    if (cfg.point is None) == (cfg.curve is None):
        raise InputError("singular needs exactly one of --point or --curve")
    if cfg.curve is not None:
        if len(cfg.curve) != len(cfg.vars):
            raise InputError(f"curve needs {len(cfg.vars)} coordinates")
        param = "s"
        binding = {}
        for var, text in zip(cfg.vars, cfg.curve):
            p = parse_function(text, (param,))
            if not isinstance(p, MPoly):
                raise InputError(f"curve coordinate {text!r} is not a polynomial in s")
            binding[var] = p
        locus = singular_locus_on_curve(v, binding, param)
        if cfg.format == "json":
            return Outcome(EXIT_OK, _dump({"everywhere": locus.everywhere, "roots": list(locus.roots),
                                           "residual": list(locus.residual) if locus.residual else None}))
        return Outcome(EXIT_OK, str(locus) + "\n")
    if len(cfg.point) != len(cfg.vars):
        raise InputError(f"point needs {len(cfg.vars)} coordinates")
    try:
        rep = linear_part(v, cfg.point)
    except DomainError as exc:
        return Outcome(EXIT_FAILED, "", [str(exc)])
    ratios = eigenvalue_ratio_rationality(rep)
    if cfg.format == "json":
        return Outcome(EXIT_OK, _dump({"point": rep.point, "linear_part": rep.linear_part,
                                       "eigenvalues": rep.eigenvalues, "simple": rep.simple,
                                       "ratio_check": str(ratios)}))
    lines = ["point: (" + ", ".join(str(c) for c in rep.point) + ")",
             "linear part:"]
    lines += ["  " + " ".join(str(e) for e in row) for row in rep.linear_part]
    lines += ["eigenvalues: " + ", ".join(_num(e) for e in rep.eigenvalues),
              f"simple: {_yes(rep.simple)}",
              f"eigenvalue ratios: {ratios}"]
    return Outcome(EXIT_OK, "\n".join(lines) + "\n")


def _baum_bott(cfg: JobConfig) -> Outcome:
    ledger = parse_ledger(_document(cfg))
    check = baum_bott_global_check(ledger)
    code = EXIT_OK if check.consistent else EXIT_FAILED
    if cfg.format == "json":
        doc = {k.name: getattr(check, k.name) for k in fields(check)}
        doc["labels"] = [e[0] for e in ledger.entries]
        doc["consistent"] = check.consistent
        return Outcome(code, _dump(doc))
    return Outcome(code, str(check) + "\n")


def _classify(cfg: JobConfig) -> Outcome:
    fp = parse_factored_pair(_document(cfg), cfg.vars)
    verdict = classify(fp)
    if cfg.format == "json":
        w = verdict.witness
        return Outcome(EXIT_OK, _dump({
            "case": verdict.case.value, "dicritical": verdict.dicritical, "reason": verdict.reason,
            "surface": w.surface if w else None,
            "witness": w.as_rational_function() if w else None,
            "witness_kind": w.kind.value if w else None}))
    return Outcome(EXIT_OK, str(verdict) + "\n")


def _trace(cfg: JobConfig) -> Outcome:
    v = _field(cfg)
    if cfg.start is None:
        raise InputError("trace needs a start point (--start)")
    funcs = _functions(cfg)
    traj = nm.trace_leaf(v, cfg.start, cfg.direction, cfg.step, cfg.n_steps, cfg.escape)
    messages = []
    if traj.escaped:
        messages.append(f"trajectory left the polydisc of radius {cfg.escape} after {len(traj) - 1} steps")
    drifts = []
    for text, f in zip(cfg.integrals, funcs):
        rep = nm.conservation_drift(traj, f)
        if not rep.complete:
            messages.append(f"{text}: a denominator fell below {nm.DENOMINATOR_FLOOR} at sample "
                            f"{rep.warning_index}; drift measured up to there")
        drifts.append((str(f), rep))
    code = EXIT_OK if all(r.max_drift <= cfg.tol for _, r in drifts) else EXIT_FAILED
    if cfg.format == "csv":
        out = nm.trajectory_csv(traj, v.vars, {name: f for (name, _), f in zip(drifts, funcs)})
        if drifts:
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["integral", "max_drift", "warning_index"])
            for name, rep in drifts:
                w.writerow([name, repr(rep.max_drift), "" if rep.complete else rep.warning_index])
            out += "\n" + buf.getvalue()
        return Outcome(code, out, messages)
    drift_doc = {name: {"max_drift": rep.max_drift, "warning_index": rep.warning_index} for name, rep in drifts}
    if cfg.format == "json":
        return Outcome(code, _dump({"samples": len(traj), "escaped": traj.escaped, "final": traj.final,
                                    "drift": drift_doc, "tol": cfg.tol}), messages)
    lines = [f"samples: {len(traj)}", f"escaped: {_yes(traj.escaped)}",
             "final: (" + ", ".join(_num(c) for c in traj.final) + ")"]
    lines += [f"drift of {name}: {rep.max_drift!r}" for name, rep in drifts]
    return Outcome(code, "\n".join(lines) + "\n", messages)


def _conjugacy(cfg: JobConfig) -> Outcome:
    pts = nm.conjugacy_grid(*cfg.grid)
    rows = [nm.conjugacy_identity_residuals(p) for p in pts]
    worst_g = max(r.rel_g for r in rows)
    worst_h = max(r.rel_h for r in rows)
    bound_ok = all(r.phi3_gap <= r.bound for r in rows)
    axis_ok = all(nm.eval_conjugacy(p).phi3 == complex(p[2]) for p in pts if p[0] == 0)
    ok = worst_g <= cfg.tol and worst_h <= cfg.tol and bound_ok and axis_ok
    code = EXIT_OK if ok else EXIT_FAILED
    if cfg.format == "csv":
        return Outcome(code, nm.residual_table_csv(pts, rows))
    summary = {"points": len(pts), "max_rel_g": worst_g, "max_rel_h": worst_h,
               "phi3_bound_ok": bound_ok, "phi3_exact_on_axis": axis_ok, "tol": cfg.tol}
    if cfg.format == "json":
        return Outcome(code, _dump(summary))
    lines = [f"points: {len(pts)}", f"max relative residual G: {worst_g!r}",
             f"max relative residual H: {worst_h!r}", f"phi3 bound holds: {_yes(bound_ok)}",
             f"phi3 equals z on x = 0: {_yes(axis_ok)}"]
    return Outcome(code, "\n".join(lines) + "\n")


def _document(cfg: JobConfig) -> str:
    if cfg.document is None:
        raise InputError(f"{cfg.command} needs an input file (or '-' for standard input)")
    return cfg.document


_DISPATCH = {
    "verify-integral": _verify_integral, "independence": _independence, "blowup": _blowup,
    "singular": _singular, "baum-bott": _baum_bott, "classify-dicritical": _classify,
    "trace": _trace, "conjugacy": _conjugacy,
}


def run_command(cfg: JobConfig) -> Outcome:
    """Run one job; input problems become exit code 2 with a diagnostic."""
    try:
        return _DISPATCH[cfg.command](cfg)
    except (FoliakitError, InputError, FormatError, ValueError, ZeroDivisionError) as exc:
        return Outcome(EXIT_INPUT, "", [f"{type(exc).__name__}: {exc}"])


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="foliakit", description="Exact and numeric checks for polynomial foliations.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "verify-integral": "check that candidates are first integrals of a field",
        "independence": "decide functional independence of two functions",
        "blowup": "pull functions and fields back through a blow-up chart",
        "singular": "linear part at a singular point, or singular locus on a curve",
        "baum-bott": "global Baum-Bott index check from a ledger file",
        "classify-dicritical": "dicritical invariant surfaces from a factored pair file",
        "trace": "RK4 leaf tracing with conservation drift",
        "conjugacy": "pointwise residuals of the blown-up conjugacy on a grid",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("input", nargs="?", help="job file, data file, or '-' for standard input")
        p.add_argument("--vars", help="ordered variable list (default x,y,z)")
        p.add_argument("--format", choices=FORMATS)
        p.add_argument("--out", help="write the result here instead of standard output")
        if name not in FILE_COMMANDS and name != "conjugacy":
            p.add_argument("--field", help="comma-separated field components")
            p.add_argument("--integral", action="append", dest="integrals", metavar="EXPR",
                           help="candidate function (repeatable)")
        if name == "blowup":
            p.add_argument("--chart", help=f"one of {', '.join(bl.CHARTS)}")
        if name == "singular":
            p.add_argument("--point", help="comma-separated rational coordinates")
            p.add_argument("--curve", help="comma-separated coordinates as polynomials in s")
        if name == "trace":
            p.add_argument("--start", help="comma-separated complex coordinates")
            p.add_argument("--direction", help="unit complex number giving the time ray")
            p.add_argument("--step", type=float)
            p.add_argument("--n-steps", type=int, dest="n_steps")
            p.add_argument("--escape", type=float)
        if name == "conjugacy":
            p.add_argument("--grid", help="nx,nt,nz (default 20,20,5)")
        if name in ("trace", "conjugacy"):
            p.add_argument("--tol", type=float)
    return ap


_NON_JOB = {"command", "input", "out"}


def _config_from_args(args, stdin) -> JobConfig:
    raw = {}
    text = None
    if args.input is not None:
        text = stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    if args.command in FILE_COMMANDS:
        document = text
    else:
        document = None
        if text is not None:
            raw.update(parse_job_file(text))
            if "integral" in raw:
                raw["integrals"] = raw.pop("integral")
    for key, val in vars(args).items():
        if key not in _NON_JOB and val is not None:
            raw[key] = val
    if "format" not in raw:
        raw["format"] = "csv" if args.command in ("trace", "conjugacy") else "plain"
    cfg = JobConfig.from_mapping(args.command, raw)
    cfg.document = document
    return cfg


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = _config_from_args(args, stdin)
    except (OSError, ValueError, FoliakitError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    result = run_command(cfg)
    for msg in result.messages:
        print(("error: " if result.code == EXIT_INPUT else "warning: ") + msg, file=stderr)
    if result.output:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(result.output)
        else:
            stdout.write(result.output)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
