"""Line-oriented input files and the key/value job files.

Factored pairs::

    # comment
    vars: x, y, z          (optional, overrides --vars)
    h: z ^(2,1)
    f: y^2 - x^3 ^1
    g: x ^1

The trailing ``^n`` (or ``^(k,l)``) is mandatory and is the factor exponent.

Baum-Bott ledgers::

    degree: 1
    p1: 1 1
    p2: 1/2 2
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from ..algebra import MPoly
from ..dicritical import FactoredPair
from ..singular import BaumBottLedger
from .parser import ParseError, parse_function

_COMMON = re.compile(r"^(.*)\^\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_SINGLE = re.compile(r"^(.*)\^\s*(\d+)\s*$")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            key, sep, rest = line.partition(":")
            if not sep:
                raise FormatError(f"expected 'key: value', got {raw.strip()!r}", n)
            yield n, key.strip(), rest.strip()


def split_vars(text: str) -> tuple:
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    if not names:
        raise FormatError("empty variable list")
    if len(set(names)) != len(names):
        raise FormatError(f"repeated variable in {text!r}")
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v) or v == "exp":
            raise FormatError(f"invalid variable name {v!r}")
    return names


def _factor(expr: str, vars: tuple, n: int) -> MPoly:
    try:
        p = parse_function(expr, vars)
    except ParseError as exc:
        raise FormatError(str(exc), n) from None
    if not isinstance(p, MPoly):
        raise FormatError(f"factor {expr.strip()!r} is not a polynomial", n)
    return p


def parse_factored_pair(text: str, vars: Sequence[str] = ("x", "y", "z")) -> FactoredPair:
    vars = tuple(vars)
    common, only_f, only_g = [], [], []
    for n, key, rest in _lines(text):
        if key == "vars":
            if common or only_f or only_g:
                raise FormatError("'vars' must precede the factor lines", n)
            vars = split_vars(rest)
        elif key == "h":
            m = _COMMON.match(rest)
            if not m:
                raise FormatError("common factor lines read 'h: <expr> ^(k,l)'", n)
            common.append((_factor(m.group(1), vars, n), int(m.group(2)), int(m.group(3))))
        elif key in ("f", "g"):
            m = _SINGLE.match(rest)
            if not m:
                raise FormatError(f"'{key}' lines read '{key}: <expr> ^n'", n)
            (only_f if key == "f" else only_g).append((_factor(m.group(1), vars, n), int(m.group(2))))
        else:
            raise FormatError(f"unknown key {key!r} (expected vars, h, f or g)", n)
    return FactoredPair(common, only_f, only_g)


def parse_number(text: str):
    """Exact rational when possible ("3/2", "0.25"), otherwise complex."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise FormatError(f"not a number: {text!r}") from None


def parse_ledger(text: str) -> BaumBottLedger:
    degree = None
    entries = []
    labels = set()
    for n, key, rest in _lines(text):
        if key == "degree":
            if degree is not None:
                raise FormatError("repeated degree header", n)
            if not rest.isdigit():
                raise FormatError(f"degree must be a non-negative integer, got {rest!r}", n)
            degree = int(rest)
        elif key.startswith("p") and len(key) > 1:
            parts = rest.split()
            if len(parts) != 2:
                raise FormatError(f"expected two eigenvalues, got {len(parts)}", n)
            if key in labels:
                raise FormatError(f"repeated label {key!r}", n)
            labels.add(key)
            try:
                l1, l2 = (parse_number(p) for p in parts)
            except FormatError as exc:
                raise FormatError(str(exc), n) from None
            entries.append((key[1:], l1, l2))
        else:
            raise FormatError(f"unknown key {key!r} (expected degree or p<label>)", n)
    if degree is None:
        raise FormatError("missing 'degree: k' header")
    return BaumBottLedger(degree, entries)


def parse_job_file(text: str) -> dict:
    """Raw ``key: value`` pairs of a job file; validation happens in JobConfig."""
    out = {}
    for n, key, rest in _lines(text):
        key = key.replace("-", "_")
        if key in out:
            raise FormatError(f"repeated key {key!r}", n)
        out[key] = rest
    return out
