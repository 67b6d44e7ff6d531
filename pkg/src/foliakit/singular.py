"""Singular points: linear parts, eigenvalues, Baum-Bott indices and the
global index count on the projective plane."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import univariate as up
from .algebra import MPoly, as_rat
from .errors import DomainError, StructuralError
from .foliation import VectorField
from .univariate import QuadraticSurd, is_exact

RESIDUAL_TOL = 1e-9
SUM_RTOL = 1e-9


def _rat_point(point: Sequence) -> tuple:
    return tuple(as_rat(c) for c in point)


def is_singular_at(v: VectorField, point: Sequence) -> bool:
    pt = _rat_point(point)
    return all(c.evaluate(pt) == 0 for c in v.components)


@dataclass(frozen=True)
class CurveLocus:
    """Singular parameters of a field along a parametrized curve.

    ``everywhere`` means every component vanishes identically on the curve.
    Otherwise ``roots`` are the rational parameter values (with multiplicity in
    the gcd) and ``residual`` the remaining factor of the gcd without rational
    roots, if any.
    """

    everywhere: bool
    roots: tuple = ()
    residual: tuple | None = None
    gcd: tuple = ()

    def __str__(self) -> str:
        if self.everywhere:
            return "all s"
        text = "{" + ", ".join(f"s = {r}" for r in sorted(set(self.roots))) + "}"
        if self.residual:
            text += f" plus roots of {up.poly_str(self.residual)}"
        return text


def singular_locus_on_curve(v: VectorField, curve: Mapping[str, MPoly], param: str = "s") -> CurveLocus:
    """Restrict the components of ``v`` to ``var -> curve[var](s)`` and locate
    their common zeros."""
    for p in curve.values():
        extra = [w for w in p.occurring_vars() if w != param]
        if extra:
            raise StructuralError(f"curve binding {p} depends on {extra}, not only on {param!r}")
    restricted = [up.from_mpoly(c.substitute(curve).as_poly(), param) for c in v.components]
    nonzero = [r for r in restricted if r]
    if not nonzero:
        return CurveLocus(True)
    g = nonzero[0]
    for r in nonzero[1:]:
        g = up.gcd(g, r)
    g = up.monic(g)
    if up.degree(g) == 0:
        return CurveLocus(False, (), None, g)
    roots, residual = up.rational_roots(g)
    return CurveLocus(False, roots, residual if up.degree(residual) > 0 else None, g)


def jacobian_at(v: VectorField, point: Sequence) -> tuple:
    pt = _rat_point(point)
    return tuple(tuple(c.diff(w).evaluate(pt) for w in v.vars) for c in v.components)


def characteristic_polynomial(m: Sequence[Sequence[Fraction]]) -> tuple:
    """Coefficients (low to high) of ``det(s I - m)`` by Faddeev-LeVerrier."""
    n = len(m)
    a = [[as_rat(e) for e in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prev = mk
        mk = [[sum(a[i][l] * prev[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return tuple(coeffs)


@dataclass(frozen=True)
class SingularReport:
    point: tuple
    linear_part: tuple
    eigenvalues: tuple
    simple: bool
    charpoly: tuple = field(default=())

    @property
    def exact(self) -> tuple:
        return tuple(is_exact(e) for e in self.eigenvalues)

    @property
    def trace(self) -> Fraction:
        return sum((self.linear_part[i][i] for i in range(len(self.linear_part))), Fraction(0))


def linear_part(v: VectorField, point: Sequence) -> SingularReport:
    """Linearization of ``v`` at a singular point, with its eigenvalues.

    Rational eigenvalues are found exactly, a leftover quadratic factor is
    solved in its quadratic field, and anything else falls back to complex
    Durand-Kerner roots checked against the characteristic polynomial.
    """
    pt = _rat_point(point)
    if not is_singular_at(v, pt):
        raise DomainError(f"{tuple(str(c) for c in pt)} is not a singular point")
    jac = jacobian_at(v, pt)
    chi = characteristic_polynomial(jac)
    eigs = up.roots(chi)
    scale = max(abs(c) for c in chi)
    for e in eigs:
        if not is_exact(e) and abs(up.evaluate(tuple(complex(c) for c in chi), e)) > RESIDUAL_TOL * float(scale):
            raise ArithmeticError(f"numeric eigenvalue {e} failed the residual check")
    eigs = tuple(sorted(eigs, key=up.sort_key))
    simple = any(not _is_zero(e) for e in eigs)
    return SingularReport(pt, jac, eigs, simple, chi)


def _is_zero(value) -> bool:
    if isinstance(value, QuadraticSurd):
        return False
    if isinstance(value, (int, Fraction)):
        return value == 0
    return abs(value) == 0


@dataclass(frozen=True)
class RatioCheck:
    ok: bool
    violations: tuple = ()  # (i, j, reason)

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"({i}, {j}): {why}" for i, j, why in self.violations)


def eigenvalue_ratio_rationality(report: SingularReport) -> RatioCheck:
    """Pairwise check that eigenvalues vanish together and have rational ratios."""
    out = []
    eigs = report.eigenvalues
    for i in range(len(eigs)):
        for j in range(i + 1, len(eigs)):
            a, b = eigs[i], eigs[j]
            if not (is_exact(a) and is_exact(b)):
                out.append((i, j, "undecidable-approximate"))
                continue
            za, zb = _is_zero(a), _is_zero(b)
            if za != zb:
                out.append((i, j, "mixed-zero"))
            elif not za and not isinstance(a / b, Fraction):
                out.append((i, j, "irrational-ratio"))
    return RatioCheck(not out, tuple(out))


def sign_pattern_claim(report: SingularReport, transverse: int) -> bool | None:
    """Whether the two tangential eigenvalues share a sign opposite to the
    transverse one. ``None`` (abstain) unless all eigenvalues are rational."""
    eigs = report.eigenvalues
    if len(eigs) != 3 or not all(isinstance(e, Fraction) for e in eigs):
        return None
    if transverse not in range(3):
        raise IndexError(transverse)
    t = eigs[transverse]
    a, b = (e for k, e in enumerate(eigs) if k != transverse)
    if not (a and b and t):
        return False
    return (a > 0) == (b > 0) and (a > 0) != (t > 0)


def baum_bott(l1, l2):
    """``l1/l2 + l2/l1 + 2``; exact for rational (or same-field surd) inputs."""
    if _is_zero(l1) or _is_zero(l2):
        raise DomainError("Baum-Bott index needs two nonzero eigenvalues")
    if isinstance(l1, int):
        l1 = Fraction(l1)
    if isinstance(l2, int):
        l2 = Fraction(l2)
    return l1 / l2 + l2 / l1 + 2


def index_gap(k: int) -> int:
    """``4(k^2+k+1) - (k+2)^2``, identically ``3 k^2``."""
    return 4 * (k * k + k + 1) - (k + 2) ** 2


@dataclass(frozen=True)
class BaumBottLedger:
    degree: int
    entries: tuple  # (label, l1, l2)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be non-negative")
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))


@dataclass(frozen=True)
class GlobalCheck:
    degree: int
    count: int
    expected_count: int
    indices: tuple
    total: object
    expected_total: int
    count_ok: bool
    total_ok: bool
    all_dicritical: bool | None
    lower_bound: int
    contradiction: bool

    @property
    def consistent(self) -> bool:
        return self.count_ok and self.total_ok and not self.contradiction

    def __str__(self) -> str:
        lines = [f"degree k = {self.degree}",
                 f"singular points: {self.count} (expected 1 + k + k^2 = {self.expected_count})",
                 f"index sum: {_fmt(self.total)} (expected (k + 2)^2 = {self.expected_total})"]
        if self.contradiction:
            lines.append(f"contradiction: every index >= 4 forces sum >= {self.lower_bound} "
                         f"> {self.expected_total}")
        lines.append("consistent" if self.consistent else "inconsistent")
        return "\n".join(lines)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return repr(v) if not isinstance(v, QuadraticSurd) else str(v)


def _at_least_four(value) -> bool | None:
    if isinstance(value, Fraction):
        return value >= 4
    if isinstance(value, QuadraticSurd):
        return value.is_real() and complex(value).real >= 4
    z = complex(value)
    if abs(z.imag) > 1e-12 * max(1.0, abs(z)):
        return False
    return z.real >= 4 - 1e-12


def baum_bott_global_check(ledger: BaumBottLedger) -> GlobalCheck:
    """Compare a ledger of planar singularities with the degree-k count and
    index-sum formulas, and flag the all-dicritical contradiction."""
    k = ledger.degree
    indices = tuple(baum_bott(l1, l2) for _, l1, l2 in ledger.entries)
    total = sum(indices, Fraction(0))
    expected_total = (k + 2) ** 2
    if is_exact(total) and isinstance(total, Fraction):
        total_ok = total == expected_total
    else:
        z = complex(total)
        total_ok = abs(z - expected_total) <= SUM_RTOL * expected_total
    expected_count = 1 + k + k * k
    flags = [_at_least_four(b) for b in indices]
    all_dicritical = bool(flags) and all(flags)
    lower_bound = 4 * expected_count
    contradiction = all_dicritical and lower_bound > expected_total
    return GlobalCheck(k, len(indices), expected_count, indices, total, expected_total,
                       len(indices) == expected_count, total_ok, all_dicritical,
                       lower_bound, contradiction)
