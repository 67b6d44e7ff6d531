"""Blow-up charts and the transport of functions and vector fields through them.

A chart is plain data: the source variables, the target (chart) variables, a
monomial binding ``source var -> polynomial in target vars`` and the
exceptional variable whose zero set is the divisor in that chart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import MPoly, RationalFunction
from .errors import StructuralError
from .foliation import DarbouxFunction, VectorField


@dataclass(frozen=True)
class BlowupChart:
    name: str
    source_vars: tuple
    target_vars: tuple
    binding: Mapping[str, MPoly] = field(hash=False)
    exceptional: str

    def __post_init__(self):
        object.__setattr__(self, "source_vars", tuple(self.source_vars))
        object.__setattr__(self, "target_vars", tuple(self.target_vars))
        if set(self.binding) != set(self.source_vars):
            raise StructuralError(f"chart {self.name}: binding must cover {self.source_vars}")
        if self.exceptional not in self.target_vars:
            raise StructuralError(f"chart {self.name}: exceptional variable {self.exceptional!r} "
                                  f"is not a chart variable")
        for v, p in self.binding.items():
            if p.vars != self.target_vars:
                raise StructuralError(f"chart {self.name}: binding of {v} is not over {self.target_vars}")
            if not (p.is_monomial() and p.leading_coefficient() == 1 and 1 <= p.degree() <= 2):
                raise StructuralError(f"chart {self.name}: binding {v} -> {p} is not a monomial "
                                      f"of degree 1 or 2")
        det = jacobian_determinant(self)
        if not det.is_monomial():
            raise StructuralError(f"chart {self.name}: Jacobian determinant {det} is not a monomial")

    def rational_binding(self) -> dict:
        return {v: RationalFunction(p) for v, p in self.binding.items()}

    def __str__(self) -> str:
        image = ", ".join(str(self.binding[v]) for v in self.source_vars)
        return f"{self.name}: ({', '.join(self.target_vars)}) -> ({image}), divisor {{{self.exceptional} = 0}}"


def jacobian_determinant(chart: BlowupChart) -> MPoly:
    rows = [[chart.binding[s].diff(t) for t in chart.target_vars] for s in chart.source_vars]
    return _det(rows)


def _det(m: list):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def make_chart(name: str, source_vars: Sequence[str], target_vars: Sequence[str],
               images: Sequence[str], exceptional: str) -> BlowupChart:
    """Build a chart from monomial images written as ``"t*x"``-style products."""
    target_vars = tuple(target_vars)
    binding = {}
    for s, image in zip(source_vars, images):
        p = MPoly.const(1, target_vars)
        for factor in image.split("*"):
            p = p * MPoly.var(factor.strip(), target_vars)
        binding[s] = p
    return BlowupChart(name, tuple(source_vars), target_vars, binding, exceptional)


XYZ = ("x", "y", "z")

CHARTS = {
    # blow-up along the z-axis {x = y = 0}
    "z-axis-xtz": make_chart("z-axis-xtz", XYZ, ("x", "t", "z"), ("x", "t*x", "z"), "x"),
    "z-axis-uyz": make_chart("z-axis-uyz", XYZ, ("u", "y", "z"), ("u*y", "y", "z"), "y"),
    # punctual blow-up of the origin
    "origin-uvz": make_chart("origin-uvz", XYZ, ("u", "v", "z"), ("u*z", "v*z", "z"), "z"),
    "origin-xuv": make_chart("origin-xuv", XYZ, ("x", "u", "v"), ("x", "u*x", "v*x"), "x"),
    "origin-uyv": make_chart("origin-uyv", XYZ, ("u", "y", "v"), ("u*y", "y", "v*y"), "y"),
}

_ALIASES = {
    "z-axis-(x,t,z)": "z-axis-xtz",
    "z-axis-(u,y,z)": "z-axis-uyz",
    "origin-(u,v,z)": "origin-uvz",
    "origin-(x,u,v)": "origin-xuv",
    "origin-(u,y,v)": "origin-uyv",
}


def get_chart(name: str) -> BlowupChart:
    key = _ALIASES.get(name.replace(" ", ""), name)
    try:
        return CHARTS[key]
    except KeyError:
        raise StructuralError(f"unknown chart {name!r}; known charts: {', '.join(CHARTS)}") from None


@dataclass(frozen=True)
class FunctionPullback:
    """``total == exceptional**multiplicity * reduced`` (prefactor level)."""

    multiplicity: int
    reduced: DarbouxFunction
    total: DarbouxFunction


def pullback_function(chart: BlowupChart, f) -> FunctionPullback:
    """Compose ``f`` with the chart and split off the divisor multiplicity.

    The multiplicity is the exponent of the exceptional variable in the
    prefactor (negative when the divisor is a pole); the exponential part is
    composed as is.
    """
    d = DarbouxFunction.coerce(f)
    if d.vars != chart.source_vars:
        raise StructuralError(f"function lives over {d.vars}, chart source is {chart.source_vars}")
    total = d.substitute(chart.rational_binding(), chart.target_vars)
    k, r = total.prefactor.divide_out_variable(chart.exceptional)
    return FunctionPullback(k, DarbouxFunction(r, total.exponent), total)


def transport_field(v: VectorField, target_vars: Sequence[str], binding: Mapping) -> tuple:
    """Express ``v`` in new coordinates related by ``source = binding(target)``.

    Solves ``J w = v o binding`` with ``J`` the Jacobian of the binding, over
    rational functions. Returns the components of ``w``.
    """
    target_vars = tuple(target_vars)
    bind = {s: RationalFunction.coerce(b, target_vars) for s, b in binding.items()}
    if set(bind) != set(v.vars):
        raise StructuralError(f"binding must cover {v.vars}")
    if len(target_vars) != len(v.vars):
        raise StructuralError("coordinate change between spaces of different dimension")
    rhs = [c.substitute(bind, target_vars) for c in v.components]
    jac = [[bind[s].diff(t) for t in target_vars] for s in v.vars]
    return tuple(_solve(jac, rhs))


def _solve(a: list, b: list) -> list:
    n = len(b)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            raise StructuralError("coordinate change is singular (Jacobian determinant vanishes)")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [e / p for e in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [e - f * g for e, g in zip(m[r], m[col])]
    return [row[n] for row in m]


@dataclass(frozen=True)
class FieldPullback:
    """The transported field equals ``exceptional**multiplicity * saturated``."""

    multiplicity: int
    saturated: VectorField


def pullback_vector_field(chart: BlowupChart, v: VectorField) -> FieldPullback:
    """Transport ``v`` through the chart and saturate by the divisor.

    Components are first cleared to polynomials by the smallest monomial
    multiple, then the largest common power of the exceptional variable is
    divided out. ``multiplicity`` is the net exponent: removed power minus the
    power used for clearing.
    """
    if v.vars != chart.source_vars:
        raise StructuralError(f"field lives over {v.vars}, chart source is {chart.source_vars}")
    comps = transport_field(v, chart.target_vars, chart.rational_binding())
    tv = chart.target_vars
    clearing = [0] * len(tv)
    for c in comps:
        if not c.den.is_monomial():
            raise StructuralError(f"transported component {c} has a non-monomial denominator")
        e, _ = c.den.leading_term()
        clearing = [max(a, b) for a, b in zip(clearing, e)]
    lcm = MPoly.monomial(clearing, tv)
    polys = [(c * lcm).as_poly() for c in comps]
    i = tv.index(chart.exceptional)
    removed = min(p.divide_out_variable(chart.exceptional)[0] for p in polys if p)
    power = tuple(removed if j == i else 0 for j in range(len(tv)))
    sat = [p.divide_by_monomial(power) for p in polys]
    return FieldPullback(removed - clearing[i], VectorField(sat))


def is_divisor_invariant(saturated: VectorField, chart: BlowupChart) -> bool:
    """True when the divisor ``{e = 0}`` is invariant: ``e`` divides the
    ``e``-component of the field."""
    e = chart.exceptional
    if saturated.vars != chart.target_vars:
        raise StructuralError(f"field lives over {saturated.vars}, chart is over {chart.target_vars}")
    comp = saturated[e]
    return comp.is_zero() or comp.is_divisible_by_variable(e)
