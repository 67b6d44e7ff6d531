"""Polynomial vector fields, Darboux-type functions and first-integral checks."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence, Union

from .algebra import MPoly, RationalFunction, _is_scalar
from .errors import DomainError, StructuralError


class VectorField:
    """Derivation ``sum_i a_i d/dv_i`` with polynomial coefficients.

    Components are aligned with the shared variable tuple; calling the field on
    a polynomial (or rational function) returns its Lie derivative.
    """

    __slots__ = ("components",)

    def __init__(self, components: Sequence[MPoly]):
        comps = tuple(components)
        if not comps:
            raise StructuralError("a vector field needs at least one component")
        vars = comps[0].vars
        if any(c.vars != vars for c in comps):
            raise StructuralError("vector field components live over different variable sets")
        if len(comps) != len(vars):
            raise StructuralError(f"{len(comps)} components for {len(vars)} variables")
        if all(c.is_zero() for c in comps):
            raise StructuralError("the zero vector field defines no foliation")
        self.components = comps

    @property
    def vars(self) -> tuple:
        return self.components[0].vars

    def __call__(self, f):
        return lie_derivative(self, f)

    def __getitem__(self, var: str) -> MPoly:
        return self.components[self.vars.index(var)]

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def scale(self, factor) -> "VectorField":
        return VectorField([c * factor for c in self.components])

    def evaluate(self, point) -> tuple:
        return tuple(c.evaluate(point) for c in self.components)

    def compile_numeric(self):
        fs = [c.compile_numeric() for c in self.components]
        return lambda pt: tuple(f(pt) for f in fs)

    def __str__(self) -> str:
        parts = []
        for v, c in zip(self.vars, self.components):
            if c:
                parts.append(f"({c})*d/d{v}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"VectorField({[str(c) for c in self.components]}, vars={self.vars})"


class DarbouxFunction:
    """``R * exp(S)`` with rational functions ``R`` (nonzero) and ``S``.

    ``S == 0`` encodes a plain rational or polynomial function.
    """

    __slots__ = ("prefactor", "exponent")

    def __init__(self, prefactor, exponent=None):
        if isinstance(prefactor, (MPoly, RationalFunction)):
            vars = prefactor.vars
        elif isinstance(exponent, (MPoly, RationalFunction)):
            vars = exponent.vars
        else:
            raise StructuralError("cannot infer the variable set of a Darboux function")
        r = RationalFunction.coerce(prefactor, vars)
        s = RationalFunction.coerce(0 if exponent is None else exponent, vars)
        if r.vars != s.vars:
            raise StructuralError(f"variable-set mismatch: {r.vars} vs {s.vars}")
        if r.is_zero():
            raise StructuralError("Darboux prefactor must not vanish identically")
        self.prefactor = r
        self.exponent = s

    @classmethod
    def coerce(cls, value) -> "DarbouxFunction":
        if isinstance(value, DarbouxFunction):
            return value
        return cls(value)

    @property
    def vars(self) -> tuple:
        return self.prefactor.vars

    def is_rational(self) -> bool:
        return self.exponent.is_zero()

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, (MPoly, RationalFunction)):
            other = DarbouxFunction(RationalFunction.coerce(other, self.vars))
        if not isinstance(other, DarbouxFunction):
            return NotImplemented
        return DarbouxFunction(self.prefactor * other.prefactor, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other) or isinstance(other, (MPoly, RationalFunction)):
            other = DarbouxFunction(RationalFunction.coerce(other, self.vars))
        if not isinstance(other, DarbouxFunction):
            return NotImplemented
        return DarbouxFunction(self.prefactor / other.prefactor, self.exponent - other.exponent)

    def __pow__(self, n: int) -> "DarbouxFunction":
        return DarbouxFunction(self.prefactor ** n, self.exponent * n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (MPoly, RationalFunction)):
            other = DarbouxFunction(other)
        if not isinstance(other, DarbouxFunction):
            return NotImplemented
        return self.prefactor == other.prefactor and self.exponent == other.exponent

    __hash__ = None

    def log_gradient_factor(self) -> list:
        """Components of ``d(R e^S) / e^S = dR + R dS``."""
        return [self.prefactor.diff(v) + self.prefactor * self.exponent.diff(v) for v in self.vars]

    def evaluate(self, point) -> complex:
        r = self.prefactor.evaluate(point)
        if self.exponent.is_zero():
            return r
        return complex(r) * cmath.exp(complex(self.exponent.evaluate(point)))

    def substitute(self, bindings, target_vars=None) -> "DarbouxFunction":
        return DarbouxFunction(self.prefactor.substitute(bindings, target_vars),
                               self.exponent.substitute(bindings, target_vars))

    def __str__(self) -> str:
        r = self.prefactor
        if self.exponent.is_zero():
            return str(r)
        e = f"exp({self.exponent})"
        if r == 1:
            return e
        if r == -1:
            return f"-{e}"
        if r.is_polynomial() and r.as_poly().is_monomial():
            return f"{r}*{e}"
        return f"({r})*{e}"

    def __repr__(self) -> str:
        return f"DarbouxFunction({str(self)!r}, vars={self.vars})"


Function = Union[MPoly, RationalFunction, DarbouxFunction]


def _check_vars(v: VectorField, vars: tuple) -> None:
    if v.vars != vars:
        raise StructuralError(f"variable-set mismatch: field over {v.vars}, function over {vars}")


def lie_derivative(v: VectorField, p):
    """``v(p)`` for a polynomial or rational function ``p``."""
    _check_vars(v, p.vars)
    if isinstance(p, MPoly):
        out = MPoly.zero(p.vars)
        for var, a in zip(v.vars, v.components):
            if a:
                out = out + a * p.diff(var)
        return out
    if isinstance(p, RationalFunction):
        n, d = lie_derivative(v, p.num), lie_derivative(v, p.den)
        return RationalFunction(n * p.den - p.num * d, p.den ** 2)
    raise TypeError(f"cannot differentiate {type(p).__name__}")


def darboux_residual(v: VectorField, d: DarbouxFunction) -> MPoly:
    """Denominator-cleared form of ``v(R) + R v(S)``.

    With ``R = a/b`` and ``S = c/e`` the returned polynomial is
    ``(v(a) b - a v(b)) e^2 + a b (v(c) e - c v(e))``; it vanishes identically
    exactly when ``v(R e^S) = 0``.
    """
    _check_vars(v, d.vars)
    a, b = d.prefactor.num, d.prefactor.den
    c, e = d.exponent.num, d.exponent.den
    va, vb, vc, ve = (lie_derivative(v, q) for q in (a, b, c, e))
    return (va * b - a * vb) * e * e + a * b * (vc * e - c * ve)


def darboux_lie_derivative_vanishes(v: VectorField, d: DarbouxFunction) -> bool:
    return darboux_residual(v, DarbouxFunction.coerce(d)).is_zero()


def is_first_integral(v: VectorField, f: Function) -> bool:
    """Exact check that ``v(f) == 0`` for any supported function type."""
    if isinstance(f, MPoly):
        return lie_derivative(v, f).is_zero()
    return darboux_lie_derivative_vanishes(v, DarbouxFunction.coerce(f))


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    minor: tuple | None = None  # pair of variable names
    value: RationalFunction | None = None

    def __str__(self) -> str:
        if not self.independent:
            return "dependent"
        return f"independent (minor d/d{self.minor[0]} ^ d/d{self.minor[1]} = {self.value})"


def independence_witness(f: Function, g: Function) -> IndependenceVerdict:
    """Decide functional independence through the 2x2 minors of the Jacobian.

    For Darboux inputs the nonvanishing factors ``e^S`` are dropped, so the
    minors are exact rational functions.
    """
    f, g = DarbouxFunction.coerce(f), DarbouxFunction.coerce(g)
    if f.vars != g.vars:
        raise StructuralError(f"variable-set mismatch: {f.vars} vs {g.vars}")
    df, dg = f.log_gradient_factor(), g.log_gradient_factor()
    for i, j in combinations(range(len(f.vars)), 2):
        m = df[i] * dg[j] - df[j] * dg[i]
        if not m.is_zero():
            return IndependenceVerdict(True, (f.vars[i], f.vars[j]), m)
    return IndependenceVerdict(False)


def restrict_to_coordinate_plane(v: VectorField, var: str) -> VectorField:
    """Restriction of ``v`` to the invariant hyperplane ``{var = 0}``."""
    if var not in v.vars:
        raise StructuralError(f"unknown variable {var!r}")
    i = v.vars.index(var)
    normal = v.components[i].drop_variable(var, 0)
    if not normal.is_zero():
        raise DomainError(f"the plane {{{var} = 0}} is not invariant: normal component restricts to {normal}")
    comps = [c.drop_variable(var, 0) for k, c in enumerate(v.components) if k != i]
    return VectorField(comps)
