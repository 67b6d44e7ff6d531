"""Exact sparse multivariate polynomials and rational functions over Q.

Coefficients are :class:`fractions.Fraction` (aliased :data:`Rat`). Every
polynomial carries a fixed, ordered tuple of variable names; arithmetic between
polynomials over different variable tuples raises :class:`StructuralError`
instead of silently promoting. Canonical representatives use the graded
lexicographic order, with the first variable of the tuple the largest.

Example
-------
>>> x, y, z = MPoly.gens("x", "y", "z")
>>> str((y**2 - x**3) * z**2)
'-x^3*z^2 + y^2*z^2'
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import StructuralError

Rat = Fraction
Exps = tuple  # tuple[int, ...], one exponent per variable

Scalar = Union[int, Fraction]


def as_rat(value) -> Fraction:
    """Coerce an exact scalar to a Fraction. Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational scalar, got {type(value).__name__}")


def _is_scalar(value) -> bool:
    return isinstance(value, (numbers.Rational,)) and not isinstance(value, bool)


def grlex_key(exps: Exps) -> tuple:
    return (sum(exps), exps)


def format_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class MPoly:
    """Immutable sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable in ``vars``) to
    nonzero coefficients.
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exps, Scalar] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise StructuralError(f"duplicate variable names in {vars}")
        clean: dict = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vars) or any(e < 0 for e in exps):
                raise StructuralError(f"bad exponent vector {exps} for variables {vars}")
            c = as_rat(coeff)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self._vars = vars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, vars: tuple, terms: dict) -> "MPoly":
        p = object.__new__(cls)
        p._vars = vars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MPoly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, value: Scalar, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        c = as_rat(value)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        if name not in vars:
            raise StructuralError(f"unknown variable {name!r}; variables are {vars}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls._raw(vars, {exps: Fraction(1)})

    @classmethod
    def gens(cls, *names: str) -> tuple:
        """All generators of the polynomial ring in ``names``."""
        return tuple(cls.var(n, names) for n in names)

    @classmethod
    def monomial(cls, exps: Sequence[int], vars: Sequence[str], coeff: Scalar = 1) -> "MPoly":
        return cls(vars, {tuple(exps): coeff})

    # -- basic accessors --------------------------------------------------

    @property
    def vars(self) -> tuple:
        return self._vars

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self._terms), default=-1)

    def sorted_terms(self) -> list:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple:
        if not self._terms:
            raise StructuralError("the zero polynomial has no leading term")
        exps = max(self._terms, key=grlex_key)
        return exps, self._terms[exps]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def sort_key(self) -> tuple:
        """Total order on polynomials over one variable tuple (graded-lex on
        the term sequence, then coefficients)."""
        return tuple((grlex_key(e), c) for e, c in self.sorted_terms())

    def _index(self, var: str) -> int:
        try:
            return self._vars.index(var)
        except ValueError:
            raise StructuralError(f"unknown variable {var!r}; variables are {self._vars}") from None

    def occurring_vars(self) -> tuple:
        return tuple(v for i, v in enumerate(self._vars) if any(e[i] for e in self._terms))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other._vars != self._vars:
                raise StructuralError(
                    f"variable-set mismatch: {self._vars} vs {other._vars}")
            return other
        if _is_scalar(other):
            return MPoly.const(other, self._vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        if _is_scalar(other):
            c = as_rat(other)
            if not c:
                return MPoly.zero(self._vars)
            return MPoly._raw(self._vars, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly._raw(self._vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            c = as_rat(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            return self * (1 / c)
        if isinstance(other, MPoly):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar(other):
            return RationalFunction(MPoly.const(other, self._vars), self)
        return NotImplemented

    def __pow__(self, n: int) -> "MPoly":
        if not isinstance(n, numbers.Integral) or n < 0:
            raise StructuralError(f"polynomial exponent must be a non-negative integer, got {n!r}")
        result = MPoly.const(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self._vars == other._vars and self._terms == other._terms
        if _is_scalar(other):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and structure -------------------------------------------

    def diff(self, var: str) -> "MPoly":
        """Formal partial derivative with respect to ``var``."""
        i = self._index(var)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MPoly._raw(self._vars, out)

    def homogeneous_component(self, d: int) -> "MPoly":
        return MPoly._raw(self._vars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def divide_out_variable(self, var: str) -> tuple:
        """Return ``(k, q)`` with ``self == var**k * q`` and ``var`` not dividing ``q``."""
        if not self._terms:
            raise StructuralError("multiplicity of a variable in the zero polynomial is undefined")
        i = self._index(var)
        k = min(e[i] for e in self._terms)
        if not k:
            return 0, self
        q = {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in self._terms.items()}
        return k, MPoly._raw(self._vars, q)

    def monomial_content(self) -> Exps:
        """Componentwise minimum exponent: the largest monomial dividing ``self``."""
        if not self._terms:
            return (0,) * len(self._vars)
        return tuple(min(col) for col in zip(*self._terms))

    def divide_by_monomial(self, exps: Exps) -> "MPoly":
        out = {}
        for e, c in self._terms.items():
            ne = tuple(a - b for a, b in zip(e, exps))
            if any(v < 0 for v in ne):
                raise StructuralError("monomial does not divide polynomial")
            out[ne] = c
        return MPoly._raw(self._vars, out)

    def divide_exact(self, other: "MPoly") -> "MPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = other.leading_term()
        rem = self
        quot = MPoly.zero(self._vars)
        while rem:
            e, c = rem.leading_term()
            qe = tuple(a - b for a, b in zip(e, lt_e))
            if any(v < 0 for v in qe):
                return None
            t = MPoly._raw(self._vars, {qe: c / lt_c})
            quot = quot + t
            rem = rem - t * other
        return quot

    def is_divisible_by_variable(self, var: str) -> bool:
        i = self._index(var)
        return all(e[i] > 0 for e in self._terms)

    def scale_to_monic(self) -> "MPoly":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    def is_proportional_to(self, other: "MPoly") -> bool:
        other = self._coerce(other)
        if not self or not other:
            return not self and not other
        return self * other.leading_coefficient() == other * self.leading_coefficient()

    # -- evaluation and substitution ---------------------------------------

    def _point(self, point) -> tuple:
        if isinstance(point, Mapping):
            try:
                return tuple(point[v] for v in self._vars)
            except KeyError as exc:
                raise StructuralError(f"no value for variable {exc.args[0]!r}") from None
        point = tuple(point)
        if len(point) != len(self._vars):
            raise StructuralError(f"point has {len(point)} coordinates, expected {len(self._vars)}")
        return point

    def evaluate(self, point):
        """Evaluate at a point given as a sequence (aligned with ``vars``) or a
        mapping. Exact for rational inputs, floating for complex inputs."""
        pt = self._point(point)
        exact = all(isinstance(v, (int, Fraction)) for v in pt)
        total = Fraction(0) if exact else 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def compile_numeric(self):
        """Fast complex evaluator ``f(point_tuple) -> complex``."""
        terms = [(complex(c), [(i, k) for i, k in enumerate(e) if k]) for e, c in self._terms.items()]

        def f(pt):
            total = 0j
            for c, powers in terms:
                for i, k in powers:
                    c = c * (pt[i] if k == 1 else pt[i] ** k)
                total += c
            return total

        return f

    def drop_variable(self, var: str, value: Scalar = 0) -> "MPoly":
        """Set ``var`` to ``value`` and remove it from the variable tuple."""
        i = self._index(var)
        val = as_rat(value)
        vars = self._vars[:i] + self._vars[i + 1:]
        out: dict = {}
        for e, c in self._terms.items():
            if e[i] and not val:
                continue
            ne = e[:i] + e[i + 1:]
            s = out.get(ne, 0) + c * val ** e[i]
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return MPoly._raw(vars, out)

    def embed(self, vars: Sequence[str]) -> "MPoly":
        """Re-express over a larger (or reordered) variable tuple. Explicit,
        never applied implicitly by arithmetic."""
        vars = tuple(vars)
        missing = [v for v in self.occurring_vars() if v not in vars]
        if missing:
            raise StructuralError(f"variables {missing} not present in {vars}")
        idx = [self._vars.index(v) if v in self._vars else None for v in vars]
        out = {}
        for e, c in self._terms.items():
            out[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return MPoly(vars, out)

    def substitute(self, bindings: Mapping, target_vars: Sequence[str] | None = None) -> "RationalFunction":
        """Compose with ``bindings`` (variable -> MPoly or RationalFunction
        over a common target variable tuple). Result is canonical."""
        bound = {}
        for name, val in bindings.items():
            self._index(name)
            bound[name] = RationalFunction.coerce(val, target_vars)
        targets = {b.vars for b in bound.values()}
        if target_vars is not None:
            targets.add(tuple(target_vars))
        if len(targets) > 1:
            raise StructuralError(f"bindings live over different variable sets: {sorted(targets)}")
        if not targets:
            raise StructuralError("target variables unknown: pass target_vars")
        tvars = targets.pop()
        for v in self.occurring_vars():
            if v not in bound:
                raise StructuralError(f"variable {v!r} is not bound")
        idx = [(i, v) for i, v in enumerate(self._vars) if v in bound]
        maxdeg = {v: max((e[i] for e in self._terms), default=0) for i, v in idx}
        num_pows = {v: _powers(bound[v].num, maxdeg[v]) for _, v in idx}
        den_pows = {v: _powers(bound[v].den, maxdeg[v]) for _, v in idx}
        num = MPoly.zero(tvars)
        for e, c in self._terms.items():
            term = MPoly.const(c, tvars)
            for i, v in idx:
                term = term * num_pows[v][e[i]] * den_pows[v][maxdeg[v] - e[i]]
            num = num + term
        den = MPoly.const(1, tvars)
        for _, v in idx:
            den = den * den_pows[v][maxdeg[v]]
        return RationalFunction(num, den)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for n, (e, c) in enumerate(self.sorted_terms()):
            mono = _format_monomial(e, self._vars)
            a = abs(c)
            if not mono:
                body = format_rat(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rat(a)}*{mono}"
            if n == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, vars={self._vars})"


def _format_monomial(exps: Exps, vars: tuple) -> str:
    factors = []
    for v, k in zip(vars, exps):
        if k == 1:
            factors.append(v)
        elif k > 1:
            factors.append(f"{v}^{k}")
    return "*".join(factors)


def _powers(p: MPoly, n: int) -> list:
    out = [MPoly.const(1, p.vars)]
    for _ in range(n):
        out.append(out[-1] * p)
    return out


class RationalFunction:
    """Quotient ``num/den`` of two polynomials over one variable tuple.

    Canonical form: the greatest common monomial is cancelled, exact polynomial
    division is applied when one side divides the other, and ``den`` is scaled
    so its graded-lex leading coefficient is 1. No multivariate gcd is taken,
    so equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = 1
        if not isinstance(num, MPoly) and isinstance(den, MPoly):
            num = MPoly.const(num, den.vars)
        if not isinstance(num, MPoly):
            raise TypeError("numerator must be an MPoly (or a scalar with an MPoly denominator)")
        if not isinstance(den, MPoly):
            den = MPoly.const(den, num.vars)
        if num.vars != den.vars:
            raise StructuralError(f"variable-set mismatch: {num.vars} vs {den.vars}")
        if den.is_zero():
            raise StructuralError("zero denominator")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def coerce(cls, value, vars: Sequence[str] | None = None) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, MPoly):
            return cls(value)
        if _is_scalar(value):
            if vars is None:
                raise StructuralError("cannot coerce a scalar without a variable set")
            return cls(MPoly.const(value, vars))
        raise TypeError(f"cannot interpret {type(value).__name__} as a rational function")

    @property
    def vars(self) -> tuple:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def as_poly(self) -> MPoly:
        if not self.den.is_constant():
            raise StructuralError(f"{self} is not a polynomial")
        return self.num * (1 / self.den.constant_term())

    def _co(self, other):
        if isinstance(other, RationalFunction):
            if other.vars != self.vars:
                raise StructuralError(f"variable-set mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise StructuralError(f"variable-set mismatch: {self.vars} vs {other.vars}")
            return RationalFunction(other)
        if _is_scalar(other):
            return RationalFunction(MPoly.const(other, self.vars))
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, numbers.Integral):
            raise StructuralError(f"exponent must be an integer, got {n!r}")
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den ** -n, self.num ** -n)
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        try:
            o = self._co(other)
        except StructuralError:
            return False
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None  # equality is by cross-multiplication

    def diff(self, var: str) -> "RationalFunction":
        return RationalFunction(
            self.num.diff(var) * self.den - self.num * self.den.diff(var), self.den ** 2)

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def substitute(self, bindings: Mapping, target_vars: Sequence[str] | None = None) -> "RationalFunction":
        n = self.num.substitute(bindings, target_vars)
        d = self.den.substitute(bindings, target_vars)
        if d.is_zero():
            raise StructuralError("substitution annihilates the denominator")
        return n / d

    def divide_out_variable(self, var: str) -> tuple:
        """``(k, r)`` with ``self == var**k * r`` and ``var`` dividing neither
        side of ``r``; ``k`` may be negative."""
        kn, n = self.num.divide_out_variable(var)
        kd, d = self.den.divide_out_variable(var)
        return kn - kd, RationalFunction(n, d)

    def __str__(self) -> str:
        if self.den.is_constant():
            return str(self.as_poly())
        num = str(self.num)
        if len(self.num) > 1:
            num = f"({num})"
        den = str(self.den)
        simple_den = (self.den.is_monomial() and self.den.leading_coefficient() == 1
                      and len(self.den.occurring_vars()) == 1)
        if not simple_den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r}, vars={self.vars})"


def _canonical(num: MPoly, den: MPoly) -> tuple:
    vars = num.vars
    if num.is_zero():
        return num, MPoly.const(1, vars)
    content = tuple(min(a, b) for a, b in zip(num.monomial_content(), den.monomial_content()))
    if any(content):
        num = num.divide_by_monomial(content)
        den = den.divide_by_monomial(content)
    if not den.is_constant():
        q = num.divide_exact(den)
        if q is not None:
            num, den = q, MPoly.const(1, vars)
        elif not num.is_constant():
            q = den.divide_exact(num)
            if q is not None:
                num, den = MPoly.const(1, vars), q
    lc = den.leading_coefficient()
    if lc != 1:
        num = num * (1 / lc)
        den = den * (1 / lc)
    return num, den


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Named-operation entry point: ``op`` is one of add, sub, mul."""
    if not isinstance(a, MPoly) or not isinstance(b, MPoly):
        raise TypeError("poly_arith expects two MPoly operands")
    if a.vars != b.vars:
        raise StructuralError(f"variable-set mismatch: {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: MPoly, var: str) -> MPoly:
    return p.diff(var)


def substitute(p, bindings: Mapping, target_vars: Sequence[str] | None = None) -> RationalFunction:
    return p.substitute(bindings, target_vars)


def divide_out_variable(p: MPoly, var: str) -> tuple:
    return p.divide_out_variable(var)


def homogeneous_component(p: MPoly, d: int) -> MPoly:
    return p.homogeneous_component(d)


def prod(factors: Iterable, vars: Sequence[str]) -> MPoly:
    out = MPoly.const(1, vars)
    for f in factors:
        out = out * f
    return out
