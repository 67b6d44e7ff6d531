"""Dense univariate polynomials over Q and their roots.

A polynomial is a tuple of Fractions, lowest degree first, with no trailing
zeros; ``()`` is the zero polynomial. Roots are returned as Fractions when
rational, :class:`QuadraticSurd` when they live in a quadratic extension, and
complex floats otherwise.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Sequence

from .algebra import MPoly, as_rat, format_rat


def trim(coeffs: Sequence) -> tuple:
    c = [as_rat(v) for v in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def degree(p: tuple) -> int:
    return len(p) - 1


def from_mpoly(p: MPoly, var: str | None = None) -> tuple:
    """Dense coefficients of a polynomial in (at most) one occurring variable."""
    occ = p.occurring_vars()
    if len(occ) > 1 or (occ and var is not None and occ[0] != var):
        raise ValueError(f"{p} is not univariate in {var or occ[0]!r}")
    if p.is_zero():
        return ()
    i = p.vars.index(occ[0]) if occ else 0
    out = [Fraction(0)] * (max(e[i] for e, _ in p.items()) + 1 if occ else 1)
    for e, c in p.items():
        out[e[i] if occ else 0] += c
    return trim(out)


def evaluate(p: tuple, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def divmod_(a: tuple, b: tuple) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = list(trim(a))
    return trim(q), trim(a)


def monic(p: tuple) -> tuple:
    if not p:
        return p
    return tuple(c / p[-1] for c in p)


def gcd(a: tuple, b: tuple) -> tuple:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: tuple) -> tuple:
    """Rational roots with multiplicity, and the residual cofactor.

    Returns ``(roots, residual)`` where ``p == prod(s - r for r in roots) *
    residual`` and ``residual`` has no rational root.
    """
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    roots = []
    while len(p) > 1 and not p[0]:
        roots.append(Fraction(0))
        p = p[1:]
    while len(p) > 1:
        lcm = math.lcm(*(c.denominator for c in p))
        ints = [int(c * lcm) for c in p]
        g = math.gcd(*ints)
        ints = [v // g for v in ints]
        found = None
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if not evaluate(p, cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p, _ = divmod_(p, (-found, Fraction(1)))
    return tuple(sorted(roots)), p


def _squarefree_split(n: int, limit: int = 10 ** 6) -> tuple:
    """``n == s**2 * d`` with ``d`` free of small square factors."""
    s, d = 1, n
    f = 2
    while f * f <= abs(d) and f < limit:
        while d % (f * f) == 0:
            d //= f * f
            s *= f
        f += 1
    return s, d


class QuadraticSurd:
    """Exact element ``a + b*sqrt(d)`` of Q(sqrt d), ``d`` a non-square integer.

    Negative ``d`` gives non-real complex numbers. Arithmetic stays exact with
    Fractions and with surds over the same ``d``.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a, self.b, self.d = as_rat(a), as_rat(b), int(d)
        if self.d in (0, 1):
            raise ValueError("radicand must not be a perfect square")

    @staticmethod
    def make(a, b, d: int):
        """Fraction when ``b == 0``, else a surd."""
        if not b:
            return as_rat(a)
        return QuadraticSurd(a, b, d)

    @classmethod
    def sqrt(cls, r: Fraction):
        """Exact square root of a rational number."""
        r = as_rat(r)
        if r == 0:
            return Fraction(0)
        n = r.numerator * r.denominator
        s, d = _squarefree_split(n)
        coeff = Fraction(s, r.denominator)
        if d == 1:
            return coeff
        return cls(0, coeff, d)

    def _co(self, other):
        # (a, b) components of ``other`` in this field, or None if foreign
        if isinstance(other, QuadraticSurd):
            return (other.a, other.b) if other.d == self.d else None
        if isinstance(other, (int, Fraction)):
            return as_rat(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return complex(self) + complex(other)
        return QuadraticSurd.make(self.a + o[0], self.b + o[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return complex(self) * complex(other)
        a, b = o
        return QuadraticSurd.make(self.a * a + self.b * b * self.d,
                                  self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def conjugate_surd(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return complex(self) / complex(other)
        a, b = o
        n = a * a - b * b * self.d
        if not n:
            raise ZeroDivisionError("division by zero")
        # multiply through by the conjugate (a - b sqrt d)
        return QuadraticSurd.make((self.a * a - self.b * b * self.d) / n,
                                  (self.b * a - self.a * b) / n, self.d)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            r = as_rat(other)
            n = self.norm()
            return QuadraticSurd.make(r * self.a / n, -r * self.b / n, self.d)
        return complex(other) / complex(self)

    def __complex__(self) -> complex:
        if self.d > 0:
            return complex(float(self.a) + float(self.b) * math.sqrt(self.d), 0.0)
        return complex(float(self.a), float(self.b) * math.sqrt(-self.d))

    @property
    def real(self) -> float:
        return complex(self).real

    @property
    def imag(self) -> float:
        return complex(self).imag

    def is_real(self) -> bool:
        return self.d > 0

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __str__(self) -> str:
        radical = f"sqrt({self.d})"
        b = self.b
        mag = abs(b)
        body = radical if mag == 1 else f"{format_rat(mag)}*{radical}"
        if not self.a:
            return ("-" if b < 0 else "") + body
        return f"{format_rat(self.a)} {'-' if b < 0 else '+'} {body}"

    def __repr__(self) -> str:
        return f"QuadraticSurd({str(self)!r})"


def quadratic_roots(p: tuple) -> tuple:
    """Exact roots of a degree-2 polynomial."""
    c, b, a = p
    disc = b * b - 4 * a * c
    r = QuadraticSurd.sqrt(disc)
    if isinstance(r, Fraction):
        return tuple(sorted(((-b + r) / (2 * a), (-b - r) / (2 * a))))
    half = -b / (2 * a)
    coeff = r.b / (2 * a)
    return (QuadraticSurd(half, -abs(coeff), r.d), QuadraticSurd(half, abs(coeff), r.d))


def durand_kerner(p: tuple, tol: float = 1e-15, max_iter: int = 500) -> list:
    """All complex roots of ``p`` by simultaneous Weierstrass iteration."""
    n = degree(p)
    lead = complex(p[-1])
    cs = [complex(c) / lead for c in p]
    f = lambda z: sum(c * z ** k for k, c in enumerate(cs))
    radius = 1 + max(abs(c) for c in cs[:-1])
    roots = [radius * cmath.exp(2j * math.pi * (k + 0.25) / n) for k in range(n)]
    for _ in range(max_iter):
        delta = 0.0
        new = []
        for i, zi in enumerate(roots):
            denom = 1 + 0j
            for j, zj in enumerate(roots):
                if i != j:
                    denom *= zi - zj
            step = f(zi) / denom if denom else 0
            new.append(zi - step)
            delta = max(delta, abs(step))
        roots = new
        if delta <= tol * max(1.0, max(abs(z) for z in roots)):
            break
    # Newton polish against the exact coefficients
    dcs = [k * c for k, c in enumerate(cs)][1:]
    df = lambda z: sum(c * z ** k for k, c in enumerate(dcs))
    polished = []
    for z in roots:
        for _ in range(3):
            d = df(z)
            if not d:
                break
            z = z - f(z) / d
        polished.append(z)
    return polished


def roots(p: tuple) -> list:
    """All roots with multiplicity: exact where possible, else complex floats."""
    rat, residual = rational_roots(p)
    out = list(rat)
    if degree(residual) == 2:
        out.extend(quadratic_roots(residual))
    elif degree(residual) == 1:
        out.append(-residual[0] / residual[1])
    elif degree(residual) > 2:
        out.extend(durand_kerner(residual))
    return out


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int, QuadraticSurd))


def sort_key(value) -> tuple:
    z = complex(value)
    return (round(z.real, 12), round(z.imag, 12))


def poly_str(p: tuple, var: str = "s") -> str:
    if not p:
        return "0"
    x = MPoly.var(var, (var,))
    return str(sum((c * x ** k for k, c in enumerate(p)), MPoly.zero((var,))))
