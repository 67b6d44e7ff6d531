from fractions import Fraction

import sympy
from hypothesis import strategies as st

from foliakit.algebra import MPoly
from foliakit.cli.parser import BinOp, Exp, Neg, Num, Pow, Var
from foliakit.dicritical import FactoredPair

XYZ = ("x", "y", "z")

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
exponents = st.tuples(*(st.integers(0, 3) for _ in XYZ))


@st.composite
def polys(draw, vars=XYZ, max_terms=4, nonzero=False):
    exps = st.tuples(*(st.integers(0, 3) for _ in vars))
    terms = draw(st.dictionaries(exps, small_rationals, max_size=max_terms))
    p = MPoly(vars, terms)
    if nonzero and p.is_zero():
        p = MPoly.const(1, vars)
    return p


def to_sympy(p, symbols=None):
    symbols = symbols or sympy.symbols(" ".join(p.vars))
    if not isinstance(symbols, (list, tuple)):
        symbols = (symbols,)
    out = sympy.Integer(0)
    for e, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(symbols, e):
            term *= s ** k
        out += term
    return sympy.expand(out)


# -- random ASTs ---------------------------------------------------------------------

def random_ast(rng, vars=XYZ, depth=4, allow_exp=True):
    """Uniform-ish random AST; numbers are non-negative integers or short decimals."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Var(rng.choice(vars))
        if rng.random() < 0.7:
            return Num(Fraction(rng.randint(0, 20)))
        return Num(Fraction(rng.randint(0, 999), 10 ** rng.randint(1, 3)))
    kind = rng.choice(["+", "-", "*", "/", "neg", "pow", "exp"] if allow_exp else ["+", "-", "*", "/", "neg", "pow"])
    if kind == "neg":
        return Neg(random_ast(rng, vars, depth - 1, allow_exp))
    if kind == "pow":
        return Pow(random_ast(rng, vars, depth - 1, allow_exp), rng.randint(1, 4))
    if kind == "exp":
        return Exp(random_ast(rng, vars, depth - 1, False))
    return BinOp(kind, random_ast(rng, vars, depth - 1, allow_exp), random_ast(rng, vars, depth - 1, allow_exp))


# -- random factored pairs -----------------------------------------------------------

_x, _y, _z = MPoly.gens(*XYZ)
FACTOR_POOL = (_x, _y, _z, _x + _y, _y - _z, _x + _z, _y ** 2 - _x ** 3, _x * _y + _z)


def random_pair(rng) -> FactoredPair:
    """Valid pair with distinct factors from FACTOR_POOL and exponents 1..3."""
    while True:
        p, q, r = rng.randint(0, 3), rng.randint(0, 2), rng.randint(0, 2)
        if not (p + q) or not (p + r) or (q == r == 0 and p < 2):
            continue
        picks = rng.sample(FACTOR_POOL, p + q + r)
        e = lambda: rng.randint(1, 3)
        return FactoredPair([(h, e(), e()) for h in picks[:p]],
                            [(f, e()) for f in picks[p:p + q]],
                            [(g, e()) for g in picks[p + q:]])
