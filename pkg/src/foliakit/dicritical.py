"""Dicritical invariant surfaces from the factor structure of two first integrals.

Given two independent holomorphic first integrals already split into
irreducible factors,

    F = h_1^k_1 ... h_p^k_p * f_1^a_1 ... f_q^a_q
    G = h_1^l_1 ... h_p^l_p * g_1^b_1 ... g_r^b_r

the existence of an invariant surface carrying a dicritical foliation depends
only on the exponent combinatorics: how many strict jumps appear in the sorted
ratios k_i/l_i, and whether q, r are positive. Factorization itself is never
attempted; callers supply the factors.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .algebra import MPoly, RationalFunction, prod
from .errors import PreconditionError, StructuralError


@dataclass(frozen=True)
class FactoredPair:
    common: tuple = ()   # (h, k, l)
    only_f: tuple = ()   # (f, alpha)
    only_g: tuple = ()   # (g, beta)

    def __post_init__(self):
        object.__setattr__(self, "common", tuple(tuple(c) for c in self.common))
        object.__setattr__(self, "only_f", tuple(tuple(c) for c in self.only_f))
        object.__setattr__(self, "only_g", tuple(tuple(c) for c in self.only_g))
        polys = self.factors()
        if not polys:
            raise StructuralError("no factors given")
        vars = polys[0].vars
        for p in polys:
            if not isinstance(p, MPoly):
                raise TypeError("factors must be MPoly instances")
            if p.vars != vars:
                raise StructuralError("factors live over different variable sets")
            if p.is_constant():
                raise StructuralError(f"factor {p} is a unit")
        for h, k, l in self.common:
            _check_exponent(k), _check_exponent(l)
        for _, a in self.only_f + self.only_g:
            _check_exponent(a)
        if not (self.p + self.q) or not (self.p + self.r):
            raise StructuralError("both first integrals must be non-constant")
        if self.q == 0 and self.r == 0 and self.p < 2:
            raise StructuralError("with q = r = 0 at least two common factors are needed, "
                                  "otherwise the integrals are dependent")
        for i in range(len(polys)):
            for j in range(i + 1, len(polys)):
                if polys[i].is_proportional_to(polys[j]):
                    raise StructuralError(f"factors {polys[i]} and {polys[j]} are proportional")

    @property
    def p(self) -> int:
        return len(self.common)

    @property
    def q(self) -> int:
        return len(self.only_f)

    @property
    def r(self) -> int:
        return len(self.only_g)

    @property
    def vars(self) -> tuple:
        return self.factors()[0].vars

    def factors(self) -> list:
        return [c[0] for c in self.common] + [c[0] for c in self.only_f] + [c[0] for c in self.only_g]

    def ratios(self) -> list:
        return [Fraction(k, l) for _, k, l in self.common]

    def first(self) -> MPoly:
        return prod([h ** k for h, k, _ in self.common] + [f ** a for f, a in self.only_f], self.vars)

    def second(self) -> MPoly:
        return prod([h ** l for h, _, l in self.common] + [g ** b for g, b in self.only_g], self.vars)

    def validate_against(self, f: MPoly, g: MPoly) -> bool:
        """True when the factor lists multiply out to ``f`` and ``g``."""
        return self.first() == f and self.second() == g

    def power(self, nf: int = 1, ng: int = 1) -> "FactoredPair":
        """Factor data of ``(F**nf, G**ng)``."""
        return FactoredPair(tuple((h, k * nf, l * ng) for h, k, l in self.common),
                            tuple((f, a * nf) for f, a in self.only_f),
                            tuple((g, b * ng) for g, b in self.only_g))

    def swapped(self) -> "FactoredPair":
        return FactoredPair(tuple((h, l, k) for h, k, l in self.common), self.only_g, self.only_f)


def _check_exponent(e) -> None:
    if not isinstance(e, int) or isinstance(e, bool) or e < 1:
        raise StructuralError(f"exponents must be positive integers, got {e!r}")


def normalize_ordering(fp: FactoredPair) -> FactoredPair:
    """Sort common factors by ``k/l`` ascending, ties by graded-lex order."""
    common = sorted(fp.common, key=lambda c: (Fraction(c[1], c[2]), c[0].sort_key()))
    return replace(fp, common=tuple(common))


def count_strict_inequalities(fp: FactoredPair) -> int:
    r = normalize_ordering(fp).ratios()
    return sum(1 for a, b in zip(r, r[1:]) if a < b)


class RestrictionKind(str, Enum):
    CONSTANT = "constant"
    HOLOMORPHIC = "holomorphic"
    MEROMORPHIC = "meromorphic-nonholomorphic"


@dataclass(frozen=True)
class Restriction:
    """``F**m / G**n`` with the surface factor cancelled, as (factor, exponent)
    pairs; exponents of zero are dropped."""

    surface: MPoly
    f_power: int
    g_power: int
    factors: tuple

    @property
    def kind(self) -> RestrictionKind:
        exps = [e for _, e in self.factors]
        if not exps:
            return RestrictionKind.CONSTANT
        if all(e > 0 for e in exps):
            return RestrictionKind.HOLOMORPHIC
        return RestrictionKind.MEROMORPHIC

    @property
    def indeterminate(self) -> bool:
        """Both a zero and a pole block are present (a point of indeterminacy
        at the origin), which is what makes the restricted foliation dicritical."""
        exps = [e for _, e in self.factors]
        return any(e > 0 for e in exps) and any(e < 0 for e in exps)

    def numerator(self) -> MPoly:
        return prod([f ** e for f, e in self.factors if e > 0], self.surface.vars)

    def denominator(self) -> MPoly:
        return prod([f ** -e for f, e in self.factors if e < 0], self.surface.vars)

    def as_rational_function(self) -> RationalFunction:
        return RationalFunction(self.numerator(), self.denominator())

    def __str__(self) -> str:
        return f"{self.as_rational_function()} on {{{self.surface} = 0}}"


def restriction_integral(fp: FactoredPair, i: int) -> Restriction:
    """Exponent arithmetic for ``F**l_i / G**k_i``; the ``h_i`` power cancels."""
    if not 0 <= i < fp.p:
        raise IndexError(f"common-factor index {i} out of range for p = {fp.p}")
    h, ki, li = fp.common[i]
    factors = []
    for j, (hj, kj, lj) in enumerate(fp.common):
        e = kj * li - lj * ki
        if j != i and e:
            factors.append((hj, e))
    factors += [(f, a * li) for f, a in fp.only_f]
    factors += [(g, -b * ki) for g, b in fp.only_g]
    return Restriction(h, li, ki, tuple(factors))


class Case(str, Enum):
    NONE = "none"
    CASE1 = "case1"
    CASE2 = "case2"
    CASE3 = "case3"


@dataclass(frozen=True)
class DicriticalVerdict:
    case: Case
    surface_index: int | None = None
    witness: Restriction | None = None
    reason: str = ""

    @property
    def dicritical(self) -> bool:
        return self.case is not Case.NONE

    def __str__(self) -> str:
        if not self.dicritical:
            return f"not dicritical ({self.reason})"
        return f"dicritical, {self.case.value}: witness {self.witness}"


def classify(fp: FactoredPair) -> DicriticalVerdict:
    """Decide whether some invariant surface carries a dicritical foliation.

    The pair is normalized first. Witnesses are restriction integrals whose
    numerator and denominator both vanish at the origin.
    """
    fp = normalize_ordering(fp)
    if fp.p == 0:
        return DicriticalVerdict(Case.NONE, reason="no common factors")
    ratios = fp.ratios()
    jumps = [j for j in range(fp.p - 1) if ratios[j] < ratios[j + 1]]
    if not jumps and (fp.q == 0 or fp.r == 0):
        raise PreconditionError(
            "pair is not in simplified form: all ratios k_i/l_i are equal and one of q, r is "
            "zero; divide out the common block (replace F, G by F^l/G^k-free forms) first")
    if len(jumps) >= 2:
        i = next(j for j in range(1, fp.p - 1) if ratios[0] < ratios[j] < ratios[-1])
        return DicriticalVerdict(Case.CASE1, i, restriction_integral(fp, i),
                                 "at least two strict inequalities")
    if len(jumps) == 1:
        if fp.q + fp.r == 0:
            return DicriticalVerdict(Case.NONE, reason="one strict inequality and q = r = 0: "
                                     "each block is a holomorphic integral on the other")
        # F = a1^.. a2^.. g, G = a1^.. a2^.. h, split at the jump
        upper = jumps[0] + 1
        i = upper if fp.q >= 1 else 0
        return DicriticalVerdict(Case.CASE2, i, restriction_integral(fp, i),
                                 "exactly one strict inequality with q + r >= 1")
    return DicriticalVerdict(Case.CASE3, 0, restriction_integral(fp, 0),
                             "no strict inequality with p >= 1")
