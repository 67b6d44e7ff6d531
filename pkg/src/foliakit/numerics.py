"""Floating-point leaf tracing and pointwise checks of the blown-up conjugacy.

Leaves are traced with classical fixed-step RK4 along a ray ``tau = s * direction``
of complex time. The conjugacy between the two blown-up foliations is evaluated
in the chart ``(x, t, z)`` where the transcendent integral reads
``(1/t) exp(t^2 x + t)``.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DomainError
from .foliation import DarbouxFunction, VectorField

DEFAULT_STEP = 1e-3
DEFAULT_ESCAPE = 2.0
DEFAULT_DRIFT_TOL = 1e-6
DENOMINATOR_FLOOR = 1e-8
SERIES_THRESHOLD = 1e-4


@dataclass
class LeafTrajectory:
    times: list
    states: list
    step: float
    direction: complex
    escaped: bool = False

    @property
    def samples(self) -> list:
        return list(zip(self.times, self.states))

    def __len__(self) -> int:
        return len(self.states)

    @property
    def final(self) -> tuple:
        return self.states[-1]


def _rk4_step(f, y: tuple, h: complex) -> tuple:
    k1 = f(y)
    k2 = f(tuple(a + 0.5 * h * b for a, b in zip(y, k1)))
    k3 = f(tuple(a + 0.5 * h * b for a, b in zip(y, k2)))
    k4 = f(tuple(a + h * b for a, b in zip(y, k3)))
    return tuple(a + h / 6 * (b1 + 2 * b2 + 2 * b3 + b4)
                 for a, b1, b2, b3, b4 in zip(y, k1, k2, k3, k4))


def trace_leaf(v: VectorField, start: Sequence[complex], direction: complex = 1, step: float = DEFAULT_STEP,
               n_steps: int = 1000, escape_radius: float = DEFAULT_ESCAPE,
               max_step: float | None = 1e-2) -> LeafTrajectory:
    """Integrate ``dy/dtau = v(y)`` along ``tau = n * step * direction``.

    Stops early, with ``escaped`` set, once the max-norm of the state exceeds
    ``escape_radius``. ``max_step`` guards the default accuracy regime; pass
    ``None`` to lift it (the step-halving study uses coarser steps).
    """
    direction = complex(direction)
    if abs(abs(direction) - 1) > 1e-12:
        raise ValueError(f"direction must have modulus 1, got |{direction}| = {abs(direction)}")
    if step <= 0 or (max_step is not None and step > max_step):
        raise ValueError(f"step must lie in (0, {max_step}]")
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    y = tuple(complex(c) for c in start)
    if len(y) != len(v.vars):
        raise ValueError(f"start has {len(y)} coordinates, field has {len(v.vars)}")
    if max(abs(c) for c in y) > 1:
        raise ValueError("start must lie in the closed unit polydisc")
    f = v.compile_numeric()
    h = step * direction
    times, states = [0j], [y]
    escaped = False
    for n in range(1, n_steps + 1):
        y = _rk4_step(f, y, h)
        if not all(cmath.isfinite(c) for c in y) or max(abs(c) for c in y) > escape_radius:
            escaped = True
            break
        times.append(n * h)
        states.append(y)
    return LeafTrajectory(times, states, step, direction, escaped)


@dataclass(frozen=True)
class DriftReport:
    max_drift: float
    values: tuple
    warning_index: int | None = None

    @property
    def complete(self) -> bool:
        return self.warning_index is None


def _denominators(d: DarbouxFunction) -> list:
    return [p.compile_numeric() for p in (d.prefactor.den, d.exponent.den) if not p.is_constant()]


def evaluate_numeric(d: DarbouxFunction):
    """Fast complex evaluator of ``R e^S``."""
    rn, rd = d.prefactor.num.compile_numeric(), d.prefactor.den.compile_numeric()
    if d.exponent.is_zero():
        return lambda pt: rn(pt) / rd(pt)
    sn, sd = d.exponent.num.compile_numeric(), d.exponent.den.compile_numeric()
    return lambda pt: rn(pt) / rd(pt) * cmath.exp(sn(pt) / sd(pt))


def conservation_drift(traj: LeafTrajectory, f) -> DriftReport:
    """Maximum relative change of ``f`` along the samples of ``traj``.

    Stops at the first sample where a denominator falls below 1e-8 in modulus
    and reports that index.
    """
    d = DarbouxFunction.coerce(f)
    dens = _denominators(d)
    ev = evaluate_numeric(d)
    values = []
    warn = None
    for idx, state in enumerate(traj.states):
        if any(abs(g(state)) < DENOMINATOR_FLOOR for g in dens):
            warn = idx
            break
        values.append(ev(state))
    if not values:
        return DriftReport(math.nan, (), warn)
    ref = values[0]
    scale = max(abs(ref), 1e-30)
    drift = max(abs(val - ref) for val in values) / scale
    return DriftReport(drift, tuple(values), warn)


def monotone_trend(seq: Sequence[float]) -> int:
    """+1 if strictly increasing, -1 if strictly decreasing, else 0."""
    diffs = [b - a for a, b in zip(seq, seq[1:])]
    if diffs and all(d > 0 for d in diffs):
        return 1
    if diffs and all(d < 0 for d in diffs):
        return -1
    return 0


def saddle_trends(traj: LeafTrajectory, first: int = 0, last: int = 2) -> tuple:
    """Monotonicity of ``|first coordinate|`` and ``|last coordinate|`` along
    the samples."""
    return (monotone_trend([abs(s[first]) for s in traj.states]),
            monotone_trend([abs(s[last]) for s in traj.states]))


# -- conjugacy between the blown-up foliations --------------------------------

def cexpm1(w: complex) -> complex:
    """``exp(w) - 1`` without cancellation for small ``|w|``."""
    w = complex(w)
    a, b = w.real, w.imag
    em1 = math.expm1(a)
    s = math.sin(b / 2)
    # e^a cos b - 1 = expm1(a) cos b - 2 sin^2(b/2)
    return complex(em1 * math.cos(b) - 2 * s * s, math.exp(a) * math.sin(b))


def ratio_over_expm1(w: complex) -> complex:
    """``w / (exp(w) - 1)`` with value 1 at ``w = 0``.

    Below ``|w| = 1e-4`` the reciprocal series ``1 / sum_{n>=1} w^(n-1)/n!`` is
    used.
    """
    w = complex(w)
    if w == 0:
        return 1 + 0j
    if abs(w) < SERIES_THRESHOLD:
        s = 1 + w / 2 + w * w / 6 + w ** 3 / 24 + w ** 4 / 120
        return 1 / s
    return w / cexpm1(w)


def chart_transcendent(x: complex, t: complex) -> complex:
    """``(1/t) exp(t^2 x + t)``."""
    return cmath.exp(t * t * x + t) / t


def chart_axial(x: complex, t: complex, z: complex) -> complex:
    """``-t x e^t z``, the transported axial integral."""
    return -t * x * cmath.exp(t) * z


@dataclass(frozen=True)
class ConjugacyEval:
    point: tuple
    phi1: complex
    phi2: complex
    phi3: complex
    branch: str = "principal"


def eval_conjugacy(point: Sequence[complex]) -> ConjugacyEval:
    """Components of the conjugacy at ``(x, t, z)``.

    ``phi1 = H(0, t) - H(x, t)`` is computed as ``-(e^t/t) expm1(t^2 x)``;
    ``phi2`` is the principal square root of ``H(0, t) - H(0, 1)``;
    ``phi3 = -t^2 x / (1 - e^{t^2 x}) z`` extended by ``z`` on ``x = 0``.
    """
    x, t, z = (complex(c) for c in point)
    if t == 0:
        raise DomainError("t = 0 is outside the chart domain of the transcendent integral")
    w = t * t * x
    phi1 = -(cmath.exp(t) / t) * cexpm1(w)
    phi2 = cmath.sqrt(cmath.exp(t) / t - math.e)
    phi3 = z if x == 0 else ratio_over_expm1(w) * z
    return ConjugacyEval((x, t, z), phi1, phi2, phi3)


@dataclass(frozen=True)
class ConjugacyResiduals:
    r_g: float
    r_h: float
    scale_g: float
    scale_h: float
    phi3_gap: float  # |phi3 - z|
    bound: float     # |t^2 x|

    @property
    def rel_g(self) -> float:
        return self.r_g / self.scale_g if self.scale_g else self.r_g

    @property
    def rel_h(self) -> float:
        return self.r_h / self.scale_h if self.scale_h else self.r_h


def conjugacy_identity_residuals(point: Sequence[complex]) -> ConjugacyResiduals:
    """Residuals of ``phi1 * phi3 = -t x e^t z`` and of the shifted identity
    ``phi2^2 - phi1 = H(x, t) - H(0, 1)``."""
    ev = eval_conjugacy(point)
    x, t, z = ev.point
    g = chart_axial(x, t, z)
    lhs_g = ev.phi1 * ev.phi3
    h = chart_transcendent(x, t)
    lhs_h = ev.phi2 ** 2 - ev.phi1
    rhs_h = h - math.e
    return ConjugacyResiduals(
        abs(lhs_g - g), abs(lhs_h - rhs_h),
        max(abs(g), abs(lhs_g)), max(abs(h), math.e),
        abs(ev.phi3 - z), abs(t * t * x))


def conjugacy_grid(nx: int = 20, nt: int = 20, nz: int = 5, x_radius: float = 0.3,
                   t_min: float = 0.5, t_max: float = 2.0, z_radius: float = 1.0) -> list:
    """Deterministic complex grid: moduli spread over the allowed ranges,
    arguments rotating so each axis visits several directions. The first x
    value is exactly 0."""
    def ring(n, lo, hi, turn):
        out = []
        for k in range(n):
            r = lo + (hi - lo) * k / max(n - 1, 1)
            out.append(r * cmath.exp(1j * turn * k))
        return out
    xs = ring(nx, 0.0, x_radius, 2 * math.pi / 7)
    ts = ring(nt, t_min, t_max, 2 * math.pi / 11)
    zs = ring(nz, 0.2 * z_radius, z_radius, 2 * math.pi / 5)
    return [(x, t, z) for x in xs for t in ts for z in zs]


# -- CSV output -----------------------------------------------------------------

def trajectory_csv(traj: LeafTrajectory, vars: Sequence[str], integrals: Mapping[str, object] | None = None) -> str:
    """Samples as CSV: step, real and imaginary parts of every coordinate, and
    of each named integral."""
    integrals = dict(integrals or {})
    evs = {name: evaluate_numeric(DarbouxFunction.coerce(f)) for name, f in integrals.items()}
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["step"]
    for v in vars:
        header += [f"{v}_re", f"{v}_im"]
    for name in evs:
        header += [f"{name}_re", f"{name}_im"]
    w.writerow(header)
    for n, state in enumerate(traj.states):
        row = [n]
        for c in state:
            row += [repr(c.real), repr(c.imag)]
        for ev in evs.values():
            try:
                val = complex(ev(state))
                row += [repr(val.real), repr(val.imag)]
            except ZeroDivisionError:
                row += ["nan", "nan"]
        w.writerow(row)
    return buf.getvalue()


def residual_table_csv(points: Sequence, rows: Sequence[ConjugacyResiduals]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x_re", "x_im", "t_re", "t_im", "z_re", "z_im", "r_G", "r_H", "rel_G", "rel_H", "phi3_gap", "bound"])
    for (x, t, z), r in zip(points, rows):
        x, t, z = complex(x), complex(t), complex(z)
        w.writerow([repr(v) for v in (x.real, x.imag, t.real, t.imag, z.real, z.imag,
                                       r.r_g, r.r_h, r.rel_g, r.rel_h, r.phi3_gap, r.bound)])
    return buf.getvalue()
