"""Split-step maps for the unit harmonic oscillator and their exact
conserved quadratic forms.

The two schemes (kick-then-drift, and the symmetric half-kick sandwich)
are linear maps on (p, q), generated by the nilpotent matrices A (drift)
and B (kick).  Everything here runs on plain Python numbers: pass
Fractions and the arithmetic is exact, pass floats and you get floats.
Constants are written as Fractions so int and Fraction inputs never fall
into float division.

The scale factor of the effective generator is an even power series with
convergence radius 2; this module refuses to sum it at |x| >= 2 instead
of returning a meaningless partial sum, because the breakdown at step 2
is the whole point of the analysis.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Scalar = Union[int, float, Fraction]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class SeriesDivergesError(ValueError):
    """The generator-scale series does not converge at this time step."""


class NoEllipticLogError(ValueError):
    """The map has no elliptic (complex-rotation) real logarithm."""


class PhaseState(NamedTuple):
    p: Scalar
    q: Scalar


class Mat2:
    """2x2 matrix [[a, b], [c, d]] acting on column vectors (p, q)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def zero(cls) -> "Mat2":
        return cls(0, 0, 0, 0)

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    __hash__ = None

    def __add__(self, other):
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other):
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __rmul__(self, scalar):
        return Mat2(scalar * self.a, scalar * self.b, scalar * self.c, scalar * self.d)

    def __matmul__(self, other):
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, state: PhaseState) -> PhaseState:
        return PhaseState(
            self.a * state.p + self.b * state.q,
            self.c * state.p + self.d * state.q,
        )

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def max_abs_diff(self, other: "Mat2") -> float:
        return max(abs(float(x) - float(y)) for x, y in zip(self.entries(), other.entries()))


def commutator(m: Mat2, n: Mat2) -> Mat2:
    return m @ n - n @ m


# Drift generator (adds p to q) and kick generator (subtracts q from p).
# Both square to zero, which is what makes the linear factors exact
# exponentials: exp(xA) = 1 + xA and exp(xB) = 1 + xB.
A = Mat2(0, 0, 1, 0)
B = Mat2(0, -1, 0, 0)


class SchemeId(enum.Enum):
    FIRST_ORDER = "first"
    SECOND_ORDER = "second"


class StabilityClass(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


# ---------------------------------------------------------------------------
# Step maps
# ---------------------------------------------------------------------------


def step_first_order(s: PhaseState, x: Scalar) -> PhaseState:
    """One kick-then-drift step: p' = p - x q, then q' = q + x p'."""
    p = s.p - x * s.q
    q = s.q + x * p
    return PhaseState(p, q)


def step_second_order(s: PhaseState, x: Scalar) -> PhaseState:
    """One symmetric step: half kick, full drift, half kick."""
    half_x = HALF * x
    p = s.p - half_x * s.q
    q = s.q + x * p
    p = p - half_x * q
    return PhaseState(p, q)


_STEPPERS = {
    SchemeId.FIRST_ORDER: step_first_order,
    SchemeId.SECOND_ORDER: step_second_order,
}


def map_matrix(scheme: SchemeId, x: Scalar) -> Mat2:
    """The one-step map as an explicit matrix (determinant exactly 1)."""
    if scheme is SchemeId.FIRST_ORDER:
        return Mat2(1, -x, x, 1 - x * x)
    half_sq = HALF * x * x
    return Mat2(1 - half_sq, -x + QUARTER * x**3, x, 1 - half_sq)


def trajectory(s0: PhaseState, scheme: SchemeId, x: Scalar, n_steps: int) -> list[PhaseState]:
    """Iterate the step map; returns n_steps + 1 states starting at s0.

    With Fraction inputs the whole orbit is exact, which is how the
    conservation statements are proved bit for bit rather than within a
    tolerance.
    """
    if n_steps < 0:
        raise ValueError(f"n_steps must be >= 0, got {n_steps}")
    step = _STEPPERS[scheme]
    states = [s0]
    current = s0
    for _ in range(n_steps):
        current = step(current, x)
        states.append(current)
    return states


# ---------------------------------------------------------------------------
# Effective generator
# ---------------------------------------------------------------------------


def generator_scale(x: Scalar, rel_tol: float = 1e-12) -> float:
    """Sum the even series sum_n (n!)^2/(2n+1)! x^(2n) by partial sums.

    Terms are accumulated until the next one drops below rel_tol of the
    running total.  For |x| >= 2 the series diverges and this raises
    SeriesDivergesError rather than summing: past that step size there is
    no continuous motion for the discrete map to shadow.
    """
    if rel_tol <= 0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol}")
    x = float(x)
    if abs(x) >= 2.0:
        raise SeriesDivergesError(
            f"generator scale series diverges for |x| >= 2 (got x = {x})"
        )
    x_sq = x * x
    term = 1.0
    total = 0.0
    n = 0
    while True:
        total += term
        n += 1
        term *= x_sq * n * n / ((2 * n) * (2 * n + 1))
        if term < rel_tol * total:
            return total + term


def generator_scale_closed_form(x: Scalar) -> float:
    """Closed form 2 asin(x/2) / (x sqrt(1 - x^2/4)) of the scale series.

    Derived, not assumed: validated against partial sums before any test
    leans on it (see the acceptance suite).
    """
    x = float(x)
    if abs(x) >= 2.0:
        raise SeriesDivergesError(
            f"generator scale has no finite value for |x| >= 2 (got x = {x})"
        )
    if x == 0.0:
        return 1.0
    return 2.0 * math.asin(x / 2.0) / (x * math.sqrt(1.0 - x * x / 4.0))


def generator_direction(scheme: SchemeId, x: Scalar) -> Mat2:
    """The unscaled generator: A + B + (x/2)[A,B] for the first-order
    scheme, A + (1 - x^2/4)B for the second.  Exact for rational x."""
    if scheme is SchemeId.FIRST_ORDER:
        half_x = HALF * x
        return Mat2(half_x, -1, 1, -half_x)
    off = 1 - QUARTER * x * x
    return Mat2(0, -off, 1, 0)


def effective_generator(scheme: SchemeId, x: Scalar, rel_tol: float = 1e-12) -> Mat2:
    """Scale times direction: the matrix G with exp(x G) equal to the
    one-step map.  Exists only inside the convergence radius."""
    return generator_scale(x, rel_tol) * generator_direction(scheme, x)


def matrix_log_principal(m: Mat2, det_tol: float = 1e-9) -> Mat2:
    """Principal real logarithm of an elliptic unit-determinant 2x2 map.

    For |trace| < 2 the eigenvalues are exp(+-i theta) with
    theta = arccos(trace/2), and the unique real log with eigenvalues
    +-i theta is (theta/sin theta)(m - (trace/2) I).  Serves as the
    independent cross-check of the effective generator: it never touches
    the series.
    """
    det = float(m.det())
    if abs(det - 1.0) > det_tol:
        raise ValueError(f"matrix_log_principal needs det 1, got {det}")
    half_trace = float(m.trace()) / 2.0
    if abs(half_trace) >= 1.0:
        raise NoEllipticLogError(
            f"no elliptic logarithm: |trace| = {2 * abs(half_trace)} >= 2"
        )
    theta = math.acos(half_trace)
    factor = theta / math.sin(theta)
    shifted = Mat2(
        float(m.a) - half_trace, float(m.b), float(m.c), float(m.d) - half_trace
    )
    return factor * shifted


def mat_exp(m: Mat2) -> Mat2:
    """Closed-form exponential of a real 2x2 matrix (float result).

    Split off the trace; the traceless part N satisfies N^2 = delta I, so
    exp(N) is cosh/sinh or cos/sin in sqrt(|delta|).  Used as the second
    route of the generator cross-checks.
    """
    half_trace = (float(m.a) + float(m.d)) / 2.0
    na = float(m.a) - half_trace
    nb = float(m.b)
    nc = float(m.c)
    delta = na * na + nb * nc
    if delta > 0:
        root = math.sqrt(delta)
        cos_like = math.cosh(root)
        sin_ratio = math.sinh(root) / root
    elif delta < 0:
        root = math.sqrt(-delta)
        cos_like = math.cos(root)
        sin_ratio = math.sin(root) / root
    else:
        cos_like = 1.0
        sin_ratio = 1.0
    scale = math.exp(half_trace)
    return Mat2(
        scale * (cos_like + sin_ratio * na),
        scale * sin_ratio * nb,
        scale * sin_ratio * nc,
        scale * (cos_like - sin_ratio * na),
    )


# ---------------------------------------------------------------------------
# Shadow energy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShadowForm:
    """Symmetric matrix M of the conserved quadratic form (p q) M (p q)^t."""

    m: Mat2

    def __post_init__(self):
        if self.m.b != self.m.c:
            raise ValueError(f"shadow form must be symmetric, got {self.m!r}")

    def energy(self, s: PhaseState):
        return (
            self.m.a * s.p * s.p
            + (self.m.b + self.m.c) * s.p * s.q
            + self.m.d * s.q * s.q
        )

    def det(self):
        return self.m.det()


def shadow_form(scheme: SchemeId, x: Scalar) -> ShadowForm:
    """The conserved form of each scheme; exists for every x, but is
    positive definite only for |x| < 2."""
    if scheme is SchemeId.FIRST_ORDER:
        off = -QUARTER * x
        return ShadowForm(Mat2(HALF, off, off, HALF))
    return ShadowForm(Mat2(HALF, 0, 0, HALF * (1 - QUARTER * x * x)))


def shadow_energy(s: PhaseState, scheme: SchemeId, x: Scalar):
    """The step-size-dependent energy the discrete map conserves exactly."""
    return shadow_form(scheme, x).energy(s)


# ---------------------------------------------------------------------------
# Stability
# ---------------------------------------------------------------------------


def stability_classify(scheme: SchemeId, x: Scalar) -> StabilityClass:
    """Classify the one-step map by |trace| against 2.

    Both schemes share trace 2 - x^2.  Exact comparisons, so rational
    input at the boundary classifies exactly.
    """
    trace = map_matrix(scheme, x).trace()
    if abs(trace) < 2:
        return StabilityClass.ELLIPTIC
    if abs(trace) == 2:
        return StabilityClass.PARABOLIC
    return StabilityClass.HYPERBOLIC


def spectral_radius(scheme: SchemeId, x: Scalar) -> float:
    """Largest eigenvalue magnitude of the one-step map."""
    trace = abs(float(map_matrix(scheme, x).trace()))
    if trace <= 2.0:
        return 1.0
    return (trace + math.sqrt(trace * trace - 4.0)) / 2.0


def rotation_angle(scheme: SchemeId, x: Scalar) -> float:
    """arccos(trace/2); the per-step phase advance in the elliptic regime."""
    trace = float(map_matrix(scheme, x).trace())
    if abs(trace) > 2.0:
        raise NoEllipticLogError(f"|trace| = {abs(trace)} > 2: no rotation angle")
    return math.acos(trace / 2.0)


# ---------------------------------------------------------------------------
# Structural identities
# ---------------------------------------------------------------------------


def check_generator_relations() -> list[tuple[str, bool]]:
    """Verify the five exact identities the whole construction rests on."""
    ab = commutator(A, B)
    checks = [
        ("A^2 = 0", A @ A == Mat2.zero()),
        ("B^2 = 0", B @ B == Mat2.zero()),
        ("ABA = -A", A @ B @ A == -A),
        ("BAB = -B", B @ A @ B == -B),
        ("[A,[A,B]] = 2A", commutator(A, ab) == 2 * A),
        ("[B,[A,B]] = -2B", commutator(B, ab) == -2 * B),
    ]
    return checks
