"""Automatic identification of the unknown frequency pair from grid samples.

The workhorse is a six-point quotient: with D(b) = S(b + tv) - S(b), the
ratio (D(a + 2e) + D(a)) / (2 D(a + e)) equals cosh of the frequency
component along axis e (at the grid's physical step).  When a step tv makes
the denominator vanish, the next step from a fixed fallback list is tried;
if every step fails, a five-point constancy probe decides whether the data
is flat along that axis (frequency component zero) or simply not in the
model space.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from statistics import median

from .errors import DenominatorZeroError, InvalidCoshError, OutOfWindowError
from .expspace import Frequency, FrequencyVector, GridSamples
from .operators import IntegerStep, grid_residual, reduced_chain_for_symmetric_set

__all__ = [
    "BUTTERFLY_UNION_OFFSETS",
    "StencilDirectionSet",
    "CoshEstimate",
    "Classification",
    "DetectionReport",
    "cosh_from_stencil",
    "classify_constant",
    "cosh_to_frequency",
    "detect",
    "detect_univariate",
]

DEFAULT_TOL_DEN = 1e-10
DEFAULT_TOL_IM = 1e-9
DEFAULT_TOL_RES = 1e-8

# Union of the horizontal, vertical and diagonal insertion stencils of the
# extended-butterfly scheme: the 14 admissible offsets around a base point.
BUTTERFLY_UNION_OFFSETS: frozenset[tuple[int, int]] = frozenset(
    {
        (0, 0),
        (1, 0), (-1, 0), (0, 1), (0, -1),
        (1, 1), (-1, -1), (-1, 1), (1, -1),
        (-2, 0), (0, -2), (-2, -1), (-1, -2), (-2, -2),
    }
)

_AXIS_X = (1, 0)
_AXIS_Y = (0, 1)


def _steps(*pairs) -> tuple[IntegerStep, ...]:
    return tuple(IntegerStep(*p) for p in pairs)


@dataclass(frozen=True)
class StencilDirectionSet:
    """Fallback step vectors per axis, drawn from the butterfly stencil union.

    Either list alone suffices for the constancy argument: if the plain
    difference vanishes for all four steps, the five probed points carry
    one constant value.
    """

    set_x: tuple[IntegerStep, ...] = field(
        default_factory=lambda: _steps((0, 1), (1, 1), (0, -1), (-1, -1))
    )
    set_y: tuple[IntegerStep, ...] = field(
        default_factory=lambda: _steps((1, 0), (1, 1), (-1, 0), (-1, -1))
    )

    def __post_init__(self) -> None:
        for s in self.set_x + self.set_y:
            if s.as_tuple() not in BUTTERFLY_UNION_OFFSETS:
                raise ValueError(f"step {s.as_tuple()} outside the stencil union")

    def for_axis(self, e: tuple[int, int]) -> tuple[IntegerStep, ...]:
        if tuple(e) == _AXIS_X:
            return self.set_x
        if tuple(e) == _AXIS_Y:
            return self.set_y
        raise ValueError("axis must be (1, 0) or (0, 1)")


DEFAULT_STENCILS = StencilDirectionSet()


@dataclass(frozen=True)
class CoshEstimate:
    """One cosh value extracted from a six-point stencil."""

    axis: tuple[int, int]
    value: complex
    base: tuple[int, int]
    step_used: IntegerStep
    denominator_magnitude: float

    def __post_init__(self) -> None:
        if self.denominator_magnitude <= 0.0:
            raise ValueError("denominator magnitude must be positive")


class Classification(enum.Enum):
    CONSTANT = "Constant"
    FREQUENCY = "Frequency"
    INCONSISTENT = "Inconsistent"


@dataclass(frozen=True)
class DetectionReport:
    """Outcome of frequency detection at one base point."""

    classification: Classification
    frequency: FrequencyVector | None
    estimates: tuple[CoshEstimate, ...]
    residual: float
    reason: str = ""


def _plain_difference(s: GridSamples, beta: tuple[int, int], step: IntegerStep) -> complex:
    return s.value_at((beta[0] + step.dx, beta[1] + step.dy)) - s.value_at(beta)


def cosh_from_stencil(
    s: GridSamples,
    alpha: tuple[int, int],
    e: tuple[int, int],
    step: IntegerStep,
    tol_den: float = DEFAULT_TOL_DEN,
) -> CoshEstimate:
    """Extract cosh(frequency . e * 2^-level) from six samples around alpha.

    With D(b) = S(b + step) - S(b), returns
    (D(alpha + 2e) + D(alpha)) / (2 D(alpha + e)).  Raises
    ``DenominatorZeroError`` when |D(alpha + e)| <= tol_den * sup|S| and
    ``OutOfWindowError`` when any of the six lookups leaves the window.
    """
    e = (int(e[0]), int(e[1]))
    if e not in (_AXIS_X, _AXIS_Y):
        raise ValueError("axis must be (1, 0) or (0, 1)")
    d0 = _plain_difference(s, alpha, step)
    d1 = _plain_difference(s, (alpha[0] + e[0], alpha[1] + e[1]), step)
    d2 = _plain_difference(s, (alpha[0] + 2 * e[0], alpha[1] + 2 * e[1]), step)
    den_mag = abs(d1)
    if den_mag <= tol_den * s.max_abs():
        raise DenominatorZeroError(
            f"plain difference vanishes at {tuple(alpha)} + {e} for step {step.as_tuple()}"
        )
    return CoshEstimate(
        axis=e,
        value=(d2 + d0) / (2.0 * d1),
        base=(int(alpha[0]), int(alpha[1])),
        step_used=step,
        denominator_magnitude=den_mag,
    )


def classify_constant(
    s: GridSamples,
    alpha: tuple[int, int],
    e: tuple[int, int],
    tol_den: float = DEFAULT_TOL_DEN,
    stencils: StencilDirectionSet = DEFAULT_STENCILS,
) -> bool:
    """Probe the five triangle-pair points around alpha + e for constancy.

    True when the plain difference vanishes (within tol_den * sup|S|) for
    every fallback step of the axis; within the model space this certifies
    a constant function, i.e. frequency zero.
    """
    base = (alpha[0] + e[0], alpha[1] + e[1])
    tol = tol_den * s.max_abs()
    return all(
        abs(_plain_difference(s, base, step)) <= tol
        for step in stencils.for_axis(e)
    )


def cosh_to_frequency(
    c: complex, scale: float, tol_im: float = DEFAULT_TOL_IM
) -> Frequency:
    """Invert a cosh estimate taken at physical step ``scale`` to the
    level-0 frequency component.

    Values >= 1 map to nonnegative real rates, values in (-1, 1) to
    imaginary rates; anything else (including rates that would land on or
    beyond i*pi) is rejected as outside the admissible domain.
    """
    c = complex(c)
    if abs(c.imag) > tol_im * (1.0 + abs(c)):
        raise InvalidCoshError(f"cosh estimate {c} has a non-real part")
    x = c.real
    if x >= 1.0:
        return Frequency(math.acosh(x) / scale)
    if x > -1.0:
        rate = math.acos(x) / scale
        if rate >= math.pi:
            raise InvalidCoshError(
                f"imaginary rate {rate} from estimate {x} is not below pi"
            )
        return Frequency(complex(0.0, rate))
    raise InvalidCoshError(f"cosh estimate {x} is not above -1")


def _axis_single(s, alpha, e, steps, tol_den) -> CoshEstimate | None:
    for step in steps:
        try:
            return cosh_from_stencil(s, alpha, e, step, tol_den)
        except DenominatorZeroError:
            continue
    return None


def _stencil_fits(s: GridSamples, alpha, e, step) -> bool:
    for mu in (0, 1, 2):
        for lam in (0, 1):
            p = (
                alpha[0] + mu * e[0] + lam * step.dx,
                alpha[1] + mu * e[1] + lam * step.dy,
            )
            if not s.contains(p):
                return False
    return True


def _axis_robust(s, alpha, e, steps, tol_den) -> CoshEstimate | None:
    """Median-of-estimates sweep over every admissible base point and step."""
    values: list[float] = []
    dens: list[float] = []
    for step in steps:
        for base in s.indices():
            if not _stencil_fits(s, base, e, step):
                continue
            try:
                est = cosh_from_stencil(s, base, e, step, tol_den)
            except DenominatorZeroError:
                continue
            values.append(est.value.real)
            dens.append(est.denominator_magnitude)
    if not values:
        return None
    return CoshEstimate(
        axis=tuple(e),
        value=complex(median(values), 0.0),
        base=(int(alpha[0]), int(alpha[1])),
        step_used=steps[0],
        denominator_magnitude=median(dens),
    )


def detect(
    s: GridSamples,
    alpha: tuple[int, int],
    mode: str = "single",
    tol_den: float = DEFAULT_TOL_DEN,
    tol_res: float = DEFAULT_TOL_RES,
    tol_im: float = DEFAULT_TOL_IM,
    stencils: StencilDirectionSet = DEFAULT_STENCILS,
) -> DetectionReport:
    """Identify the frequency pair of grid data assumed to lie in a
    symmetric exponential family.

    Per axis, fallback steps are tried in order and the first stencil with
    a usable denominator wins ("single" mode); "robust" mode instead takes
    the median over all base points and steps.  Axes whose denominators all
    vanish are probed for constancy and contribute a zero component.  The
    combined frequency is accepted only if the reduced three-factor
    annihilator built from it leaves a relative residual below ``tol_res``
    on both axes.
    """
    if mode not in ("single", "robust"):
        raise ValueError(f"unknown mode {mode!r}")
    axis_fn = _axis_single if mode == "single" else _axis_robust
    alpha = (int(alpha[0]), int(alpha[1]))

    estimates: list[CoshEstimate] = []
    components: list[Frequency] = []
    extras: list[IntegerStep] = []
    constant_axes = 0
    scale = s.spacing
    for e in (_AXIS_X, _AXIS_Y):
        steps = stencils.for_axis(e)
        est = axis_fn(s, alpha, e, steps, tol_den)
        if est is None:
            if not classify_constant(s, alpha, e, tol_den, stencils):
                return DetectionReport(
                    Classification.INCONSISTENT,
                    None,
                    tuple(estimates),
                    math.nan,
                    reason=f"axis {e}: all denominators vanish but data is not constant",
                )
            constant_axes += 1
            components.append(Frequency(0.0))
            extras.append(steps[0])
        else:
            estimates.append(est)
            extras.append(est.step_used)
            try:
                components.append(cosh_to_frequency(est.value, scale, tol_im))
            except InvalidCoshError as exc:
                return DetectionReport(
                    Classification.INCONSISTENT,
                    None,
                    tuple(estimates),
                    math.nan,
                    reason=f"axis {e}: {exc}",
                )

    g = FrequencyVector(components[0], components[1])
    residual = max(
        grid_residual(reduced_chain_for_symmetric_set(g, e, extra), s)
        for e, extra in zip((_AXIS_X, _AXIS_Y), extras)
    )
    if residual > tol_res:
        return DetectionReport(
            Classification.INCONSISTENT,
            None,
            tuple(estimates),
            residual,
            reason=f"annihilator residual {residual:.3e} exceeds {tol_res:.3e}",
        )
    if constant_axes == 2:
        return DetectionReport(Classification.CONSTANT, None, tuple(estimates), residual)
    return DetectionReport(Classification.FREQUENCY, g, tuple(estimates), residual)


def detect_univariate(
    samples,
    level: int,
    alpha: int,
    tol_den: float = DEFAULT_TOL_DEN,
    tol_im: float = DEFAULT_TOL_IM,
) -> Frequency:
    """Recover the rate of 1-D data in span{1, exp(g z), exp(-g z)} from the
    four consecutive samples alpha-1 .. alpha+2.

    Solves the four-term relation for c = cosh(2^-level * g):
    (2c + 1) (f(a+1) - f(a)) = f(a+2) - f(a-1).  Constant data maps to rate
    zero; a vanishing denominator on non-constant data is an error.
    """
    vals = [complex(v) for v in samples]
    n = len(vals)
    if not (0 <= alpha - 1 and alpha + 2 < n):
        raise OutOfWindowError(
            f"need indices {alpha - 1}..{alpha + 2} inside 0..{n - 1}"
        )
    sup = max(abs(v) for v in vals)
    window = vals[alpha - 1 : alpha + 3]
    den = window[2] - window[1]
    if abs(den) <= tol_den * sup:
        spread = max(abs(w - window[0]) for w in window)
        if spread <= tol_den * sup:
            return Frequency(0.0)
        raise DenominatorZeroError(
            f"f({alpha + 1}) - f({alpha}) vanishes on non-constant data"
        )
    c = ((window[3] - window[0]) / den - 1.0) / 2.0
    return cosh_to_frequency(c, math.ldexp(1.0, -level), tol_im)
