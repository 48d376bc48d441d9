"""Differential and finite-difference operators whose kernels are exponential spaces.

Two actions are provided for each operator: an exact symbolic action on
``ExponentialSum`` (each factor rescales term coefficients, so membership
questions reduce to exact coefficient arithmetic) and a grid action on
``GridSamples`` for the difference operators.  On a level-k grid the
difference weight uses the physical step 2^-k * tv so that sampled data and
frequencies interact at the correct scale.
"""

from __future__ import annotations

import cmath
import math
import operator as _op
from dataclasses import dataclass

from .errors import EmptyWindowError
from .expspace import (
    ExponentialSum,
    FrequencySet,
    FrequencyVector,
    GridSamples,
)

__all__ = [
    "Direction",
    "IntegerStep",
    "AnnihilatorChain",
    "diff_apply",
    "delta_apply_sum",
    "delta_apply_grid",
    "chain_apply",
    "annihilates",
    "grid_residual",
    "reduced_chain_for_symmetric_set",
    "chain_offsets",
]

ZERO_COEFF_REL_TOL = 1e-12


class Direction:
    """A unit direction in the plane; remembers the magnitude it was built from."""

    __slots__ = ("x", "y", "magnitude")

    def __init__(self, vx: float, vy: float):
        m = math.hypot(vx, vy)
        if m == 0.0:
            raise ValueError("direction must be nonzero")
        object.__setattr__(self, "x", vx / m)
        object.__setattr__(self, "y", vy / m)
        object.__setattr__(self, "magnitude", m)

    def __setattr__(self, name, value):
        raise AttributeError("Direction is immutable")

    def perp(self) -> "Direction":
        return Direction(-self.y, self.x)

    def __repr__(self) -> str:
        return f"Direction({self.x}, {self.y})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Direction) and self.x == other.x and self.y == other.y
        )

    def __hash__(self) -> int:
        return hash((self.x, self.y))


@dataclass(frozen=True)
class IntegerStep:
    """A nonzero integer step vector tv, with t = |tv| and v = tv/|tv| views."""

    dx: int
    dy: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "dx", _op.index(self.dx))
        object.__setattr__(self, "dy", _op.index(self.dy))
        if self.dx == 0 and self.dy == 0:
            raise ValueError("step must be nonzero")

    @property
    def t(self) -> float:
        return math.hypot(self.dx, self.dy)

    @property
    def v(self) -> Direction:
        return Direction(self.dx, self.dy)

    def as_tuple(self) -> tuple[int, int]:
        return (self.dx, self.dy)

    def __neg__(self) -> "IntegerStep":
        return IntegerStep(-self.dx, -self.dy)


def _as_step(s) -> IntegerStep:
    return s if isinstance(s, IntegerStep) else IntegerStep(int(s[0]), int(s[1]))


Factor = tuple[FrequencyVector, "IntegerStep | Direction"]


@dataclass(frozen=True)
class AnnihilatorChain:
    """An ordered product of difference or differential factors.

    Factors with an ``IntegerStep`` act on sums and grids; factors with a
    ``Direction`` act symbolically on sums only.  Application order is the
    list order; the factors commute, so the order only fixes reproducible
    floating-point results.
    """

    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        factors = tuple((g, s) for g, s in self.factors)
        if not factors:
            raise ValueError("chain must have at least one factor")
        for g, s in factors:
            if not isinstance(g, FrequencyVector):
                raise TypeError("chain factor frequency must be a FrequencyVector")
            if not isinstance(s, (IntegerStep, Direction)):
                raise TypeError("chain factor step must be IntegerStep or Direction")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def discrete(cls, pairs) -> "AnnihilatorChain":
        return cls(tuple((g, _as_step(s)) for g, s in pairs))

    @classmethod
    def differential(cls, pairs) -> "AnnihilatorChain":
        return cls(tuple((g, d) for g, d in pairs))

    @classmethod
    def over_set(cls, gamma_set: FrequencySet, steps) -> "AnnihilatorChain":
        """Discrete chain with one factor per member of ``gamma_set``.

        ``steps`` is either a single step applied to every factor or a
        sequence of steps matching the set's length.
        """
        if isinstance(steps, (IntegerStep, tuple)) and not isinstance(steps, list):
            steps = [steps] * len(gamma_set)
        if len(steps) != len(gamma_set):
            raise ValueError("need one step per frequency")
        return cls.discrete(tuple(zip(gamma_set, steps)))

    def is_discrete(self) -> bool:
        return all(isinstance(s, IntegerStep) for _, s in self.factors)


def diff_apply(
    gamma: FrequencyVector, direction: Direction, f: ExponentialSum
) -> ExponentialSum:
    """Directional-derivative-minus-rate operator applied symbolically.

    Each term c*exp(m.z) becomes c*((m - gamma).v)*exp(m.z); a term is
    annihilated exactly when its frequency equals gamma.
    """
    vx, vy = direction.x, direction.y

    def rescale(c: complex, m: FrequencyVector) -> complex:
        w = (m.g1.value - gamma.g1.value) * vx + (m.g2.value - gamma.g2.value) * vy
        return c * w

    return f.map_coefficients(rescale)


def _delta_weight(gamma: FrequencyVector, mu: FrequencyVector, sx: float, sy: float) -> complex:
    return cmath.exp(mu.dot(sx, sy)) - cmath.exp(gamma.dot(sx, sy))


def delta_apply_sum(
    gamma: FrequencyVector, step: IntegerStep, f: ExponentialSum
) -> ExponentialSum:
    """Difference operator F(z + tv) - exp(gamma.tv) F(z), symbolically.

    Each term c*exp(m.z) becomes c*(exp(m.tv) - exp(gamma.tv))*exp(m.z).
    """
    step = _as_step(step)
    sx, sy = float(step.dx), float(step.dy)
    return f.map_coefficients(lambda c, m: c * _delta_weight(gamma, m, sx, sy))


def delta_apply_grid(
    gamma: FrequencyVector, step: IntegerStep, s: GridSamples
) -> GridSamples:
    """Difference operator on grid samples.

    Output at alpha is S(alpha + tv) - exp(gamma . (2^-k tv)) * S(alpha),
    defined on the window where both lookups exist; the level is preserved.
    """
    step = _as_step(step)
    dx, dy = step.dx, step.dy
    new_w = s.width - abs(dx)
    new_h = s.height - abs(dy)
    if new_w < 1 or new_h < 1:
        raise EmptyWindowError(
            f"step ({dx}, {dy}) exhausts a {s.width}x{s.height} window"
        )
    h = s.spacing
    weight = cmath.exp(gamma.dot(dx * h, dy * h))
    r0, c0 = max(0, dy), max(0, dx)      # rows index the second coordinate
    r1, c1 = max(0, -dy), max(0, -dx)
    shifted = s.values[r0 : r0 + new_h, c0 : c0 + new_w]
    base = s.values[r1 : r1 + new_h, c1 : c1 + new_w]
    new_origin = (s.origin[0] + c1, s.origin[1] + r1)
    return GridSamples(s.level, new_origin, new_w, new_h, shifted - weight * base)


def chain_apply(chain: AnnihilatorChain, data):
    """Apply every factor of the chain in list order.

    Accepts an ``ExponentialSum`` (difference and differential factors) or
    ``GridSamples`` (difference factors only) and returns the same kind.
    """
    if isinstance(data, ExponentialSum):
        out = data
        for gamma, s in chain.factors:
            if isinstance(s, Direction):
                out = diff_apply(gamma, s, out)
            else:
                out = delta_apply_sum(gamma, s, out)
        return out
    if isinstance(data, GridSamples):
        out = data
        for gamma, s in chain.factors:
            if not isinstance(s, IntegerStep):
                raise TypeError("differential factors cannot act on grid samples")
            out = delta_apply_grid(gamma, s, out)
        return out
    raise TypeError(f"cannot apply chain to {type(data).__name__}")


def annihilates(
    chain: AnnihilatorChain, f: ExponentialSum, rel_tol: float = ZERO_COEFF_REL_TOL
) -> bool:
    """True when the chain maps f to zero, up to rel_tol of f's largest
    coefficient (chains of a few factors lose at most ~3 digits)."""
    ref = f.max_coefficient()
    if ref == 0.0:
        return True
    out = chain_apply(chain, f)
    return out.max_coefficient() <= rel_tol * ref


def grid_residual(chain: AnnihilatorChain, s: GridSamples) -> float:
    """Sup-norm of the chain output divided by the sup-norm of the input
    (zero input gives zero)."""
    denom = s.max_abs()
    if denom == 0.0:
        return 0.0
    out = chain_apply(chain, s)
    return out.max_abs() / denom


_AXES = ((1, 0), (0, 1))


def reduced_chain_for_symmetric_set(
    g: FrequencyVector, e: tuple[int, int], extra: IntegerStep
) -> AnnihilatorChain:
    """Three-factor annihilator for the symmetric family generated by g.

    Along an axis the difference weights for g and mirror(g) coincide, so
    the pair of axis factors (rates g and -g) plus one plain difference in
    any direction annihilates the whole 5-member family; each output value
    touches at most 6 grid points (offsets extra*{0,1} + e*{0,1,2}).
    """
    e = (int(e[0]), int(e[1]))
    if e not in _AXES:
        raise ValueError("axis must be (1, 0) or (0, 1)")
    extra = _as_step(extra)
    e_step = IntegerStep(*e)
    zero = FrequencyVector.zero()
    return AnnihilatorChain.discrete(((zero, extra), (g, e_step), (-g, e_step)))


def chain_offsets(chain: AnnihilatorChain) -> tuple[tuple[int, int], ...]:
    """Distinct grid offsets a discrete chain reads, relative to its base point."""
    offsets = {(0, 0)}
    for _, s in chain.factors:
        if not isinstance(s, IntegerStep):
            raise TypeError("offsets are defined for discrete chains only")
        offsets |= {(ox + s.dx, oy + s.dy) for ox, oy in offsets}
    return tuple(sorted(offsets))
