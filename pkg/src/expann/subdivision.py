"""Level-dependent interpolatory refinement reproducing span{1, e^(gz), e^(-gz)}.

Refinement rules for exponential data must change with the level: the
quantity that drives them is c_k = cosh(2^-k * g), which obeys the
half-argument recursion c_{k+1} = sqrt((c_k + 1) / 2).  The inserted-point
weights follow from two exactness conditions (constants and the symmetric
exponential pair), solved as a linear system per level.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .detection import detect_univariate
from .errors import InvalidParameterError, SingularRuleError, TooShortError
from .expspace import Frequency

__all__ = [
    "LevelParameter",
    "InsertionRule",
    "refine_parameter",
    "synthesize_rule",
    "refine",
    "auto_refine",
]


@dataclass(frozen=True)
class LevelParameter:
    """The level-k rule driver c_k = cosh(2^-k * g)."""

    level: int
    cosh_value: complex

    @classmethod
    def from_frequency(cls, g: Frequency | complex, level: int) -> "LevelParameter":
        rate = g.value if isinstance(g, Frequency) else complex(g)
        return cls(level, cmath.cosh(math.ldexp(1.0, -level) * rate))


@dataclass(frozen=True)
class InsertionRule:
    """Symmetric four-point insertion weights (outer, inner, inner, outer)."""

    outer: complex
    inner: complex

    def __post_init__(self) -> None:
        if abs(2 * self.outer + 2 * self.inner - 1.0) > 1e-12:
            raise ValueError("insertion weights must sum to 1")

    def insert(self, f0, f1, f2, f3) -> complex:
        return self.outer * (f0 + f3) + self.inner * (f1 + f2)


def refine_parameter(p: LevelParameter) -> LevelParameter:
    """Advance the rule driver one level: c_{k+1} = sqrt((c_k + 1)/2),
    principal root (positive for every admissible rate)."""
    c = complex(p.cosh_value)
    if c.real <= -1.0:
        raise InvalidParameterError(f"cosh value {c} is not above -1")
    return LevelParameter(p.level + 1, cmath.sqrt((c + 1.0) / 2.0))


def synthesize_rule(c_half: complex) -> InsertionRule:
    """Insertion weights exact on constants and on the exponential pair,
    where ``c_half`` is the cosh of the rate at the half-step of insertion.

    Exactness demands 2w + 2u = 1 and 2w*cosh(3x) + 2u*cosh(x) = 1 with
    c = cosh(x).  The second condition minus c times the first shares a
    factor (c - 1) with its right-hand side; cancelling it leaves the
    system below, regular through the polynomial limit c = 1 and singular
    only at c in {0, -1}.
    """
    c = complex(c_half)
    if abs(c) <= 1e-12 or abs(c + 1.0) <= 1e-12:
        raise SingularRuleError(f"insertion weights undefined at cosh value {c}")
    a = np.array([[2.0, 2.0], [8.0 * c * (c + 1.0), 0.0]], dtype=np.complex128)
    b = np.array([1.0, -1.0], dtype=np.complex128)
    w, u = np.linalg.solve(a, b)
    return InsertionRule(outer=complex(w), inner=complex(u))


def refine(values, p: LevelParameter) -> np.ndarray:
    """One step of binary interpolatory refinement.

    Even outputs copy the inputs; odd outputs insert midpoints with the
    rule synthesized for the next level.  Boundary stencils are truncated
    rather than extrapolated, so n inputs yield 2(n - 3) + 1 outputs and
    the result starts half a coarse step after the first retained input.
    """
    f = np.asarray(values, dtype=np.complex128)
    n = f.size
    if n < 4:
        raise TooShortError(f"need at least 4 samples, got {n}")
    rule = synthesize_rule(refine_parameter(p).cosh_value)
    out = np.empty(2 * (n - 3) + 1, dtype=np.complex128)
    out[0::2] = f[1 : n - 1]
    out[1::2] = rule.outer * (f[0 : n - 3] + f[3:n]) + rule.inner * (
        f[1 : n - 2] + f[2 : n - 1]
    )
    return out


def auto_refine(values, level: int, rounds: int) -> tuple[np.ndarray, Frequency]:
    """Detect the rate of the data, then refine it ``rounds`` times.

    Detection reads the leftmost full interior stencil (base index 1); the
    rule parameter is advanced between rounds.  Returns the refined data
    and the detected level-0 rate.
    """
    f = np.asarray(values, dtype=np.complex128)
    if f.size < 4:
        raise TooShortError(f"need at least 4 samples, got {f.size}")
    g = detect_univariate(f, level, alpha=1)
    p = LevelParameter.from_frequency(g, level)
    for _ in range(rounds):
        f = refine(f, p)
        p = refine_parameter(p)
    return f, g
