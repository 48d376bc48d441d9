"""Exact representation, evaluation, and sampling of bivariate exponential sums.

A frequency is a complex exponent rate that is either purely real or purely
imaginary with imaginary part inside (-pi, pi); this keeps z -> exp(g*z)
injective on unit grid steps.  Sums of such exponentials are kept in a
canonical form (distinct frequencies, no zero coefficients) so that symbolic
operator algebra on them stays exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfWindowError

__all__ = [
    "Frequency",
    "FrequencyVector",
    "FrequencySet",
    "ExponentialSum",
    "GridSamples",
    "evaluate",
    "sample",
    "symmetric_set",
]


def _clean(value: complex) -> complex:
    # normalize -0.0 parts so equal frequencies have one representation
    re = value.real if value.real != 0.0 else 0.0
    im = value.imag if value.imag != 0.0 else 0.0
    return complex(re, im)


@dataclass(frozen=True)
class Frequency:
    """A single admissible exponent rate: real, or imaginary in i(-pi, pi)."""

    value: complex

    def __post_init__(self) -> None:
        v = _clean(complex(self.value))
        object.__setattr__(self, "value", v)
        if v.imag != 0.0:
            if v.real != 0.0:
                raise ValueError(f"frequency must be real or purely imaginary, got {v}")
            if not -math.pi < v.imag < math.pi:
                raise ValueError(f"imaginary frequency must lie in i(-pi, pi), got {v}")

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0.0

    @property
    def is_imaginary(self) -> bool:
        return self.value.real == 0.0 and self.value.imag != 0.0

    def in_restricted_domain(self) -> bool:
        """True for the non-redundant half: real >= 0, or imaginary in i(0, pi)."""
        v = self.value
        if v.imag == 0.0:
            return v.real >= 0.0
        return v.real == 0.0 and 0.0 < v.imag < math.pi

    def __neg__(self) -> "Frequency":
        return Frequency(-self.value)

    def conjugate(self) -> "Frequency":
        return Frequency(self.value.conjugate())


def _as_frequency(x) -> Frequency:
    return x if isinstance(x, Frequency) else Frequency(complex(x))


@dataclass(frozen=True)
class FrequencyVector:
    """A pair of admissible exponent rates, one per grid axis."""

    g1: Frequency
    g2: Frequency

    def __post_init__(self) -> None:
        object.__setattr__(self, "g1", _as_frequency(self.g1))
        object.__setattr__(self, "g2", _as_frequency(self.g2))

    @classmethod
    def of(cls, g1, g2) -> "FrequencyVector":
        return cls(_as_frequency(g1), _as_frequency(g2))

    @classmethod
    def zero(cls) -> "FrequencyVector":
        return cls.of(0.0, 0.0)

    def as_pair(self) -> tuple[complex, complex]:
        return (self.g1.value, self.g2.value)

    def dot(self, x: float, y: float) -> complex:
        return self.g1.value * x + self.g2.value * y

    def mirror(self) -> "FrequencyVector":
        """Flip the sign of the second component."""
        return FrequencyVector(self.g1, -self.g2)

    def conjugate(self) -> "FrequencyVector":
        return FrequencyVector(self.g1.conjugate(), self.g2.conjugate())

    def __neg__(self) -> "FrequencyVector":
        return FrequencyVector(-self.g1, -self.g2)

    @property
    def is_zero(self) -> bool:
        return self.g1.value == 0 and self.g2.value == 0

    def in_restricted_domain(self) -> bool:
        return self.g1.in_restricted_domain() and self.g2.in_restricted_domain()


@dataclass(frozen=True)
class FrequencySet:
    """An ordered collection of pairwise-distinct frequency vectors."""

    members: tuple[FrequencyVector, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        seen = set()
        for m in members:
            key = m.as_pair()
            if key in seen:
                raise ValueError(f"duplicate frequency vector {key}")
            seen.add(key)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> FrequencyVector:
        return self.members[i]

    def __contains__(self, g: FrequencyVector) -> bool:
        return any(m.as_pair() == g.as_pair() for m in self.members)


def _canonical_terms(
    terms,
) -> tuple[tuple[complex, FrequencyVector], ...]:
    merged: dict[tuple[complex, complex], tuple[complex, FrequencyVector]] = {}
    for coeff, freq in terms:
        if not isinstance(freq, FrequencyVector):
            freq = FrequencyVector.of(*freq)
        key = freq.as_pair()
        c = complex(coeff)
        if key in merged:
            c = merged[key][0] + c
        merged[key] = (c, freq)
    out = [(c, f) for (c, f) in merged.values() if c != 0]
    out.sort(key=lambda t: (t[1].g1.value.real, t[1].g1.value.imag,
                            t[1].g2.value.real, t[1].g2.value.imag))
    return tuple(out)


@dataclass(frozen=True)
class ExponentialSum:
    """A finite sum  sum_l c_l * exp(g_l . z)  in canonical form.

    Construction merges exactly-equal frequencies and drops zero
    coefficients, so ``is_zero()`` is simply emptiness and two sums built
    from the same terms in any order compare equal.
    """

    terms: tuple[tuple[complex, FrequencyVector], ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", _canonical_terms(self.terms))

    @classmethod
    def zero(cls) -> "ExponentialSum":
        return cls(())

    @classmethod
    def single(cls, coeff, freq) -> "ExponentialSum":
        return cls(((coeff, freq),))

    def is_zero(self) -> bool:
        return not self.terms

    def max_coefficient(self) -> float:
        return max((abs(c) for c, _ in self.terms), default=0.0)

    def frequencies(self) -> tuple[FrequencyVector, ...]:
        return tuple(f for _, f in self.terms)

    def evaluate(self, z) -> complex:
        z1, z2 = float(z[0]), float(z[1])
        return sum((c * cmath.exp(f.dot(z1, z2)) for c, f in self.terms), 0j)

    def map_coefficients(self, fn) -> "ExponentialSum":
        """New sum with coefficient c of frequency g replaced by fn(c, g)."""
        return ExponentialSum(tuple((fn(c, f), f) for c, f in self.terms))

    def conjugate(self) -> "ExponentialSum":
        return ExponentialSum(
            tuple((c.conjugate(), f.conjugate()) for c, f in self.terms)
        )

    def __add__(self, other: "ExponentialSum") -> "ExponentialSum":
        return ExponentialSum(self.terms + other.terms)

    def __sub__(self, other: "ExponentialSum") -> "ExponentialSum":
        return self + (-other)

    def __neg__(self) -> "ExponentialSum":
        return ExponentialSum(tuple((-c, f) for c, f in self.terms))

    def __mul__(self, scalar) -> "ExponentialSum":
        return ExponentialSum(tuple((complex(scalar) * c, f) for c, f in self.terms))

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class GridSamples:
    """Complex samples of a function on the dyadic grid 2^-level * Z^2.

    ``values[j, i]`` holds the sample at integer index
    ``(origin[0] + i, origin[1] + j)``; the flattened array is therefore
    row-major with rows along the second coordinate.
    """

    level: int
    origin: tuple[int, int]
    width: int
    height: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.level < 0:
            raise ValueError("level must be non-negative")
        if self.width < 1 or self.height < 1:
            raise ValueError("window must be at least 1x1")
        arr = np.asarray(self.values, dtype=np.complex128)
        if arr.size != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} values, got {arr.size}"
            )
        arr = arr.reshape(self.height, self.width).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "origin", (int(self.origin[0]), int(self.origin[1])))

    @property
    def spacing(self) -> float:
        return math.ldexp(1.0, -self.level)

    def contains(self, alpha: tuple[int, int]) -> bool:
        i = alpha[0] - self.origin[0]
        j = alpha[1] - self.origin[1]
        return 0 <= i < self.width and 0 <= j < self.height

    def value_at(self, alpha: tuple[int, int]) -> complex:
        if not self.contains(alpha):
            raise OutOfWindowError(
                f"index {tuple(alpha)} outside window "
                f"[{self.origin[0]}, {self.origin[0] + self.width}) x "
                f"[{self.origin[1]}, {self.origin[1] + self.height})"
            )
        return complex(self.values[alpha[1] - self.origin[1], alpha[0] - self.origin[0]])

    def position(self, alpha: tuple[int, int]) -> tuple[float, float]:
        h = self.spacing
        return (alpha[0] * h, alpha[1] * h)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def indices(self):
        """All integer indices in the window, row-major order."""
        for j in range(self.height):
            for i in range(self.width):
                yield (self.origin[0] + i, self.origin[1] + j)


def evaluate(f: ExponentialSum, z) -> complex:
    """Value of the exponential sum at a real point z = (z1, z2)."""
    return f.evaluate(z)


def sample(
    f: ExponentialSum, level: int, origin: tuple[int, int], width: int, height: int
) -> GridSamples:
    """Sample f on the index window [origin, origin + (width, height)) at
    the given dyadic level; entry alpha holds f(2^-level * alpha)."""
    if width < 1 or height < 1:
        raise ValueError("window must be at least 1x1")
    h = math.ldexp(1.0, -level)
    vals = np.empty((height, width), dtype=np.complex128)
    for j in range(height):
        z2 = (origin[1] + j) * h
        for i in range(width):
            vals[j, i] = f.evaluate(((origin[0] + i) * h, z2))
    return GridSamples(level, (int(origin[0]), int(origin[1])), width, height, vals)


def symmetric_set(g: FrequencyVector) -> FrequencySet:
    """The symmetric frequency family {0, g, -g, mirror(g), -mirror(g)}.

    Coinciding members collapse (e.g. mirror(g) == g when the second
    component vanishes), so the result has 5 or 3 members.
    """
    if not isinstance(g, FrequencyVector):
        g = FrequencyVector.of(*g)
    if g.is_zero:
        raise ValueError("generator must be nonzero")
    if not g.in_restricted_domain():
        raise ValueError(
            "generator components must be real >= 0 or imaginary in i(0, pi)"
        )
    candidates = [FrequencyVector.zero(), g, -g, g.mirror(), -g.mirror()]
    members: list[FrequencyVector] = []
    seen: set[tuple[complex, complex]] = set()
    for m in candidates:
        key = m.as_pair()
        if key not in seen:
            seen.add(key)
            members.append(m)
    return FrequencySet(tuple(members))
