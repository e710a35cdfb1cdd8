"""Exact commutator algebra for operators affine in the initial canonical set.

Every observable handled by the engine is a real affine combination

    X = a_q * q(0) + a_p * p(0) + a_cl * qcl(0) + a_1 * 1 + a_m * m,

where q(0) and p(0) are the box center-of-mass position and momentum at the
final measurement, qcl(0) is the internal clock reading at that instant, and
m is the photon mass, treated as a classical parameter (one number per
mixture component).  The only nonvanishing commutator among the generators
is the canonical one, fixed by the sign convention [p, q] = -i*hbar, so that

    [q(0), p(0)] = i*hbar.

Every commutator in this algebra is therefore i*hbar times a real scalar,
which is what :func:`commutator` returns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "PhysConstants",
    "FreeFall",
    "Harmonic",
    "Potential",
    "BoxParams",
    "OperatorCoeffs",
    "CommutatorValue",
    "INITIAL_POSITION",
    "INITIAL_MOMENTUM",
    "INITIAL_CLOCK",
    "IDENTITY",
    "MASS",
    "commutator",
    "linear_combine",
    "mean_of",
]


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class PhysConstants:
    """Physical constants in the engine's dimensionless unit system.

    ``hbar`` and ``c`` must be strictly positive.  ``g`` may be zero, which
    switches the gravitational clock coupling off entirely (useful for
    decoupling checks); it may not be negative.
    """

    hbar: float = 1.0
    c: float = 1.0
    g: float = 1.0

    def __post_init__(self) -> None:
        _require_finite(hbar=self.hbar, c=self.c, g=self.g)
        if self.hbar <= 0:
            raise ValueError("hbar must be > 0")
        if self.c <= 0:
            raise ValueError("c must be > 0")
        if self.g < 0:
            raise ValueError("g must be >= 0")


@dataclass(frozen=True)
class FreeFall:
    """Gravity only: no restoring force acts on the box."""


@dataclass(frozen=True)
class Harmonic:
    """Box suspended from a spring with spring constant ``k``."""

    k: float

    def __post_init__(self) -> None:
        _require_finite(k=self.k)
        if self.k <= 0:
            raise ValueError("k must be > 0")


Potential = FreeFall | Harmonic


@dataclass(frozen=True)
class BoxParams:
    """Box mass, photon mass, and the suspension potential.

    The photon mass must stay well below the box mass for the measurement
    analysis to make sense; the constructor only enforces ``0 <= m < M``.
    """

    M: float
    m: float
    potential: Potential = field(default_factory=FreeFall)

    def __post_init__(self) -> None:
        _require_finite(M=self.M, m=self.m)
        if self.M <= 0:
            raise ValueError("M must be > 0")
        if self.m < 0:
            raise ValueError("m must be >= 0")
        if self.m >= self.M:
            raise ValueError("m must be < M")
        if not isinstance(self.potential, (FreeFall, Harmonic)):
            raise TypeError("potential must be FreeFall or Harmonic")

    @property
    def spring_k(self) -> float:
        """Spring constant of the suspension; zero in free fall."""
        return self.potential.k if isinstance(self.potential, Harmonic) else 0.0

    @property
    def omega(self) -> float:
        """Angular frequency sqrt(k/M) of the suspension; zero in free fall."""
        return math.sqrt(self.spring_k / self.M)


@dataclass(frozen=True)
class OperatorCoeffs:
    """Coefficients of an operator over {q(0), p(0), qcl(0), 1, m}.

    Instances are immutable; all arithmetic goes through the free functions
    in this module.
    """

    a_q: float = 0.0
    a_p: float = 0.0
    a_cl: float = 0.0
    a_1: float = 0.0
    a_m: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(
            a_q=self.a_q, a_p=self.a_p, a_cl=self.a_cl, a_1=self.a_1, a_m=self.a_m
        )


# The five generators of the algebra.
INITIAL_POSITION = OperatorCoeffs(a_q=1.0)
INITIAL_MOMENTUM = OperatorCoeffs(a_p=1.0)
INITIAL_CLOCK = OperatorCoeffs(a_cl=1.0)
IDENTITY = OperatorCoeffs(a_1=1.0)
MASS = OperatorCoeffs(a_m=1.0)


@dataclass(frozen=True)
class CommutatorValue:
    """The real scalar chi in [X, Y] = i*hbar*chi.

    The clock reading, the identity, and the mass parameter are central, so
    chi carries the full commutator content of any two affine operators.
    """

    chi: float

    def __post_init__(self) -> None:
        _require_finite(chi=self.chi)


def commutator(x: OperatorCoeffs, y: OperatorCoeffs) -> CommutatorValue:
    """Commutator of two affine operators.

    Parameters
    ----------
    x, y : OperatorCoeffs
        Operators in the affine representation.

    Returns
    -------
    CommutatorValue
        chi such that [X, Y] = i*hbar*chi.  Only the canonical pair
        contributes: chi = a_q(X)*a_p(Y) - a_p(X)*a_q(Y).
    """
    return CommutatorValue(x.a_q * y.a_p - x.a_p * y.a_q)


def linear_combine(
    terms: Iterable[tuple[float, OperatorCoeffs]],
) -> OperatorCoeffs:
    """Weighted sum of affine operators.

    Parameters
    ----------
    terms : iterable of (weight, OperatorCoeffs)
        Finite real weights paired with operators.

    Returns
    -------
    OperatorCoeffs
        The coefficient-wise weighted sum.
    """
    a_q = a_p = a_cl = a_1 = a_m = 0.0
    for weight, op in terms:
        if not math.isfinite(weight):
            raise ValueError(f"weight must be finite, got {weight!r}")
        a_q += weight * op.a_q
        a_p += weight * op.a_p
        a_cl += weight * op.a_cl
        a_1 += weight * op.a_1
        a_m += weight * op.a_m
    return OperatorCoeffs(a_q=a_q, a_p=a_p, a_cl=a_cl, a_1=a_1, a_m=a_m)


def mean_of(x: OperatorCoeffs, mu: Sequence[float], m: float) -> float:
    """Expectation value of X in a state with the given first moments.

    Parameters
    ----------
    x : OperatorCoeffs
        Operator in the affine representation.
    mu : sequence of three floats
        Means (mu_q, mu_p, mu_cl) of the initial position, momentum, and
        clock reading.
    m : float
        Photon mass parameter for this component.

    Returns
    -------
    float
        a_q*mu_q + a_p*mu_p + a_cl*mu_cl + a_1 + a_m*m.
    """
    mu_q, mu_p, mu_cl = mu
    return x.a_q * mu_q + x.a_p * mu_p + x.a_cl * mu_cl + x.a_1 + x.a_m * m
