"""Exact special-relativistic kinematics in 1+1 dimensions.

Units: hbar = c = 1 throughout the package.  A particle of mass m > 0 on the
positive-energy mass shell has two-momentum (e, p) with e = sqrt(m^2 + p^2),
rapidity theta defined by p = m sinh(theta), e = m cosh(theta), and velocity
v = tanh(theta).  Boosts act on spacetime column vectors (t, x) through the
matrix

    L(alpha) = [[cosh(alpha), -sinh(alpha)],
                [-sinh(alpha), cosh(alpha)]],

which has unit determinant and composes additively in alpha.  On mass-shell
rapidities the same boost acts as theta -> theta - alpha.

Everything in this module is closed-form double-precision arithmetic; there
are no grids or tolerances beyond float rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TwoMomentum",
    "SpacetimePoint",
    "Interval",
    "check_mass",
    "energy",
    "rapidity_of_momentum",
    "momentum_of_rapidity",
    "velocity_of_rapidity",
    "rapidity_of_velocity",
    "boost_matrix",
    "boost_point",
    "invariant_interval",
]

_MASS_SHELL_RTOL = 1e-12


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v!r}")


def check_mass(m: float) -> float:
    """Validate a rest mass (finite and strictly positive) and return it."""
    _require_finite("mass", m)
    if m <= 0.0:
        raise ValueError(f"mass must be positive, got {m!r}")
    return float(m)


@dataclass(frozen=True)
class TwoMomentum:
    """On-shell positive-energy two-momentum (e, p) with e = sqrt(m^2 + p^2)."""

    e: float
    p: float

    def __post_init__(self) -> None:
        _require_finite("two-momentum", self.e, self.p)
        if self.e <= 0.0:
            raise ValueError(f"energy must be positive, got {self.e!r}")
        if self.e <= abs(self.p):
            raise ValueError(
                f"two-momentum ({self.e}, {self.p}) is not timelike future-pointing"
            )

    @property
    def mass(self) -> float:
        return math.sqrt(self.e * self.e - self.p * self.p)

    def check_shell(self, m: float) -> None:
        """Raise unless e^2 - p^2 == m^2 to relative tolerance 1e-12.

        The residual is compared against the largest invariant scale
        (e^2 + p^2 + m^2) rather than m^2 alone: for |theta| ~ 8 the
        subtraction e^2 - p^2 is ill-conditioned and a tolerance relative to
        m^2 would reject momenta constructed exactly on shell.
        """
        m = check_mass(m)
        scale = self.e * self.e + self.p * self.p + m * m
        if abs(self.e * self.e - self.p * self.p - m * m) > _MASS_SHELL_RTOL * scale:
            raise ValueError(
                f"two-momentum ({self.e}, {self.p}) is off the mass-{m} shell"
            )


@dataclass(frozen=True)
class SpacetimePoint:
    """Event (t, x) in inertial coordinates."""

    t: float
    x: float

    def __post_init__(self) -> None:
        _require_finite("spacetime point", self.t, self.x)

    def __iter__(self):
        yield self.t
        yield self.x


@dataclass(frozen=True)
class Interval:
    """Tagged invariant separation: kind is 'timelike' or 'spacelike'.

    value >= 0 is the proper time (timelike, includes lightlike as 0) or the
    proper distance (spacelike).
    """

    kind: str
    value: float


def energy(p: float, m: float) -> float:
    """Positive on-shell energy sqrt(m^2 + p^2)."""
    m = check_mass(m)
    _require_finite("momentum", p)
    return math.hypot(m, p)


def rapidity_of_momentum(p: float, m: float) -> float:
    """Rapidity theta with p = m sinh(theta)."""
    m = check_mass(m)
    _require_finite("momentum", p)
    return math.asinh(p / m)


def momentum_of_rapidity(theta: float, m: float) -> TwoMomentum:
    """On-shell two-momentum (m cosh(theta), m sinh(theta))."""
    m = check_mass(m)
    _require_finite("rapidity", theta)
    return TwoMomentum(m * math.cosh(theta), m * math.sinh(theta))


def velocity_of_rapidity(theta: float) -> float:
    """Coordinate velocity v = tanh(theta), |v| < 1."""
    _require_finite("rapidity", theta)
    return math.tanh(theta)


def rapidity_of_velocity(v: float) -> float:
    """Inverse of velocity_of_rapidity; requires |v| < 1."""
    _require_finite("velocity", v)
    if abs(v) >= 1.0:
        raise ValueError(f"|velocity| must be < 1, got {v!r}")
    return math.atanh(v)


def boost_matrix(alpha: float) -> np.ndarray:
    """2x2 boost matrix acting on (t, x) column vectors; det == 1 exactly."""
    _require_finite("rapidity", alpha)
    ch, sh = math.cosh(alpha), math.sinh(alpha)
    return np.array([[ch, -sh], [-sh, ch]], dtype=float)


def boost_point(alpha: float, point: SpacetimePoint | tuple[float, float]) -> SpacetimePoint:
    """Apply boost_matrix(alpha) to an event."""
    t, x = point
    _require_finite("spacetime point", t, x)
    ch, sh = math.cosh(alpha), math.sinh(alpha)
    return SpacetimePoint(ch * t - sh * x, ch * x - sh * t)


def invariant_interval(
    a: SpacetimePoint | tuple[float, float], b: SpacetimePoint | tuple[float, float]
) -> Interval:
    """Invariant separation between two events, tagged by causal character.

    Timelike or lightlike: Interval('timelike', sqrt(dt^2 - dx^2)).
    Spacelike: Interval('spacelike', sqrt(dx^2 - dt^2)).
    """
    ta, xa = a
    tb, xb = b
    _require_finite("spacetime point", ta, xa, tb, xb)
    dt, dx = tb - ta, xb - xa
    s2 = dt * dt - dx * dx
    if s2 >= 0.0:
        return Interval("timelike", math.sqrt(s2))
    return Interval("spacelike", math.sqrt(-s2))
