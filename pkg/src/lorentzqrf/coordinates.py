"""Exact quantum-controlled Lorentz transformations of event coordinates.

This is the kinematic counterpart of the wave-packet frame changes: events
are exact coordinate labels (t, x), laboratories are superpositions of
velocity branches, and a frame change is the controlled boost
(each branch boosted by -atanh(v) of its own velocity) followed by the
parity swap v -> -v that re-labels who is at rest.  Everything here is
closed-form 2x2 matrix algebra per branch; no discretization enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .kinematics import (
    Interval,
    boost_point,
    check_mass,
    invariant_interval,
    rapidity_of_velocity,
)

__all__ = [
    "EventCoordinate",
    "VelocityBranch",
    "JointCoordinateState",
    "parity_swap",
    "controlled_boost",
    "transform_frame",
    "distance_expectation",
    "velocity_of_momentum",
    "momentum_of_velocity",
    "state_to_dict",
    "state_from_dict",
]


@dataclass(frozen=True)
class EventCoordinate:
    """An event pinned to exact coordinates (no spread, no dynamics)."""

    t: float
    x: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and math.isfinite(self.x)):
            raise ValueError("event coordinates must be finite")

    def as_tuple(self) -> tuple[float, float]:
        return (self.t, self.x)


@dataclass(frozen=True)
class VelocityBranch:
    """One velocity component of a laboratory state, |v| < 1 strictly."""

    v: float
    amplitude: complex = 1.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.v) and abs(self.v) < 1.0):
            raise ValueError(f"branch velocity must satisfy |v| < 1, got {self.v}")


@dataclass(frozen=True)
class JointCoordinateState:
    """Laboratory velocity branches with branch-correlated event lists."""

    lab_owner: str
    lab: tuple[VelocityBranch, ...]
    events: tuple[tuple[EventCoordinate, ...], ...]

    def __post_init__(self) -> None:
        lab = tuple(self.lab)
        if not lab:
            raise ValueError("state needs at least one velocity branch")
        events = tuple(tuple(row) for row in self.events)
        if len(events) != len(lab):
            raise ValueError("one event list per velocity branch required")
        lengths = {len(row) for row in events}
        if len(lengths) != 1:
            raise ValueError("event-list length must be uniform across branches")
        object.__setattr__(self, "lab", lab)
        object.__setattr__(self, "events", events)

    @property
    def n_events(self) -> int:
        return len(self.events[0])


def parity_swap(
    state: JointCoordinateState, from_label: str, to_label: str
) -> JointCoordinateState:
    """Flip every branch velocity and hand the laboratory to the other system.

    Applying the swap twice restores the input exactly.
    """
    if state.lab_owner != from_label:
        raise ValueError(
            f"state describes the lab of {state.lab_owner!r}, not {from_label!r}"
        )
    return replace(
        state,
        lab_owner=to_label,
        lab=tuple(replace(b, v=-b.v) for b in state.lab),
    )


def controlled_boost(state: JointCoordinateState) -> JointCoordinateState:
    """Boost each branch's events by -atanh(v) of that branch's velocity."""
    new_rows = []
    for branch, row in zip(state.lab, state.events):
        alpha = -rapidity_of_velocity(branch.v)
        new_rows.append(
            tuple(EventCoordinate(*boost_point(alpha, ev.as_tuple())) for ev in row)
        )
    return replace(state, events=tuple(new_rows))


def transform_frame(
    state: JointCoordinateState, from_label: str, to_label: str
) -> JointCoordinateState:
    """Controlled boost followed by parity swap: the full frame change.

    Branch amplitudes are untouched; two opposite transforms compose to the
    identity up to floating-point roundoff.
    """
    return parity_swap(controlled_boost(state), from_label, to_label)


def distance_expectation(
    state: JointCoordinateState, i: int, j: int
) -> list[Interval]:
    """Invariant interval between events i and j, one value per branch.

    Timelike pairs report proper time sqrt(dt^2 - dx^2); spacelike pairs
    report the tagged proper distance instead.  Because each branch's events
    are boosted coherently, the reported value is branch-independent for
    shared input events and unchanged by transform_frame.
    """
    out = []
    for row in state.events:
        out.append(invariant_interval(row[i].as_tuple(), row[j].as_tuple()))
    return out


def velocity_of_momentum(p: float, m: float) -> float:
    """v = (p/m)/sqrt(1 + (p/m)^2), the velocity of a momentum-p particle."""
    check_mass(m)
    r = p / m
    return r / math.sqrt(1.0 + r * r)


def momentum_of_velocity(v: float, m: float) -> float:
    """p = m v / sqrt(1 - v^2), inverse of velocity_of_momentum."""
    check_mass(m)
    if not (math.isfinite(v) and abs(v) < 1.0):
        raise ValueError(f"|v| < 1 required, got {v}")
    return m * v / math.sqrt(1.0 - v * v)


def state_to_dict(state: JointCoordinateState) -> dict:
    """Plain-JSON form of a JointCoordinateState."""
    return {
        "lab_owner": state.lab_owner,
        "lab": [
            {"v": b.v, "amplitude": [b.amplitude.real, b.amplitude.imag]}
            for b in state.lab
        ],
        "events": [[[ev.t, ev.x] for ev in row] for row in state.events],
    }


def state_from_dict(data: dict) -> JointCoordinateState:
    """Inverse of state_to_dict."""
    lab = tuple(
        VelocityBranch(float(b["v"]), complex(*b.get("amplitude", (1.0, 0.0))))
        for b in data["lab"]
    )
    events = tuple(
        tuple(EventCoordinate(float(t), float(x)) for t, x in row)
        for row in data["events"]
    )
    return JointCoordinateState(str(data["lab_owner"]), lab, events)
