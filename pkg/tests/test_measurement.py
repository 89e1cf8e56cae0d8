"""Detection probabilities and rapidity densities."""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import quad

from lorentzqrf.measurement import (
    ProbabilityReport,
    RegionPovm,
    complement_probability,
    momentum_density,
    momentum_density_at,
    region_probability,
    spacelike_overlap,
)
from lorentzqrf.states import (
    Gaussian2D,
    GaussianProfile,
    RapidityGrid,
    Slice,
    boost_state,
    from_spacetime_function,
    kg_inner,
    normalize,
)


def _packet(rng, grid, mass=1.0):
    f = Gaussian2D(
        t0=float(rng.uniform(-0.5, 0.5)),
        x0=float(rng.uniform(-0.5, 0.5)),
        sigma_t=float(rng.uniform(0.6, 1.4)),
        sigma_x=float(rng.uniform(0.6, 1.4)),
        energy=mass * float(rng.uniform(1.0, 1.8)),
        momentum=float(rng.uniform(-0.8, 0.8)),
    )
    return normalize(from_spacetime_function(f, mass, grid))


def test_density_normalization(grid):
    s = _packet(np.random.default_rng(0), grid)
    total = float(np.sum(2.0 * grid.weights * momentum_density(s)))
    assert total == pytest.approx(1.0, abs=1e-13)


def test_density_rigid_shift_under_lattice_boost(grid):
    s = _packet(np.random.default_rng(1), grid)
    k = 40
    b = boost_state(s, k * grid.step)
    d0 = momentum_density(s)
    d1 = momentum_density(b)
    # a'(theta) = a(theta + alpha): pattern moves to smaller theta by alpha
    assert np.max(np.abs(d1[: grid.count - k] - d0[k:])) == 0.0


def test_density_interpolation(grid):
    s = _packet(np.random.default_rng(2), grid)
    j = 2048
    th = grid.thetas
    assert momentum_density_at(s, th[j]) == pytest.approx(
        momentum_density(s)[j], rel=1e-12
    )
    mid = 0.5 * (th[j] + th[j + 1])
    lo, hi = sorted((momentum_density(s)[j], momentum_density(s)[j + 1]))
    assert lo <= momentum_density_at(s, mid) <= hi
    assert momentum_density_at(s, 99.0) == 0.0


def test_region_probability_bounds(grid):
    rng = np.random.default_rng(3)
    for _ in range(50):
        h = _packet(rng, grid)
        f = _packet(rng, grid)
        p = region_probability(h, f).value
        assert 0.0 <= p <= 1.0
        assert complement_probability(h, f).value == pytest.approx(1.0 - p, abs=1e-15)
    s = _packet(rng, grid)
    assert region_probability(s, s).value == 1.0


def test_region_probability_against_quadrature(grid):
    """Lattice inner product vs adaptive quadrature of the same overlap."""
    sig, dx, m = 1.0, 2.0, 1.0
    a = from_spacetime_function(Slice(0.0, GaussianProfile(-dx / 2, sig)), m, grid)
    b = from_spacetime_function(Slice(0.0, GaussianProfile(+dx / 2, sig)), m, grid)

    def integrand(th):
        p = m * math.sinh(th)
        return 4.0 * math.pi * sig**2 * math.exp(-2.0 * sig**2 * p * p) * math.cos(p * dx)

    overlap = 0.5 * quad(integrand, -10.0, 10.0, limit=400)[0]
    norm2 = 0.5 * quad(
        lambda th: 4.0 * math.pi * sig**2 * math.exp(-2.0 * sig**2 * (m * math.sinh(th)) ** 2),
        -10.0,
        10.0,
        limit=400,
    )[0]
    expect = (overlap / norm2) ** 2
    assert region_probability(a, b).value == pytest.approx(expect, rel=1e-10)


def test_spacelike_overlap_positive(grid):
    out = spacelike_overlap(sigma=1.0, mass=1.0, grid=grid)
    assert out["interval_kind"] == "spacelike"
    assert out["separation"] == 6.0
    assert out["probability"] > 0.0
    # wider separation still fires, just less often
    far = spacelike_overlap(sigma=1.0, separation=10.0, mass=1.0, grid=grid)
    assert 0.0 < far["probability"] < out["probability"]


def test_povm_wrapper_and_report_fields(grid):
    rng = np.random.default_rng(4)
    f = _packet(rng, grid)
    povm = RegionPovm.from_function(Slice(0.0, GaussianProfile(0.0, 1.0)), 1.0, grid)
    assert kg_inner(povm.state, povm.state).real == pytest.approx(1.0, abs=1e-12)
    rep = region_probability(povm, f)
    overlap = complex(rep.components["overlap_re"], rep.components["overlap_im"])
    assert rep.value == pytest.approx(abs(overlap) ** 2, rel=1e-12)
    with pytest.raises(ValueError):
        ProbabilityReport(1.5)
    with pytest.raises(ValueError):
        ProbabilityReport(float("nan"))


def test_probability_boost_invariance(grid):
    rng = np.random.default_rng(5)
    h = _packet(rng, grid)
    f = _packet(rng, grid)
    p0 = region_probability(h, f).value
    for k in (-64, -8, 8, 64):
        a = k * grid.step
        p = region_probability(boost_state(h, a), boost_state(f, a)).value
        assert p == pytest.approx(p0, abs=1e-12)


def test_probability_additivity_for_disjoint_parts(grid):
    rng = np.random.default_rng(6)
    f = _packet(rng, grid)
    # split a detector into disjoint rapidity halves: probabilities add
    h = _packet(rng, grid)
    left = np.where(grid.thetas < 0.0, h.amplitudes, 0.0)
    right = np.where(grid.thetas >= 0.0, h.amplitudes, 0.0)
    h_left = normalize(h.with_amplitudes(left))
    h_right = normalize(h.with_amplitudes(right))
    w_left = kg_inner(h.with_amplitudes(left), h.with_amplitudes(left)).real
    w_right = kg_inner(h.with_amplitudes(right), h.with_amplitudes(right)).real
    p_whole = region_probability(h, f).value
    overlap_l = kg_inner(h_left.with_amplitudes(h_left.amplitudes * math.sqrt(w_left)), f)
    overlap_r = kg_inner(h_right.with_amplitudes(h_right.amplitudes * math.sqrt(w_right)), f)
    recombined = abs(overlap_l + overlap_r) ** 2 / (
        (w_left + w_right) * kg_inner(f, f).real
    )
    assert recombined == pytest.approx(p_whole, abs=1e-10)
