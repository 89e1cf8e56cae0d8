"""Positive-energy single-particle states on a rapidity grid.

Representation
--------------
A state of mass m is a complex amplitude vector a_j over a uniform rapidity
grid theta_j, understood as the quadrature version of

    |f> = integral dtheta/2  a(theta) |p(theta)>,

with the Lorentz-invariant measure dp/(2E) = dtheta/2 and momentum kets
normalized as <p'|p> = 2 E delta(p - p').  The spacetime wavefunction is

    psi(t, x) = <t, x | f> = sum_j w_j exp(-i E_j t + i p_j x) a_j,

with trapezoid weights w_j (= h/2 in the interior).  The inner product
carried by the same measure,

    <f|g> = sum_j w_j conj(a_j) b_j,

is the conserved (Klein-Gordon) product: for equal-time wavefunctions it
equals (i/2pi) integral dx (psi* d_t phi - (d_t psi*) phi).

Boosts act as exact index shifts when the rapidity is a lattice multiple of
the grid step (amplitudes a'(theta) = a(theta + alpha), support transported
by the kinematics boost matrix), and by cubic interpolation otherwise.

The two-point function

    W(dt, dx) = integral dtheta/2 exp(-i E dt + i p dx)

is evaluated in closed quadrature form by rotating the integration contour;
see `propagator`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from .kinematics import SpacetimePoint, check_mass

__all__ = [
    "RapidityGrid",
    "RapidityState",
    "GaussianProfile",
    "SampledProfile",
    "Gaussian2D",
    "Slice",
    "TiltedSlice",
    "PointEvent",
    "SampledFunction",
    "PropagatorQuery",
    "from_spacetime_function",
    "wavefunction",
    "wavefunction_grid",
    "slice_profile",
    "propagator",
    "kg_inner",
    "kg_norm",
    "normalize",
    "evolve",
    "translate",
    "boost_state",
    "kg_equation_residual",
]


# ---------------------------------------------------------------------------
# grid


@dataclass(frozen=True)
class RapidityGrid:
    """Uniform rapidity lattice theta_j = theta_min + j*step, j = 0..count-1."""

    theta_min: float
    step: float
    count: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta_min) and math.isfinite(self.step)):
            raise ValueError("grid parameters must be finite")
        if self.step <= 0.0:
            raise ValueError(f"grid step must be positive, got {self.step!r}")
        if self.count < 8:
            raise ValueError(f"grid needs at least 8 points, got {self.count}")

    @classmethod
    def symmetric(cls, half_width: float = 10.0, count: int = 4096) -> "RapidityGrid":
        """Grid covering [-half_width, half_width] with the given point count."""
        if half_width <= 0.0:
            raise ValueError("half_width must be positive")
        step = 2.0 * half_width / (count - 1)
        return cls(-half_width, step, count)

    @classmethod
    def default(cls) -> "RapidityGrid":
        return cls.symmetric(10.0, 4096)

    @property
    def theta_max(self) -> float:
        return self.theta_min + self.step * (self.count - 1)

    @property
    def thetas(self) -> np.ndarray:
        return _grid_thetas(self)

    @property
    def weights(self) -> np.ndarray:
        return _grid_weights(self)


@lru_cache(maxsize=64)
def _grid_thetas(grid: RapidityGrid) -> np.ndarray:
    th = grid.theta_min + grid.step * np.arange(grid.count)
    th.flags.writeable = False
    return th


@lru_cache(maxsize=64)
def _grid_weights(grid: RapidityGrid) -> np.ndarray:
    w = np.full(grid.count, grid.step / 2.0)
    w[0] *= 0.5
    w[-1] *= 0.5
    w.flags.writeable = False
    return w


# ---------------------------------------------------------------------------
# spacetime preparation functions


@dataclass(frozen=True)
class GaussianProfile:
    """Spatial profile exp(-(x-center)^2/(4 sigma^2) + i momentum (x-center))."""

    center: float = 0.0
    sigma: float = 1.0
    momentum: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma <= 0.0 or not math.isfinite(self.sigma):
            raise ValueError("profile sigma must be positive and finite")

    def fourier(self, p: np.ndarray) -> np.ndarray:
        """integral dx exp(-i p x) phi(x)."""
        amp = 2.0 * self.sigma * math.sqrt(math.pi)
        return amp * np.exp(
            -self.sigma**2 * (p - self.momentum) ** 2 - 1j * p * self.center
        )

    def __call__(self, x: np.ndarray) -> np.ndarray:
        u = np.asarray(x) - self.center
        return np.exp(-(u**2) / (4.0 * self.sigma**2) + 1j * self.momentum * u)


@dataclass(frozen=True)
class SampledProfile:
    """Spatial profile given by samples on an increasing x grid."""

    x: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if x.ndim != 1 or v.shape != x.shape or x.size < 2:
            raise ValueError("samples need matching 1-d x/values arrays")
        if np.any(np.diff(x) <= 0.0):
            raise ValueError("sample abscissae must be strictly increasing")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def fourier(self, p: np.ndarray) -> np.ndarray:
        w = _trapezoid_weights(self.x)
        return np.exp(-1j * np.outer(p, self.x)) @ (w * self.values)


@dataclass(frozen=True)
class Gaussian2D:
    """Unconstrained spacetime Gaussian exp(-(t-t0)^2/4st^2 - (x-x0)^2/4sx^2)
    carrying optional central phases exp(-i energy (t-t0) + i momentum (x-x0))."""

    t0: float = 0.0
    x0: float = 0.0
    sigma_t: float = 1.0
    sigma_x: float = 1.0
    energy: float = 0.0
    momentum: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma_t <= 0.0 or self.sigma_x <= 0.0:
            raise ValueError("gaussian widths must be positive")

    def transform(self, e: np.ndarray, p: np.ndarray) -> np.ndarray:
        """integral dt dx exp(i e t - i p x) f(t, x)."""
        amp = 4.0 * math.pi * self.sigma_t * self.sigma_x
        return amp * np.exp(
            1j * (e * self.t0 - p * self.x0)
            - self.sigma_t**2 * (e - self.energy) ** 2
            - self.sigma_x**2 * (p - self.momentum) ** 2
        )

    def __call__(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        u, v = np.asarray(t) - self.t0, np.asarray(x) - self.x0
        return np.exp(
            -(u**2) / (4.0 * self.sigma_t**2)
            - (v**2) / (4.0 * self.sigma_x**2)
            - 1j * self.energy * u
            + 1j * self.momentum * v
        )


@dataclass(frozen=True)
class Slice:
    """Equal-time preparation delta(t - t0) phi(x)."""

    t0: float
    profile: GaussianProfile | SampledProfile

    def transform(self, e: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.exp(1j * e * self.t0) * self.profile.fourier(p)


@dataclass(frozen=True)
class TiltedSlice:
    """Preparation on the tilted surface t = t0 + tilt*x: delta(t - t0 - tilt*x) phi(x)."""

    t0: float
    tilt: float
    profile: GaussianProfile | SampledProfile

    def __post_init__(self) -> None:
        if abs(self.tilt) >= 1.0:
            raise ValueError("slice tilt must satisfy |tilt| < 1 (spacelike surface)")

    def transform(self, e: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.exp(1j * e * self.t0) * self.profile.fourier(p - self.tilt * e)


@dataclass(frozen=True)
class PointEvent:
    """Delta preparation at a single event; yields an improper state."""

    t0: float
    x0: float

    def transform(self, e: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.exp(1j * (e * self.t0 - p * self.x0))


@dataclass(frozen=True)
class SampledFunction:
    """Spacetime samples f[r, c] on the grid (t[r], x[c]); trapezoid transform."""

    t: np.ndarray
    x: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=float)
        x = np.asarray(self.x, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if t.ndim != 1 or x.ndim != 1 or v.shape != (t.size, x.size):
            raise ValueError("values must have shape (len(t), len(x))")
        if t.size < 2 or x.size < 2:
            raise ValueError("sampled function needs at least 2x2 samples")
        if np.any(np.diff(t) <= 0.0) or np.any(np.diff(x) <= 0.0):
            raise ValueError("sample abscissae must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "values", v)

    def transform(self, e: np.ndarray, p: np.ndarray) -> np.ndarray:
        wt = _trapezoid_weights(self.t)
        wx = _trapezoid_weights(self.x)
        inner = (self.values * wx[None, :]) @ np.exp(-1j * np.outer(self.x, p))
        return np.einsum("r,rj->j", wt + 0j, np.exp(1j * np.outer(self.t, e)) * inner)


SpacetimeFunction = (
    Gaussian2D | Slice | TiltedSlice | PointEvent | SampledFunction
)


def _trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.empty_like(x)
    w[1:-1] = (x[2:] - x[:-2]) / 2.0
    w[0] = (x[1] - x[0]) / 2.0
    w[-1] = (x[-1] - x[-2]) / 2.0
    return w


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True, eq=False)
class RapidityState:
    """Amplitudes over a rapidity grid for a particle of fixed mass.

    `proper` is False for non-normalizable preparations (point events);
    `notes` accumulates non-fatal diagnostics (support truncation, boost
    interpolation residuals).
    """

    grid: RapidityGrid
    mass: float
    amplitudes: np.ndarray
    proper: bool = True
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        check_mass(self.mass)
        a = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if a.shape != (self.grid.count,):
            raise ValueError(
                f"amplitudes shape {a.shape} does not match grid count {self.grid.count}"
            )
        if not np.all(np.isfinite(a.view(float))):
            raise ValueError("amplitudes must be finite")
        a.flags.writeable = False
        object.__setattr__(self, "amplitudes", a)

    @property
    def thetas(self) -> np.ndarray:
        return self.grid.thetas

    @property
    def weights(self) -> np.ndarray:
        return self.grid.weights

    @property
    def energies(self) -> np.ndarray:
        return self.mass * np.cosh(self.grid.thetas)

    @property
    def momenta(self) -> np.ndarray:
        return self.mass * np.sinh(self.grid.thetas)

    def with_amplitudes(
        self, amplitudes: np.ndarray, extra_notes: tuple[str, ...] = ()
    ) -> "RapidityState":
        return replace(
            self, amplitudes=amplitudes, notes=self.notes + tuple(extra_notes)
        )


_SUPPORT_CUT = 1e-10  # relative amplitude treated as negligible for support checks


def _support_notes(grid: RapidityGrid, a: np.ndarray) -> tuple[str, ...]:
    peak = float(np.max(np.abs(a))) if a.size else 0.0
    if peak == 0.0:
        return ()
    edge = max(abs(a[0]), abs(a[-1])) / peak
    if edge > _SUPPORT_CUT:
        return (
            f"rapidity support reaches the grid boundary (edge/peak = {edge:.1e}); "
            "results may be truncated",
        )
    return ()


def from_spacetime_function(
    f: SpacetimeFunction, mass: float, grid: RapidityGrid | None = None
) -> RapidityState:
    """Project a spacetime preparation onto the positive-energy shell.

    The amplitudes are the spacetime Fourier transform of the preparation
    evaluated on shell: a_j = f~(E_j, p_j).
    """
    grid = grid or RapidityGrid.default()
    mass = check_mass(mass)
    th = grid.thetas
    e, p = mass * np.cosh(th), mass * np.sinh(th)
    if isinstance(f, (Slice, TiltedSlice)):
        a = f.transform(e, p)
    elif isinstance(f, (Gaussian2D, PointEvent, SampledFunction)):
        a = f.transform(e, p)
    else:
        raise TypeError(f"not a spacetime preparation: {f!r}")
    proper = not isinstance(f, PointEvent)
    notes = _support_notes(grid, a)
    if not proper:
        notes = notes + ("point-event preparation yields an improper state",)
    return RapidityState(grid, mass, a, proper=proper, notes=notes)


def wavefunction(
    state: RapidityState, point: SpacetimePoint | tuple[float, float]
) -> complex:
    """psi(t, x) = sum_j w_j exp(-i E_j t + i p_j x) a_j."""
    t, x = point
    phase = np.exp(-1j * (state.energies * t - state.momenta * x))
    return complex(np.sum(state.weights * phase * state.amplitudes))


def wavefunction_grid(
    state: RapidityState, ts: np.ndarray, xs: np.ndarray
) -> np.ndarray:
    """psi on the outer grid (len(ts), len(xs)), via separable matrix products."""
    ts = np.asarray(ts, dtype=float)
    xs = np.asarray(xs, dtype=float)
    left = np.exp(-1j * np.outer(ts, state.energies)) * (
        state.weights * state.amplitudes
    )
    right = np.exp(1j * np.outer(state.momenta, xs))
    return left @ right


def slice_profile(state: RapidityState, t0: float, xs: np.ndarray) -> np.ndarray:
    """Equal-time preparation profile phi(x) with Slice(t0, phi) == state.

    Inverts the slice construction a_j = exp(i E_j t0) phi^(p_j):
    phi(x) = (1/2pi) integral dp exp(i p x) phi^(p), with dp = E dtheta.
    This is the plain Fourier profile of the preparation on the t0 surface,
    not the measure-weighted wavefunction <t0,x|f>.
    """
    xs = np.asarray(xs, dtype=float)
    phat = state.amplitudes * np.exp(-1j * state.energies * t0)
    dp = state.energies * 2.0 * state.weights  # dp = E dtheta, dtheta = 2 w
    kernel = np.exp(1j * np.outer(xs, state.momenta))
    return kernel @ (dp * phat) / (2.0 * math.pi)


# ---------------------------------------------------------------------------
# two-point function


@dataclass(frozen=True)
class PropagatorQuery:
    """Invariant two-point function arguments: W(dt, dx) at the given mass."""

    dt: float
    dx: float
    mass: float

    def __post_init__(self) -> None:
        check_mass(self.mass)
        if not (math.isfinite(self.dt) and math.isfinite(self.dx)):
            raise ValueError("separation must be finite")


def _timelike_halfline(z: float) -> complex:
    """integral_0^inf exp(-i z cosh t) dt for z > 0, by contour rotation.

    Dropping the contour to Im t = -pi/2 gives a finite oscillatory leg plus
    a monotonically decaying tail:
        -i integral_0^{pi/2} exp(-i z cos y) dy
        + integral_0^inf exp(-z w) / sqrt(1 + w^2) dw.
    """
    re1 = quad(lambda y: math.cos(z * math.cos(y)), 0.0, math.pi / 2, limit=400)[0]
    im1 = quad(lambda y: -math.sin(z * math.cos(y)), 0.0, math.pi / 2, limit=400)[0]
    tail = quad(
        lambda w: math.exp(-z * w) / math.sqrt(1.0 + w * w), 0.0, np.inf, limit=400
    )[0]
    return -1j * complex(re1, im1) + tail


def _spacelike_halfline(z: float) -> float:
    """integral_0^inf exp(-z cosh u) du for z > 0 (real, positive).

    Substituting v = cosh u = 1 + w^2 removes the endpoint singularity:
        2 exp(-z) integral_0^inf exp(-z w^2) / sqrt(w^2 + 2) dw.
    """
    val = quad(
        lambda w: math.exp(-z * w * w) / math.sqrt(w * w + 2.0), 0.0, np.inf, limit=400
    )[0]
    return 2.0 * math.exp(-z) * val


def propagator(query: PropagatorQuery, grid: RapidityGrid | None = None) -> complex:
    """W(dt, dx) = integral dtheta/2 exp(-i E dt + i p dx).

    Without a grid the integral is evaluated exactly (to quadrature
    precision) by contour rotation; lightlike or coincident separations
    raise, since the continuum value diverges.  With an explicit grid the
    literal truncated lattice sum is returned (cutoff-dependent for
    lightlike/coincident separations, which only warn on this path).
    """
    dt, dx, m = query.dt, query.dx, query.mass
    if grid is not None:
        s2 = dt * dt - dx * dx
        if s2 == 0.0:
            warnings.warn(
                "lattice propagator at lightlike/coincident separation is "
                "cutoff-dependent",
                RuntimeWarning,
                stacklevel=2,
            )
        th = grid.thetas
        e, p = m * np.cosh(th), m * np.sinh(th)
        return complex(np.sum(grid.weights * np.exp(-1j * (e * dt - p * dx))))

    s2 = dt * dt - dx * dx
    if s2 == 0.0:
        raise ValueError(
            "propagator diverges at lightlike/coincident separation; "
            "pass a grid for the (cutoff-dependent) lattice sum"
        )
    if s2 > 0.0:
        # centre the rapidity on the stationary point: W = int dtheta/2 e^{-i m s cosh u} (dt>0)
        z = m * math.sqrt(s2)
        val = _timelike_halfline(z)
        return val if dt > 0.0 else complex(val.real, -val.imag)
    # spacelike: W = int dtheta/2 e^{+/- i m s' sinh u} = int_0^inf cos(m s' sinh u) du
    z = m * math.sqrt(-s2)
    return complex(_spacelike_halfline(z))


# ---------------------------------------------------------------------------
# inner product and maps


def _check_compatible(a: RapidityState, b: RapidityState) -> None:
    if a.grid != b.grid:
        raise ValueError("states live on different rapidity grids")
    if a.mass != b.mass:
        raise ValueError(f"states have different masses ({a.mass} vs {b.mass})")


def kg_inner(a: RapidityState, b: RapidityState) -> complex:
    """Conserved inner product <a|b> = sum_j w_j conj(a_j) b_j."""
    _check_compatible(a, b)
    return complex(np.sum(a.weights * np.conj(a.amplitudes) * b.amplitudes))


def kg_norm(state: RapidityState) -> float:
    return math.sqrt(max(kg_inner(state, state).real, 0.0))


def normalize(state: RapidityState) -> RapidityState:
    if not state.proper:
        raise ValueError("cannot normalize an improper (point-event) state")
    n = kg_norm(state)
    if not (n > 0.0 and math.isfinite(n)):
        raise ValueError(f"cannot normalize state with norm {n!r}")
    return state.with_amplitudes(state.amplitudes / n)


def evolve(state: RapidityState, dt: float) -> RapidityState:
    """Schroedinger evolution by dt: amplitudes pick up exp(-i E dt)."""
    return state.with_amplitudes(state.amplitudes * np.exp(-1j * state.energies * dt))


def translate(state: RapidityState, dt: float, dx: float) -> RapidityState:
    """Rigid support shift by (dt, dx): amplitudes pick up exp(i E dt - i p dx)."""
    phase = np.exp(1j * (state.energies * dt - state.momenta * dx))
    return state.with_amplitudes(state.amplitudes * phase)


_LATTICE_SNAP = 1e-9  # |alpha/step - round| below this counts as a lattice boost


def boost_state(state: RapidityState, alpha: float) -> RapidityState:
    """Boost by rapidity alpha: a'(theta) = a(theta + alpha).

    The spacetime support of the result is the kinematics boost_matrix(alpha)
    image of the original support (wavefunction covariance:
    psi'(boost_point(alpha, pt)) == psi(pt)).

    Lattice multiples of the grid step shift indices exactly (amplitudes
    falling off the grid are dropped); other rapidities use a cubic spline
    on real and imaginary parts, which adds an interpolation-residual note.
    """
    if not math.isfinite(alpha):
        raise ValueError("boost rapidity must be finite")
    grid = state.grid
    a = state.amplitudes
    k = alpha / grid.step
    kr = round(k)
    notes: list[str] = []
    if abs(k - kr) <= _LATTICE_SNAP:
        new = np.zeros_like(a)
        if kr == 0:
            new[:] = a
        elif kr > 0:
            if kr < grid.count:
                new[: grid.count - kr] = a[kr:]
        else:
            if -kr < grid.count:
                new[-kr:] = a[: grid.count + kr]
    else:
        th = grid.thetas
        target = th + alpha
        re = CubicSpline(th, a.real, extrapolate=False)(target)
        im = CubicSpline(th, a.imag, extrapolate=False)(target)
        new = np.where(np.isnan(re), 0.0, re) + 1j * np.where(np.isnan(im), 0.0, im)
        before = math.sqrt(float(np.sum(state.weights * np.abs(a) ** 2)))
        after = math.sqrt(float(np.sum(state.weights * np.abs(new) ** 2)))
        notes.append(f"boost interpolation residual {abs(after - before):.3e}")
    peak = float(np.max(np.abs(new)))
    if peak > 0.0:
        span = grid.theta_max - grid.theta_min
        margin = 0.05 * span
        sig = np.abs(new) > _SUPPORT_CUT * peak
        lo, hi = grid.thetas[sig][0], grid.thetas[sig][-1]
        if lo < grid.theta_min + margin or hi > grid.theta_max - margin:
            notes.append(
                "boosted support within 5% of the grid boundary; amplitudes may be truncated"
            )
    return state.with_amplitudes(new, tuple(notes))


# ---------------------------------------------------------------------------
# equation-of-motion residual


# 8th-order central second-derivative stencil (coefficients * 1/step^2)
_FD8 = np.array(
    [-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560]
)


def _wavefunction_extended(state: RapidityState, t: float, x: float) -> complex:
    """Wavefunction with extended-precision phase evaluation and summation.

    Used by the finite-difference residual path, where the answer is a small
    difference of terms of size E^2 |psi| and double rounding would dominate.
    """
    ld = np.longdouble
    th = state.grid.thetas.astype(ld)
    e = ld(state.mass) * np.cosh(th)
    p = ld(state.mass) * np.sinh(th)
    arg = -(e * ld(t) - p * ld(x))
    w = state.grid.weights.astype(ld)
    re = np.cos(arg)
    im = np.sin(arg)
    ar = state.amplitudes.real.astype(ld)
    ai = state.amplitudes.imag.astype(ld)
    real = np.sum(w * (re * ar - im * ai))
    imag = np.sum(w * (re * ai + im * ar))
    return complex(float(real), float(imag))


def default_probe_points(state: RapidityState, n: int = 16) -> list[SpacetimePoint]:
    """Probe events spread over the state's spacetime support scale."""
    dens = state.weights * np.abs(state.amplitudes) ** 2
    total = float(np.sum(dens))
    if total <= 0.0:
        raise ValueError("state has no support")
    e_mean = float(np.sum(dens * state.energies) / total)
    scale = 1.0 / e_mean
    rng = np.random.default_rng(161803)
    pts = rng.uniform(-4.0, 4.0, size=(n, 2)) * scale
    return [SpacetimePoint(float(t), float(x)) for t, x in pts]


def kg_equation_residual(
    state: RapidityState,
    points: list[SpacetimePoint] | None = None,
) -> float:
    """Max |d^2psi/dt^2 (finite differences) - sum_j w_j (-E_j^2) e^{...} a_j|.

    Path 1 differentiates the reconstructed wavefunction numerically in t
    (8th-order central stencil, step scaled to the state's energy content);
    path 2 multiplies the amplitudes spectrally by -E^2.  Both equal
    (d^2/dx^2 - m^2) psi for an on-shell state, so the difference is a pure
    discretization/consistency residual.
    """
    if points is None:
        points = default_probe_points(state)
    dens = state.weights * np.abs(state.amplitudes) ** 2
    total = float(np.sum(dens))
    if total <= 0.0:
        raise ValueError("state has no support")
    e2_mean = float(np.sum(dens * state.energies**2) / total)
    e_eff = math.sqrt(e2_mean)
    # stencil step: balance 8th-order truncation against extended-precision rounding
    delta = 0.06 / e_eff
    spectral = state.with_amplitudes(state.amplitudes * (-(state.energies**2)))
    worst = 0.0
    for pt in points:
        t, x = pt
        samples = np.array(
            [_wavefunction_extended(state, t + k * delta, x) for k in range(-4, 5)]
        )
        fd = complex(np.sum(_FD8 * samples)) / delta**2
        ref = _wavefunction_extended(spectral, t, x)
        worst = max(worst, abs(fd - ref))
    return worst
