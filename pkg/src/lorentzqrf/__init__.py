"""Numerical laboratory for 1+1D relativistic wave packets and quantum
reference frames.

Positive-energy single-particle states are stored as complex amplitudes over a
rapidity grid with the Lorentz-invariant integration measure d(theta)/2; all
observable quantities (spacetime wavefunctions, inner products, propagators,
frame changes) are built on top of that representation.

Layout:

- `kinematics`: classical boosts, intervals, rapidity/velocity/momentum maps.
- `states`: rapidity-grid states, preparation from spacetime functions,
  boosts/translations/evolution, the positive-energy two-point function.
- `measurement`: spacetime-region detection probabilities and momentum
  densities.
- `frames`: branched reference-frame states, frame changes, and the exact
  cyclic-lattice twirl model.
- `coordinates`: quantum-controlled Lorentz coordinate transformations of
  event labels and the invariant distance observable.
- `scenarios`: end-to-end physics scenarios (time dilation, length/width
  contraction, superposed slices and boosts, the interference probe).
- `report`/`plots`: deterministic JSON/CSV serialization and SVG charts.
- `acceptance`: the oracle-backed acceptance suite (`lorentzqrf selftest`).
- `cli`: the `lorentzqrf` command line.
"""

from .coordinates import (
    EventCoordinate,
    JointCoordinateState,
    VelocityBranch,
    controlled_boost,
    distance_expectation,
    momentum_of_velocity,
    parity_swap,
    transform_frame,
    velocity_of_momentum,
)
from .frames import (
    BranchedFrameState,
    CyclicLattice,
    DeltaTime,
    GaussianTime,
    LatticeTwirlState,
    SharpBranch,
    SharpExternalState,
    branch_overlap_matrix,
    change_frame,
    jump_to_frame,
    superposed_slice_state,
    total_norm,
    transformed_evolution,
    twirl_factor_fidelity,
    twirl_lattice,
)
from .kinematics import (
    Interval,
    SpacetimePoint,
    TwoMomentum,
    boost_matrix,
    boost_point,
    energy,
    invariant_interval,
    momentum_of_rapidity,
    rapidity_of_momentum,
    rapidity_of_velocity,
    velocity_of_rapidity,
)
from .measurement import (
    ProbabilityReport,
    RegionPovm,
    complement_probability,
    momentum_density,
    momentum_density_at,
    region_probability,
)
from .scenarios import (
    BoostSuperpositionScenario,
    BranchCheck,
    ContractionScenario,
    DilationScenario,
    FitError,
    InterferenceScenario,
    ScenarioReport,
    SliceScenario,
    WidthScenario,
    run_boost_superposition,
    run_length_contraction,
    run_nonrel_interference,
    run_superposed_slice,
    run_time_dilation,
    run_width_contraction,
)
from .states import (
    Gaussian2D,
    GaussianProfile,
    PointEvent,
    PropagatorQuery,
    RapidityGrid,
    RapidityState,
    SampledFunction,
    Slice,
    TiltedSlice,
    boost_state,
    evolve,
    from_spacetime_function,
    kg_equation_residual,
    kg_inner,
    kg_norm,
    normalize,
    propagator,
    slice_profile,
    translate,
    wavefunction,
    wavefunction_grid,
)

__version__ = "0.1.0"
