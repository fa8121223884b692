"""Experiment definitions: initial fields, analytic references, observables,
and repeated-sampling error statistics for the two showcase setups, a 1D
double slit and a 2D Gaussian beam."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import classical_bpm
from .classical_bpm import Field, GridSpec, rmse
from .propagator import build_qbpm_circuit, build_qbpm_circuit_2d
from .qstate import SampleCounts, StateVector


@dataclass(frozen=True)
class DoubleSlitParams:
    """Two identical slits of width ``slit_width`` separated by
    ``slit_separation`` (center to center), illuminated at ``wavelength``."""

    slit_separation: float
    slit_width: float
    wavelength: float
    n_qubits: int
    domain_length: float

    def __post_init__(self) -> None:
        if not (self.slit_separation > self.slit_width > 0.0):
            raise ValueError("need slit_separation > slit_width > 0")
        if not (self.slit_separation + self.slit_width < self.domain_length):
            raise ValueError("slits do not fit inside the domain")
        if not (self.wavelength > 0.0):
            raise ValueError("wavelength must be positive")
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be >= 1")

    def make_grid(self) -> GridSpec:
        return GridSpec.from_qubits(self.n_qubits, self.domain_length)


def double_slit_initial(params: DoubleSlitParams, grid: GridSpec) -> Field:
    """Unit-norm aperture field: 1 inside either slit (edges included), else 0."""
    x = grid.coordinates()
    half_sep = params.slit_separation / 2.0
    half_width = params.slit_width / 2.0
    upper = np.abs(x - half_sep) <= half_width
    lower = np.abs(x + half_sep) <= half_width
    per_slit = int(np.count_nonzero(upper))
    if per_slit < 4:
        raise ValueError(f"each slit covers only {per_slit} grid points, need >= 4")
    values = (upper | lower).astype(np.complex128)
    return Field((grid,), values / np.linalg.norm(values))


def double_slit_analytic(params: DoubleSlitParams, grid: GridSpec, z: float) -> np.ndarray:
    """Far-field reference intensity on the grid, normalized to unit sum.

    ``I(x) = cos(pi d sin(theta) / lambda)**2 * sinc(pi w sin(theta) / lambda)**2``
    with ``tan(theta) = x / z``.  Undefined at ``z = 0``; callers use the
    initial intensity there instead.
    """
    if not (z > 0.0):
        raise ValueError("far-field reference requires z > 0; use the initial intensity at z = 0")
    x = grid.coordinates()
    sin_theta = x / np.hypot(x, z)
    fringes = np.cos(np.pi * params.slit_separation / params.wavelength * sin_theta) ** 2
    # np.sinc(u) = sin(pi u) / (pi u)
    envelope = np.sinc(params.slit_width / params.wavelength * sin_theta) ** 2
    intensity = fringes * envelope
    return intensity / intensity.sum()


def predicted_fringe_positions(params: DoubleSlitParams, z: float, orders) -> np.ndarray:
    """Positions of interference maxima ``sin(theta) = m * lambda / d``."""
    if not (z > 0.0):
        raise ValueError("fringe positions require z > 0")
    sin_theta = np.asarray(orders, dtype=float) * params.wavelength / params.slit_separation
    if np.any(np.abs(sin_theta) >= 1.0):
        raise ValueError("fringe order does not exist at this geometry")
    return z * np.tan(np.arcsin(sin_theta))


@dataclass(frozen=True)
class GaussianParams:
    """Gaussian beam of waist ``waist`` centered at ``center`` on a square
    two-axis register with ``n_qubits_per_axis`` qubits per axis."""

    waist: float
    wavelength: float
    n_qubits_per_axis: int
    domain_length: float
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if not (self.waist > 0.0):
            raise ValueError("waist must be positive")
        if not (self.wavelength > 0.0):
            raise ValueError("wavelength must be positive")
        if self.n_qubits_per_axis < 1:
            raise ValueError("n_qubits_per_axis must be >= 1")
        if not (self.domain_length > 0.0):
            raise ValueError("domain_length must be positive")

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def rayleigh_length(self) -> float:
        """Distance over which the beam area doubles, ``k * w0**2 / 2``."""
        return self.wavenumber * self.waist**2 / 2.0

    def make_grids(self) -> tuple[GridSpec, GridSpec]:
        grid = GridSpec.from_qubits(self.n_qubits_per_axis, self.domain_length)
        return grid, grid


def gaussian_initial_2d(params: GaussianParams, grids: tuple[GridSpec, GridSpec]) -> Field:
    """Unit-norm amplitude ``exp(-((x-x0)**2 + (y-y0)**2) / w0**2)``."""
    grid_x, grid_y = grids
    if params.waist < 4.0 * max(grid_x.dx, grid_y.dx):
        raise ValueError(
            f"waist {params.waist} under-resolved: need at least 4 grid points across it"
        )
    x0, y0 = params.center
    x = grid_x.coordinates()[np.newaxis, :]
    y = grid_y.coordinates()[:, np.newaxis]
    values = np.exp(-(((x - x0) ** 2) + ((y - y0) ** 2)) / params.waist**2)
    values = values.astype(np.complex128)
    return Field(grids, values / np.linalg.norm(values))


def _radius_squared(
    grids: tuple[GridSpec, GridSpec], center: tuple[float, float]
) -> np.ndarray:
    grid_x, grid_y = grids
    x0, y0 = center
    x = grid_x.coordinates()[np.newaxis, :]
    y = grid_y.coordinates()[:, np.newaxis]
    return (x - x0) ** 2 + (y - y0) ** 2


def waist_from_counts(
    counts: SampleCounts,
    grids: tuple[GridSpec, GridSpec],
    center: tuple[float, float] = (0.0, 0.0),
) -> float:
    """Second-moment beam radius estimated from a shot histogram.

    ``w = sqrt(sum_ij ((x_i - x0)**2 + (y_j - y0)**2) * P_ij)`` with
    ``P_ij`` the empirical collapse frequency at grid cell (i, j).
    """
    grid_x, grid_y = grids
    n_states = grid_x.n_points * grid_y.n_points
    weights = counts.frequencies(n_states).reshape(grid_y.n_points, grid_x.n_points)
    return float(np.sqrt(np.sum(_radius_squared(grids, center) * weights)))


def waist_from_field(field: Field, center: tuple[float, float] = (0.0, 0.0)) -> float:
    """Second-moment beam radius of a discrete field, weights ``|U_ij|**2``."""
    if field.ndim != 2:
        raise ValueError("waist_from_field expects a 2D field")
    intensity = field.intensity()
    weights = intensity / intensity.sum()
    return float(np.sqrt(np.sum(_radius_squared(field.grids, center) * weights)))


@dataclass(frozen=True)
class WaistEstimate:
    """Sampled radius against the discrete reference radius."""

    w_sampled: float
    w_reference: float

    def __post_init__(self) -> None:
        if self.w_sampled < 0.0 or self.w_reference < 0.0:
            raise ValueError("radii must be non-negative")

    @property
    def error(self) -> float:
        return self.w_sampled - self.w_reference


@dataclass(frozen=True)
class ErrorStats:
    """Mean and standard error of a per-run error over repeated simulations."""

    mu: float
    sigma: float
    n_sim: int
    n_shots: int


def _spread(errors: np.ndarray) -> float:
    # sqrt(<e**2> - <e>**2), clipped against tiny negative round-off
    variance = float(np.mean(errors**2) - np.mean(errors) ** 2)
    return math.sqrt(max(variance, 0.0))


def error_analysis(
    scenario,
    z_values,
    n_shots_values,
    n_sim: int,
    seed: int,
) -> dict[tuple[float, int], ErrorStats]:
    """Repeated-sampling error table over every ``(z, n_shots)`` pair.

    The propagation circuit runs once per ``z``; each of the ``n_sim``
    repetitions then draws an independent shot histogram with run seed
    ``seed + run_index``.  The per-run error is the normalized RMSE
    against the analytic reference for the double slit (the initial
    intensity at ``z = 0``) and the sampled-minus-reference waist for the
    Gaussian beam.
    """
    if n_sim < 2:
        raise ValueError(f"n_sim must be >= 2, got {n_sim}")
    if isinstance(scenario, DoubleSlitParams):
        per_run = _double_slit_runner(scenario)
    elif isinstance(scenario, GaussianParams):
        per_run = _gaussian_runner(scenario)
    else:
        raise TypeError(f"unknown scenario type {type(scenario).__name__}")

    table: dict[tuple[float, int], ErrorStats] = {}
    for z in z_values:
        run_error = per_run(float(z))
        for n_shots in n_shots_values:
            errors = np.array([run_error(int(n_shots), seed + i) for i in range(n_sim)])
            table[(float(z), int(n_shots))] = ErrorStats(
                mu=float(np.mean(errors)),
                sigma=_spread(errors),
                n_sim=n_sim,
                n_shots=int(n_shots),
            )
    return table


def _double_slit_runner(params: DoubleSlitParams):
    grid = params.make_grid()
    initial = double_slit_initial(params, grid)

    def for_distance(z: float):
        if z == 0.0:
            reference = initial.intensity()
            reference = reference / reference.sum()
        else:
            reference = double_slit_analytic(params, grid, z)
        circuit = build_qbpm_circuit(params.n_qubits, grid, params.wavelength, z)
        state = circuit.run(StateVector.from_amplitudes(initial.values))

        def run_error(n_shots: int, run_seed: int) -> float:
            sampled = state.sample(n_shots, run_seed).frequencies(state.n_states)
            return rmse(reference, sampled)

        return run_error

    return for_distance


# Reference double-slit setup: 0.5 mm slit separation, 0.1 mm slit width,
# 532 nm light on 15 qubits.  The domain length is a free choice (the grid
# is not fixed by the physics); 0.1024 m puts 32 points across each slit
# and keeps the far-field pattern inside the window at the default
# distances.
DEFAULT_DOUBLE_SLIT = DoubleSlitParams(
    slit_separation=5e-4,
    slit_width=1e-4,
    wavelength=532e-9,
    n_qubits=15,
    domain_length=0.1024,
)

# Reference Gaussian-beam setup: 5 cm waist, 532 nm, 5 qubits per axis.
# 0.4 m is the largest domain the waist-resolution precondition allows
# (4 points across the waist), which minimizes tail truncation once the
# beam has broadened.
DEFAULT_GAUSSIAN_2D = GaussianParams(
    waist=0.05,
    wavelength=532e-9,
    n_qubits_per_axis=5,
    domain_length=0.4,
)


def _gaussian_runner(params: GaussianParams):
    grids = params.make_grids()
    initial = gaussian_initial_2d(params, grids)
    n = params.n_qubits_per_axis

    def for_distance(z: float):
        reference_field = classical_bpm.propagate_2d(initial, params.wavelength, z)
        w_reference = waist_from_field(reference_field, params.center)
        circuit = build_qbpm_circuit_2d(n, grids[0], grids[1], params.wavelength, z)
        state = circuit.run(StateVector.from_amplitudes(initial.values))

        def run_error(n_shots: int, run_seed: int) -> float:
            counts = state.sample(n_shots, run_seed)
            return waist_from_counts(counts, grids, params.center) - w_reference

        return run_error

    return for_distance
