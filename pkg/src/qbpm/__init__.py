"""Quantum beam propagation toolkit.

Statevector circuit simulation of the Fourier-space propagation pipeline
(forward QFT, diagonal transfer phases synthesized from two's-complement
digit expansions, inverse QFT), validated against a classical FFT
propagator and analytic optics references, with a shot-sampling error
analysis harness.
"""

from .circuit import (
    Circuit,
    ControlledPhase,
    Gate,
    Hadamard,
    MultiControlledPhase,
    Phase,
    Swap,
    fold_phase,
    scaled_phase,
)
from .classical_bpm import Field, GridSpec, propagate_1d, propagate_2d, rmse
from .propagator import (
    DispersionPolynomial,
    MonomialTerm,
    PhaseAngle,
    build_monomial_propagator,
    build_qbpm_circuit,
    build_qbpm_circuit_2d,
    decompose_monomial,
    diagonal_oracle,
    paraxial_phase,
    signed_index_weights,
)
from .qft import BACKWARD, FORWARD, build_iqft, build_qft, dft_oracle
from .qstate import SampleCounts, StateVector
from .scenarios import (
    DEFAULT_DOUBLE_SLIT,
    DEFAULT_GAUSSIAN_2D,
    DoubleSlitParams,
    ErrorStats,
    GaussianParams,
    WaistEstimate,
    double_slit_analytic,
    double_slit_initial,
    error_analysis,
    gaussian_initial_2d,
    predicted_fringe_positions,
    waist_from_counts,
    waist_from_field,
)

__version__ = "0.1.0"

__all__ = [
    "BACKWARD",
    "Circuit",
    "DEFAULT_DOUBLE_SLIT",
    "DEFAULT_GAUSSIAN_2D",
    "ControlledPhase",
    "DispersionPolynomial",
    "DoubleSlitParams",
    "ErrorStats",
    "FORWARD",
    "Field",
    "Gate",
    "GaussianParams",
    "GridSpec",
    "Hadamard",
    "MonomialTerm",
    "MultiControlledPhase",
    "Phase",
    "PhaseAngle",
    "SampleCounts",
    "StateVector",
    "Swap",
    "WaistEstimate",
    "build_iqft",
    "build_monomial_propagator",
    "build_qbpm_circuit",
    "build_qbpm_circuit_2d",
    "build_qft",
    "decompose_monomial",
    "dft_oracle",
    "diagonal_oracle",
    "double_slit_analytic",
    "double_slit_initial",
    "error_analysis",
    "fold_phase",
    "gaussian_initial_2d",
    "paraxial_phase",
    "predicted_fringe_positions",
    "propagate_1d",
    "propagate_2d",
    "rmse",
    "scaled_phase",
    "signed_index_weights",
    "waist_from_counts",
    "waist_from_field",
    "__version__",
]
