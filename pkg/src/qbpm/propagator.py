"""Diagonal transfer-operator synthesis from binary digit expansions.

A basis index is read as a two's-complement signed value
``g = -a_{n-1} * 2**(n-1) + sum_j a_j * 2**j``.  Expanding ``g**p`` over
the binary digits (digits are idempotent, ``a_j**m == a_j``) turns the
transfer phase ``exp(i * phi * g**p)`` into a product of phase gates, one
per surviving digit subset: ``p = 2`` needs exactly ``n*(n+1)/2`` single-
and two-qubit phase gates, and order ``p`` needs ``O(n**p)`` gates with at
most ``p`` qubits each.  The signed frequency layout is encoded by the
sign-bit terms themselves; no index reshuffling happens anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .circuit import (
    Circuit,
    ControlledPhase,
    Gate,
    MultiControlledPhase,
    Phase,
    scaled_phase,
)
from .classical_bpm import GridSpec
from .qft import FORWARD, build_iqft, build_qft

MAX_ORDER = 4
MAX_TOTAL_QUBITS = 24
_MAX_ORACLE_QUBITS = 14


@dataclass(frozen=True)
class MonomialTerm:
    """One digit-subset term: ``coefficient * prod(a_j for j in qubits)``."""

    qubits: tuple[int, ...]
    coefficient: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(sorted(self.qubits)))
        if len(set(self.qubits)) != len(self.qubits) or not self.qubits:
            raise ValueError("qubits must be a non-empty set of distinct indices")


@dataclass(frozen=True)
class PhaseAngle:
    """Phase per unit ``g**2``, optionally derived from physical inputs."""

    phi: float
    z: float | None = None
    k: float | None = None
    n_points: int | None = None
    dx: float | None = None

    @classmethod
    def from_physical(cls, grid: GridSpec, wavelength: float, z: float) -> "PhaseAngle":
        k = 2.0 * math.pi / wavelength
        phi = paraxial_phase(grid, wavelength, z)
        return cls(phi, z=z, k=k, n_points=grid.n_points, dx=grid.dx)

    def __float__(self) -> float:
        return self.phi


def paraxial_phase(grid: GridSpec, wavelength: float, z: float) -> float:
    """Quadratic-order phase per unit ``g**2``: ``-2 pi**2 z / (N**2 dx**2 k)``."""
    k = 2.0 * math.pi / wavelength
    return -2.0 * math.pi**2 * z / (grid.n_points**2 * grid.dx**2 * k)


@dataclass(frozen=True)
class DispersionPolynomial:
    """Transfer-phase polynomial: phase ``= sum_p orders[p] * alpha**p * z``."""

    orders: Mapping[int, float]

    def __post_init__(self) -> None:
        orders = dict(self.orders)
        for p in orders:
            if not isinstance(p, int) or not 1 <= p <= MAX_ORDER:
                raise ValueError(f"polynomial order must be an integer in 1..{MAX_ORDER}, got {p}")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def paraxial(cls, wavelength: float) -> "DispersionPolynomial":
        """Quadratic truncation of the free-space dispersion, ``-alpha**2 / (2 k)``."""
        if not (wavelength > 0.0):
            raise ValueError(f"wavelength must be positive, got {wavelength}")
        k = 2.0 * math.pi / wavelength
        return cls({2: -1.0 / (2.0 * k)})

    def phase_angles(self, grid: GridSpec, z: float) -> dict[int, float]:
        """Per-order phase per unit ``g**p`` after discretizing ``alpha = g * d_alpha``."""
        return {p: c * grid.d_alpha**p * z for p, c in sorted(self.orders.items())}


def signed_index_weights(n: int) -> list[int]:
    """Digit weights of the signed index: ``2**j`` except ``-2**(n-1)`` on top."""
    weights = [1 << j for j in range(n)]
    weights[n - 1] = -weights[n - 1]
    return weights


def decompose_monomial(n: int, p: int) -> list[MonomialTerm]:
    """Exact digit-subset expansion of ``g**p`` over ``n`` two's-complement digits.

    Repeated digits collapse (``a_j**m == a_j``), coefficients of identical
    subsets merge, and zero coefficients are dropped; summing
    ``coefficient * prod(a_j)`` over the result reproduces ``g**p`` exactly
    for every representable signed ``g``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 1 <= p <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {p}")
    weights = signed_index_weights(n)
    terms: dict[frozenset[int], int] = {frozenset((j,)): weights[j] for j in range(n)}
    for _ in range(p - 1):
        product: dict[frozenset[int], int] = {}
        for subset, coefficient in terms.items():
            for j in range(n):
                key = subset | {j}
                product[key] = product.get(key, 0) + coefficient * weights[j]
        terms = product
    ordered = sorted(
        ((tuple(sorted(subset)), c) for subset, c in terms.items() if c != 0),
        key=lambda item: (len(item[0]), item[0]),
    )
    return [MonomialTerm(qubits, coefficient) for qubits, coefficient in ordered]


def _term_gate(term: MonomialTerm, phi: float) -> Gate:
    angle = scaled_phase(phi, term.coefficient)
    if len(term.qubits) == 1:
        return Phase(term.qubits[0], angle)
    if len(term.qubits) == 2:
        return ControlledPhase(term.qubits[0], term.qubits[1], angle)
    return MultiControlledPhase(term.qubits[:-1], term.qubits[-1], angle)


def build_monomial_propagator(n: int, p: int, phi) -> Circuit:
    """Diagonal circuit applying ``exp(i * phi * g**p)`` to every basis state.

    Emits one phase-type gate per monomial term, with the term coefficient
    times ``phi`` folded into (-pi, pi].  ``phi`` may be a float or a
    :class:`PhaseAngle`.
    """
    phi = float(phi)
    circuit = Circuit(n)
    for term in decompose_monomial(n, p):
        circuit.append(_term_gate(term, phi))
    return circuit


def diagonal_oracle(n: int, phase_by_order: Mapping[int, float]) -> np.ndarray:
    """Direct per-index evaluation of ``exp(i * sum_p phi_p * g**p)``.

    Verification-only counterpart of the gate synthesis; returns the
    ``2**n`` diagonal entries in basis-index order.  Each phase argument
    is reduced into (-pi, pi] exactly before exponentiation; the naive
    double product ``phi * g**p`` can exceed 1e5 radians and its rounding
    alone would swamp the accuracy being verified.
    """
    if not 1 <= n <= _MAX_ORACLE_QUBITS:
        raise ValueError(f"oracle supports 1..{_MAX_ORACLE_QUBITS} qubits, got {n}")
    for p in phase_by_order:
        if not 1 <= p <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {p}")
    n_states = 1 << n
    half = n_states // 2
    theta = np.zeros(n_states, dtype=float)
    for b in range(n_states):
        g = b - n_states if b >= half else b
        theta[b] = sum(scaled_phase(phi, g**p) for p, phi in phase_by_order.items())
    return np.exp(1j * theta)


def build_qbpm_circuit(
    n: int,
    grid: GridSpec,
    wavelength: float,
    z: float,
    polynomial: DispersionPolynomial | None = None,
) -> Circuit:
    """Full 1D propagation circuit: forward QFT, diagonal phases, inverse QFT.

    The forward transform uses exponent sign -1 and the back transform
    sign +1.  With the default paraxial polynomial the quadratic phase per
    unit ``g**2`` is ``-2 pi**2 z / (N**2 dx**2 k)`` with ``k = 2 pi /
    wavelength``.
    """
    if grid.n_qubits != n:
        raise ValueError(f"grid has {grid.n_qubits} qubits, expected {n}")
    if not (wavelength > 0.0):
        raise ValueError(f"wavelength must be positive, got {wavelength}")
    if z < 0.0:
        raise ValueError(f"propagation distance must be non-negative, got {z}")
    if polynomial is None:
        polynomial = DispersionPolynomial.paraxial(wavelength)
    circuit = build_qft(n, FORWARD)
    for p, phi in polynomial.phase_angles(grid, z).items():
        for term in decompose_monomial(n, p):
            circuit.append(_term_gate(term, phi))
    circuit.extend(build_iqft(n, FORWARD).gates)
    return circuit


def build_qbpm_circuit_2d(
    n_per_axis: int,
    grid_x: GridSpec,
    grid_y: GridSpec,
    wavelength: float,
    z: float,
    polynomial: DispersionPolynomial | None = None,
) -> Circuit:
    """Two-axis propagation circuit on ``2 * n_per_axis`` qubits.

    The x-axis pipeline acts on qubits ``[0, n)`` and the y-axis pipeline
    on qubits ``[n, 2n)``; the two commute, so arbitrary (including
    non-separable) 2D inputs propagate correctly.
    """
    total = 2 * n_per_axis
    if total > MAX_TOTAL_QUBITS:
        raise ValueError(f"{total} qubits exceed the register budget of {MAX_TOTAL_QUBITS}")
    circuit_x = build_qbpm_circuit(n_per_axis, grid_x, wavelength, z, polynomial)
    circuit_y = build_qbpm_circuit(n_per_axis, grid_y, wavelength, z, polynomial)
    circuit = Circuit(total)
    circuit.extend(circuit_x.gates)
    circuit.extend(circuit_y.shifted(n_per_axis, total).gates)
    return circuit
