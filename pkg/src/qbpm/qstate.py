"""Dense statevector register with gate application and basis sampling."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import ControlledPhase, Gate, Hadamard, MultiControlledPhase, Phase, Swap
from .classical_bpm import is_power_of_two

_INV_SQRT2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class SampleCounts:
    """Histogram of ``total_shots`` basis-state measurements.

    ``counts`` maps basis index to the number of shots that collapsed
    there; indices that were never drawn are omitted.
    """

    counts: dict[int, int]
    total_shots: int

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be non-negative")
        if sum(self.counts.values()) != self.total_shots:
            raise ValueError("counts must sum to total_shots")

    def to_array(self, n_states: int) -> np.ndarray:
        """Dense count vector of length ``n_states``."""
        arr = np.zeros(n_states, dtype=np.int64)
        for index, count in self.counts.items():
            arr[index] = count
        return arr

    def frequencies(self, n_states: int) -> np.ndarray:
        """Empirical probability of each basis index."""
        return self.to_array(n_states) / float(self.total_shots)


def _axis(n_qubits: int, qubit: int) -> int:
    # reshape((2,)*n) puts qubit n-1 on axis 0 and qubit 0 on the last axis
    return n_qubits - 1 - qubit


def _ones_selector(n_qubits: int, qubits: tuple[int, ...]) -> tuple:
    sel: list = [slice(None)] * n_qubits
    for q in qubits:
        sel[_axis(n_qubits, q)] = 1
    return tuple(sel)


def _apply_inplace(amplitudes: np.ndarray, n_qubits: int, gate: Gate) -> None:
    if max(gate.qubits) >= n_qubits:
        raise ValueError(f"gate {gate} exceeds register of {n_qubits} qubits")
    view = amplitudes.reshape((2,) * n_qubits)
    if isinstance(gate, Hadamard):
        ax = _axis(n_qubits, gate.target)
        lo: list = [slice(None)] * n_qubits
        hi: list = [slice(None)] * n_qubits
        lo[ax], hi[ax] = 0, 1
        lo_t, hi_t = tuple(lo), tuple(hi)
        a = view[lo_t].copy()
        b = view[hi_t]
        view[lo_t] = (a + b) * _INV_SQRT2
        view[hi_t] = (a - b) * _INV_SQRT2
    elif isinstance(gate, (Phase, ControlledPhase, MultiControlledPhase)):
        view[_ones_selector(n_qubits, gate.qubits)] *= np.exp(1j * gate.phi)
    elif isinstance(gate, Swap):
        sel01: list = [slice(None)] * n_qubits
        sel10: list = [slice(None)] * n_qubits
        sel01[_axis(n_qubits, gate.a)], sel01[_axis(n_qubits, gate.b)] = 0, 1
        sel10[_axis(n_qubits, gate.a)], sel10[_axis(n_qubits, gate.b)] = 1, 0
        t01, t10 = tuple(sel01), tuple(sel10)
        tmp = view[t01].copy()
        view[t01] = view[t10]
        view[t10] = tmp
    else:
        raise TypeError(f"unknown gate type {type(gate).__name__}")


@dataclass(frozen=True)
class StateVector:
    """Unit-norm register of ``2**n_qubits`` complex amplitudes.

    Qubit ``j`` carries binary digit ``a_j`` of the basis index, with
    qubit 0 the least significant bit.  Gate application returns a new
    state; a ``StateVector`` is never mutated after construction.
    """

    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def from_amplitudes(cls, values) -> "StateVector":
        """Normalize ``values`` into a state; length must be a power of two >= 2."""
        arr = np.ravel(np.asarray(values, dtype=np.complex128))
        if len(arr) < 2 or not is_power_of_two(len(arr)):
            raise ValueError(f"amplitude count must be a power of two >= 2, got {len(arr)}")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(arr)
        if norm == 0.0:
            raise ValueError("amplitudes must not all be zero")
        return cls(len(arr).bit_length() - 1, arr / norm)

    @classmethod
    def basis_state(cls, n_qubits: int, index: int = 0) -> "StateVector":
        amplitudes = np.zeros(1 << n_qubits, dtype=np.complex128)
        amplitudes[index] = 1.0
        return cls(n_qubits, amplitudes)

    @property
    def n_states(self) -> int:
        return 1 << self.n_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        """Collapse probability of each basis index, ``|amplitude|**2``."""
        return np.abs(self.amplitudes) ** 2

    def apply(self, gate: Gate) -> "StateVector":
        """State after one gate; norm is preserved."""
        amplitudes = self.amplitudes.copy()
        _apply_inplace(amplitudes, self.n_qubits, gate)
        return StateVector(self.n_qubits, amplitudes)

    def apply_sequence(self, gates) -> "StateVector":
        """State after a gate sequence, applied in order."""
        amplitudes = self.amplitudes.copy()
        for gate in gates:
            _apply_inplace(amplitudes, self.n_qubits, gate)
        return StateVector(self.n_qubits, amplitudes)

    def sample(self, n_shots: int, seed: int) -> SampleCounts:
        """Multinomial draw of ``n_shots`` basis indices; deterministic per seed."""
        if n_shots < 1:
            raise ValueError(f"n_shots must be >= 1, got {n_shots}")
        p = self.probabilities()
        p = p / p.sum()
        draws = np.random.default_rng(seed).multinomial(n_shots, p)
        nonzero = np.flatnonzero(draws)
        counts = {int(i): int(draws[i]) for i in nonzero}
        return SampleCounts(counts, n_shots)
