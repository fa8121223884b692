"""Gate descriptors, circuit container, gate counting, and OpenQASM export."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

TWO_PI = 2.0 * math.pi

# 2*pi to 50 decimal digits, used to reduce large integer multiples of a
# phase without the rounding a double-precision product would introduce.
_TWO_PI_EXACT = Fraction("6.28318530717958647692528676655900576839433879875021")


def fold_phase(phi: float) -> float:
    """Reduce an angle into (-pi, pi]."""
    r = math.fmod(phi, TWO_PI)
    if r > math.pi:
        r -= TWO_PI
    elif r <= -math.pi:
        r += TWO_PI
    return r


def scaled_phase(phi: float, coefficient: int) -> float:
    """``coefficient * phi`` reduced into (-pi, pi].

    The product is formed in exact rational arithmetic; coefficients such
    as ``2**(n+l)`` would otherwise push the reduction error well above
    the per-gate phase accuracy the diagonal synthesis relies on.
    """
    x = Fraction(phi) * coefficient
    m = round(x / _TWO_PI_EXACT)
    return fold_phase(float(x - m * _TWO_PI_EXACT))


def _check_indices(*indices: int) -> None:
    for q in indices:
        if q < 0:
            raise ValueError(f"qubit index must be non-negative, got {q}")
    if len(set(indices)) != len(indices):
        raise ValueError(f"qubit indices must be distinct, got {indices}")


@dataclass(frozen=True)
class Hadamard:
    target: int

    def __post_init__(self) -> None:
        _check_indices(self.target)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class Phase:
    """diag(1, exp(i*phi)) on the target qubit."""

    target: int
    phi: float

    def __post_init__(self) -> None:
        _check_indices(self.target)
        object.__setattr__(self, "phi", fold_phase(self.phi))

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.target,)


@dataclass(frozen=True)
class ControlledPhase:
    """exp(i*phi) on basis states where control and target are both 1."""

    control: int
    target: int
    phi: float

    def __post_init__(self) -> None:
        _check_indices(self.control, self.target)
        object.__setattr__(self, "phi", fold_phase(self.phi))

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.control, self.target)


@dataclass(frozen=True)
class MultiControlledPhase:
    """exp(i*phi) on basis states where every control and the target are 1."""

    controls: tuple[int, ...]
    target: int
    phi: float

    def __post_init__(self) -> None:
        controls = tuple(sorted(self.controls))
        if not controls:
            raise ValueError("at least one control qubit is required")
        _check_indices(*controls, self.target)
        object.__setattr__(self, "controls", controls)
        object.__setattr__(self, "phi", fold_phase(self.phi))

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)


@dataclass(frozen=True)
class Swap:
    a: int
    b: int

    def __post_init__(self) -> None:
        _check_indices(self.a, self.b)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (self.a, self.b)


Gate = Union[Hadamard, Phase, ControlledPhase, MultiControlledPhase, Swap]

GATE_KINDS = ("Hadamard", "Phase", "ControlledPhase", "MultiControlledPhase", "Swap")


def _inverted(gate: Gate) -> Gate:
    if isinstance(gate, Phase):
        return Phase(gate.target, -gate.phi)
    if isinstance(gate, ControlledPhase):
        return ControlledPhase(gate.control, gate.target, -gate.phi)
    if isinstance(gate, MultiControlledPhase):
        return MultiControlledPhase(gate.controls, gate.target, -gate.phi)
    return gate  # Hadamard and Swap are self-inverse


def _shifted(gate: Gate, offset: int) -> Gate:
    if isinstance(gate, Hadamard):
        return Hadamard(gate.target + offset)
    if isinstance(gate, Phase):
        return Phase(gate.target + offset, gate.phi)
    if isinstance(gate, ControlledPhase):
        return ControlledPhase(gate.control + offset, gate.target + offset, gate.phi)
    if isinstance(gate, MultiControlledPhase):
        controls = tuple(c + offset for c in gate.controls)
        return MultiControlledPhase(controls, gate.target + offset, gate.phi)
    return Swap(gate.a + offset, gate.b + offset)


class Circuit:
    """Ordered list of gates on a fixed-size register.

    Append-only while being built; running a circuit never mutates it, so a
    finished circuit can be shared freely.
    """

    def __init__(self, n_qubits: int, gates: Iterable[Gate] = ()) -> None:
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
        self.n_qubits = n_qubits
        self._gates: list[Gate] = []
        self.extend(gates)

    def append(self, gate: Gate) -> "Circuit":
        if max(gate.qubits) >= self.n_qubits:
            raise ValueError(f"gate {gate} exceeds register of {self.n_qubits} qubits")
        self._gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for gate in gates:
            self.append(gate)
        return self

    @property
    def gates(self) -> tuple[Gate, ...]:
        return tuple(self._gates)

    def __len__(self) -> int:
        return len(self._gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self._gates)

    def gate_count(self) -> dict[str, int]:
        """Exact per-kind gate counts; every kind is present, possibly zero."""
        counts = {kind: 0 for kind in GATE_KINDS}
        for gate in self._gates:
            counts[type(gate).__name__] += 1
        return counts

    def inverse(self) -> "Circuit":
        """Adjoint circuit: reversed gate order with negated phases."""
        return Circuit(self.n_qubits, (_inverted(g) for g in reversed(self._gates)))

    def shifted(self, offset: int, n_qubits: int) -> "Circuit":
        """Same gate sequence with every qubit index moved up by ``offset``."""
        if offset < 0:
            raise ValueError("offset must be non-negative")
        return Circuit(n_qubits, (_shifted(g, offset) for g in self._gates))

    def run(self, state):
        """Apply all gates in order to ``state``; returns the new state."""
        if state.n_qubits != self.n_qubits:
            raise ValueError(
                f"state has {state.n_qubits} qubits, circuit expects {self.n_qubits}"
            )
        return state.apply_sequence(self._gates)

    def to_qasm_text(self) -> str:
        """OpenQASM 2.0 text for this circuit.

        Multi-controlled phases with two controls are expanded with the
        standard cp/cx construction; higher arities are rejected.
        """
        lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{self.n_qubits}];"]
        for gate in self._gates:
            lines.extend(_qasm_lines(gate))
        return "\n".join(lines) + "\n"


def _qasm_lines(gate: Gate) -> list[str]:
    if isinstance(gate, Hadamard):
        return [f"h q[{gate.target}];"]
    if isinstance(gate, Phase):
        return [f"p({gate.phi!r}) q[{gate.target}];"]
    if isinstance(gate, ControlledPhase):
        return [f"cp({gate.phi!r}) q[{gate.control}],q[{gate.target}];"]
    if isinstance(gate, Swap):
        return [f"swap q[{gate.a}],q[{gate.b}];"]
    if isinstance(gate, MultiControlledPhase):
        if len(gate.controls) == 1:
            return [f"cp({gate.phi!r}) q[{gate.controls[0]}],q[{gate.target}];"]
        if len(gate.controls) == 2:
            c1, c2 = gate.controls
            t = gate.target
            half = fold_phase(gate.phi / 2.0)
            return [
                f"cp({half!r}) q[{c2}],q[{t}];",
                f"cx q[{c1}],q[{c2}];",
                f"cp({-half!r}) q[{c2}],q[{t}];",
                f"cx q[{c1}],q[{c2}];",
                f"cp({half!r}) q[{c1}],q[{t}];",
            ]
        raise ValueError(
            f"cannot export a phase gate with {len(gate.controls)} controls to OpenQASM 2.0"
        )
    raise TypeError(f"unknown gate type {type(gate).__name__}")
