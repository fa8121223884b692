import math

import numpy as np
import pytest

from qbpm import (
    BACKWARD,
    ControlledPhase,
    DispersionPolynomial,
    Field,
    FORWARD,
    GridSpec,
    MonomialTerm,
    MultiControlledPhase,
    Phase,
    PhaseAngle,
    StateVector,
    build_monomial_propagator,
    build_qbpm_circuit,
    build_qbpm_circuit_2d,
    decompose_monomial,
    dft_oracle,
    diagonal_oracle,
    paraxial_phase,
    propagate_1d,
    propagate_2d,
    signed_index_weights,
)


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return StateVector.from_amplitudes(v)


def signed_value(b, n):
    return b - 2**n if b >= 2 ** (n - 1) else b


def term_sum(terms, b):
    return sum(t.coefficient * int(all((b >> j) & 1 for j in t.qubits)) for t in terms)


class TestDecomposeMonomial:
    def test_weights(self):
        assert signed_index_weights(4) == [1, 2, 4, -8]
        assert signed_index_weights(1) == [-1]

    def test_smallest_quadratic_case(self):
        assert decompose_monomial(1, 2) == [MonomialTerm((0,), 1)]

    def test_linear_is_the_weight_vector(self):
        assert decompose_monomial(4, 1) == [
            MonomialTerm((0,), 1),
            MonomialTerm((1,), 2),
            MonomialTerm((2,), 4),
            MonomialTerm((3,), -8),
        ]

    def test_three_qubit_quadratic_terms(self):
        terms = {t.qubits: t.coefficient for t in decompose_monomial(3, 2)}
        assert terms == {
            (0,): 1,
            (1,): 4,
            (2,): 16,
            (0, 1): 4,
            (0, 2): -8,
            (1, 2): -16,
        }

    @pytest.mark.parametrize("p", [1, 2, 3])
    def test_exact_for_every_signed_value(self, p):
        for n in range(1, 7):
            terms = decompose_monomial(n, p)
            for b in range(2**n):
                assert term_sum(terms, b) == signed_value(b, n) ** p

    def test_fourth_power_exact(self):
        for n in range(1, 6):
            terms = decompose_monomial(n, 4)
            for b in range(2**n):
                assert term_sum(terms, b) == signed_value(b, n) ** 4

    def test_subset_sizes_bounded_by_order(self):
        for p in (2, 3, 4):
            assert max(len(t.qubits) for t in decompose_monomial(6, p)) <= p

    def test_order_validation(self):
        with pytest.raises(ValueError):
            decompose_monomial(4, 0)
        with pytest.raises(ValueError):
            decompose_monomial(4, 5)
        with pytest.raises(ValueError):
            decompose_monomial(0, 2)

    def test_cubic_term_count(self):
        for n in (4, 6, 9):
            expected = n + n * (n - 1) // 2 + n * (n - 1) * (n - 2) // 6
            assert len(decompose_monomial(n, 3)) == expected


class TestBuildMonomialPropagator:
    def test_gate_kinds_follow_subset_size(self):
        circuit = build_monomial_propagator(4, 3, 0.2)
        for gate in circuit:
            assert isinstance(gate, (Phase, ControlledPhase, MultiControlledPhase))
        counts = circuit.gate_count()
        assert counts["Phase"] == 4
        assert counts["ControlledPhase"] == 6
        assert counts["MultiControlledPhase"] == 4

    def test_zero_phase_is_identity(self):
        state = random_state(5, seed=60)
        out = build_monomial_propagator(5, 2, 0.0).run(state)
        assert np.max(np.abs(out.amplitudes - state.amplitudes)) < 1e-12

    def test_quadratic_matches_oracle_pinned_case(self):
        n, phi = 6, 0.37
        circuit = build_monomial_propagator(n, 2, phi)
        diag = diagonal_oracle(n, {2: phi})
        for b in range(2**n):
            out = StateVector.basis_state(n, b).apply_sequence(circuit.gates).amplitudes
            assert abs(out[b] - diag[b]) < 1e-12

    def test_diagonal_on_uniform_superposition(self):
        # a diagonal circuit applied to the uniform state exposes every
        # diagonal entry at once
        n = 10
        rng = np.random.default_rng(61)
        uniform = StateVector.from_amplitudes(np.ones(2**n))
        for p in (1, 2, 3):
            phi = float(rng.uniform(-np.pi, np.pi))
            out = build_monomial_propagator(n, p, phi).run(uniform)
            expected = diagonal_oracle(n, {p: phi}) / np.sqrt(2**n)
            assert np.max(np.abs(out.amplitudes - expected)) < 1e-12

    def test_no_population_leaves_basis_states(self):
        circuit = build_monomial_propagator(5, 3, 1.234)
        for index in (0, 7, 21, 31):
            out = StateVector.basis_state(5, index).apply_sequence(circuit.gates)
            off_diagonal = np.abs(out.amplitudes).copy()
            off_diagonal[index] = 0.0
            assert off_diagonal.max() < 1e-14

    def test_accepts_phase_angle_wrapper(self):
        grid = GridSpec(64, 1e-5)
        angle = PhaseAngle.from_physical(grid, 532e-9, 0.1)
        circuit = build_monomial_propagator(6, 2, angle)
        direct = build_monomial_propagator(6, 2, angle.phi)
        assert circuit.gates == direct.gates


class TestDiagonalOracle:
    def test_hand_evaluated_two_qubit_case(self):
        out = diagonal_oracle(2, {2: np.pi})
        # signed values per slot: 0, 1, -2, -1 with squares 0, 1, 4, 1
        assert np.allclose(out, [1, -1, 1, -1])

    def test_zero_phases_give_ones(self):
        assert np.allclose(diagonal_oracle(4, {2: 0.0}), 1.0)
        assert np.allclose(diagonal_oracle(4, {}), 1.0)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            diagonal_oracle(15, {2: 0.1})


class TestPhaseAngle:
    def test_physical_formula(self):
        grid = GridSpec(2**8, 1.3e-5)
        wavelength, z = 6.2e-7, 0.21
        k = 2 * math.pi / wavelength
        expected = -2 * math.pi**2 * z / (grid.n_points**2 * grid.dx**2 * k)
        angle = PhaseAngle.from_physical(grid, wavelength, z)
        assert angle.phi == pytest.approx(expected, rel=1e-15)
        assert float(angle) == angle.phi
        assert paraxial_phase(grid, wavelength, z) == angle.phi

    def test_paraxial_phase_equals_quadratic_transfer_exponent(self):
        grid = GridSpec(2**6, 2e-5)
        wavelength, z = 5e-7, 0.05
        k = 2 * math.pi / wavelength
        # phase at frequency index g is g**2 * phi == -alpha_g**2 z / (2 k)
        phi = paraxial_phase(grid, wavelength, z)
        for g in (1, 7, -13):
            alpha = g * grid.d_alpha
            assert g**2 * phi == pytest.approx(-(alpha**2) * z / (2 * k), rel=1e-12)


class TestDispersionPolynomial:
    def test_paraxial_orders(self):
        poly = DispersionPolynomial.paraxial(532e-9)
        k = 2 * math.pi / 532e-9
        assert set(poly.orders) == {2}
        assert poly.orders[2] == pytest.approx(-1 / (2 * k))

    def test_phase_angles_reduce_to_paraxial_phase(self):
        grid = GridSpec(128, 3e-6)
        poly = DispersionPolynomial.paraxial(532e-9)
        angles = poly.phase_angles(grid, 0.4)
        assert angles[2] == pytest.approx(paraxial_phase(grid, 532e-9, 0.4), rel=1e-12)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            DispersionPolynomial({0: 1.0})
        with pytest.raises(ValueError):
            DispersionPolynomial({5: 1.0})


class TestQbpmCircuit1d:
    def test_zero_distance_is_identity(self):
        grid = GridSpec(256, 1e-5)
        state = random_state(8, seed=62)
        out = build_qbpm_circuit(8, grid, 532e-9, 0.0).run(state)
        assert np.max(np.abs(out.amplitudes - state.amplitudes)) < 1e-10

    def test_matches_classical_propagation(self):
        grid = GridSpec(256, 1e-5)
        for seed in range(5):
            state = random_state(8, seed=70 + seed)
            for z in (1e-3, 0.05, 1.0):
                quantum = build_qbpm_circuit(8, grid, 1e-6, z).run(state)
                classical = propagate_1d(Field((grid,), state.amplitudes), 1e-6, z)
                assert np.max(np.abs(quantum.amplitudes - classical.values)) < 1e-9

    def test_semigroup_in_distance(self):
        grid = GridSpec(128, 1e-5)
        state = random_state(7, seed=63)
        z1, z2 = 0.011, 0.047
        two = build_qbpm_circuit(7, grid, 1e-6, z2).run(
            build_qbpm_circuit(7, grid, 1e-6, z1).run(state)
        )
        one = build_qbpm_circuit(7, grid, 1e-6, z1 + z2).run(state)
        assert np.max(np.abs(two.amplitudes - one.amplitudes)) < 1e-10

    def test_even_transfer_preserves_mirror_symmetry(self):
        grid = GridSpec(128, 1e-5)
        x = grid.coordinates()
        values = np.exp(-((x / (8 * grid.dx)) ** 2))
        state = StateVector.from_amplitudes(values)
        out = build_qbpm_circuit(7, grid, 1e-6, 0.02).run(state)
        intensity = out.probabilities()
        mirrored = intensity[(-np.arange(128)) % 128]
        assert np.max(np.abs(intensity - mirrored)) < 1e-10

    def test_cubic_polynomial_matches_oracle_composition(self):
        # odd orders expose the transform sign convention; the oracle chain
        # is forward dense transform, diagonal factor, backward transform
        n = 7
        grid = GridSpec(2**n, 1e-5)
        poly = DispersionPolynomial({3: 4.1e-13})
        state = random_state(n, seed=64)
        quantum = build_qbpm_circuit(n, grid, 1e-6, 0.3, poly).run(state)
        phases = poly.phase_angles(grid, 0.3)
        spectrum = dft_oracle(state.amplitudes, FORWARD)
        expected = dft_oracle(diagonal_oracle(n, phases) * spectrum, BACKWARD)
        assert np.max(np.abs(quantum.amplitudes - expected)) < 1e-10

    def test_argument_validation(self):
        grid = GridSpec(256, 1e-5)
        with pytest.raises(ValueError):
            build_qbpm_circuit(7, grid, 532e-9, 0.1)
        with pytest.raises(ValueError):
            build_qbpm_circuit(8, grid, -1.0, 0.1)
        with pytest.raises(ValueError):
            build_qbpm_circuit(8, grid, 532e-9, -0.1)


class TestQbpmCircuit2d:
    def test_zero_distance_is_identity(self):
        grid = GridSpec(16, 1e-5)
        state = random_state(8, seed=65)
        out = build_qbpm_circuit_2d(4, grid, grid, 532e-9, 0.0).run(state)
        assert np.max(np.abs(out.amplitudes - state.amplitudes)) < 1e-10

    def test_separable_input_factorizes(self):
        grid = GridSpec(16, 1e-5)
        rng = np.random.default_rng(66)
        fx = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        fy = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        joint = np.outer(fy, fx)
        state = StateVector.from_amplitudes(joint)
        out = build_qbpm_circuit_2d(4, grid, grid, 1e-6, 0.02).run(state)
        sx = build_qbpm_circuit(4, grid, 1e-6, 0.02).run(StateVector.from_amplitudes(fx))
        sy = build_qbpm_circuit(4, grid, 1e-6, 0.02).run(StateVector.from_amplitudes(fy))
        product = np.outer(sy.amplitudes, sx.amplitudes).ravel()
        assert np.max(np.abs(out.amplitudes - product)) < 1e-10

    def test_non_separable_input_matches_classical(self):
        grid = GridSpec(16, 1e-5)
        state = random_state(8, seed=67)
        out = build_qbpm_circuit_2d(4, grid, grid, 1e-6, 0.03).run(state)
        classical = propagate_2d(
            Field((grid, grid), state.amplitudes.reshape(16, 16)), 1e-6, 0.03
        )
        assert np.max(np.abs(out.amplitudes - classical.values.ravel())) < 1e-9

    def test_qubit_budget(self):
        grid = GridSpec(2**13, 1e-5)
        with pytest.raises(ValueError):
            build_qbpm_circuit_2d(13, grid, grid, 532e-9, 0.1)
