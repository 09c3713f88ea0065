import numpy as np
import pytest

from kicked_ising.core import (
    Axis,
    StateVector,
    make_ghz,
    make_polarized_state,
    make_psi_o,
    partial_trace,
)
from kicked_ising.entanglement import (
    aee_report,
    average_entanglement_entropy,
    detect_bell_pairs,
    entropy,
    geometric_measure,
    min_bipartition_entropy,
)
from kicked_ising.floquet import FloquetSpec, Model, apply_floquet

from oracles import (
    broken_pair_aee,
    broken_pair_count_mean,
    grid_max_overlap,
    nn_bell_product,
    random_state,
)

W3 = StateVector(3, np.array([0, 1, 1, 0, 1, 0, 0, 0]) / np.sqrt(3))


def mirror_bell_product_4() -> StateVector:
    # Bell pairs on (1,4) and (2,3)
    amps = np.zeros(16, dtype=complex)
    amps[[0b0000, 0b0110, 0b1001, 0b1111]] = 0.5
    return StateVector(4, amps)


class TestEntropy:
    def test_pure_state_is_zero(self):
        assert entropy(np.diag([1.0, 0.0])) == 0.0

    def test_maximally_mixed_qubit(self):
        assert entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)

    def test_two_level_mixture(self):
        assert entropy(np.diag([0.5, 0.0, 0.0, 0.5])) == pytest.approx(1.0, abs=1e-12)

    def test_accepts_density_matrix_objects(self):
        rho = partial_trace(make_ghz(3, Axis.parse("z")), (2,))
        assert entropy(rho) == pytest.approx(1.0, abs=1e-12)

    def test_rounding_negatives_are_clamped(self):
        assert entropy(np.diag([1.0, -1e-11])) == 0.0

    def test_rejects_significant_negatives(self):
        with pytest.raises(ValueError):
            entropy(np.diag([1.5, -0.5]))

    def test_complement_symmetry(self):
        rng = np.random.default_rng(20)
        for num_sites in (3, 5, 6):
            psi = StateVector(num_sites, random_state(rng, num_sites))
            for l in range(1, num_sites):
                keep = tuple(range(1, l + 1))
                rest = tuple(range(l + 1, num_sites + 1))
                s_keep = entropy(partial_trace(psi, keep))
                s_rest = entropy(partial_trace(psi, rest))
                assert abs(s_keep - s_rest) < 1e-9


class TestAverageEntropy:
    def test_product_state_is_zero(self):
        state = make_polarized_state(5, Axis.parse("x+"))
        for l in range(1, 5):
            s, s_norm = average_entanglement_entropy(state, l)
            assert abs(s) < 1e-10
            assert abs(s_norm) < 1e-10

    def test_ghz_is_one_bit_for_every_cut(self):
        state = make_ghz(5, Axis.parse("z"))
        for l in range(1, 5):
            s, s_norm = average_entanglement_entropy(state, l)
            assert s == pytest.approx(1.0, abs=1e-10)
            assert s_norm == pytest.approx(1.0 / l, abs=1e-10)

    @pytest.mark.parametrize("num_sites", [4, 6, 8])
    def test_bell_pairs_match_broken_pair_count(self, num_sites):
        state = StateVector(num_sites, nn_bell_product(num_sites))
        pairs = [(2 * k + 1, 2 * k + 2) for k in range(num_sites // 2)]
        for l in range(1, num_sites):
            s, _ = average_entanglement_entropy(state, l)
            assert s == pytest.approx(broken_pair_aee(num_sites, l), abs=1e-10)
            assert s == pytest.approx(
                broken_pair_count_mean(num_sites, l, pairs), abs=1e-10
            )

    def test_pairing_geometry_does_not_matter(self):
        # mirror pairing and nearest-neighbor pairing give identical
        # subset-averaged entropies
        nn = StateVector(4, nn_bell_product(4))
        mirror = mirror_bell_product_4()
        for l in range(1, 4):
            s_nn, _ = average_entanglement_entropy(nn, l)
            s_mirror, _ = average_entanglement_entropy(mirror, l)
            assert s_nn == pytest.approx(s_mirror, abs=1e-10)

    def test_rejects_bad_subsystem_size(self):
        state = make_ghz(4, Axis.parse("z"))
        for bad in (0, 4, 5):
            with pytest.raises(ValueError):
                average_entanglement_entropy(state, bad)

    def test_report_collects_all_sizes(self):
        state = make_ghz(4, Axis.parse("z"))
        report = aee_report(state)
        assert sorted(report.per_l) == [1, 2, 3]
        assert report.per_l[2][2] == 6
        s, s_norm = average_entanglement_entropy(state, 2)
        assert report.per_l[2][0] == pytest.approx(s, abs=1e-12)
        assert report.per_l[2][1] == pytest.approx(s_norm, abs=1e-12)


class TestMinBipartition:
    def test_product_state(self):
        state = make_polarized_state(4, Axis.parse("y-"))
        assert min_bipartition_entropy(state) < 1e-10

    def test_ghz_pair_of_blocks_has_a_zero_cut(self):
        assert min_bipartition_entropy(make_psi_o(4)) < 1e-10

    def test_ghz_every_cut_is_one_bit(self):
        assert min_bipartition_entropy(make_ghz(4, Axis.parse("z"))) == pytest.approx(
            1.0, abs=1e-10
        )

    def test_single_site_rejected(self):
        with pytest.raises(ValueError):
            min_bipartition_entropy(make_polarized_state(1, Axis.parse("z+")))

    def test_one_kick_entangles_the_block_cut(self):
        evolved = apply_floquet(FloquetSpec(Model.UX, 4), make_psi_o(4), 1)
        assert min_bipartition_entropy(evolved) == pytest.approx(1.0, abs=1e-8)


class TestBellPairDetection:
    def test_nearest_neighbor_pairs(self):
        state = StateVector(4, nn_bell_product(4))
        assert detect_bell_pairs(state) == [(1, 2), (3, 4)]

    def test_mirror_pairs(self):
        assert detect_bell_pairs(mirror_bell_product_4()) == [(1, 4), (2, 3)]

    def test_ghz_has_no_pair_structure(self):
        assert detect_bell_pairs(make_ghz(4, Axis.parse("z"))) is None

    def test_product_state_has_no_pairs(self):
        assert detect_bell_pairs(make_polarized_state(4, Axis.parse("x+"))) is None

    def test_half_period_of_the_kicked_ising_chain(self):
        # n = L/2 periods of U0 from z+ build Bell pairs between mirror
        # sites
        evolved = apply_floquet(
            FloquetSpec(Model.U0, 6), make_polarized_state(6, Axis.parse("z+")), 3
        )
        assert detect_bell_pairs(evolved) == [(1, 6), (2, 5), (3, 4)]
        for l in range(1, 6):
            s, _ = average_entanglement_entropy(evolved, l)
            assert s == pytest.approx(broken_pair_aee(6, l), abs=1e-8)


class TestGeometricMeasure:
    def test_product_state(self):
        result = geometric_measure(make_polarized_state(4, Axis.parse("y+")))
        assert result.lambda_ == pytest.approx(1.0, abs=1e-10)
        assert 0.0 <= result.e_g < 1e-10
        assert result.converged

    def test_ghz(self):
        result = geometric_measure(make_ghz(4, Axis.parse("z")))
        assert result.lambda_ == pytest.approx(1 / np.sqrt(2), abs=1e-8)
        assert result.e_g == pytest.approx(0.5, abs=1e-6)

    def test_pair_of_ghz_blocks(self):
        result = geometric_measure(make_psi_o(4))
        assert result.e_g == pytest.approx(0.75, abs=1e-6)

    def test_w_state(self):
        result = geometric_measure(W3)
        assert result.lambda_ == pytest.approx(2 / 3, abs=1e-8)

    def test_history_is_monotone(self):
        result = geometric_measure(make_ghz(4, Axis.parse("x")))
        diffs = np.diff(result.lambda_history)
        assert (diffs > -1e-9).all()

    def test_winning_product_state_reproduces_lambda(self):
        rng = np.random.default_rng(21)
        psi = random_state(rng, 3)
        result = geometric_measure(StateVector(3, psi), restarts=8)
        folded = psi.reshape(2, -1)
        for phi in result.product_state[:-1]:
            folded = np.tensordot(phi.conj(), folded, axes=(0, 0)).reshape(2, -1)
        amp = result.product_state[-1].conj() @ folded.ravel()
        assert abs(amp) == pytest.approx(result.lambda_, abs=1e-9)

    def test_largest_amplitude_lower_bound(self):
        rng = np.random.default_rng(22)
        for num_sites in (2, 3, 4):
            psi = random_state(rng, num_sites)
            result = geometric_measure(StateVector(num_sites, psi), restarts=4)
            assert result.lambda_ >= np.abs(psi).max() - 1e-9

    def test_seed_determinism(self):
        rng = np.random.default_rng(23)
        psi = StateVector(3, random_state(rng, 3))
        a = geometric_measure(psi, seed=5)
        b = geometric_measure(psi, seed=5)
        assert a.lambda_ == b.lambda_

    @pytest.mark.parametrize("num_sites", [2, 3])
    def test_matches_grid_search(self, num_sites):
        rng = np.random.default_rng(24)
        for _ in range(3):
            psi = random_state(rng, num_sites)
            result = geometric_measure(StateVector(num_sites, psi), restarts=16)
            grid = grid_max_overlap(psi, num_sites)
            assert result.lambda_ == pytest.approx(grid, abs=2e-4)
            assert result.lambda_ >= grid - 2e-4

    def test_grid_agrees_on_w_state(self):
        assert grid_max_overlap(W3.amplitudes, 3) == pytest.approx(2 / 3, abs=2e-4)

    def test_rejects_bad_restarts(self):
        with pytest.raises(ValueError):
            geometric_measure(W3, restarts=0)
