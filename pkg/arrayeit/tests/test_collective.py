"""Tests for the collective-mode decomposition.

Reference values are the closed forms for equally spaced ladders with
spacing Δ, in units of Δ.
"""

import math

import numpy as np
import pytest
from conftest import make_ladder

from arrayeit.core.errors import InvalidConfig, NearDegenerate
from arrayeit.model.array import ArrayConfig, build_effective_hamiltonian
from arrayeit.model.collective import (
    collective_transform,
    coupling_strengths,
    decompose,
    decompose_reduced,
    secular_roots,
)
from arrayeit.model.degenerate import reduce_degenerate

SQRT7 = math.sqrt(7)

LADDER_DETUNINGS = {
    2: [0.0],
    3: [-1 / math.sqrt(3), 1 / math.sqrt(3)],
    4: [-math.sqrt(5) / 2, 0.0, math.sqrt(5) / 2],
    5: [
        -math.sqrt((15 + math.sqrt(145)) / 10),
        -math.sqrt((15 - math.sqrt(145)) / 10),
        math.sqrt((15 - math.sqrt(145)) / 10),
        math.sqrt((15 + math.sqrt(145)) / 10),
    ],
    6: [
        -math.sqrt((35 + 8 * SQRT7) / 12),
        -math.sqrt((35 - 8 * SQRT7) / 12),
        0.0,
        math.sqrt((35 - 8 * SQRT7) / 12),
        math.sqrt((35 + 8 * SQRT7) / 12),
    ],
}

LADDER_COUPLINGS = {
    2: [0.5],
    3: [1 / math.sqrt(3), 1 / math.sqrt(3)],
    4: [math.sqrt(2 / 5), 3 / (2 * math.sqrt(5)), math.sqrt(2 / 5)],
    5: [
        math.sqrt((145 - math.sqrt(145)) / 290),
        math.sqrt((145 + math.sqrt(145)) / 290),
        math.sqrt((145 + math.sqrt(145)) / 290),
        math.sqrt((145 - math.sqrt(145)) / 290),
    ],
    6: [
        math.sqrt((440 - 16 * SQRT7) / 777),
        math.sqrt((440 + 16 * SQRT7) / 777),
        math.sqrt(675 / 1036),
        math.sqrt((440 + 16 * SQRT7) / 777),
        math.sqrt((440 - 16 * SQRT7) / 777),
    ],
}


def coupling_magnitude(freqs: np.ndarray, detuning: float) -> float:
    """|gᵢ| = [(1/N)·Σₘ 1/(δωₘ − Δᵢ)²]^{−1/2}, from the residue of the secular function."""
    return 1.0 / math.sqrt(np.mean(1.0 / (freqs - detuning) ** 2))


# =============================================================================
# Collective transform
# =============================================================================


class TestCollectiveTransform:
    """U maps the atomic basis onto superradiant + subradiant modes."""

    @pytest.mark.parametrize("n", [2, 3, 5])
    def test_unitary(self, n):
        u = collective_transform(make_ladder(n))
        assert np.allclose(u @ u.conj().T, np.eye(n))

    def test_first_row_is_superradiant(self):
        cfg = make_ladder(4)
        u = collective_transform(cfg)
        assert np.allclose(u[0], cfg.spacing_sign / 2)

    @pytest.mark.parametrize("spacing_multiple", [1, 2])
    def test_diagonalizes_dissipation(self, spacing_multiple):
        cfg = ArrayConfig.regular([0.0] * 4, gamma=0.5, spacing_multiple=spacing_multiple)
        u = collective_transform(cfg)
        rotated = u @ build_effective_hamiltonian(cfg) @ u.conj().T
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = -0.5j * 4 * 0.5
        assert np.allclose(rotated, expected, atol=1e-12)

    def test_rejects_irregular(self):
        with pytest.raises(InvalidConfig):
            collective_transform(ArrayConfig.create([-0.5, 0.5], phase=[0.0, 1.0]))


class TestCouplingStrengths:
    def test_hermitian_zero_diagonal(self):
        g = coupling_strengths(make_ladder(5, 0.3))
        assert np.allclose(g, g.conj().T)
        assert np.allclose(np.diag(g), 0.0, atol=1e-14)

    def test_eigenvalues_are_frequencies(self):
        cfg = make_ladder(4, 0.8)
        assert np.linalg.eigvalsh(coupling_strengths(cfg)) == pytest.approx(np.sort(cfg.delta_omega))


class TestSecularRoots:
    def test_three_atom_ladder(self):
        assert secular_roots([-1.0, 0.0, 1.0]) == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)])

    def test_roots_interlace(self, rng):
        freqs = np.sort(rng.uniform(-2, 2, 6))
        roots = secular_roots(freqs)
        assert len(roots) == 5
        assert np.all(roots > freqs[:-1]) and np.all(roots < freqs[1:])

    def test_weighted(self):
        """Weights (2, 1) on (−1, 1): 2/(x+1) + 1/(x−1) = 0 at x = 1/3."""
        assert secular_roots([-1.0, 1.0], [2.0, 1.0]) == pytest.approx([1 / 3])

    def test_repeated_frequency_is_a_root(self):
        """2/x + 1/(x − 1) = 0 at x = 2/3, plus the repeated frequency itself."""
        assert secular_roots([0.0, 0.0, 1.0]) == pytest.approx([0.0, 2 / 3], abs=1e-12)

    def test_single_atom_has_no_roots(self):
        assert secular_roots([0.0]).size == 0


# =============================================================================
# Decomposition
# =============================================================================


class TestLadderDecomposition:
    """Equally spaced ladders reproduce the closed-form modes."""

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("spacing", [1.0, 0.35])
    def test_detunings(self, n, spacing):
        dec = decompose(make_ladder(n, spacing))
        expected = np.array(LADDER_DETUNINGS[n]) * spacing
        assert dec.effective_detunings == pytest.approx(expected, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("spacing", [1.0, 0.35])
    def test_coupling_magnitudes(self, n, spacing):
        dec = decompose(make_ladder(n, spacing))
        expected = np.array(LADDER_COUPLINGS[n]) * spacing
        assert np.abs(dec.effective_couplings) == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_couplings_match_residue_formula(self, n):
        cfg = make_ladder(n)
        dec = decompose(cfg)
        expected = [coupling_magnitude(cfg.delta_omega, d) for d in dec.effective_detunings]
        assert np.abs(dec.effective_couplings) == pytest.approx(expected, rel=1e-9)

    def test_central_mode_couples_strongest(self):
        """For N = 6 the smaller |Δ| pairs with the larger |g|."""
        g = np.abs(decompose(make_ladder(6)).effective_couplings)
        assert g[1] > g[0] and g[3] > g[4]


class TestDecompose:
    def test_superradiant_decay(self):
        assert decompose(make_ladder(4, gamma=0.5)).superradiant_decay == pytest.approx(2.0)

    def test_window_count(self):
        assert decompose(make_ladder(5)).window_count == 4

    def test_detunings_are_secular_roots(self, rng):
        freqs = rng.uniform(-1.5, 1.5, 5)
        cfg = ArrayConfig.regular(freqs)
        assert decompose(cfg).effective_detunings == pytest.approx(secular_roots(cfg.delta_omega), abs=1e-12)

    def test_subradiant_block_diagonalized(self):
        dec = decompose(make_ladder(5, 0.6))
        v = dec.subradiant_transform
        block = v @ dec.coupling_matrix[1:, 1:] @ v.conj().T
        assert np.allclose(block, np.diag(dec.effective_detunings), atol=1e-12)

    def test_gauge_first_component_positive(self):
        dec = decompose(make_ladder(4))
        vectors = dec.subradiant_transform.conj().T
        for col in vectors.T:
            k = int(np.argmax(np.abs(col) > 1e-12 * np.abs(col).max()))
            assert abs(col[k].imag) < 1e-12
            assert col[k].real > 0

    def test_near_degenerate_rejected(self):
        cfg = ArrayConfig.regular([-0.5, 0.1, 0.1 + 1e-12, 0.3])
        with pytest.raises(NearDegenerate) as exc:
            decompose(cfg)
        assert exc.value.pair == (1, 2)

    def test_custom_tolerance(self):
        cfg = ArrayConfig.regular([-0.5, 0.0, 0.01, 0.49])
        with pytest.raises(NearDegenerate):
            decompose(cfg, tol=0.05)

    def test_non_strict_all_degenerate(self):
        dec = decompose(ArrayConfig.regular([0.0, 0.0, 0.0]), strict=False)
        assert np.allclose(dec.effective_detunings, 0.0, atol=1e-12)
        assert np.allclose(dec.effective_couplings, 0.0, atol=1e-12)

    def test_rejects_unequal_decay(self):
        with pytest.raises(InvalidConfig):
            decompose(ArrayConfig.create([-0.5, 0.5], gamma=[1.0, 2.0]))


class TestDecomposeReduced:
    """Collective modes of the merged emitter model."""

    def test_distinct_atoms_match_decompose(self):
        cfg = make_ladder(4, 0.7)
        full = decompose(cfg)
        reduced = decompose_reduced(reduce_degenerate(cfg))
        assert reduced.effective_detunings == pytest.approx(full.effective_detunings, abs=1e-12)
        assert np.abs(reduced.effective_couplings) == pytest.approx(np.abs(full.effective_couplings), rel=1e-9)
        assert reduced.window_count == full.window_count == 3

    def test_cluster_and_single_atom(self):
        """Weights (1, 3) at (−9/16, 3/16): Δ = −3/8 and |g| = (3/4)·√3/4."""
        red = reduce_degenerate(ArrayConfig.regular([-0.5, 0.25, 0.25, 0.25]))
        dec = decompose_reduced(red)
        assert dec.n_atoms == 4
        assert dec.n_emitters == 2
        assert dec.window_count == 1
        assert dec.superradiant_decay == pytest.approx(4.0)
        assert dec.effective_detunings == pytest.approx([-0.375])
        assert np.abs(dec.effective_couplings) == pytest.approx([0.75 * math.sqrt(3) / 4])

    def test_detunings_are_weighted_secular_roots(self):
        cfg = ArrayConfig.regular([-1.0, -1.0, 0.0, 1.0, 1.0])
        red = reduce_degenerate(cfg)
        weights = [m for _, m in red.groups]
        dec = decompose_reduced(red)
        assert dec.effective_detunings == pytest.approx(secular_roots(red.emitter_frequencies, weights), abs=1e-12)

    def test_transform_unitary(self):
        dec = decompose_reduced(reduce_degenerate(ArrayConfig.regular([-1.0, -1.0, -1.0, 0.0, 1.0])))
        u = dec.transform
        assert np.allclose(u @ u.conj().T, np.eye(5))

    def test_all_identical(self):
        dec = decompose_reduced(reduce_degenerate(ArrayConfig.regular([0.0, 0.0, 0.0])))
        assert dec.n_emitters == 1
        assert dec.window_count == 0
        assert dec.superradiant_decay == pytest.approx(3.0)
