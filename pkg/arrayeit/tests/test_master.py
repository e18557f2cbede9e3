"""Tests for the driven master equation and its steady state."""

import numpy as np
import pytest
from conftest import make_ladder, make_random_config

from arrayeit.core.config import settings
from arrayeit.core.errors import DimensionTooLarge, InvalidConfig, NonUniqueSteadyState
from arrayeit.model.array import ArrayConfig
from arrayeit.opensystem import master
from arrayeit.opensystem.master import (
    DensityOperator,
    DriveConfig,
    build_drive_hamiltonian,
    build_liouvillian,
    channel_operators,
    exchange_couplings,
    steady_state,
)
from arrayeit.opensystem.operators import basis_index, unvec, vec


def random_density(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def ground(n_atoms: int) -> np.ndarray:
    rho = np.zeros((2**n_atoms, 2**n_atoms), dtype=complex)
    rho[0, 0] = 1.0
    return rho


# =============================================================================
# Drive configuration and states
# =============================================================================


class TestDriveConfig:
    def test_from_intensity(self):
        dc = DriveConfig.from_intensity(make_ladder(2), 0.1, 0.04)
        assert dc.alpha == pytest.approx(0.2)
        assert dc.alpha2 == pytest.approx(0.04)
        assert dc.rabi_frequencies == pytest.approx(np.sqrt(0.5) * 0.2 * np.ones(2))

    def test_drive_phase(self):
        dc = DriveConfig.from_intensity(make_ladder(2), 0.0, 1.0, phase=np.pi / 2)
        assert dc.alpha == pytest.approx(1j)

    def test_negative_intensity_rejected(self):
        with pytest.raises(InvalidConfig):
            DriveConfig.from_intensity(make_ladder(2), 0.0, -0.1)

    def test_non_finite_rejected(self):
        with pytest.raises(InvalidConfig):
            DriveConfig(base=make_ladder(2), delta_k=float("nan"), alpha=0.1)


class TestDensityOperator:
    def test_valid_state(self, rng):
        rho = DensityOperator(random_density(rng, 4))
        assert rho.n_atoms == 2
        assert 0 < rho.purity() <= 1

    def test_not_hermitian(self):
        with pytest.raises(InvalidConfig, match="Hermitian"):
            DensityOperator(np.array([[1.0, 0.5], [0.0, 0.0]]))

    def test_wrong_trace(self):
        with pytest.raises(InvalidConfig, match="trace"):
            DensityOperator(np.eye(2))

    def test_negative_eigenvalue(self):
        with pytest.raises(InvalidConfig, match="negative"):
            DensityOperator(np.diag([1.5, -0.5]))

    def test_pure_state_normalized(self):
        rho = DensityOperator.pure(np.array([3.0, 4.0]))
        assert rho.purity() == pytest.approx(1.0)
        assert rho.matrix[1, 1] == pytest.approx(0.64)


# =============================================================================
# Operators
# =============================================================================


class TestOperators:
    def test_regular_spacing_couplings(self):
        exchange, decay = exchange_couplings(make_ladder(2))
        assert np.all(exchange == 0)
        assert decay[0, 1] == pytest.approx(-1.0)
        assert decay[0, 0] == pytest.approx(1.0)

    def test_general_phases_exchange(self):
        cfg = ArrayConfig.create([-0.1, 0.1], phase=[0.0, np.pi / 2])
        exchange, decay = exchange_couplings(cfg)
        assert exchange[0, 1] == pytest.approx(0.5)
        assert decay[0, 1] == pytest.approx(0.0, abs=1e-12)

    def test_channels_reproduce_collective_decay(self, rng):
        """c_R†c_R + c_L†c_L = Σᵢⱼ Γᵢⱼσᵢ⁺σⱼ⁻ restricted to one excitation."""
        cfg = make_random_config(rng, 3, regular=False, equal_decay=False)
        c_r, c_l = channel_operators(cfg)
        total = (c_r.conj().T @ c_r + c_l.conj().T @ c_l).toarray()
        _, decay = exchange_couplings(cfg)
        singles = [basis_index(s) for s in ("egg", "geg", "gge")]
        assert total[np.ix_(singles, singles)] == pytest.approx(decay)

    def test_hamiltonian_hermitian(self, rng):
        cfg = make_random_config(rng, 3, regular=False)
        h = build_drive_hamiltonian(DriveConfig.from_intensity(cfg, 0.3, 0.5))
        assert np.allclose(h, h.conj().T)

    def test_hamiltonian_size_limit(self, monkeypatch):
        monkeypatch.setattr(settings, "max_hamiltonian_atoms", 2)
        with pytest.raises(DimensionTooLarge):
            build_drive_hamiltonian(DriveConfig.from_intensity(make_ladder(3), 0.0, 0.1))


# =============================================================================
# Liouvillian
# =============================================================================


class TestLiouvillian:
    """Trace and Hermiticity preservation."""

    def test_trace_annihilation(self, rng):
        cfg = make_random_config(rng, 2, regular=False, equal_decay=False)
        liouvillian = build_liouvillian(DriveConfig.from_intensity(cfg, 0.2, 0.3))
        for _ in range(100):
            out = unvec(liouvillian @ vec(random_density(rng, 4)))
            assert abs(np.trace(out)) < 1e-12

    def test_preserves_hermiticity(self, rng):
        cfg = make_random_config(rng, 3)
        liouvillian = build_liouvillian(DriveConfig.from_intensity(cfg, -0.4, 0.2))
        out = unvec(liouvillian @ vec(random_density(rng, 8)))
        assert np.allclose(out, out.conj().T)

    def test_ground_state_stationary_without_drive(self):
        dc = DriveConfig.from_intensity(make_ladder(3, 0.5), 0.1, 0.0)
        assert np.allclose(build_liouvillian(dc) @ vec(ground(3)), 0)

    def test_size_limit(self, monkeypatch):
        monkeypatch.setattr(settings, "max_drive_atoms", 2)
        with pytest.raises(DimensionTooLarge):
            build_liouvillian(DriveConfig.from_intensity(make_ladder(3), 0.0, 0.1))


# =============================================================================
# Steady state
# =============================================================================


class TestSteadyState:
    def test_is_stationary(self):
        dc = DriveConfig.from_intensity(make_ladder(3, 0.5), 0.2, 0.05)
        liouvillian = build_liouvillian(dc)
        rho = steady_state(liouvillian)
        assert np.trace(rho.matrix) == pytest.approx(1.0)
        assert np.linalg.norm(liouvillian @ vec(rho.matrix)) < 1e-10

    def test_ground_state_without_drive(self):
        rho = steady_state(build_liouvillian(DriveConfig.from_intensity(make_ladder(2, 0.5), 0.0, 0.0)))
        assert rho.matrix[0, 0] == pytest.approx(1.0)

    def test_sparse_matches_dense(self, monkeypatch):
        dc = DriveConfig.from_intensity(make_ladder(3, 0.5), 0.1, 0.2)
        dense = steady_state(build_liouvillian(dc))
        monkeypatch.setattr(settings, "dense_max_atoms", 1)
        sparse_rho = steady_state(build_liouvillian(dc))
        assert np.allclose(dense.matrix, sparse_rho.matrix, atol=1e-10)

    def test_degenerate_pair_has_dark_manifold(self):
        """Identical atoms without drive keep the symmetric dark state forever."""
        dc = DriveConfig.from_intensity(ArrayConfig.regular([0.0, 0.0]), 0.0, 0.0)
        with pytest.raises(NonUniqueSteadyState) as exc:
            steady_state(build_liouvillian(dc))
        assert exc.value.null_dimension > 1

    def test_solver_size_limit(self, monkeypatch):
        liouvillian = build_liouvillian(DriveConfig.from_intensity(make_ladder(3), 0.0, 0.1))
        monkeypatch.setattr(settings, "max_drive_atoms", 2)
        with pytest.raises(DimensionTooLarge):
            steady_state(liouvillian)


class TestSteadyStateResidual:
    """A solution that does not satisfy L·vec(ρ) = 0 is never returned."""

    def test_dense_bad_solution_rejected(self, monkeypatch):
        liouvillian = build_liouvillian(DriveConfig.from_intensity(make_ladder(2, 0.5), 0.1, 0.05))
        monkeypatch.setattr(master, "lstsq", lambda a, b: (np.ones(a.shape[1], dtype=complex), None, None, None))
        with pytest.raises(NonUniqueSteadyState) as exc:
            steady_state(liouvillian)
        assert exc.value.residual > master.RESIDUAL_RTOL

    def test_sparse_bad_solution_rejected(self, monkeypatch):
        class OffsetFactor:
            def __init__(self, a):
                self.n = a.shape[0]

            def solve(self, rhs):
                return np.ones(self.n, dtype=complex)

        liouvillian = build_liouvillian(DriveConfig.from_intensity(make_ladder(2, 0.5), 0.1, 0.05))
        monkeypatch.setattr(settings, "dense_max_atoms", 1)
        monkeypatch.setattr(master, "splu", OffsetFactor)
        with pytest.raises(NonUniqueSteadyState) as exc:
            steady_state(liouvillian)
        assert exc.value.residual is not None

    def test_good_solution_passes_on_both_paths(self, monkeypatch):
        dc = DriveConfig.from_intensity(make_ladder(2, 0.5), -0.3, 0.5)
        steady_state(build_liouvillian(dc))
        monkeypatch.setattr(settings, "dense_max_atoms", 1)
        steady_state(build_liouvillian(dc))
