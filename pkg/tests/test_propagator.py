import numpy as np
import pytest

from floquetlib.models import SIGMA_X, SIGMA_Z, DriveProtocol, sample_chain_1d, sample_dirac
from floquetlib.propagator import (
    BranchCutError,
    evolve,
    micromotion,
    monodromy,
    quasienergies_from_monodromy,
    stroboscopic_hf,
    unitarity_error,
)
from floquetlib.bessel import bessel_j


def drive_dirac(omega=5.0, amplitude=1.0):
    d = DriveProtocol(omega=omega, amplitude=amplitude, polarization="circular")
    return d, (lambda t: sample_dirac(0.3, -0.2, d, t))


class TestEvolve:
    def test_static_half_rotation(self):
        u = evolve(lambda t: SIGMA_Z, 0.0, np.pi, 64)
        np.testing.assert_allclose(u, -np.eye(2), atol=1e-12)

    def test_composition(self):
        # split at a shared grid point so both sides use the same steps
        _, sampler = drive_dirac()
        u_full = evolve(sampler, 0.0, 2.0, 4096)
        u_part = evolve(sampler, 1.25, 2.0, 1536) @ evolve(sampler, 0.0, 1.25, 2560)
        assert np.max(np.abs(u_full - u_part)) < 1e-9

    def test_reversed_interval_is_adjoint(self):
        _, sampler = drive_dirac()
        forward = evolve(sampler, 0.2, 1.1, 512)
        backward = evolve(sampler, 1.1, 0.2, 512)
        np.testing.assert_allclose(backward, forward.conj().T, atol=1e-14)

    def test_unitarity(self):
        for amplitude in (0.5, 1.0, 2.0):
            d = DriveProtocol(omega=3.0, amplitude=amplitude, polarization="circular")
            u = evolve(lambda t: sample_dirac(1.0, 0.7, d, t), 0.0, d.period, 4096)
            assert unitarity_error(u) < 1e-9

    def test_second_order_convergence(self):
        d, sampler = drive_dirac()
        reference = evolve(sampler, 0.0, d.period, 16384)
        e1 = np.max(np.abs(evolve(sampler, 0.0, d.period, 256) - reference))
        e2 = np.max(np.abs(evolve(sampler, 0.0, d.period, 512) - reference))
        assert 3.5 < e1 / e2 < 4.5

    def test_rejects_nonhermitian(self):
        bad = lambda t: np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError, match="Hermitian"):
            evolve(bad, 0.0, 1.0, 8)

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            evolve(lambda t: SIGMA_Z, 0.0, 1.0, 0)


class TestStroboscopicHF:
    def test_static_recovers_hamiltonian(self):
        h = 0.4 * SIGMA_Z + 0.3 * SIGMA_X
        hf = stroboscopic_hf(lambda t: h, 0.0, omega=5.0, n_steps=512)
        np.testing.assert_allclose(hf.matrix, h, atol=1e-10)

    def test_eigenvalues_independent_of_s(self):
        d, sampler = drive_dirac()
        rng = np.random.default_rng(3)
        s1, s2 = rng.uniform(0.0, d.period, 2)
        hf1 = stroboscopic_hf(sampler, s1, d.omega, n_steps=8192)
        hf2 = stroboscopic_hf(sampler, s2, d.omega, n_steps=8192)
        assert np.max(np.abs(np.sort(hf1.eigenvalues) - np.sort(hf2.eigenvalues))) < 1e-7

    def test_chain_bessel_band(self):
        drive = DriveProtocol(omega=7.0, amplitude=1.0)
        for k in (0.0, 0.8, 2.0):
            hf = stroboscopic_hf(
                lambda t: sample_chain_1d(k, 1.0, drive, t), 0.0, drive.omega, n_steps=8192)
            expected = -2.0 * bessel_j(0, 1.0) * np.cos(k)
            assert abs(hf.eigenvalues[0] - expected) < 1e-7

    def test_branch_cut_refused(self):
        # static level at exactly omega/2 puts the eigenphase on the cut
        omega = 2.0
        with pytest.raises(BranchCutError):
            stroboscopic_hf(lambda t: np.array([[omega / 2.0]], dtype=complex),
                            0.0, omega, n_steps=16)


class TestMicromotion:
    def test_identity_at_start(self):
        d, sampler = drive_dirac()
        hf = stroboscopic_hf(sampler, 0.1, d.omega, n_steps=2048)
        p = micromotion(sampler, 0.1, 0.1, d.omega, hf=hf)
        np.testing.assert_allclose(p, np.eye(2), atol=1e-12)

    def test_periodicity(self):
        d, sampler = drive_dirac()
        hf = stroboscopic_hf(sampler, 0.1, d.omega, n_steps=8192)
        p0 = micromotion(sampler, 0.1, 0.4, d.omega, n_steps=8192, hf=hf)
        p1 = micromotion(sampler, 0.1, 0.4 + d.period, d.omega, n_steps=8192, hf=hf)
        assert np.max(np.abs(p1 - p0)) < 1e-7
        p_period = micromotion(sampler, 0.1, 0.1 + d.period, d.omega, n_steps=8192, hf=hf)
        assert np.max(np.abs(p_period - np.eye(2))) < 1e-7

    def test_reconstructs_full_propagator(self):
        # U(t, t0) = P_s(t) exp(-i (t - t0) H_F(s)) P_s(t0)^{-1}
        d, sampler = drive_dirac()
        s = 0.05
        hf = stroboscopic_hf(sampler, s, d.omega, n_steps=8192)
        w, v = np.linalg.eigh(hf.matrix)
        rng = np.random.default_rng(11)
        for _ in range(5):
            t, t0 = rng.uniform(0.0, 2.0 * d.period, 2)
            p_t = micromotion(sampler, s, t, d.omega, n_steps=8192, hf=hf)
            p_t0 = micromotion(sampler, s, t0, d.omega, n_steps=8192, hf=hf)
            phase = (v * np.exp(-1j * (t - t0) * w)) @ v.conj().T
            direct = evolve(sampler, t0, t, 8192)
            assert np.max(np.abs(p_t @ phase @ np.linalg.inv(p_t0) - direct)) < 1e-7


class TestMonodromyQuasienergies:
    def test_identity(self):
        np.testing.assert_allclose(
            quasienergies_from_monodromy(np.eye(3, dtype=complex), 4.0), 0.0, atol=1e-14)

    def test_static_two_level(self):
        omega = 5.0
        period = 2.0 * np.pi / omega
        u = evolve(lambda t: SIGMA_Z, 0.0, period, 256)
        eps = quasienergies_from_monodromy(u, omega)
        np.testing.assert_allclose(eps, [-1.0, 1.0], atol=1e-10)

    def test_dirac_gap(self):
        d = DriveProtocol(omega=5.0, amplitude=1.0, polarization="circular")
        u = monodromy(lambda t: sample_dirac(0.0, 0.0, d, t), d.omega, n_steps=16384)
        eps = quasienergies_from_monodromy(u, d.omega)
        gap = eps[-1] - eps[0]
        assert abs(gap - (np.sqrt(29.0) - 5.0)) < 1e-6

    def test_rejects_nonunitary(self):
        with pytest.raises(ValueError, match="unitary"):
            quasienergies_from_monodromy(2.0 * np.eye(2, dtype=complex), 1.0)

    def test_folded_range(self):
        d, sampler = drive_dirac(omega=4.0, amplitude=1.2)
        eps = quasienergies_from_monodromy(monodromy(sampler, 4.0, n_steps=2048), 4.0)
        assert np.all(eps >= -2.0) and np.all(eps < 2.0)
