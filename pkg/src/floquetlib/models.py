"""Time-periodic Bloch Hamiltonians and their Fourier-mode decompositions.

Conventions used throughout the toolkit (hbar = 1, energies in units of
the hopping unless stated):

* mode expansion  H(t) = sum_n H_n exp(-i n omega t), so that
  H_n = (1/T) int_0^T dt exp(+i n omega t) H(t), and hermiticity of
  H(t) is the pairing H_{-n} = H_n^dagger;
* 1d chain drive: vector potential A(t) = -amplitude * sin(omega t)
  with amplitude = E/omega, dispersion -2J cos(k - A(t));
* circular drive: (A_x, A_y) = amplitude * (cos omega t, sin omega t);
* honeycomb geometry is pinned to unit bond length with nearest-neighbor
  vectors delta_1 = (0, 1), delta_2 = (-sqrt3/2, -1/2),
  delta_3 = (sqrt3/2, -1/2); any valid choice works, this one is fixed
  so regression values are reproducible.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bessel import bessel_j

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# pinned honeycomb geometry, unit bond length
HONEYCOMB_DELTAS = np.array([
    [0.0, 1.0],
    [-np.sqrt(3.0) / 2.0, -0.5],
    [np.sqrt(3.0) / 2.0, -0.5],
])
# lattice vectors a_i = delta_1 - delta_{i+1} and their reciprocals
HONEYCOMB_LATTICE = np.array([
    HONEYCOMB_DELTAS[0] - HONEYCOMB_DELTAS[1],
    HONEYCOMB_DELTAS[0] - HONEYCOMB_DELTAS[2],
])
HONEYCOMB_RECIPROCAL = 2.0 * np.pi * np.linalg.inv(HONEYCOMB_LATTICE).T

HERMITICITY_TOL = 1e-10


@dataclass(frozen=True)
class DriveProtocol:
    """Monochromatic periodic drive: frequency, amplitude, polarization.

    `amplitude` is the dimensionless vector-potential amplitude A (for
    the 1d chain it plays the role of E/omega).
    """

    omega: float
    amplitude: float = 0.0
    polarization: str = "linear"

    def __post_init__(self):
        if self.omega <= 0.0:
            raise ValueError(f"drive frequency must be positive, got {self.omega}")
        if self.amplitude < 0.0:
            raise ValueError(f"drive amplitude must be >= 0, got {self.amplitude}")
        if self.polarization not in ("linear", "circular"):
            raise ValueError(f"polarization must be 'linear' or 'circular', got {self.polarization!r}")

    @property
    def period(self):
        return 2.0 * np.pi / self.omega

    def vector_potential_1d(self, t):
        """A(t) = -amplitude * sin(omega t) for the driven chain."""
        return -self.amplitude * np.sin(self.omega * t)

    def vector_potential_2d(self, t):
        """(A_x, A_y) = amplitude * (cos omega t, sin omega t)."""
        return np.array([
            self.amplitude * np.cos(self.omega * t),
            self.amplitude * np.sin(self.omega * t),
        ])


def sample_chain_1d(k, hopping, drive, t):
    """Driven 1d nearest-neighbor chain at momentum k, a 1x1 matrix.

    Dispersion -2J cos(k - A(t)) with A(t) = -(E/omega) sin(omega t).
    """
    a = drive.vector_potential_1d(t)
    return np.array([[-2.0 * hopping * np.cos(k - a)]], dtype=complex)


def sample_dirac(kx, ky, drive, t):
    """Circularly driven 2d Dirac point: (k - A(t)) . (sigma_x, sigma_y).

    Defined for circular polarization only; the handedness of the drive
    is what breaks time-reversal symmetry.
    """
    if drive.polarization != "circular":
        raise ValueError("the driven Dirac model requires circular polarization")
    ax, ay = drive.vector_potential_2d(t)
    return (kx - ax) * SIGMA_X + (ky - ay) * SIGMA_Y


def sample_honeycomb(kx, ky, hopping, drive, t):
    """Circularly driven honeycomb Bloch Hamiltonian (Peierls phases).

    Off-diagonal element J sum_i exp(i (k - A(t)) . delta_i) over the
    three pinned nearest-neighbor vectors; diagonal is zero.
    """
    if drive.polarization != "circular":
        raise ValueError("the driven honeycomb model requires circular polarization")
    a = drive.vector_potential_2d(t)
    kk = np.array([kx, ky]) - a
    f = hopping * np.sum(np.exp(1j * (HONEYCOMB_DELTAS @ kk)))
    return np.array([[0.0, f], [np.conj(f), 0.0]], dtype=complex)


def haldane_bloch(kx, ky, j_eff, k_eff):
    """Static honeycomb model with imaginary next-nearest-neighbor hops.

    Built on the pinned geometry: nearest-neighbor hopping j_eff plus
    next-nearest-neighbor hopping i*k_eff whose chirality is fixed so the
    model coincides with the second-order effective Hamiltonian of the
    circularly driven lattice (verified in the tests).
    """
    k = np.array([kx, ky])
    f = j_eff * np.sum(np.exp(1j * (HONEYCOMB_DELTAS @ k)))
    nnn = np.array([
        HONEYCOMB_DELTAS[0] - HONEYCOMB_DELTAS[1],
        HONEYCOMB_DELTAS[1] - HONEYCOMB_DELTAS[2],
        HONEYCOMB_DELTAS[2] - HONEYCOMB_DELTAS[0],
    ])
    d = 2.0 * k_eff * np.sum(np.sin(nnn @ k))
    return np.array([[d, f], [np.conj(f), -d]], dtype=complex)


@dataclass(frozen=True)
class FourierModeSet:
    """Drive frequency plus the Fourier modes {H_n} of a periodic Hamiltonian.

    Modes are stored for every n in [-n_max, n_max]; missing keys are
    treated as zero. Construction enforces the Hermitian pairing
    H_{-n} = H_n^dagger to 1e-10 and a common matrix dimension.
    """

    omega: float
    modes: dict = field(repr=False)

    def __post_init__(self):
        if self.omega <= 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if 0 not in self.modes:
            raise ValueError("mode n=0 must be present (it may be zero)")
        dim = np.asarray(self.modes[0]).shape[0]
        cleaned = {}
        for n, mat in self.modes.items():
            arr = np.asarray(mat, dtype=complex)
            if arr.shape != (dim, dim):
                raise ValueError(f"mode {n} has shape {arr.shape}, expected {(dim, dim)}")
            cleaned[int(n)] = arr
        for n in cleaned:
            partner = cleaned.get(-n)
            if partner is None:
                raise ValueError(f"mode {-n} missing while mode {n} is present")
            err = np.max(np.abs(cleaned[-n] - cleaned[n].conj().T))
            if err > HERMITICITY_TOL:
                raise ValueError(
                    f"modes violate H_-n = H_n^dagger at n={n} (error {err:.2e})")
        object.__setattr__(self, "modes", cleaned)

    @property
    def dim(self):
        return self.modes[0].shape[0]

    @property
    def n_max(self):
        return max(abs(n) for n in self.modes)

    def mode(self, n):
        """H_n, a zero matrix when |n| exceeds the stored cutoff."""
        got = self.modes.get(int(n))
        if got is None:
            return np.zeros((self.dim, self.dim), dtype=complex)
        return got

    def sample(self, t):
        """Reconstruct H(t) = sum_n H_n exp(-i n omega t)."""
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for n, mat in self.modes.items():
            total += mat * np.exp(-1j * n * self.omega * t)
        return total

    def time_reversed(self):
        """Mode set of H(-t): reverses the handedness of a circular drive."""
        return FourierModeSet(self.omega, {-n: m.copy() for n, m in self.modes.items()})

    def max_mode_norm(self, n):
        return float(np.max(np.abs(self.mode(n))))


def fourier_modes(sampler, omega, n_max, n_samples=None):
    """Fourier modes of a T-periodic Hermitian sampler on a uniform grid.

    H_n = (1/N) sum_j exp(i n omega t_j) H(t_j) with t_j = j T / N; for
    periodic integrands the plain Riemann sum is spectrally accurate.
    Requires n_samples >= 4 n_max + 1 to keep aliases out of the kept
    window. Warns when the edge mode carries more than 1e-3 of the
    time-average's weight (cutoff likely too small); note the scale is
    set by H_0, so the check turns conservative when the time average
    itself is tuned to zero.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_samples is None:
        n_samples = 4 * n_max + 1
    if n_samples < 4 * n_max + 1:
        raise ValueError(
            f"n_samples={n_samples} too small for n_max={n_max}; need >= {4 * n_max + 1}")
    period = 2.0 * np.pi / omega
    ts = np.arange(n_samples) * (period / n_samples)
    samples = np.stack([np.asarray(sampler(t), dtype=complex) for t in ts])
    herm = np.max(np.abs(samples - samples.conj().transpose(0, 2, 1)))
    if herm > 1e-9:
        raise ValueError(f"sampler is not Hermitian on the time grid (error {herm:.2e})")
    modes = {}
    for n in range(-n_max, n_max + 1):
        phase = np.exp(1j * n * omega * ts)
        modes[n] = np.tensordot(phase, samples, axes=(0, 0)) / n_samples
    # symmetrize the pairing: exact for Hermitian samples, and keeps the
    # construction from tripping on last-bit rounding
    for n in range(1, n_max + 1):
        paired = 0.5 * (modes[n] + modes[-n].conj().T)
        modes[n] = paired
        modes[-n] = paired.conj().T
    modes[0] = 0.5 * (modes[0] + modes[0].conj().T)
    mode_set = FourierModeSet(omega, modes)
    if n_max > 0:
        edge = mode_set.max_mode_norm(n_max)
        scale = mode_set.max_mode_norm(0)
        overall = max(mode_set.max_mode_norm(n) for n in range(n_max + 1))
        if edge > 1e-3 * scale and edge > 1e-12 * max(overall, 1e-300):
            warnings.warn(
                f"possible aliasing: |H_{n_max}| = {edge:.3e} exceeds 1e-3 |H_0| = "
                f"{1e-3 * scale:.3e}; consider raising n_max",
                stacklevel=2)
    return mode_set


def chain_modes(k, hopping, drive, n_max):
    """Closed-form modes of the driven chain, H_n = -J J_n(z)((-1)^n e^{ik} + e^{-ik})."""
    z = drive.amplitude
    modes = {}
    for n in range(-n_max, n_max + 1):
        coeff = -hopping * bessel_j(n, z) * (((-1.0) ** n) * np.exp(1j * k) + np.exp(-1j * k))
        modes[n] = np.array([[coeff]], dtype=complex)
    return FourierModeSet(drive.omega, modes)


def dirac_modes(kx, ky, drive):
    """Closed-form modes of the driven Dirac point (single harmonic)."""
    if drive.polarization != "circular":
        raise ValueError("the driven Dirac model requires circular polarization")
    a = drive.amplitude
    h1 = -0.5 * a * (SIGMA_X + 1j * SIGMA_Y)
    modes = {
        0: kx * SIGMA_X + ky * SIGMA_Y,
        1: h1,
        -1: h1.conj().T,
    }
    return FourierModeSet(drive.omega, modes)


def honeycomb_modes(kx, ky, hopping, drive, n_max):
    """Closed-form modes of the driven honeycomb lattice.

    Per bond, exp(-i A . delta_i) = exp(-i A cos(omega t - phi_i)) expands
    through the Jacobi-Anger identity, giving the off-diagonal element of
    mode n as J sum_i e^{i k . delta_i} (-i)^n J_n(A) e^{i n phi_i}.
    """
    if drive.polarization != "circular":
        raise ValueError("the driven honeycomb model requires circular polarization")
    a = drive.amplitude
    k = np.array([kx, ky])
    bond_phases = np.exp(1j * (HONEYCOMB_DELTAS @ k))
    phis = np.arctan2(HONEYCOMB_DELTAS[:, 1], HONEYCOMB_DELTAS[:, 0])

    def offdiag(n):
        return hopping * bessel_j(n, a) * ((-1j) ** n) * np.sum(bond_phases * np.exp(1j * n * phis))

    modes = {}
    for n in range(-n_max, n_max + 1):
        f_n = offdiag(n)
        g_n = np.conj(offdiag(-n))
        modes[n] = np.array([[0.0, f_n], [g_n, 0.0]], dtype=complex)
    return FourierModeSet(drive.omega, modes)


def suggested_n_max(amplitude):
    """Bessel-decay heuristic for the mode cutoff: ceil(A) + 10."""
    return int(np.ceil(amplitude)) + 10


def custom_modes(omega, triples):
    """Mode set from (n, real part, imaginary part) triples.

    This is the wire format accepted by the command-line interface for
    user-supplied models; matrices arrive as nested lists.
    """
    modes = {}
    for entry in triples:
        if len(entry) != 3:
            raise ValueError("each custom mode must be a (n, real, imag) triple")
        n, re, im = entry
        mat = np.asarray(re, dtype=float) + 1j * np.asarray(im, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"custom mode {n} is not a square matrix")
        modes[int(n)] = mat
    n_max = max(abs(n) for n in modes)
    for n in range(-n_max, n_max + 1):
        if n not in modes:
            dim = next(iter(modes.values())).shape[0]
            modes[n] = np.zeros((dim, dim), dtype=complex)
    return FourierModeSet(omega, modes)
