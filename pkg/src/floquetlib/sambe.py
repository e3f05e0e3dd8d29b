"""Extended-space quasienergy problem: build, diagonalize, fold, select.

The time-periodic Schroedinger equation becomes a static eigenproblem on
the extended (Sambe) space of system times Fourier modes, with block
structure (H_F)_{mn} = H_{m-n} - m omega delta_{mn}. Truncating the mode
index to |m| <= M makes this a dense Hermitian matrix of dimension
(2M+1) * dim. Every physical eigenstate reappears as replicas shifted by
l blocks with quasienergies shifted by -l omega; replica selection keeps
the copy with the largest Fourier weight in the central block.
"""

import warnings
from dataclasses import dataclass, replace

import numpy as np

from .models import FourierModeSet


def fold_to_bz(epsilon, omega):
    """Fold an energy into the quasienergy zone [-omega/2, omega/2).

    The boundary epsilon = +omega/2 maps to -omega/2. Accepts scalars or
    arrays.
    """
    if omega <= 0.0:
        raise ValueError("omega must be positive")
    epsilon = np.asarray(epsilon, dtype=float)
    folded = epsilon - omega * np.floor(epsilon / omega + 0.5)
    # rounding in the division can spill one ulp past either edge
    folded = np.where(folded < -0.5 * omega, folded + omega, folded)
    folded = np.where(folded >= 0.5 * omega, folded - omega, folded)
    return folded if folded.ndim else float(folded)


@dataclass(frozen=True)
class FloquetMatrix:
    """Truncated extended-space matrix with its bookkeeping.

    `matrix` is the dense ((2M+1) dim)^2 array; block row m occupies rows
    (m + M) dim : (m + M + 1) dim, m in [-M, M].
    """

    omega: float
    m_cut: int
    dim: int
    n_max: int
    matrix: np.ndarray

    @property
    def n_blocks(self):
        return 2 * self.m_cut + 1

    def block(self, m, n):
        d, m0 = self.dim, self.m_cut
        return self.matrix[(m + m0) * d:(m + m0 + 1) * d, (n + m0) * d:(n + m0 + 1) * d]


def build_floquet_matrix(modes: FourierModeSet, m_cut):
    """Assemble the extended-space matrix from a Fourier mode set.

    Block (m, n) holds H_{m-n} - m omega delta_{mn}; blocks with
    |m - n| > n_max are zero. Rejects m_cut < n_max since that would
    silently drop drive modes.
    """
    n_max = modes.n_max
    if m_cut < n_max:
        raise ValueError(f"replica cutoff M={m_cut} must be >= n_max={n_max}")
    d = modes.dim
    nb = 2 * m_cut + 1
    big = np.zeros((nb * d, nb * d), dtype=complex)
    for m in range(-m_cut, m_cut + 1):
        for n in range(-m_cut, m_cut + 1):
            if abs(m - n) > n_max:
                continue
            blockval = modes.mode(m - n).copy()
            if m == n:
                blockval -= m * modes.omega * np.eye(d)
            big[(m + m_cut) * d:(m + m_cut + 1) * d,
                (n + m_cut) * d:(n + m_cut + 1) * d] = blockval
    return FloquetMatrix(omega=modes.omega, m_cut=m_cut, dim=d, n_max=n_max, matrix=big)


@dataclass(frozen=True)
class QuasienergySolution:
    """Eigensolution of a truncated extended-space matrix.

    quasienergies are folded into [-omega/2, omega/2); raw_energies keep
    the unfolded spectrum whose replica structure eps - l omega is
    visible. vectors holds the extended eigenvectors as columns.
    `physical` marks a solution reduced to one replica per physical state.
    """

    omega: float
    m_cut: int
    dim: int
    n_max: int
    quasienergies: np.ndarray
    raw_energies: np.ndarray
    vectors: np.ndarray
    physical: bool = False

    @property
    def n_states(self):
        return self.vectors.shape[1]

    @property
    def n_blocks(self):
        return 2 * self.m_cut + 1

    def block_components(self, n):
        """Rows of every eigenvector living in Fourier block n."""
        d, m0 = self.dim, self.m_cut
        return self.vectors[(n + m0) * d:(n + m0 + 1) * d, :]

    def fourier_weights(self):
        """w_alpha(n) = |u_alpha^n|^2, shape (2M+1, n_states); columns sum to 1."""
        d = self.dim
        comps = self.vectors.reshape(self.n_blocks, d, self.n_states)
        return np.sum(np.abs(comps) ** 2, axis=1)

    def weight0(self):
        return self.fourier_weights()[self.m_cut]

    def periodic_part(self, t):
        """u_alpha(t) = sum_n exp(-i n omega t) u_alpha^n, shape (dim, n_states)."""
        ns = np.arange(-self.m_cut, self.m_cut + 1)
        phases = np.exp(-1j * ns * self.omega * t)
        comps = self.vectors.reshape(self.n_blocks, self.dim, self.n_states)
        return np.tensordot(phases, comps, axes=(0, 0))


def quasienergies(fm: FloquetMatrix):
    """Full Hermitian eigendecomposition of the extended-space matrix."""
    herm = np.max(np.abs(fm.matrix - fm.matrix.conj().T))
    if herm > 1e-9:
        raise ValueError(f"extended-space matrix is not Hermitian (error {herm:.2e})")
    raw, vecs = np.linalg.eigh(fm.matrix)
    return QuasienergySolution(
        omega=fm.omega,
        m_cut=fm.m_cut,
        dim=fm.dim,
        n_max=fm.n_max,
        quasienergies=fold_to_bz(raw, fm.omega),
        raw_energies=raw,
        vectors=vecs,
    )


def select_physical_band(sol: QuasienergySolution):
    """Keep one replica per physical state: the dim largest central weights.

    For every physical state the replica whose Fourier weight peaks in
    the central block maximizes w(0), so taking the dim states with the
    largest w(0) retains exactly one copy each. Warns when the weakest
    retained weight drops below 0.5, where the identification becomes
    ambiguous under strong driving. Requires M >= n_max + 2 so the
    retained states are away from the truncation edges. The result is
    sorted by folded quasienergy.
    """
    if sol.physical:
        return sol
    if sol.m_cut < sol.n_max + 2:
        raise ValueError(
            f"replica selection needs M >= n_max + 2 (got M={sol.m_cut}, n_max={sol.n_max})")
    w0 = sol.weight0()
    picked = np.argsort(w0)[::-1][:sol.dim]
    if np.min(w0[picked]) < 0.5:
        warnings.warn(
            f"weakest central Fourier weight {np.min(w0[picked]):.3f} < 0.5: "
            "replica identification is ambiguous at this drive strength",
            stacklevel=2)
    order = picked[np.argsort(sol.quasienergies[picked], kind="stable")]
    return replace(
        sol,
        quasienergies=sol.quasienergies[order],
        raw_energies=sol.raw_energies[order],
        vectors=sol.vectors[:, order],
        physical=True,
    )


def replica_centers(sol: QuasienergySolution):
    """Block index where each state's Fourier weight peaks."""
    weights = sol.fourier_weights()
    return np.argmax(weights, axis=0) - sol.m_cut


def floquet_coefficients(sol: QuasienergySolution, psi0, t0):
    """Expansion coefficients of a state over the physical Floquet basis."""
    if not sol.physical:
        raise ValueError("expand over a physical solution (run select_physical_band)")
    basis = sol.periodic_part(t0)
    return basis.conj().T @ np.asarray(psi0, dtype=complex)


def evolve_state_floquet(sol: QuasienergySolution, psi0, t0, t):
    """psi(t) = sum_a c_a exp(-i eps_a (t - t0)) u_a(t), c_a fixed at t0.

    The phase uses each retained eigenpair's own (unfolded) eigenvalue:
    pairing the folded value with another replica's periodic part would
    shift the phase by a multiple of omega between stroboscopic times.
    Norm conservation is a truncation diagnostic: drift beyond 1e-4
    triggers a warning that the mode/replica cutoffs are too small.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    coeffs = floquet_coefficients(sol, psi0, t0)
    phases = np.exp(-1j * sol.raw_energies * (t - t0))
    psi_t = sol.periodic_part(t) @ (coeffs * phases)
    drift = abs(np.linalg.norm(psi_t) - np.linalg.norm(psi0))
    if drift > 1e-4:
        warnings.warn(
            f"norm drift {drift:.2e} > 1e-4: extended-space truncation too small",
            stacklevel=2)
    return psi_t


def convergence_scan(modes: FourierModeSet, m_values):
    """Physical-band drift against the largest cutoff in the list.

    Returns [(M, max |delta eps|)] for each M in ascending m_values,
    measured against the solution at max(m_values).
    """
    m_values = list(m_values)
    if m_values != sorted(m_values):
        raise ValueError("m_values must be ascending")
    bands = {}
    for m in m_values:
        sol = select_physical_band(quasienergies(build_floquet_matrix(modes, m)))
        bands[m] = np.sort(sol.quasienergies)
    reference = bands[m_values[-1]]
    return [(m, float(np.max(np.abs(bands[m] - reference)))) for m in m_values]
