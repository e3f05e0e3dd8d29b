"""Driven open systems: Floquet Green's functions and Lindblad dynamics.

Two complementary routes to the dissipative steady state of a driven
system. The Green's-function route couples a noninteracting system to a
wide-band free-fermion bath and solves the Dyson equation directly in
the Floquet matrix representation; the Lindblad route integrates the
GKSL master equation in time and finds the time-periodic steady state as
a fixed point of the one-period map.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .models import FourierModeSet
from .sambe import build_floquet_matrix


@dataclass(frozen=True)
class BathSpec:
    """Wide-band free-fermion bath: coupling gamma and inverse temperature beta.

    beta = math.inf is the zero-temperature limit where the thermal
    factor tanh(beta nu / 2) becomes sign(nu).
    """

    gamma: float
    beta: float

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError(f"bath coupling must be positive, got {self.gamma}")
        if not self.beta > 0.0:
            raise ValueError(f"inverse temperature must be positive, got {self.beta}")

    def thermal_factor(self, energy):
        if math.isinf(self.beta):
            return np.sign(energy)
        return np.tanh(0.5 * self.beta * np.asarray(energy))


def bath_self_energy(bath: BathSpec, nu, n, omega):
    """Diagonal Floquet-block entries of the bath self-energy at nu + n omega.

    Retarded part -i gamma (flat band taken literally, the real part is
    absorbed into the chemical potential); Keldysh part
    -2i gamma tanh(beta (nu + n omega) / 2).
    """
    sig_r = -1j * bath.gamma
    sig_k = -2j * bath.gamma * bath.thermal_factor(nu + n * omega)
    return sig_r, sig_k


@dataclass(frozen=True)
class GreensFunctionGrid:
    """Retarded and Keldysh Floquet matrices on a frequency grid.

    Frequencies live in the folded zone [-omega/2, omega/2); block index
    n maps a folded nu to the physical frequency nu + n omega. The
    advanced function is the blockwise adjoint of the retarded one.
    """

    omega: float
    m_cut: int
    dim: int
    nu: np.ndarray
    g_retarded: np.ndarray   # (n_nu, D, D) with D = (2M+1) dim
    g_keldysh: np.ndarray

    @property
    def n_blocks(self):
        return 2 * self.m_cut + 1

    @property
    def g_advanced(self):
        return self.g_retarded.conj().transpose(0, 2, 1)

    def block_trace(self, matrices, n):
        d, m0 = self.dim, self.m_cut
        sl = slice((n + m0) * d, (n + m0 + 1) * d)
        return np.trace(matrices[:, sl, sl], axis1=1, axis2=2)


def floquet_greens(modes: FourierModeSet, bath: BathSpec, m_cut, nu_grid):
    """Dyson equation of a noninteracting driven system, solved per frequency.

    G^R(nu) = [(nu + m omega) delta_{mn} - H_{m-n} + i gamma delta_{mn}]^{-1}
    as a Floquet-block matrix inverse, G^A = (G^R)^dagger, and
    G^K = G^R Sigma_b^K G^A with the diagonal bath Keldysh self-energy.
    The system self-energy is zero by scope, so the only broadening is
    the bath's.
    """
    fm = build_floquet_matrix(modes, m_cut)
    nu_grid = np.asarray(nu_grid, dtype=float)
    d_big = fm.matrix.shape[0]
    eye = np.eye(d_big)
    inverse_args = ((nu_grid[:, None, None] + 1j * bath.gamma) * eye - fm.matrix)
    g_r = np.linalg.inv(inverse_args)
    block_energies = np.repeat(np.arange(-m_cut, m_cut + 1) * modes.omega, modes.dim)
    sigma_k = -2j * bath.gamma * bath.thermal_factor(
        nu_grid[:, None] + block_energies[None, :])
    g_k = np.einsum("fij,fj,fkj->fik", g_r, sigma_k, g_r.conj())
    return GreensFunctionGrid(
        omega=modes.omega, m_cut=m_cut, dim=modes.dim,
        nu=nu_grid, g_retarded=g_r, g_keldysh=g_k)


def _unfold(grid: GreensFunctionGrid, per_block):
    axis = []
    values = []
    for n in range(-grid.m_cut, grid.m_cut + 1):
        axis.append(grid.nu + n * grid.omega)
        values.append(per_block(n))
    axis = np.concatenate(axis)
    values = np.concatenate(values)
    order = np.argsort(axis, kind="stable")
    return axis[order], values[order]


def spectral_function(grid: GreensFunctionGrid):
    """A(nu + n omega) = -(1/pi) Im tr [G^R(nu)]_{nn}, on the unfolded axis.

    Returns (frequencies, values) sorted by physical frequency; spectral
    weight outside the covered window (2M+1 zones wide) is truncated,
    which matters only for the Lorentzian tails.
    """
    return _unfold(
        grid,
        lambda n: -np.imag(grid.block_trace(grid.g_retarded, n)) / np.pi)


def occupation_function(grid: GreensFunctionGrid):
    """Occupied spectrum N(nu + n omega) from the lesser function.

    N = (1/2 pi i) tr [G^<]_{nn} with G^< = (G^K - G^R + G^A)/2, which
    reduces to the spectral function times the Fermi factor in
    equilibrium, so 0 <= N <= A pointwise.
    """
    g_a = grid.g_advanced

    def per_block(n):
        lesser = 0.5 * (
            grid.block_trace(grid.g_keldysh, n)
            - grid.block_trace(grid.g_retarded, n)
            + grid.block_trace(g_a, n))
        return np.real(lesser / (2j * np.pi))

    return _unfold(grid, per_block)


@dataclass(frozen=True)
class LindbladSystem:
    """Time-periodic system Hamiltonian sampler plus jump operators."""

    hamiltonian: object        # callable t -> Hermitian (dim, dim)
    jumps: list = field(default_factory=list)

    def __post_init__(self):
        h0 = np.asarray(self.hamiltonian(0.0))
        dim = h0.shape[0]
        cleaned = []
        for j, op in enumerate(self.jumps):
            arr = np.asarray(op, dtype=complex)
            if arr.shape != (dim, dim):
                raise ValueError(f"jump operator {j} has shape {arr.shape}, expected {(dim, dim)}")
            cleaned.append(arr)
        object.__setattr__(self, "jumps", cleaned)
        object.__setattr__(self, "_dim", dim)

    @property
    def dim(self):
        return self._dim


def lindblad_rhs(system: LindbladSystem, rho, t):
    """GKSL right-hand side -i[H, rho] + sum_j (L rho L+ - {L+L, rho}/2)."""
    rho = np.asarray(rho, dtype=complex)
    h = np.asarray(system.hamiltonian(t), dtype=complex)
    out = -1j * (h @ rho - rho @ h)
    for op in system.jumps:
        opd = op.conj().T
        anti = opd @ op
        out += op @ rho @ opd - 0.5 * (anti @ rho + rho @ anti)
    return out


@dataclass(frozen=True)
class LindbladTrajectory:
    times: np.ndarray
    states: np.ndarray   # (n_times, dim, dim)

    @property
    def final(self):
        return self.states[-1]


def evolve_lindblad(system: LindbladSystem, rho0, t_span, dt):
    """Classical fourth-order one-step integration of the master equation.

    No per-step renormalization: trace drift and negativity are
    diagnostics for integrator or model trouble and are reported through
    warnings rather than silently repaired. dt must satisfy the
    stability heuristic dt (|H| + sum |L_j|^2) < 0.1.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if t1 <= t0:
        raise ValueError("t_span must have t1 > t0")
    jump_load = sum(np.linalg.norm(op, 2) ** 2 for op in system.jumps)
    h_norm = max(
        np.linalg.norm(np.asarray(system.hamiltonian(t0 + f * (t1 - t0)), dtype=complex), 2)
        for f in (0.0, 0.137, 0.5, 0.789))
    if dt * (h_norm + jump_load) >= 0.1:
        raise ValueError(
            f"dt={dt} too large for stability: dt (|H| + sum |L|^2) = "
            f"{dt * (h_norm + jump_load):.3f} >= 0.1")
    n_steps = max(1, int(round((t1 - t0) / dt)))
    step = (t1 - t0) / n_steps
    rho = np.asarray(rho0, dtype=complex).copy()
    trace0 = np.trace(rho)
    times = np.empty(n_steps + 1)
    states = np.empty((n_steps + 1, system.dim, system.dim), dtype=complex)
    times[0] = t0
    states[0] = rho
    t = t0
    for i in range(n_steps):
        k1 = lindblad_rhs(system, rho, t)
        k2 = lindblad_rhs(system, rho + 0.5 * step * k1, t + 0.5 * step)
        k3 = lindblad_rhs(system, rho + 0.5 * step * k2, t + 0.5 * step)
        k4 = lindblad_rhs(system, rho + step * k3, t + step)
        rho = rho + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (i + 1) * step
        times[i + 1] = t
        states[i + 1] = rho
    drift = abs(np.trace(rho) - trace0)
    if drift > 1e-6:
        warnings.warn(f"trace drift {drift:.2e} > 1e-6 over the trajectory", stacklevel=2)
    floor = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    if floor < -1e-6:
        warnings.warn(f"density matrix developed negativity {floor:.2e}", stacklevel=2)
    return LindbladTrajectory(times=times, states=states)


@dataclass(frozen=True)
class PeriodicSteadyState:
    """One period of the converged time-periodic steady state."""

    times: np.ndarray
    states: np.ndarray
    residual: float
    periods: int

    @property
    def rho0(self):
        return self.states[0]


def find_ness(system: LindbladSystem, omega, tol=1e-9, max_periods=2000,
              steps_per_period=256):
    """Time-periodic steady state as a fixed point of the one-period map.

    Iterates rho -> Phi_T(rho) from the maximally mixed state until the
    stroboscopic change drops below tol, then returns the state sampled
    over one period (endpoints included, so states[-1] vs states[0] shows
    the periodicity residual directly). Raises on non-convergence with
    the final residual in the message. Requires dissipation: at least
    one nonzero jump operator.
    """
    if not system.jumps or all(np.max(np.abs(op)) == 0.0 for op in system.jumps):
        raise ValueError("steady-state search needs at least one nonzero jump operator")
    period = 2.0 * np.pi / omega
    dt = period / steps_per_period
    rho = np.eye(system.dim, dtype=complex) / system.dim
    residual = np.inf
    for iteration in range(1, max_periods + 1):
        traj = evolve_lindblad(system, rho, (0.0, period), dt)
        nxt = traj.final
        residual = float(np.max(np.abs(nxt - rho)))
        rho = nxt
        if residual < tol:
            final = evolve_lindblad(system, rho, (0.0, period), dt)
            return PeriodicSteadyState(
                times=final.times, states=final.states,
                residual=residual, periods=iteration)
    raise RuntimeError(
        f"steady state not converged after {max_periods} periods "
        f"(residual {residual:.3e}, tol {tol})")
