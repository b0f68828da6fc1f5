"""Adiabatic-theorem evolution times, derivative-norm measurement, and a
Schrodinger propagator to verify the theorems numerically.

The normalized-time convention is (i/T) dU(s,s')/ds = H(s) U(s,s'), so one
midpoint step multiplies the state by exp(-1j * H(s_mid) * T * ds).  The
stepping loop runs in a compiled kernel when the build produced one and in
pure NumPy otherwise; both implement the same midpoint-exponential rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import TrigHermitianFamily, operator_norm

try:
    from ._evolve_core import evolve_trig_cheb as _evolve_trig_cheb

    COMPILED_KERNEL = True
except ImportError:
    _evolve_trig_cheb = None

    COMPILED_KERNEL = False

from ._evolve_py import evolve_trig as _evolve_trig_py

#: Ground-space degeneracy threshold that routes between the two theorems.
DEGENERATE_GAP_TOL = 1e-8


def backend_name() -> str:
    return "compiled" if COMPILED_KERNEL else "python"


@dataclass(frozen=True)
class GapProfile:
    """Gap and derivative norms of an operator family on an s-grid."""

    s_grid: np.ndarray
    gamma: np.ndarray
    d1_norm: np.ndarray
    d2_norm: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s_grid, dtype=float)
        for name in ("gamma", "d1_norm", "d2_norm"):
            arr = np.asarray(getattr(self, name), dtype=float)
            object.__setattr__(self, name, arr)
            if arr.shape != s.shape:
                raise ValueError(f"{name} not aligned with s_grid")
        object.__setattr__(self, "s_grid", s)
        if s.size < 2 or np.any(np.diff(s) <= 0) or s[0] < 0 or s[-1] > 1:
            raise ValueError("s_grid must be ascending within [0, 1]")
        if np.any(self.gamma <= 0):
            raise ValueError("gap must be positive everywhere for the adiabatic theorems")
        if np.any(self.d1_norm < 0) or np.any(self.d2_norm < 0):
            raise ValueError("derivative norms must be nonnegative")


def _require_epsilon(epsilon: float) -> None:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")


def evolution_time_states(profile: GapProfile, epsilon: float) -> float:
    """Sufficient evolution time for a nondegenerate ground state:
    (1/eps) * (||H'||/gamma^2 at both ends + integral of
    5 ||H'||^2 / gamma^3 + ||H''|| / gamma^2)."""
    _require_epsilon(epsilon)
    g, d1, d2 = profile.gamma, profile.d1_norm, profile.d2_norm
    integrand = 5.0 * d1**2 / g**3 + d2 / g**2
    integral = float(np.trapezoid(integrand, profile.s_grid))
    return (d1[0] / g[0] ** 2 + d1[-1] / g[-1] ** 2 + integral) / epsilon


def evolution_time_projections(profile: GapProfile, epsilon: float) -> float:
    """Sufficient evolution time for a (possibly degenerate) ground space:
    prefactor 2/eps and integrand constant 6 instead of 5."""
    _require_epsilon(epsilon)
    g, d1, d2 = profile.gamma, profile.d1_norm, profile.d2_norm
    integrand = 6.0 * d1**2 / g**3 + d2 / g**2
    integral = float(np.trapezoid(integrand, profile.s_grid))
    return 2.0 * (d1[0] / g[0] ** 2 + d1[-1] / g[-1] ** 2 + integral) / epsilon


def _eval_operator(H_of_s, s: float) -> np.ndarray:
    return np.asarray(H_of_s(s))


def derivative_norms(H_of_s, s: float, delta: float) -> tuple[float, float]:
    """Spectral norms of dH/ds and d^2H/ds^2 by finite differences.

    Central differences inside [delta, 1 - delta]; at the boundary the
    one-sided forms are used (first-order for d1, so expect reduced
    accuracy there).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if s - delta >= 0 and s + delta <= 1:
        Hm = _eval_operator(H_of_s, s - delta)
        Hp = _eval_operator(H_of_s, s + delta)
        H0 = _eval_operator(H_of_s, s)
        d1 = operator_norm((Hp - Hm) / (2 * delta))
        d2 = operator_norm((Hp - 2 * H0 + Hm) / delta**2)
    else:
        sign = 1.0 if s - delta < 0 else -1.0
        H0 = _eval_operator(H_of_s, s)
        H1 = _eval_operator(H_of_s, s + sign * delta)
        H2 = _eval_operator(H_of_s, s + 2 * sign * delta)
        d1 = operator_norm((H1 - H0) / (sign * delta))
        d2 = operator_norm((H2 - 2 * H1 + H0) / delta**2)
    return float(d1), float(d2)


@dataclass(frozen=True)
class EvolutionResult:
    """Outcome of a propagation; beta and error are filled by the phase
    comparison step."""

    T: float
    final_state: np.ndarray
    error: float | None = None
    beta: float | None = None
    initial_state: np.ndarray | None = None


def _spectral_radius_bound(family: TrigHermitianFamily) -> float:
    """Safe bound R with spec(H(s)) inside [-R, R] for every s."""
    R = operator_norm(family.constant)
    for k in range(family.terms.shape[0]):
        R += 2.0 * operator_norm(family.terms[k])
    return R * (1.0 + 1e-6) + 1e-12


def _chebyshev_exp_coeffs(theta: float, tol: float = 1e-17) -> np.ndarray:
    """Coefficients c_k with exp(-1j*theta*x) = sum c_k T_k(x) on [-1, 1]:
    c_0 = J_0(theta), c_k = 2 (-1j)^k J_k(theta), truncated at the
    superexponential Bessel tail."""
    from scipy.special import jv

    k_max = int(abs(theta) + 20 + 8 * abs(theta) ** 0.5)
    ks = np.arange(k_max + 1)
    J = jv(ks, theta)
    keep = np.nonzero(np.abs(J) > tol)[0]
    m = int(keep[-1]) + 1 if keep.size else 1
    coeffs = 2.0 * (-1j) ** ks[:m] * J[:m]
    coeffs[0] /= 2.0
    return coeffs


def schrodinger_evolve(H_of_s, T: float, psi0: np.ndarray, steps: int) -> EvolutionResult:
    """Propagate psi0 across s in [0, 1] with the midpoint-exponential rule.

    Doubling `steps` should change the final state by less than the target
    propagation accuracy; callers verify that by step-doubling.  The
    compiled kernel evaluates each step exponential as a Chebyshev
    expansion (machine accurate); the fallback diagonalizes per step.
    """
    psi0 = np.asarray(psi0, dtype=complex).reshape(-1)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    nrm = np.linalg.norm(psi0)
    if abs(nrm - 1.0) > 1e-8:
        raise ValueError(f"initial state norm {nrm} is not 1")
    if T == 0:
        return EvolutionResult(T=0.0, final_state=psi0.copy(), initial_state=psi0.copy())
    if isinstance(H_of_s, TrigHermitianFamily):
        if COMPILED_KERNEL:
            radius = _spectral_radius_bound(H_of_s)
            tau = float(T) / steps
            coeffs = _chebyshev_exp_coeffs(tau * radius)
            final = _evolve_trig_cheb(
                H_of_s.constant, H_of_s.phases, H_of_s.terms, tau, psi0, int(steps), radius, coeffs
            )
        else:
            final = _evolve_trig_py(
                H_of_s.constant, H_of_s.phases, H_of_s.terms, float(T), psi0, int(steps)
            )
    else:
        final = _evolve_generic(H_of_s, float(T), psi0, int(steps))
    return EvolutionResult(T=float(T), final_state=final, initial_state=psi0.copy())


def _evolve_generic(H_of_s, T: float, psi0: np.ndarray, steps: int) -> np.ndarray:
    psi = psi0.copy()
    ds = 1.0 / steps
    for k in range(steps):
        H = _eval_operator(H_of_s, (k + 0.5) * ds)
        w, V = np.linalg.eigh(H)
        psi = (V * np.exp(-1j * w * T * ds)) @ (V.conj().T @ psi)
    return psi


def evolve_basis(H_of_s, T: float, basis0: np.ndarray, steps: int) -> np.ndarray:
    """Propagate several orthonormal columns under the same schedule."""
    cols = [
        schrodinger_evolve(H_of_s, T, basis0[:, j], steps).final_state
        for j in range(basis0.shape[1])
    ]
    return np.stack(cols, axis=1)


def phase_align(eta_grid: np.ndarray) -> np.ndarray:
    """Fix gauge: rotate each state so successive overlaps are real positive.

    Raw eigensolver output carries arbitrary per-point phases; the phase
    integral below needs a differentiable family.
    """
    eta = np.array(eta_grid, dtype=complex)
    for k in range(1, eta.shape[0]):
        ov = np.vdot(eta[k - 1], eta[k])
        if abs(ov) > 0:
            eta[k] *= ov.conjugate() / abs(ov)
    return eta


def berry_phase(s_grid: np.ndarray, eta_grid: np.ndarray) -> float:
    """beta(1) = integral of i <eta | eta'> over the grid (trapezoid), with
    eta' by central differences (one-sided at the ends)."""
    s = np.asarray(s_grid, dtype=float)
    eta = np.asarray(eta_grid, dtype=complex)
    m = len(s)
    if eta.shape[0] != m:
        raise ValueError("eta family not aligned with s_grid")
    integrand = np.empty(m)
    for k in range(m):
        if 0 < k < m - 1:
            deriv = (eta[k + 1] - eta[k - 1]) / (s[k + 1] - s[k - 1])
        elif k == 0:
            deriv = (eta[1] - eta[0]) / (s[1] - s[0])
        else:
            deriv = (eta[-1] - eta[-2]) / (s[-1] - s[-2])
        integrand[k] = (1j * np.vdot(eta[k], deriv)).real
    return float(np.trapezoid(integrand, s))


def adiabatic_phase_and_error(H_of_s, result: EvolutionResult, eta_grid: np.ndarray, s_grid: np.ndarray | None = None) -> tuple[float, float]:
    """Accumulated phase beta and the distance of the evolved state from
    e^{i beta} times the final ground state.

    `eta_grid` holds the instantaneous ground states on `s_grid` (uniform
    default), one row per grid point, each a unit vector.  Raises when the
    ground state is degenerate at the endpoints; use the projection variant
    (evolve_basis + projector_distance) there.
    """
    eta = np.asarray(eta_grid, dtype=complex)
    if s_grid is None:
        s_grid = np.linspace(0.0, 1.0, eta.shape[0])
    if H_of_s is not None:
        for s_check in (0.0, 1.0):
            w = np.linalg.eigvalsh(_eval_operator(H_of_s, s_check))
            if w[1] - w[0] <= DEGENERATE_GAP_TOL:
                raise ValueError(
                    "ground space is degenerate; the state-version phase is "
                    "undefined, use the projection variant"
                )
    aligned = phase_align(eta)
    if result.initial_state is not None:
        # pin the family's global phase to the state actually propagated
        ov = np.vdot(aligned[0], result.initial_state)
        if abs(ov) < 1.0 - 1e-6:
            raise ValueError(
                "the propagated initial state is not the family's ground state "
                f"(overlap magnitude {abs(ov):.6f})"
            )
        aligned = aligned * (ov / abs(ov))
    beta = berry_phase(s_grid, aligned)
    error = float(np.linalg.norm(result.final_state - np.exp(1j * beta) * aligned[-1]))
    return beta, error


def projector_distance(basis_a: np.ndarray, basis_b: np.ndarray) -> float:
    """Spectral-norm distance between projectors given orthonormal bases."""
    Pa = basis_a @ basis_a.conj().T
    Pb = basis_b @ basis_b.conj().T
    return operator_norm(Pa - Pb)
