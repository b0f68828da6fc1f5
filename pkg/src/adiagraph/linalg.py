"""Dense complex-Hermitian linear algebra shared by every other module.

Everything here works on plain ``numpy.ndarray`` values.  Matrices claimed
to be Hermitian or unitary are checked against explicit tolerances before
use; validation failures raise :class:`ValueError` with the offending norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Largest matrix dimension accepted by the dense eigensolver.
DIM_CAP = 4096

#: Default absolute tolerance for deciding eigenvalue degeneracy.
DEGENERACY_TOL = 1e-8

HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10
ORTHONORMAL_ATOL = 1e-10


class DimensionCapError(ValueError):
    """Matrix dimension exceeds the documented dense-solver cap."""


def _as_square(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M


def hermiticity_defect(M: np.ndarray) -> float:
    """Largest entrywise deviation of M from its conjugate transpose."""
    M = _as_square(M)
    return float(np.abs(M - M.conj().T).max(initial=0.0))


def require_hermitian(M: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    M = _as_square(M)
    defect = hermiticity_defect(M)
    if defect > atol:
        raise ValueError(
            f"matrix is not Hermitian: max |M - M^H| = {defect:.3e} > {atol:.1e}"
        )
    return M


def unitarity_defect(U: np.ndarray) -> float:
    """Max-entry norm of U^H U - I."""
    U = _as_square(U)
    return float(np.abs(U.conj().T @ U - np.eye(U.shape[0])).max(initial=0.0))


def require_unitary(U: np.ndarray, atol: float = UNITARY_ATOL) -> np.ndarray:
    U = _as_square(U)
    defect = unitarity_defect(U)
    if defect > atol:
        raise ValueError(
            f"matrix is not unitary: max |U^H U - I| = {defect:.3e} > {atol:.1e}"
        )
    return U


@dataclass(frozen=True)
class SpectralSummary:
    """Sorted spectrum of a Hermitian operator with degeneracy bookkeeping.

    ``gap`` is the distance from the ground energy to the first eigenvalue
    outside the ground cluster (0.0 when the whole spectrum is one cluster).
    """

    eigenvalues: np.ndarray
    ground_multiplicity: int
    gap: float
    tol: float

    @classmethod
    def from_eigenvalues(cls, eigenvalues: np.ndarray, tol: float = DEGENERACY_TOL) -> "SpectralSummary":
        ev = np.sort(np.asarray(eigenvalues, dtype=float))
        if ev.size == 0:
            raise ValueError("empty spectrum")
        mult = int(np.count_nonzero(ev - ev[0] <= tol))
        gap = float(ev[mult] - ev[0]) if mult < ev.size else 0.0
        return cls(eigenvalues=ev, ground_multiplicity=mult, gap=gap, tol=tol)


def eig_hermitian(M: np.ndarray, atol: float = HERMITIAN_ATOL) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a Hermitian matrix.

    Returns ascending eigenvalues and the matching orthonormal eigenvector
    columns.  Rejects matrices beyond the Hermiticity tolerance or larger
    than :data:`DIM_CAP`.
    """
    M = require_hermitian(M, atol=atol)
    if M.shape[0] > DIM_CAP:
        raise DimensionCapError(
            f"dimension {M.shape[0]} exceeds dense eigensolver cap {DIM_CAP}"
        )
    w, V = np.linalg.eigh(M)
    return w, V


def spectral_summary(M: np.ndarray, tol: float = DEGENERACY_TOL) -> SpectralSummary:
    w, _ = eig_hermitian(M)
    return SpectralSummary.from_eigenvalues(w, tol=tol)


def expm_skew(h: np.ndarray, scale: float) -> np.ndarray:
    """exp(1j * scale * h) for Hermitian h, via eigendecomposition."""
    w, V = eig_hermitian(h)
    return (V * np.exp(1j * scale * w)) @ V.conj().T


def log_unitary(U: np.ndarray) -> np.ndarray:
    """Hermitian h with exp(1j h) = U and ||h|| <= pi.

    Eigenphases are taken in the principal branch (-pi, pi]; the Schur form
    is used so that clustered eigenvalues keep orthonormal eigenvectors.
    """
    import scipy.linalg

    U = require_unitary(U)
    T, Q = scipy.linalg.schur(np.asarray(U, dtype=complex), output="complex")
    phases = np.angle(np.diag(T))
    # Values landing just below -pi belong on the +pi side of the branch.
    phases = np.where(phases <= -np.pi + 1e-12, phases + 2 * np.pi, phases)
    return (Q * phases) @ Q.conj().T


def principal_angle(subspace_a: np.ndarray, subspace_b: np.ndarray) -> float:
    """Smallest principal angle (radians) between two orthonormal column sets.

    Returns arccos of the largest singular value of A^H B, clipped into
    [0, pi/2].
    """
    A = np.atleast_2d(np.asarray(subspace_a, dtype=complex))
    B = np.atleast_2d(np.asarray(subspace_b, dtype=complex))
    if A.shape[1] == 0 or B.shape[1] == 0:
        raise ValueError("principal angle of an empty subspace is undefined")
    for name, S in (("A", A), ("B", B)):
        defect = np.abs(S.conj().T @ S - np.eye(S.shape[1])).max()
        if defect > ORTHONORMAL_ATOL:
            raise ValueError(
                f"columns of {name} are not orthonormal: defect {defect:.3e}"
            )
    sigma = np.linalg.svd(A.conj().T @ B, compute_uv=False)
    smax = min(float(sigma[0]), 1.0)
    return float(np.arccos(smax))


def orthonormal_columns(vectors: np.ndarray, rank_tol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the column span, dropping rank-deficient
    directions (SVD-based, robust to zero columns)."""
    V = np.atleast_2d(np.asarray(vectors, dtype=complex))
    if V.shape[1] == 0:
        return V
    U, sigma, _ = np.linalg.svd(V, full_matrices=False)
    keep = sigma > rank_tol * max(1.0, float(sigma[0]) if sigma.size else 1.0)
    return U[:, keep]


class TrigHermitianFamily:
    """Hermitian operator family H(s) = C + sum_k (e^{i s phi_k} B_k + h.c.).

    All time dependence sits in the scalar phases, so the first and second
    derivatives in s are available in closed form.  This is exactly the
    structure of a network Laplacian whose edge unitaries are exp(i s h_t).
    """

    def __init__(self, constant: np.ndarray, phases: np.ndarray, terms: np.ndarray):
        self.constant = np.asarray(constant, dtype=complex)
        self.phases = np.asarray(phases, dtype=float).reshape(-1)
        dim = self.constant.shape[0]
        self.terms = np.asarray(terms, dtype=complex).reshape(-1, dim, dim)
        if self.terms.shape[0] != self.phases.shape[0]:
            raise ValueError("one phase per term required")

    @property
    def dim(self) -> int:
        return self.constant.shape[0]

    def _combine(self, weights: np.ndarray) -> np.ndarray:
        if self.phases.size == 0:
            return np.zeros_like(self.constant)
        M = np.tensordot(weights, self.terms, axes=(0, 0))
        return M + M.conj().T

    def value(self, s: float) -> np.ndarray:
        return self.constant + self._combine(np.exp(1j * s * self.phases))

    def d1(self, s: float) -> np.ndarray:
        return self._combine(1j * self.phases * np.exp(1j * s * self.phases))

    def d2(self, s: float) -> np.ndarray:
        return self._combine(-self.phases**2 * np.exp(1j * s * self.phases))

    def __call__(self, s: float) -> np.ndarray:
        return self.value(s)


def operator_norm(M: np.ndarray) -> float:
    """Spectral norm (largest singular value)."""
    return float(np.linalg.norm(np.asarray(M), 2))
