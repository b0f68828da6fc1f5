"""Pure-NumPy propagator stepping loop (fallback for the compiled kernel).

Midpoint-exponential rule: one exact exponential of the midpoint Hamiltonian
per step, which is exact for s-independent generators and second-order
accurate otherwise.
"""

from __future__ import annotations

import numpy as np


def evolve_trig(
    constant: np.ndarray,
    phases: np.ndarray,
    terms: np.ndarray,
    T: float,
    psi0: np.ndarray,
    steps: int,
) -> np.ndarray:
    """Propagate psi0 from s=0 to s=1 under H(s) = C + sum e^{i s phi} B + h.c.

    Uses exp(-1j * H(s_mid) * T * ds) per uniform step.
    """
    psi = np.array(psi0, dtype=complex)
    C = np.asarray(constant, dtype=complex)
    phases = np.asarray(phases, dtype=float)
    terms = np.asarray(terms, dtype=complex)
    ds = 1.0 / steps
    for k in range(steps):
        s_mid = (k + 0.5) * ds
        if phases.size:
            M = np.tensordot(np.exp(1j * s_mid * phases), terms, axes=(0, 0))
            Hmid = C + M + M.conj().T
        else:
            Hmid = C
        w, V = np.linalg.eigh(Hmid)
        psi = (V * np.exp(-1j * w * T * ds)) @ (V.conj().T @ psi)
    return psi
