# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled midpoint-exponential stepping loop for trigonometric Hamiltonian
families.

Each step applies exp(-1j * H(s_mid) * T * ds) to the state, evaluated as a
Chebyshev expansion of the exponential (coefficients precomputed by the
caller, machine accurate), so the inner loop is pure matrix-vector work.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def evolve_trig_cheb(constant, phases, terms, double tau, psi0, long steps,
                     double radius, coeffs):
    """Propagate psi0 from s=0 to s=1 under H(s) = C + sum e^{i s phi} B + h.c.

    tau = T / steps is the per-step phase scale; `coeffs` are the Chebyshev
    coefficients of x -> exp(-1j * tau * radius * x) on [-1, 1], so that
    exp(-1j * tau * H) = sum_k coeffs[k] T_k(H / radius) whenever the
    spectrum of H stays inside [-radius, radius].
    """
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] C = np.ascontiguousarray(constant, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] phi = np.ascontiguousarray(phases, dtype=np.float64)
    cdef int d = C.shape[0]
    B_arr = np.ascontiguousarray(terms, dtype=np.complex128).reshape(-1, d, d)
    cdef cnp.ndarray[cnp.complex128_t, ndim=3] B = B_arr
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] psi = np.array(psi0, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] cof = np.ascontiguousarray(coeffs, dtype=np.complex128)

    cdef int K = phi.shape[0]
    cdef int M = cof.shape[0]
    if B.shape[0] != K:
        raise ValueError("terms shape mismatch")
    if psi.shape[0] != d:
        raise ValueError("state dimension mismatch")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if M < 1 or radius <= 0:
        raise ValueError("need at least one Chebyshev coefficient and a positive radius")

    cdef cnp.ndarray[cnp.complex128_t, ndim=2] Hbuf = np.empty((d, d), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] t0 = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] t1 = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] t2 = np.empty(d, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] acc = np.empty(d, dtype=np.complex128)

    cdef double complex[:, ::1] Cv = C
    cdef double complex[:, :, ::1] Bv = B
    cdef double complex[:, ::1] Hv = Hbuf
    cdef double complex[::1] psiv = psi
    cdef double complex[::1] t0v = t0, t1v = t1, t2v = t2, accv = acc, cofv = cof
    cdef double[::1] phiv = phi

    cdef double ds = 1.0 / steps
    cdef double inv_r = 1.0 / radius
    cdef double s_mid, arg
    cdef double complex e, ph, z, ck
    cdef long k
    cdef int i, j, t, m

    with nogil:
        for k in range(steps):
            s_mid = (k + 0.5) * ds
            # H(s_mid) = C + sum_t e^{i s phi_t} B_t + h.c., prescaled by 1/radius
            for i in range(d):
                for j in range(d):
                    Hv[i, j] = Cv[i, j] * inv_r
            for t in range(K):
                arg = s_mid * phiv[t]
                e = (cos(arg) + 1j * sin(arg)) * inv_r
                for i in range(d):
                    for j in range(d):
                        ph = e * Bv[t, i, j]
                        Hv[i, j] = Hv[i, j] + ph
                        Hv[j, i] = Hv[j, i] + ph.conjugate()
            # Chebyshev recurrence: acc = sum_m cof[m] T_m(H/r) psi
            for i in range(d):
                t0v[i] = psiv[i]
                accv[i] = cofv[0] * psiv[i]
            if M > 1:
                for i in range(d):
                    z = 0
                    for j in range(d):
                        z = z + Hv[i, j] * t0v[j]
                    t1v[i] = z
                ck = cofv[1]
                for i in range(d):
                    accv[i] = accv[i] + ck * t1v[i]
                for m in range(2, M):
                    for i in range(d):
                        z = 0
                        for j in range(d):
                            z = z + Hv[i, j] * t1v[j]
                        t2v[i] = 2.0 * z - t0v[i]
                    ck = cofv[m]
                    for i in range(d):
                        accv[i] = accv[i] + ck * t2v[i]
                        t0v[i] = t1v[i]
                        t1v[i] = t2v[i]
            for i in range(d):
                psiv[i] = accv[i]
    return psi
