"""Benchmark the propagator backends: compiled Chebyshev kernel vs the
pure-NumPy per-step diagonalization fallback.

Run:  python3 benchmarks/bench_evolve.py [steps]
"""

import sys
import time

import numpy as np

import adiagraph as ag
from adiagraph._evolve_py import evolve_trig as py_evolve
from adiagraph.adiabatic import COMPILED_KERNEL, schrodinger_evolve


def main():
    steps = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
    circuit = ag.QuantumCircuit(2, (ag.Gate("H", (0,)), ag.Gate("CNOT", (0, 1))))
    H = ag.kitaev(circuit, 2, 2)
    family = H.trig()
    w, V = np.linalg.eigh(family.value(0.0))
    psi0 = V[:, 0]
    T = 2000.0

    print(f"dimension {family.dim}, {len(family.phases)} trig terms, T = {T}, {steps} steps")

    t0 = time.perf_counter()
    ref = py_evolve(family.constant, family.phases, family.terms, T, psi0, steps)
    dt_py = time.perf_counter() - t0
    print(f"python fallback : {steps / dt_py:>10,.0f} steps/s   ({dt_py:.2f} s)")

    if COMPILED_KERNEL:
        t0 = time.perf_counter()
        res = schrodinger_evolve(family, T, psi0, steps).final_state
        dt_c = time.perf_counter() - t0
        print(f"compiled kernel : {steps / dt_c:>10,.0f} steps/s   ({dt_c:.2f} s)")
        print(f"speedup {dt_py / dt_c:.1f}x, backend agreement {np.linalg.norm(res - ref):.2e}")
    else:
        print("compiled kernel : not built (install with Cython + a C compiler)")


if __name__ == "__main__":
    main()
