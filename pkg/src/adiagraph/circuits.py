"""Quantum circuits: gate library, tensor embedding, identity extension, and
the smooth gate family U_t(s) = exp(i s h_t).

Qubit 0 is the most significant position in computational-basis indexing,
so |q0 q1 ... q_{n-1}> has index sum_q bit_q * 2^(n-1-q).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import expm_skew, log_unitary, require_unitary

_SQRT2 = np.sqrt(2.0)

GATE_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2,
    "T": np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(complex),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "TOF": np.eye(8, dtype=complex),
}
GATE_MATRICES["TOF"][6:, 6:] = np.array([[0, 1], [1, 0]])

_ARITY = {"I": 1, "H": 1, "T": 1, "CNOT": 2, "TOF": 3}


@dataclass(frozen=True)
class Gate:
    """A named gate or a CUSTOM unitary on at most two target qubits."""

    kind: str
    targets: tuple[int, ...]
    matrix: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"repeated target qubits in {self.targets}")
        if self.kind == "CUSTOM":
            if self.matrix is None:
                raise ValueError("CUSTOM gate needs a matrix")
            if not 1 <= len(self.targets) <= 2:
                raise ValueError("CUSTOM gates are limited to 1 or 2 targets")
            dim = 2 ** len(self.targets)
            M = np.asarray(self.matrix, dtype=complex)
            if M.shape != (dim, dim):
                raise ValueError(f"CUSTOM matrix shape {M.shape} != ({dim}, {dim})")
            require_unitary(M)
            object.__setattr__(self, "matrix", M)
        elif self.kind in _ARITY:
            if len(self.targets) != _ARITY[self.kind]:
                raise ValueError(
                    f"{self.kind} takes {_ARITY[self.kind]} target(s), got {len(self.targets)}"
                )
            if self.matrix is not None:
                raise ValueError(f"{self.kind} does not take an explicit matrix")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")

    @property
    def arity(self) -> int:
        return len(self.targets)


def identity_gate(target: int = 0) -> Gate:
    return Gate("I", (target,))


def gate_matrix(g: Gate) -> np.ndarray:
    """The gate's unitary on its own 2^arity-dimensional target space."""
    if g.kind == "CUSTOM":
        return g.matrix.copy()
    return GATE_MATRICES[g.kind].copy()


def _embed_matrix(U: np.ndarray, targets: tuple[int, ...], n: int) -> np.ndarray:
    if any(t < 0 or t >= n for t in targets):
        raise ValueError(f"targets {targets} out of range for {n} qubits")
    k = len(targets)
    dim = 1 << n
    M = np.zeros((dim, dim), dtype=complex)
    shifts = [n - 1 - t for t in targets]
    for z in range(dim):
        col_bits = 0
        for s in shifts:
            col_bits = (col_bits << 1) | ((z >> s) & 1)
        base = z
        for s in shifts:
            base &= ~(1 << s)
        for row_bits in range(1 << k):
            amp = U[row_bits, col_bits]
            if amp == 0:
                continue
            z2 = base
            for pos, s in enumerate(shifts):
                if (row_bits >> (k - 1 - pos)) & 1:
                    z2 |= 1 << s
            M[z2, z] = amp
    return M


def embed_local(g: Gate, n: int) -> np.ndarray:
    """Trivial extension of a gate to the full 2^n space (identity elsewhere)."""
    return _embed_matrix(gate_matrix(g), g.targets, n)


@dataclass(frozen=True)
class QuantumCircuit:
    """Ordered gate list on n qubits; acts as the product U_L ... U_1."""

    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(t >= self.n for t in g.targets):
                raise ValueError(f"gate {g.kind} targets {g.targets} exceed n = {self.n}")

    @property
    def length(self) -> int:
        return len(self.gates)


def circuit_unitary(C: QuantumCircuit) -> np.ndarray:
    U = np.eye(1 << C.n, dtype=complex)
    for g in C.gates:
        U = embed_local(g, C.n) @ U
    return U


def identity_extend(C: QuantumCircuit, L_i: int, L_f: int) -> QuantumCircuit:
    """Append L_i initial and L_f final identity gates; same overall unitary."""
    if L_i < 0 or L_f < 0:
        raise ValueError("pad counts must be nonnegative")
    pads_i = tuple(identity_gate(0) for _ in range(L_i))
    pads_f = tuple(identity_gate(0) for _ in range(L_f))
    return QuantumCircuit(C.n, pads_i + C.gates + pads_f)


class TimeDependentCircuit:
    """Gate family U_t(s) = exp(i s h_t) interpolating identity -> gate.

    Generators h_t are principal-branch logarithms of the gate unitaries,
    so ||h_t|| <= pi, U_t(0) = identity and U_t(1) is the original gate.
    """

    def __init__(self, base: QuantumCircuit):
        self.base = base
        self.generators: list[np.ndarray] = [log_unitary(gate_matrix(g)) for g in base.gates]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def length(self) -> int:
        return self.base.length

    def at(self, s: float, t: int) -> np.ndarray:
        """Gate-space unitary of gate index t (0-based) at parameter s."""
        return expm_skew(self.generators[t], s)

    def embedded_at(self, s: float, t: int) -> np.ndarray:
        """Full 2^n unitary of gate t at parameter s."""
        return _embed_matrix(self.at(s, t), self.base.gates[t].targets, self.n)

    def embedded_generator(self, t: int) -> np.ndarray:
        """Generator of gate t embedded into the full 2^n space."""
        return _embed_matrix(self.generators[t], self.base.gates[t].targets, self.n)


def time_dependent(C: QuantumCircuit) -> TimeDependentCircuit:
    return TimeDependentCircuit(C)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def _matrix_to_json(M: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(M, dtype=complex).ravel()]


def _matrix_from_json(pairs: list, k: int) -> np.ndarray:
    dim = 1 << k
    flat = np.array([complex(re, im) for re, im in pairs])
    if flat.size != dim * dim:
        raise ValueError(f"matrix entry count {flat.size} != {dim * dim}")
    return flat.reshape(dim, dim)


def circuit_to_json(C: QuantumCircuit) -> dict:
    gates = []
    for g in C.gates:
        entry: dict = {"kind": g.kind, "targets": list(g.targets)}
        if g.kind == "CUSTOM":
            entry["matrix"] = _matrix_to_json(g.matrix)
        gates.append(entry)
    return {"n": C.n, "gates": gates}


def circuit_from_json(data: dict) -> QuantumCircuit:
    try:
        n = int(data["n"])
        gates = []
        for entry in data["gates"]:
            kind = entry["kind"]
            targets = tuple(entry["targets"])
            if kind == "CUSTOM":
                gates.append(Gate(kind, targets, _matrix_from_json(entry["matrix"], len(targets))))
            else:
                gates.append(Gate(kind, targets))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed circuit JSON: {exc}") from exc
    return QuantumCircuit(n, tuple(gates))
