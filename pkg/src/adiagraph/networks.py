"""Parallel transport networks: a weighted graph with a time map and one
unitary per time step, acting on graph-space tensor computation-space.

Basis ordering: |v> (x) |y> has flat index  v_index * 2^n + y,  with y the
computational-basis integer of the n-qubit register.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import (
    QuantumCircuit,
    TimeDependentCircuit,
    circuit_from_json,
    circuit_to_json,
    time_dependent,
)
from .graphs import WeightedGraph, contract, graph_from_json, graph_to_json
from .linalg import DIM_CAP, DimensionCapError, TrigHermitianFamily, eig_hermitian


class CoveringError(ValueError):
    """The network is not a covering of a weighted path."""


@dataclass(frozen=True)
class ParallelTransportNetwork:
    """Weighted graph + time map + per-step unitaries (fixed representation).

    The time map sends vertices to integer time steps 0..L'; adjacent
    vertices differ by at most one step.  Step t carries the unitary of
    gate t of the circuit, smoothly parameterized as exp(i s h_t).
    """

    graph: WeightedGraph
    time_map: dict
    circuit: TimeDependentCircuit = field(compare=False)

    @property
    def n(self) -> int:
        return self.circuit.n

    @property
    def n_steps(self) -> int:
        """L': the number of time steps / circuit length."""
        return self.circuit.length

    @property
    def dim(self) -> int:
        return self.graph.n_vertices * (1 << self.n)

    def time_of(self, v) -> int:
        return self.time_map[v]

    def vertices_at(self, t: int) -> list:
        return [v for v in self.graph.vertices if self.time_map[v] == t]

    def time_volumes(self) -> np.ndarray:
        """vol(V_t) for t = 0..L'."""
        out = np.zeros(self.n_steps + 1)
        for v in self.graph.vertices:
            out[self.time_map[v]] += self.graph.degree(v)
        return out

    def step_unitary(self, t: int, s: float = 1.0) -> np.ndarray:
        """Embedded 2^n unitary of time step t (1-based) at parameter s."""
        if not 1 <= t <= self.n_steps:
            raise ValueError(f"time step {t} outside 1..{self.n_steps}")
        return self.circuit.embedded_at(s, t - 1)

    def prefix_unitaries(self, s: float = 1.0) -> list[np.ndarray]:
        """W_t = U_t(s) ... U_1(s) for t = 0..L' (W_0 = identity)."""
        dim = 1 << self.n
        out = [np.eye(dim, dtype=complex)]
        for t in range(1, self.n_steps + 1):
            out.append(self.step_unitary(t, s) @ out[-1])
        return out


def build_network(graph: WeightedGraph, time_map: dict, circuit: QuantumCircuit | TimeDependentCircuit) -> ParallelTransportNetwork:
    if isinstance(circuit, QuantumCircuit):
        circuit = time_dependent(circuit)
    return ParallelTransportNetwork(graph, dict(time_map), circuit)


def validate(ptn: ParallelTransportNetwork) -> list[str]:
    """Violation list (empty means the network can implement its circuit)."""
    violations = []
    G, tm, Lp = ptn.graph, ptn.time_map, ptn.n_steps
    missing = [v for v in G.vertices if v not in tm]
    if missing:
        violations.append(f"time map missing vertices {missing!r}")
        return violations
    for v in G.vertices:
        if not 0 <= tm[v] <= Lp:
            violations.append(f"time step {tm[v]} of vertex {v!r} outside 0..{Lp}")
    for u, v, _ in G.edges():
        if abs(tm[u] - tm[v]) > 1:
            violations.append(
                f"edge ({u!r}, {v!r}) spans time steps {tm[u]} and {tm[v]}"
            )
    hit = {tm[v] for v in G.vertices}
    for t in range(Lp + 1):
        if t not in hit:
            violations.append(f"no vertex at time step {t} (time map not surjective)")
    if G.n_vertices < 2:
        violations.append("network needs at least two vertices")
    elif not G.is_connected():
        violations.append("underlying graph is disconnected")
    return violations


def ensure_valid(ptn: ParallelTransportNetwork) -> None:
    violations = validate(ptn)
    if violations:
        raise ValueError("invalid parallel transport network: " + "; ".join(violations))


def associated_unitary(ptn: ParallelTransportNetwork, path, s: float = 1.0) -> np.ndarray:
    """Product of edge unitaries along a vertex path.

    An edge going one step up in time carries U_t(s), one step down carries
    U_t(s)^dagger, and an edge within a time step carries the identity; the
    result therefore depends only on the endpoint time steps.
    """
    path = list(path)
    if len(path) < 1:
        raise ValueError("empty path")
    G, tm = ptn.graph, ptn.time_map
    U = np.eye(1 << ptn.n, dtype=complex)
    for a, b in zip(path, path[1:]):
        if G.weight(a, b) <= 0:
            raise ValueError(f"({a!r}, {b!r}) is not an edge; not a path")
        ta, tb = tm[a], tm[b]
        if tb == ta + 1:
            U = ptn.step_unitary(tb, s) @ U
        elif tb == ta - 1:
            U = ptn.step_unitary(ta, s).conj().T @ U
        elif tb != ta:
            raise ValueError(f"edge ({a!r}, {b!r}) spans more than one time step")
    return U


def network_normalized_laplacian(ptn: ParallelTransportNetwork, s: float) -> np.ndarray:
    """Dense normalized Laplacian on graph-space (x) computation-space.

    Within a time step, blocks carry the identity (loops included); between
    consecutive steps, the hopping block is tensored with U_t(s).
    """
    ensure_valid(ptn)
    if ptn.dim > DIM_CAP:
        raise DimensionCapError(f"network dimension {ptn.dim} exceeds cap {DIM_CAP}")
    G, tm = ptn.graph, ptn.time_map
    k = 1 << ptn.n
    d = G.degrees()
    M = np.zeros((ptn.dim, ptn.dim), dtype=complex)
    eye = np.eye(k, dtype=complex)
    step_cache: dict[int, np.ndarray] = {}

    def blk(i: int, j: int) -> slice:
        return slice(i * k, (i + 1) * k), slice(j * k, (j + 1) * k)

    for i in range(G.n_vertices):
        ri, ci = blk(i, i)
        M[ri, ci] += eye
    for u, v, w in G.edges():
        i, j = G.index[u], G.index[v]
        coef = w / math.sqrt(d[i] * d[j])
        tu, tv = tm[u], tm[v]
        if tu == tv:
            ri, ci = blk(i, j)
            M[ri, ci] += -coef * eye
            if i != j:
                rj, cj = blk(j, i)
                M[rj, cj] += -coef * eye
        else:
            lo, hi = (i, j) if tu < tv else (j, i)
            t = max(tu, tv)
            if t not in step_cache:
                step_cache[t] = ptn.step_unitary(t, s)
            U = step_cache[t]
            rh, cl = blk(hi, lo)
            M[rh, cl] += -coef * U
            rl, ch = blk(lo, hi)
            M[rl, ch] += -coef * U.conj().T
    return M


def trig_family(ptn: ParallelTransportNetwork, extra_diagonal: np.ndarray | None = None) -> TrigHermitianFamily:
    """Structured form H(s) = C + sum_k e^{i s phi_k} B_k + h.c. of the
    network Laplacian, optionally plus an s-independent diagonal.

    The phases are the distinct nonzero eigenphases of the embedded step
    generators; zero-phase pieces are folded into the constant.
    """
    ensure_valid(ptn)
    if ptn.dim > DIM_CAP:
        raise DimensionCapError(f"network dimension {ptn.dim} exceeds cap {DIM_CAP}")
    G, tm = ptn.graph, ptn.time_map
    k = 1 << ptn.n
    d = G.degrees()
    dim = ptn.dim
    C = np.zeros((dim, dim), dtype=complex)
    for i in range(G.n_vertices):
        C[i * k : (i + 1) * k, i * k : (i + 1) * k] = np.eye(k)
    # hopping structure m_t: |v><u| for u -> v one step up in time
    m_up: dict[int, np.ndarray] = {}
    for u, v, w in G.edges():
        i, j = G.index[u], G.index[v]
        coef = w / math.sqrt(d[i] * d[j])
        tu, tv = tm[u], tm[v]
        if tu == tv:
            block = np.zeros((G.n_vertices, G.n_vertices))
            block[i, j] = coef
            C -= np.kron(block, np.eye(k))
            if i != j:
                block = np.zeros((G.n_vertices, G.n_vertices))
                block[j, i] = coef
                C -= np.kron(block, np.eye(k))
        else:
            lo, hi = (i, j) if tu < tv else (j, i)
            t = max(tu, tv)
            m = m_up.setdefault(t, np.zeros((G.n_vertices, G.n_vertices)))
            m[hi, lo] += coef
    phases: list[float] = []
    terms: list[np.ndarray] = []
    for t, m in sorted(m_up.items()):
        h_emb = ptn.circuit.embedded_generator(t - 1)
        w_t, V_t = eig_hermitian(h_emb)
        used = np.zeros(len(w_t), dtype=bool)
        for a in range(len(w_t)):
            if used[a]:
                continue
            cluster = [b for b in range(len(w_t)) if not used[b] and abs(w_t[b] - w_t[a]) <= 1e-12]
            for b in cluster:
                used[b] = True
            P = V_t[:, cluster] @ V_t[:, cluster].conj().T
            phi = float(np.mean(w_t[cluster]))
            block = np.kron(-m, P)
            if abs(phi) <= 1e-14:
                C += block + block.conj().T
            else:
                phases.append(phi)
                terms.append(block)
    if extra_diagonal is not None:
        C = C + np.asarray(extra_diagonal, dtype=complex)
    return TrigHermitianFamily(C, np.array(phases), np.array(terms).reshape(len(terms), dim, dim) if terms else np.zeros((0, dim, dim), dtype=complex))


def block_rotation(ptn: ParallelTransportNetwork, s: float) -> np.ndarray:
    """R = sum_v |v><v| (x) U_{T(v)}(s) ... U_1(s); conjugates the network
    Laplacian into (graph Laplacian) (x) identity."""
    ensure_valid(ptn)
    W = ptn.prefix_unitaries(s)
    k = 1 << ptn.n
    R = np.zeros((ptn.dim, ptn.dim), dtype=complex)
    for v in ptn.graph.vertices:
        i = ptn.graph.index[v]
        R[i * k : (i + 1) * k, i * k : (i + 1) * k] = W[ptn.time_map[v]]
    return R


def history_state(ptn: ParallelTransportNetwork, s: float, x: str) -> np.ndarray:
    """Unit null vector of the network Laplacian for circuit input x.

    Amplitude on vertex v is sqrt(d_v / vol(V)) times the partially executed
    circuit applied to |x>.
    """
    ensure_valid(ptn)
    n = ptn.n
    if len(x) != n or set(x) - {"0", "1"}:
        raise ValueError(f"input {x!r} is not an {n}-bit string")
    W = ptn.prefix_unitaries(s)
    k = 1 << n
    e_x = np.zeros(k, dtype=complex)
    e_x[int(x, 2) if n else 0] = 1.0
    vol = ptn.graph.volume()
    psi = np.zeros(ptn.dim, dtype=complex)
    for v in ptn.graph.vertices:
        i = ptn.graph.index[v]
        amp = math.sqrt(ptn.graph.degree(v) / vol)
        psi[i * k : (i + 1) * k] = amp * (W[ptn.time_map[v]] @ e_x)
    return psi


def history_basis(ptn: ParallelTransportNetwork, s: float, inputs) -> np.ndarray:
    """Column-stacked history states for the given inputs (orthonormal)."""
    cols = [history_state(ptn, s, x) for x in inputs]
    return np.stack(cols, axis=1)


# ---------------------------------------------------------------------------
# Path contraction and covered path
# ---------------------------------------------------------------------------


def path_contraction(ptn: ParallelTransportNetwork) -> ParallelTransportNetwork:
    """Merge each time cluster into a single vertex; weights add up."""
    ensure_valid(ptn)
    Lp = ptn.n_steps
    mapping = {v: ptn.time_map[v] for v in ptn.graph.vertices}
    H = contract(ptn.graph, mapping, targets=list(range(Lp + 1)))
    return ParallelTransportNetwork(H, {t: t for t in range(Lp + 1)}, ptn.circuit)


def covered_path(ptn: ParallelTransportNetwork, tol: float = 1e-9) -> ParallelTransportNetwork:
    """Weighted path covered by this network, if the fibers are regular.

    Weights come from the covering normalization
    w(x,y) = sum of fiber weights / sqrt(|V_x| |V_y|); raises
    :class:`CoveringError` naming an offending (vertex, time step) pair when
    some fiber sees unequal weight into a neighboring fiber.
    """
    ensure_valid(ptn)
    Lp = ptn.n_steps
    G = ptn.graph
    A = G.adjacency_matrix()
    fibers = [[G.index[v] for v in ptn.vertices_at(t)] for t in range(Lp + 1)]
    for t in range(Lp + 1):
        for dt in (-1, 0, 1):
            ty = t + dt
            if not 0 <= ty <= Lp:
                continue
            sums = A[np.ix_(fibers[t], fibers[ty])].sum(axis=1)
            spread = np.abs(sums - sums[0]).max(initial=0.0)
            if spread > tol:
                bad = int(np.argmax(np.abs(sums - sums[0])))
                raise CoveringError(
                    "network is not a covering of a weighted path: vertices "
                    f"{G.vertices[fibers[t][0]]!r} and {G.vertices[fibers[t][bad]]!r} "
                    f"at time step {t} carry different weight into time step {ty} "
                    f"({sums[0]:.12g} vs {sums[bad]:.12g})"
                )
    weights = {}
    for t in range(Lp + 1):
        for ty in (t, t + 1):
            if ty > Lp:
                continue
            total = float(A[np.ix_(fibers[t], fibers[ty])].sum())
            w = total / math.sqrt(len(fibers[t]) * len(fibers[ty]))
            if w > 0:
                weights[(t, ty)] = w
    H = WeightedGraph(range(Lp + 1), weights)
    return ParallelTransportNetwork(H, {t: t for t in range(Lp + 1)}, ptn.circuit)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def network_to_json(ptn: ParallelTransportNetwork) -> dict:
    data = graph_to_json(ptn.graph)
    data["time_map"] = {str(v): int(t) for v, t in ptn.time_map.items()}
    data["circuit"] = circuit_to_json(ptn.circuit.base)
    return data


def network_from_json(data: dict) -> ParallelTransportNetwork:
    try:
        G = graph_from_json(data)
        circ = circuit_from_json(data["circuit"])
        tm_raw = data["time_map"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed network JSON: {exc}") from exc
    time_map = {}
    for v in G.vertices:
        key = v if v in tm_raw else str(v)
        if key not in tm_raw:
            raise ValueError(f"time map missing vertex {v!r}")
        time_map[v] = int(tm_raw[key])
    return build_network(G, time_map, circ)


def load_network(path: str) -> ParallelTransportNetwork:
    with open(path) as fh:
        return network_from_json(json.load(fh))
