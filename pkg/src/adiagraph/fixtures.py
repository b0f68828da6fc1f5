"""Seeded random graphs and networks for property tests and experiments.

The graph generator is Erdos-Renyi style: n vertices, each unordered pair
becomes an edge with probability p (weight 1, or uniform in [0.5, 2.0] when
weighted), plus optional loops; disconnected draws are rejected and redrawn.
All randomness flows through numpy's default_rng, so a seed pins every
fixture exactly.
"""

from __future__ import annotations

import numpy as np

from .circuits import Gate, QuantumCircuit, identity_gate, time_dependent
from .graphs import WeightedGraph
from .networks import ParallelTransportNetwork


def random_connected_graph(
    rng: np.random.Generator,
    n: int,
    p: float = 0.4,
    weighted: bool = False,
    loops: bool = False,
    max_tries: int = 200,
) -> WeightedGraph:
    """Connected Erdos-Renyi draw by rejection sampling."""
    for _ in range(max_tries):
        weights = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < p:
                    weights[(i, j)] = rng.uniform(0.5, 2.0) if weighted else 1.0
        if loops:
            for i in range(n):
                if rng.random() < 0.15:
                    weights[(i, i)] = rng.uniform(0.5, 2.0) if weighted else 1.0
        if not weights:
            continue
        G = WeightedGraph(range(n), weights)
        if G.is_connected():
            return G
    raise RuntimeError(f"no connected draw in {max_tries} tries (n={n}, p={p})")


def random_surjective_map(rng: np.random.Generator, G: WeightedGraph, n_targets: int) -> dict:
    """Random vertex map onto range(n_targets), surjective by construction."""
    n = G.n_vertices
    if n_targets > n:
        raise ValueError("more targets than vertices")
    labels = list(G.vertices)
    rng.shuffle(labels)
    mapping = {}
    for k, v in enumerate(labels):
        mapping[v] = k if k < n_targets else int(rng.integers(n_targets))
    return mapping


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-ish unitary from the QR of a complex Gaussian matrix."""
    Z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_gate(rng: np.random.Generator, n: int) -> Gate:
    """Random 1- or 2-qubit gate (library or CUSTOM) on random targets."""
    kinds = ["H", "T", "CUSTOM1"] + (["CNOT", "CUSTOM2"] if n >= 2 else [])
    kind = kinds[rng.integers(len(kinds))]
    targets = list(rng.choice(n, size=2, replace=False)) if kind in ("CNOT", "CUSTOM2") else [int(rng.integers(n))]
    if kind == "CUSTOM1":
        return Gate("CUSTOM", (targets[0],), random_unitary(rng, 2))
    if kind == "CUSTOM2":
        return Gate("CUSTOM", tuple(int(t) for t in targets), random_unitary(rng, 4))
    return Gate(kind, tuple(int(t) for t in targets))


def random_circuit(rng: np.random.Generator, n: int, length: int) -> QuantumCircuit:
    return QuantumCircuit(n, tuple(random_gate(rng, n) for _ in range(length)))


def random_network(
    rng: np.random.Generator,
    n_vertices_max: int = 12,
    n_qubits_max: int = 2,
    n_steps_max: int = 4,
) -> ParallelTransportNetwork:
    """Random layered network: one or more vertices per time step, random
    edges between and within adjacent layers, connectivity forced by a
    backbone path through the layers."""
    n = int(rng.integers(0, n_qubits_max + 1))
    # a 0-qubit register admits no gates, hence a single time step
    Lp = int(rng.integers(1, n_steps_max + 1)) if n else 0
    # layer sizes: at least 1 each, total <= n_vertices_max
    sizes = [1] * (Lp + 1)
    budget = n_vertices_max - (Lp + 1)
    for _ in range(max(budget, 0)):
        if rng.random() < 0.5:
            sizes[int(rng.integers(Lp + 1))] += 1
    labels = []
    time_map = {}
    for t, size in enumerate(sizes):
        for j in range(size):
            v = f"t{t}v{j}"
            labels.append(v)
            time_map[v] = t
    weights = {}
    layers = [[v for v in labels if time_map[v] == t] for t in range(Lp + 1)]
    for t in range(Lp):
        a = layers[t][int(rng.integers(len(layers[t])))]
        b = layers[t + 1][int(rng.integers(len(layers[t + 1])))]
        weights[(a, b)] = rng.uniform(0.5, 2.0)
        for u in layers[t]:
            for v in layers[t + 1]:
                if (u, v) not in weights and rng.random() < 0.4:
                    weights[(u, v)] = rng.uniform(0.5, 2.0)
    for layer in layers:
        for u, v in zip(layer, layer[1:]):  # chain keeps every layer connected
            weights[(u, v)] = rng.uniform(0.5, 2.0)
        for i, u in enumerate(layer):
            for v in layer[i + 2 :]:
                if rng.random() < 0.25:
                    weights[(u, v)] = rng.uniform(0.5, 2.0)
            if rng.random() < 0.1:
                weights[(u, u)] = rng.uniform(0.5, 2.0)
    # in-layer edges alone cannot disconnect; the backbone joins all layers
    if len(labels) == 1:
        other = "t0v1"
        labels.append(other)
        time_map[other] = 0
        weights[(labels[0], other)] = 1.0
    G = WeightedGraph(labels, weights)
    if n == 0:
        circuit = QuantumCircuit(0, ())
    else:
        gates = tuple(
            random_gate(rng, n) if rng.random() < 0.7 else identity_gate(int(rng.integers(n)))
            for _ in range(Lp)
        )
        circuit = QuantumCircuit(n, gates)
    return ParallelTransportNetwork(G, time_map, time_dependent(circuit))


def random_psd_pair_with_null(rng: np.random.Generator, dim: int, shared: int = 0):
    """Two PSD matrices with known null spaces (optionally sharing `shared`
    exact common null directions).  Returns (H1, N1, H2, N2, n_common)."""
    if shared > dim - 2:
        raise ValueError("need room for a nonzero eigenvalue and an unshared null direction")
    common = random_unitary(rng, dim)[:, :shared]

    def one(k_extra: int):
        # basis whose first columns are the common null directions
        Z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        if shared:
            Z[:, :shared] = common
            Z[:, shared:] -= common @ (common.conj().T @ Z[:, shared:])
        Q, R = np.linalg.qr(Z)
        Q = Q * (np.diag(R) / np.abs(np.diag(R)))
        if shared:
            Q[:, :shared] = common
        k = shared + k_extra
        evals = np.concatenate([np.zeros(k), rng.uniform(0.2, 2.0, size=dim - k)])
        H = (Q * evals) @ Q.conj().T
        H = (H + H.conj().T) / 2
        return H, Q[:, :k]

    max_extra = dim - shared - 1
    lo1 = 0 if shared else 1  # N1 nonempty
    hi = max(1, max_extra // 2)
    H1, N1 = one(int(rng.integers(lo1, hi + 1)))
    # N2 keeps at least one direction outside the shared null space
    H2, N2 = one(int(rng.integers(1, hi + 1)))
    return H1, N1, H2, N2, shared
