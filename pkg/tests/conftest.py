"""Shared fixtures: seeded random graph/network/PSD suites reused by the
module tests and the acceptance suite.

Fixture distribution (seeded, documented): graphs are connected
Erdos-Renyi draws with n uniform in 2..30, edge probability 0.4, one third
weighted (uniform [0.5, 2]) and one fifth with loops; every draw is redrawn
until connected.  Seeds are fixed below so all expected values are frozen.
"""

import numpy as np
import pytest

import adiagraph as ag
from adiagraph.fixtures import (
    random_connected_graph,
    random_network,
    random_psd_pair_with_null,
)

GRAPH_SUITE_SEED = 20140925
NETWORK_SUITE_SEED = 424242
PSD_SUITE_SEED = 777


@pytest.fixture(scope="session")
def graph_suite():
    """100 seeded random connected graphs with |V| <= 30."""
    rng = np.random.default_rng(GRAPH_SUITE_SEED)
    suite = []
    for k in range(100):
        n = int(rng.integers(2, 31))
        suite.append(
            random_connected_graph(
                rng, n, p=0.4, weighted=(k % 3 == 0), loops=(k % 5 == 0)
            )
        )
    return suite


@pytest.fixture(scope="session")
def regular_suite():
    """Regular graphs: random bit-string Cayley graphs plus complete graphs."""
    rng = np.random.default_rng(GRAPH_SUITE_SEED + 1)
    suite = [ag.complete_graph(3), ag.complete_graph(5), ag.regular_path(6)]
    for _ in range(12):
        k = int(rng.integers(2, 5))
        all_s = [format(x, f"0{k}b") for x in range(1, 1 << k)]
        size = int(rng.integers(1, len(all_s) + 1))
        S = list(rng.choice(all_s, size=size, replace=False))
        G = ag.cayley_bitstring(k, S)
        if G.is_connected():
            suite.append(G)
    return suite


@pytest.fixture(scope="session")
def network_suite():
    """50 seeded random parallel transport networks (|V| <= 12, n <= 2)."""
    rng = np.random.default_rng(NETWORK_SUITE_SEED)
    return [random_network(rng, n_vertices_max=12, n_qubits_max=2) for _ in range(50)]


@pytest.fixture(scope="session")
def psd_suite():
    """100 seeded PSD pairs with known null spaces (some sharing nulls)."""
    rng = np.random.default_rng(PSD_SUITE_SEED)
    suite = []
    for k in range(100):
        dim = int(rng.integers(3, 13))
        shared = int(rng.integers(0, dim - 1)) if k % 2 else 0
        suite.append(random_psd_pair_with_null(rng, dim, shared=min(shared, dim - 2)))
    return suite


@pytest.fixture(scope="session")
def bell_circuit():
    return ag.QuantumCircuit(2, (ag.Gate("H", (0,)), ag.Gate("CNOT", (0, 1))))


@pytest.fixture(scope="session")
def ht_circuit():
    return ag.QuantumCircuit(1, (ag.Gate("H", (0,)), ag.Gate("T", (0,))))
