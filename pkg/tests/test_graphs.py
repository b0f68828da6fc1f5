import math

import numpy as np
import pytest

import adiagraph as ag
from adiagraph.fixtures import random_connected_graph, random_surjective_map
from adiagraph.graphs import (
    distance_ball,
    from_edge_list,
    pull_back_operator,
)
from helpers import (
    brute_expansion,
    check_diameter_bound,
    check_expansion_sandwich,
    check_quadratic_form,
    check_spectra_relationships,
    check_spectra_theorem,
)

C4 = ag.cayley_bitstring(2, ["01", "10"])


# ---------------------------------------------------------------------------
# degrees, Laplacians, gaps
# ---------------------------------------------------------------------------


def test_degree_four_cycle():
    assert all(C4.degree(v) == 2 for v in C4.vertices)


def test_degree_regular_path_endpoint():
    G = ag.regular_path(1)
    assert G.degree(0) == 2  # loop 1 + edge 1
    assert G.degree(1) == 2


def test_degree_unknown_vertex():
    with pytest.raises(KeyError):
        C4.degree("nope")


def test_degree_contracted_hypercube():
    # fiber-degree sum: contracting all weight-1 vertices of the 3-cube
    G = ag.hypercube_graph(3)
    H = ag.contract(G, {v: v.count("1") for v in G.vertices})
    assert H.degree(1) == 3 * 3


def test_normalized_laplacian_single_vertex():
    G = ag.WeightedGraph(["a"], {})
    assert np.array_equal(G.normalized_laplacian(), np.zeros((1, 1)))


def test_normalized_laplacian_regular_path_l1():
    G = ag.regular_path(1)
    assert np.allclose(G.normalized_laplacian(), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-15)


def test_normalized_laplacian_k3():
    L = ag.complete_graph(3).normalized_laplacian()
    assert np.allclose(np.diag(L), 1.0)
    assert L[0, 1] == pytest.approx(-0.5)
    # closed form: (3I - J)/2 has spectrum {0, 1.5, 1.5}
    w = np.linalg.eigvalsh(L)
    assert np.allclose(w, [0.0, 1.5, 1.5], atol=1e-12)


def test_spectral_gap_regular_path():
    for L in (1, 4, 9):
        assert ag.spectral_gap(ag.regular_path(L)) == pytest.approx(
            1 - math.cos(math.pi / (L + 1)), abs=1e-12
        )


def test_spectral_gap_hypercube():
    for L in (2, 3, 5):
        assert ag.spectral_gap(ag.hypercube_graph(L)) == pytest.approx(2 / L, abs=1e-10)


def test_spectral_gap_complete_graph():
    assert ag.spectral_gap(ag.complete_graph(3)) == pytest.approx(1.5, abs=1e-12)


def test_spectral_gap_disconnected_errors():
    G = from_edge_list([0, 1, 2, 3], [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="2 components"):
        ag.spectral_gap(G)


def test_rayleigh_quotient():
    assert ag.rayleigh_quotient(np.eye(4), np.array([1, 2, 3, 4.0])) == pytest.approx(1.0)
    G = ag.regular_path(1)
    assert ag.rayleigh_quotient(G.normalized_laplacian(), np.array([1.0, -1.0])) == pytest.approx(1.0)
    with pytest.raises(ValueError, match="zero vector"):
        ag.rayleigh_quotient(np.eye(2), np.zeros(2))


def test_rayleigh_null_direction(graph_suite):
    for G in graph_suite[:20]:
        x = np.sqrt(G.degrees())
        assert abs(ag.rayleigh_quotient(G.normalized_laplacian(), x)) <= 1e-12


# ---------------------------------------------------------------------------
# expansion factors and diameter
# ---------------------------------------------------------------------------


def test_cheeger_k3():
    h, g = ag.cheeger_and_vertex_expansion(ag.complete_graph(3))
    assert (h, g) == (pytest.approx(1.0), pytest.approx(1.0))


def test_cheeger_four_cycle():
    h, g = ag.cheeger_and_vertex_expansion(C4)
    assert h == pytest.approx(0.5)
    assert g == pytest.approx(1.0)


def test_cheeger_matches_brute_force():
    rng = np.random.default_rng(0)
    for k in range(8):
        G = random_connected_graph(rng, int(rng.integers(3, 9)), weighted=(k % 2 == 0), loops=(k % 3 == 0))
        h, g = ag.cheeger_and_vertex_expansion(G)
        bh, bg = brute_expansion(G)
        assert h == pytest.approx(bh, abs=1e-12)
        assert g == pytest.approx(bg, abs=1e-12)


def test_cheeger_cap():
    with pytest.raises(ValueError, match="cap"):
        ag.cheeger_and_vertex_expansion(ag.hypercube_graph(5))


def test_diameter():
    assert ag.diameter(ag.WeightedGraph(["a"], {("a", "a"): 1.0})) == 0
    assert ag.diameter(ag.hypercube_graph(4)) == 4
    assert ag.diameter(ag.regular_path(5)) == 5


def test_diameter_disconnected():
    with pytest.raises(ValueError, match="connected"):
        ag.diameter(from_edge_list([0, 1, 2], [(0, 1)]))


# ---------------------------------------------------------------------------
# Cayley graphs
# ---------------------------------------------------------------------------


def test_cayley_four_cycle_structure():
    assert sorted(C4.vertices) == ["00", "01", "10", "11"]
    assert C4.weight("00", "01") == 1 and C4.weight("00", "10") == 1
    assert C4.weight("00", "11") == 0


def test_cayley_hypercube_identity():
    G = ag.cayley_bitstring(3, ["001", "010", "100"])
    H = ag.hypercube_graph(3)
    assert np.array_equal(G.adjacency_matrix(), H.adjacency_matrix())


def test_cayley_k4():
    G = ag.cayley_bitstring(2, ["01", "10", "11"])
    assert np.array_equal(
        np.sort(np.linalg.eigvalsh(G.adjacency_matrix())),
        np.sort(np.linalg.eigvalsh(ag.complete_graph(4).adjacency_matrix())),
    )


def test_cayley_rejects_bad_sets():
    with pytest.raises(ValueError, match="zero"):
        ag.cayley_bitstring(2, ["00"])
    with pytest.raises(ValueError, match="empty"):
        ag.cayley_bitstring(2, [])


def test_cayley_eigenvalues_closed_form():
    ev = ag.cayley_eigenvalues(2, ["01", "10"])
    assert np.allclose(np.sort(ev), [0, 1, 1, 2], atol=1e-15)
    assert ev[0] == 0.0  # x = 00: every character term is +1
    # hypercube: x = e_i gives 2/L
    L = 4
    ev = ag.cayley_eigenvalues(L, [format(1 << i, f"0{L}b") for i in range(L)])
    assert ev[1] == pytest.approx(2 / L)


def test_cayley_eigenvalues_match_dense(regular_suite):
    rng = np.random.default_rng(9)
    for _ in range(6):
        k = int(rng.integers(2, 5))
        all_s = [format(x, f"0{k}b") for x in range(1, 1 << k)]
        S = list(rng.choice(all_s, size=int(rng.integers(1, len(all_s) + 1)), replace=False))
        closed = np.sort(ag.cayley_eigenvalues(k, S))
        dense = np.sort(np.linalg.eigvalsh(ag.cayley_bitstring(k, S).normalized_laplacian()))
        assert np.abs(closed - dense).max() <= 1e-9


# ---------------------------------------------------------------------------
# contraction and covering
# ---------------------------------------------------------------------------


def test_contract_identity():
    H = ag.contract(C4, {v: v for v in C4.vertices})
    assert np.array_equal(H.adjacency_matrix(), C4.adjacency_matrix())


def test_contract_four_cycle_to_path():
    H = ag.contract(C4, {v: v.count("1") for v in C4.vertices})
    assert list(H.vertices) == [0, 1, 2]
    assert H.weight(0, 1) == 2 and H.weight(1, 2) == 2 and H.weight(0, 2) == 0
    # 3x3 eigensolve: gap 1, no smaller than the 4-cycle's gap 1
    assert ag.spectral_gap(H) == pytest.approx(1.0, abs=1e-12)
    assert ag.spectral_gap(C4) <= ag.spectral_gap(H) + 1e-12


def test_contract_hypercube_by_weight():
    Lp = 5
    G = ag.hypercube_graph(Lp)
    H = ag.contract(G, {v: v.count("1") for v in G.vertices})
    for t in range(1, Lp + 1):
        assert H.weight(t - 1, t) == t * math.comb(Lp, t)


def test_contract_requires_surjective():
    with pytest.raises(ValueError, match="surjective|target"):
        ag.contract(C4, {v: 0 for v in C4.vertices}, targets=[0, 1])


def test_contraction_never_decreases_gap(graph_suite):
    rng = np.random.default_rng(5)
    checked = 0
    for G in graph_suite:
        if checked >= 50:
            break
        if G.n_vertices < 3:
            continue
        n_targets = int(rng.integers(2, G.n_vertices))
        mapping = random_surjective_map(rng, G, n_targets)
        H = ag.contract(G, mapping)
        assert ag.spectral_gap(G) <= ag.spectral_gap(H) + 1e-9
        checked += 1
    assert checked == 50


def test_verify_covering_identity():
    report = ag.verify_covering(C4, C4, {v: v for v in C4.vertices})
    assert report.ok


def test_hypercube_covers_weighted_path():
    for Lp in range(2, 7):
        G = ag.hypercube_graph(Lp)
        weights = {
            (t, t + 1): math.sqrt((Lp - t) * (t + 1)) for t in range(Lp)
        }
        H = ag.WeightedGraph(range(Lp + 1), weights)
        mapping = {v: v.count("1") for v in G.vertices}
        report = ag.verify_covering(G, H, mapping)
        assert report.ok, report.violations
        # pull-back intertwining and adjacency-spectrum containment
        P = pull_back_operator(G, H, mapping)
        assert np.abs(H.adjacency_matrix() @ P - P @ G.adjacency_matrix()).max() <= 1e-9
        spec_G = np.linalg.eigvalsh(G.adjacency_matrix())
        spec_H = np.linalg.eigvalsh(H.adjacency_matrix())
        for a in spec_H:
            assert np.min(np.abs(spec_G - a)) <= 1e-8


def test_hypercube_contraction_is_not_covering():
    G = ag.hypercube_graph(3)
    mapping = {v: v.count("1") for v in G.vertices}
    H = ag.contract(G, mapping)
    report = ag.verify_covering(G, H, mapping)
    assert not report.ok
    assert any("(i)" in v for v in report.violations)


def test_covered_path_l2_spectrum_containment():
    G = ag.hypercube_graph(2)
    H = ag.WeightedGraph([0, 1, 2], {(0, 1): math.sqrt(2), (1, 2): math.sqrt(2)})
    report = ag.verify_covering(G, H, {v: v.count("1") for v in G.vertices})
    assert report.ok
    assert np.allclose(np.linalg.eigvalsh(H.adjacency_matrix()), [-2, 0, 2], atol=1e-12)
    assert np.allclose(np.linalg.eigvalsh(G.adjacency_matrix()), [-2, 0, 0, 2], atol=1e-12)


# ---------------------------------------------------------------------------
# spectral theorems on the random suite
# ---------------------------------------------------------------------------


def test_spectra_range_and_null_space(graph_suite):
    for G in graph_suite:
        check_spectra_theorem(G)


def test_quadratic_form_identity(graph_suite):
    rng = np.random.default_rng(2)
    for G in graph_suite:
        check_quadratic_form(G, rng)


def test_spectra_relationships(graph_suite):
    for G in graph_suite:
        check_spectra_relationships(G)


def test_regular_spectra_coincide(regular_suite):
    for G in regular_suite:
        d = G.degree(G.vertices[0])
        lam = np.linalg.eigvalsh(G.normalized_laplacian())
        mu = np.linalg.eigvalsh(G.laplacian())
        alpha = np.sort(np.linalg.eigvalsh(G.adjacency_matrix()))[::-1]
        assert np.abs(lam - mu / d).max() <= 1e-9
        assert np.abs(lam - (1 - alpha / d)).max() <= 1e-9


def test_expansion_sandwich(graph_suite):
    for G in graph_suite:
        if G.n_vertices <= 14:
            check_expansion_sandwich(G)


def test_diameter_bound(graph_suite):
    for G in graph_suite:
        check_diameter_bound(G)


def test_volume_growth_from_expansion(graph_suite):
    # a = 2, L = diam; exhaustive W on small graphs, sampled otherwise
    rng = np.random.default_rng(8)
    for G in graph_suite[:40]:
        lam = ag.spectral_gap(G)
        L = ag.diameter(G)
        radius = L // 2 + 1
        vol_total = G.volume()
        if G.n_vertices <= 12:
            subsets = []
            for mask in range(1, 1 << G.n_vertices):
                subsets.append([v for i, v in enumerate(G.vertices) if mask >> i & 1])
        else:
            subsets = [
                list(rng.choice(G.n_vertices, size=int(rng.integers(1, G.n_vertices)), replace=False))
                for _ in range(100)
            ]
            subsets = [[G.vertices[i] for i in idx] for idx in subsets]
        for W in subsets:
            if G.volume(distance_ball(G, W, radius)) <= vol_total / 2:
                assert vol_total / G.volume(W) >= 2 * (1 + lam / 2) ** (L / 2) - 1e-6


def test_covering_spectrum_containment_random(graph_suite):
    # identity coverings are always coverings; spectra trivially contained
    for G in graph_suite[:10]:
        report = ag.verify_covering(G, G, {v: v for v in G.vertices})
        assert report.ok


# ---------------------------------------------------------------------------
# JSON round trip
# ---------------------------------------------------------------------------


def test_graph_json_roundtrip():
    G = ag.WeightedGraph(["a", "b", "c"], {("a", "b"): 1.5, ("b", "c"): 2.0, ("a", "a"): 0.5})
    G2 = ag.graph_from_json(ag.graph_to_json(G))
    assert list(G2.vertices) == ["a", "b", "c"]
    assert G2.weight("a", "b") == 1.5 and G2.weight("a", "a") == 0.5


def test_graph_json_malformed():
    with pytest.raises(ValueError, match="malformed"):
        ag.graph_from_json({"vertices": [1, 2]})
