"""Checker functions shared between module tests and the acceptance suite."""

import itertools

import numpy as np

import adiagraph as ag


def brute_expansion(G):
    """Plain-loop oracle for the expansion factors, straight from the
    definitions (boundary weight / volume over all proper subsets)."""
    verts = list(G.vertices)
    best_h = best_g = np.inf
    vol_total = G.volume()
    for r in range(1, len(verts)):
        for S in itertools.combinations(verts, r):
            S = set(S)
            vol_S = G.volume(S)
            denom = min(vol_S, vol_total - vol_S)
            cross = sum(w for u, v, w in G.edges() if (u in S) != (v in S))
            delta = {v for u, v, _ in G.edges() if u in S and v not in S}
            delta |= {u for u, v, _ in G.edges() if v in S and u not in S}
            best_h = min(best_h, cross / denom)
            best_g = min(best_g, G.volume(delta) / denom)
    return best_h, best_g


def check_spectra_relationships(G, tol=1e-9):
    """Normalized-vs-standard-Laplacian and -vs-adjacency spectra bounds.

    lambda_i lies between mu_i/d_max and mu_i/d_min, and between the two
    values 1 - alpha_i/d for d in {d_min, d_max} (interval form: the plain
    two-sided display only holds for alpha_i >= 0; for negative adjacency
    eigenvalues the congruence scaling flips the bound order, e.g. the star
    on three vertices has lambda_2 = 2 > 1 - alpha_2/d_min = 1 + sqrt(2)).
    """
    d = G.degrees()
    lam = np.linalg.eigvalsh(G.normalized_laplacian())
    mu = np.linalg.eigvalsh(G.laplacian())
    alpha = np.sort(np.linalg.eigvalsh(G.adjacency_matrix()))[::-1]
    assert np.all(mu / d.max() <= lam + tol)
    assert np.all(lam <= mu / d.min() + tol)
    lo = np.minimum(1 - alpha / d.min(), 1 - alpha / d.max())
    hi = np.maximum(1 - alpha / d.min(), 1 - alpha / d.max())
    assert np.all(lo <= lam + tol)
    assert np.all(lam <= hi + tol)
    assert mu[-1] <= 2 * d.max() + tol


def check_spectra_theorem(G, tol=1e-9):
    """Eigenvalue range [0, 2], simple zero eigenvalue, null vector T^1/2 1."""
    from adiagraph.graphs import laplacian_spectrum

    L = G.normalized_laplacian()
    w = np.linalg.eigvalsh(L)
    assert w[0] >= -tol and w[-1] <= 2 + tol
    assert laplacian_spectrum(G).ground_multiplicity == 1
    assert np.abs(L @ np.sqrt(G.degrees())).max() <= tol


def check_quadratic_form(G, rng, n_vectors=100, tol=1e-9):
    """<f|L|f> equals the weighted sum of squared edge differences."""
    L = G.laplacian()
    F = rng.normal(size=(G.n_vertices, n_vectors))
    quad = np.einsum("vi,vu,ui->i", F, L, F)
    edge_sum = np.zeros(n_vectors)
    for u, v, w in G.edges():
        if u == v:
            continue  # loops cancel in the difference form
        iu, iv = G.index[u], G.index[v]
        edge_sum += (F[iv] - F[iu]) ** 2 * w
    assert np.abs(quad - edge_sum).max() <= tol * max(1.0, np.abs(quad).max())


def check_diameter_bound(G, tol=1e-6):
    import math

    d = G.degrees()
    bound = 2 * math.sqrt(2 * (d.max() / d.min()) / ag.spectral_gap(G)) * math.log2(G.n_vertices)
    assert ag.diameter(G) <= bound + tol


def check_expansion_sandwich(G, tol=1e-9):
    h, g = ag.cheeger_and_vertex_expansion(G)
    lam = ag.spectral_gap(G)
    assert g >= h >= lam / 2 - tol
