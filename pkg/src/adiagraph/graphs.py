"""Weighted graphs, their Laplacian spectra, expansion constants, and the
contraction / covering transforms.

Vertex labels are opaque hashables kept in a fixed order; all matrices are
indexed by that order.  Weights are symmetric and nonnegative, and an edge
exists exactly where the weight is positive.  Loops are allowed; a loop
contributes its weight once to the incident degree.
"""

from __future__ import annotations

import json
import math
from collections import deque
from collections.abc import Hashable, Mapping, Sequence

import numpy as np

from .linalg import SpectralSummary, eig_hermitian

#: Exhaustive subset enumeration cap for expansion constants.
EXPANSION_CAP = 20

Vertex = Hashable


class WeightedGraph:
    """Symmetric nonnegative weight function on a finite ordered vertex set."""

    def __init__(self, vertices: Sequence[Vertex], weights: Mapping[tuple[Vertex, Vertex], float]):
        self.vertices: tuple[Vertex, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        if not self.vertices:
            raise ValueError("vertex set must be nonempty")
        self.index: dict[Vertex, int] = {v: i for i, v in enumerate(self.vertices)}
        self._w: dict[tuple[int, int], float] = {}
        for (u, v), w in weights.items():
            w = float(w)
            if w < 0:
                raise ValueError(f"negative weight on ({u!r}, {v!r})")
            if w == 0:
                continue
            i, j = self.index[u], self.index[v]
            key = (i, j) if i <= j else (j, i)
            prev = self._w.get(key)
            if prev is not None and prev != w:
                raise ValueError(f"conflicting weights for edge ({u!r}, {v!r})")
            self._w[key] = w
        self._degrees = np.zeros(len(self.vertices))
        for (i, j), w in self._w.items():
            self._degrees[i] += w
            if j != i:
                self._degrees[j] += w

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def weight(self, u: Vertex, v: Vertex) -> float:
        i, j = self.index[u], self.index[v]
        key = (i, j) if i <= j else (j, i)
        return self._w.get(key, 0.0)

    def degree(self, v: Vertex) -> float:
        if v not in self.index:
            raise KeyError(f"unknown vertex {v!r}")
        return float(self._degrees[self.index[v]])

    def degrees(self) -> np.ndarray:
        return self._degrees.copy()

    def volume(self, subset: Sequence[Vertex] | None = None) -> float:
        if subset is None:
            return float(self._degrees.sum())
        return float(sum(self._degrees[self.index[v]] for v in subset))

    def edges(self):
        """Yield (u, v, w) once per undirected edge, loops as u == v."""
        for (i, j), w in sorted(self._w.items()):
            yield self.vertices[i], self.vertices[j], w

    def neighbors(self, v: Vertex) -> list[Vertex]:
        i = self.index[v]
        out = []
        for (a, b), _ in self._w.items():
            if a == i and b != i:
                out.append(self.vertices[b])
            elif b == i and a != i:
                out.append(self.vertices[a])
        return out

    def adjacency_matrix(self) -> np.ndarray:
        N = self.n_vertices
        A = np.zeros((N, N))
        for (i, j), w in self._w.items():
            A[i, j] = w
            A[j, i] = w
        return A

    def degree_matrix(self) -> np.ndarray:
        return np.diag(self._degrees)

    def laplacian(self) -> np.ndarray:
        return self.degree_matrix() - self.adjacency_matrix()

    def normalized_laplacian(self) -> np.ndarray:
        """T^{-1/2} (T - A) T^{-1/2} with the 0-for-isolated pseudo-inverse.

        Entries: 1 - w(v,v)/d_v on the diagonal (0 for isolated vertices)
        and -w(u,v)/sqrt(d_u d_v) off the diagonal.
        """
        N = self.n_vertices
        L = np.zeros((N, N))
        d = self._degrees
        for i in range(N):
            if d[i] > 0:
                L[i, i] = 1.0 - self.weight(self.vertices[i], self.vertices[i]) / d[i]
        for (i, j), w in self._w.items():
            if i != j:
                val = -w / math.sqrt(d[i] * d[j])
                L[i, j] = val
                L[j, i] = val
        return L

    def _adjacency_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for (i, j), _ in self._w.items():
            if i != j:
                adj[i].append(j)
                adj[j].append(i)
        return adj

    def is_connected(self) -> bool:
        return len(self.component_of(self.vertices[0])) == self.n_vertices

    def component_of(self, v: Vertex) -> set[Vertex]:
        adj = self._adjacency_lists()
        seen = {self.index[v]}
        queue = deque(seen)
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return {self.vertices[i] for i in seen}

    def hop_distances_from(self, v: Vertex) -> dict[Vertex, int]:
        """Unweighted hop distances from v (weights only decide adjacency)."""
        adj = self._adjacency_lists()
        dist = {self.index[v]: 0}
        queue = deque([self.index[v]])
        while queue:
            i = queue.popleft()
            for j in adj[i]:
                if j not in dist:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        return {self.vertices[i]: d for i, d in dist.items()}

    def __repr__(self) -> str:
        return f"WeightedGraph({self.n_vertices} vertices, {len(self._w)} edges)"


def from_edge_list(vertices: Sequence[Vertex], edges: Sequence[tuple]) -> WeightedGraph:
    """Build a graph from (u, v) pairs or (u, v, w) triples (default weight 1)."""
    weights = {}
    for e in edges:
        if len(e) == 2:
            u, v = e
            w = 1.0
        else:
            u, v, w = e
        weights[(u, v)] = w
    return WeightedGraph(vertices, weights)


# ---------------------------------------------------------------------------
# Spectra and expansion quantities
# ---------------------------------------------------------------------------


def _require_connected(G: WeightedGraph, what: str) -> None:
    if not G.is_connected():
        n_comp = len({frozenset(G.component_of(v)) for v in G.vertices})
        raise ValueError(
            f"{what} requires a connected graph; this one has {n_comp} "
            "components (the spectrum is the union of the component spectra)"
        )


def laplacian_spectrum(G: WeightedGraph, tol: float = 1e-8) -> SpectralSummary:
    w, _ = eig_hermitian(G.normalized_laplacian())
    return SpectralSummary.from_eigenvalues(w, tol=tol)


def spectral_gap(G: WeightedGraph) -> float:
    """Second-smallest eigenvalue of the normalized Laplacian."""
    if G.n_vertices < 2:
        raise ValueError("spectral gap needs at least two vertices")
    _require_connected(G, "spectral_gap")
    L = G.normalized_laplacian()
    if G.n_vertices > 512:
        import scipy.linalg

        ev = scipy.linalg.eigh(L, subset_by_index=[0, 1], eigvals_only=True, driver="evr")
        return float(ev[1])
    w, _ = eig_hermitian(L)
    return float(w[1])


def rayleigh_quotient(M: np.ndarray, x: np.ndarray) -> float:
    x = np.asarray(x, dtype=complex).reshape(-1)
    nrm2 = float(np.vdot(x, x).real)
    if nrm2 == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector is undefined")
    return float(np.vdot(x, np.asarray(M) @ x).real) / nrm2


def cheeger_and_vertex_expansion(G: WeightedGraph) -> tuple[float, float]:
    """Exact edge and vertex expansion factors by exhaustive enumeration.

    The boundary measure generalizes to weighted graphs as the total weight
    of crossing edges, which reduces to the crossing-edge count on
    unweighted graphs.  Capped at |V| <= EXPANSION_CAP vertices.
    """
    N = G.n_vertices
    if N < 2:
        raise ValueError("expansion factors need at least two vertices")
    _require_connected(G, "cheeger_and_vertex_expansion")
    if N > EXPANSION_CAP:
        raise ValueError(
            f"|V| = {N} exceeds the exhaustive enumeration cap {EXPANSION_CAP}; "
            "a sampling variant is out of scope"
        )
    d = G.degrees()
    vol_total = d.sum()
    masks = np.arange(1, 1 << N, dtype=np.int64)
    bits = np.empty((len(masks), N), dtype=np.uint8)
    for v in range(N):
        bits[:, v] = (masks >> v) & 1
    vol_S = bits @ d
    cross = np.zeros(len(masks))
    for (i, j), w in G._w.items():
        if i != j:
            cross += w * (bits[:, i] ^ bits[:, j])
    # vertex boundary: vertices outside S adjacent to S
    adj = G._adjacency_lists()
    vol_delta = np.zeros(len(masks))
    for v in range(N):
        if not adj[v]:
            continue
        touches_S = np.zeros(len(masks), dtype=bool)
        for u in adj[v]:
            touches_S |= bits[:, u].astype(bool)
        vol_delta += d[v] * (touches_S & (bits[:, v] == 0))
    proper = vol_S < vol_total  # excludes S = V (mask of all ones has vol == total)
    proper &= masks != (1 << N) - 1
    denom = np.minimum(vol_S, vol_total - vol_S)
    with np.errstate(divide="ignore", invalid="ignore"):
        h_vals = np.where(proper, cross / denom, np.inf)
        g_vals = np.where(proper, vol_delta / denom, np.inf)
    return float(h_vals.min()), float(g_vals.min())


def diameter(G: WeightedGraph) -> int:
    """Largest hop distance between any two vertices."""
    _require_connected(G, "diameter")
    best = 0
    for v in G.vertices:
        dist = G.hop_distances_from(v)
        best = max(best, max(dist.values()))
    return best


def distance_ball(G: WeightedGraph, W: Sequence[Vertex], radius: int) -> set[Vertex]:
    """Vertices within hop distance `radius` of the set W."""
    adj = G._adjacency_lists()
    dist = {G.index[v]: 0 for v in W}
    queue = deque(dist)
    while queue:
        i = queue.popleft()
        if dist[i] >= radius:
            continue
        for j in adj[i]:
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    return {G.vertices[i] for i in dist}


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def regular_path(L: int) -> WeightedGraph:
    """2-regular path on vertices 0..L: unit edges plus unit loops at both ends."""
    if L < 1:
        raise ValueError("regular path needs L >= 1")
    weights = {(t - 1, t): 1.0 for t in range(1, L + 1)}
    weights[(0, 0)] = 1.0
    weights[(L, L)] = 1.0
    return WeightedGraph(range(L + 1), weights)


def complete_graph(n: int) -> WeightedGraph:
    weights = {(i, j): 1.0 for i in range(n) for j in range(i + 1, n)}
    return WeightedGraph(range(n), weights)


def bitstrings(k: int) -> list[str]:
    return [format(x, f"0{k}b") for x in range(1 << k)]


def cayley_bitstring(k: int, S: Sequence[str]) -> WeightedGraph:
    """Cayley graph of the k-bit XOR group with connection set S.

    |S|-regular and unweighted; u ~ v iff u XOR v is in S.  S must not
    contain the zero string (that would be a loop on every vertex) and is
    automatically symmetric since every element is its own XOR-inverse.
    """
    S = sorted(set(S))
    if not S:
        raise ValueError("empty connection set gives a disconnected graph")
    for s in S:
        if len(s) != k or set(s) - {"0", "1"}:
            raise ValueError(f"connection element {s!r} is not a {k}-bit string")
        if s == "0" * k:
            raise ValueError("connection set must not contain the zero string")
    verts = bitstrings(k)
    s_ints = [int(s, 2) for s in S]
    weights = {}
    for x in range(1 << k):
        for s in s_ints:
            y = x ^ s
            if x < y:
                weights[(verts[x], verts[y])] = 1.0
    return WeightedGraph(verts, weights)


def hypercube_graph(L: int) -> WeightedGraph:
    """Degree-L hypercube: k-bit strings adjacent iff they differ in one bit."""
    return cayley_bitstring(L, [format(1 << i, f"0{L}b") for i in range(L)])


def cayley_eigenvalues(k: int, S: Sequence[str]) -> np.ndarray:
    """Closed-form normalized-Laplacian eigenvalues of cayley_bitstring(k, S).

    Entry x is 1 - (1/|S|) sum_{s in S} (-1)^{<x,s>} with <.,.> the mod-2
    bit inner product; the characters (-1)^{<x,.>} are the eigenvectors.
    """
    S = sorted(set(S))
    if not S:
        raise ValueError("empty connection set")
    s_ints = [int(s, 2) for s in S]
    out = np.empty(1 << k)
    for x in range(1 << k):
        acc = 0
        for s in s_ints:
            acc += -1 if bin(x & s).count("1") % 2 else 1
        out[x] = 1.0 - acc / len(S)
    return out


# ---------------------------------------------------------------------------
# Contraction and covering
# ---------------------------------------------------------------------------


def _fibers(G: WeightedGraph, mapping: Mapping[Vertex, Vertex], targets: Sequence[Vertex]):
    fibers: dict[Vertex, list[int]] = {t: [] for t in targets}
    for v in G.vertices:
        if v not in mapping:
            raise ValueError(f"map does not cover source vertex {v!r}")
        t = mapping[v]
        if t not in fibers:
            raise ValueError(f"map sends {v!r} to {t!r}, not a target vertex")
        fibers[t].append(G.index[v])
    empties = [t for t, f in fibers.items() if not f]
    if empties:
        raise ValueError(f"map is not surjective; empty fibers at {empties!r}")
    return fibers


def contract(G: WeightedGraph, mapping: Mapping[Vertex, Vertex], targets: Sequence[Vertex] | None = None) -> WeightedGraph:
    """Contract G along a surjective vertex map.

    The weight between targets x, y is the sum of source weights over all
    ordered fiber pairs, so an edge inside a fiber becomes a loop carrying
    twice its weight and vertex degrees satisfy d_x = sum of fiber degrees.
    """
    if targets is None:
        try:
            targets = sorted(set(mapping.values()))
        except TypeError:
            targets = sorted(set(mapping.values()), key=repr)
    fibers = _fibers(G, mapping, targets)
    A = G.adjacency_matrix()
    P = np.zeros((G.n_vertices, len(targets)))
    for col, t in enumerate(targets):
        P[fibers[t], col] = 1.0
    W = P.T @ A @ P
    weights = {}
    for a, x in enumerate(targets):
        for b in range(a, len(targets)):
            if W[a, b] > 0:
                weights[(x, targets[b])] = float(W[a, b])
    return WeightedGraph(targets, weights)


class CoveringReport:
    """Outcome of a covering check with per-condition diagnostics."""

    def __init__(self, ok: bool, violations: list[str]):
        self.ok = ok
        self.violations = violations

    def __bool__(self) -> bool:
        return self.ok

    def __repr__(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"CoveringReport({status})"


def verify_covering(G: WeightedGraph, H: WeightedGraph, mapping: Mapping[Vertex, Vertex], tol: float = 1e-9) -> CoveringReport:
    """Check whether G covers H along the given surjective map.

    Condition (i): every H-weight equals the fiber-normalized sum of
    G-weights, w_H(x,y) = sum w_G(a,b) / sqrt(|c^-1(x)| |c^-1(y)|).
    Condition (ii): within each fiber, all vertices see the same total
    weight into every fiber.  When both hold the adjacency spectra of G and
    H agree as sets.
    """
    violations: list[str] = []
    fibers = _fibers(G, mapping, H.vertices)
    A = G.adjacency_matrix()
    for x in H.vertices:
        for y in H.vertices:
            fx, fy = fibers[x], fibers[y]
            total = float(A[np.ix_(fx, fy)].sum())
            expected = total / math.sqrt(len(fx) * len(fy))
            got = H.weight(x, y)
            if abs(got - expected) > tol:
                violations.append(
                    f"(i) weight mismatch at ({x!r}, {y!r}): "
                    f"target {got:.12g} vs fiber sum {expected:.12g}"
                )
    for y in H.vertices:
        fy = fibers[y]
        for x in H.vertices:
            fx = fibers[x]
            sums = A[np.ix_(fx, fy)].sum(axis=1)
            if np.abs(sums - sums[0]).max(initial=0.0) > tol:
                a_bad = int(np.argmax(np.abs(sums - sums[0])))
                violations.append(
                    f"(ii) fiber irregularity: vertices {G.vertices[fx[0]]!r} and "
                    f"{G.vertices[fx[a_bad]]!r} carry different weight into fiber {y!r} "
                    f"({sums[0]:.12g} vs {sums[a_bad]:.12g})"
                )
    return CoveringReport(not violations, violations)


def pull_back_operator(G: WeightedGraph, H: WeightedGraph, mapping: Mapping[Vertex, Vertex]) -> np.ndarray:
    """|V_H| x |V_G| operator P with A(H) P = P A(G) for a covering map."""
    fibers = _fibers(G, mapping, H.vertices)
    P = np.zeros((H.n_vertices, G.n_vertices))
    for x in H.vertices:
        fx = fibers[x]
        P[H.index[x], fx] = 1.0 / math.sqrt(len(fx))
    return P


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def graph_to_json(G: WeightedGraph) -> dict:
    return {
        "vertices": list(G.vertices),
        "edges": [{"u": u, "v": v, "w": w} for u, v, w in G.edges()],
    }


def graph_from_json(data: dict) -> WeightedGraph:
    try:
        vertices = data["vertices"]
        edges = {(e["u"], e["v"]): float(e["w"]) for e in data["edges"]}
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return WeightedGraph(vertices, edges)


def load_graph(path: str) -> WeightedGraph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def save_graph(G: WeightedGraph, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json(G), fh, indent=1)
