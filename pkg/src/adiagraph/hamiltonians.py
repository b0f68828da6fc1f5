"""Graph Hamiltonians for simulating circuits by adiabatic evolution.

Four constructions share one skeleton: a parallel transport network whose
normalized Laplacian is the propagation term, plus an input penalty pinning
the valid circuit inputs on the initial time steps.  The numerically
materialized operator is the restriction to proper network states,
dimension |V| * 2^n; full-qubit-space penalty terms are kept as a symbolic
local-term listing (and materialized only for tiny unary-clock instances).

Resolved convention: contracting the degree-L' hypercube along Hamming
weight gives vertex degrees d_t = L' * C(L', t) (the fiber sums of the
constant hypercube degree), hence hopping prefactors
w(t-1,t)/sqrt(d_{t-1} d_t) = sqrt(t (L'-t+1)) / L'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .adiabatic import GapProfile, derivative_norms
from .circuits import QuantumCircuit, circuit_from_json, identity_extend, time_dependent
from .graphs import WeightedGraph, hypercube_graph, regular_path
from .linalg import SpectralSummary, TrigHermitianFamily, eig_hermitian, orthonormal_columns, principal_angle
from .networks import (
    ParallelTransportNetwork,
    history_basis,
    network_normalized_laplacian,
    trig_family,
)

NULL_TOL = 1e-8


@dataclass(frozen=True)
class LocalTerm:
    """One class of identical interaction terms in the full qubit space."""

    label: str
    locality: int
    norm: float
    count: int = 1


@dataclass(frozen=True)
class LocalTermAudit:
    term_count: int
    max_locality: int
    min_term_norm: float
    max_term_norm: float


@dataclass(frozen=True)
class StandardGraphHamiltonian:
    """H(s) = H_prop(s) + H_in (+ symbolic graph-penalty listing).

    The restricted operator acts on graph-space (x) computation-space; its
    null space at every s is spanned by the history states of the valid
    inputs.
    """

    construction: str
    network: ParallelTransportNetwork
    L: int
    L_i: int
    L_f: int
    valid_inputs: tuple[str, ...]
    in_strength: float
    local_terms: tuple[LocalTerm, ...] = field(compare=False)

    def __post_init__(self):
        if not self.valid_inputs:
            raise ValueError("valid-input set must be nonempty")
        n = self.network.n
        for x in self.valid_inputs:
            if len(x) != n or set(x) - {"0", "1"}:
                raise ValueError(f"valid input {x!r} is not an {n}-bit string")

    @property
    def n(self) -> int:
        return self.network.n

    @property
    def n_steps(self) -> int:
        return self.network.n_steps

    @property
    def dim(self) -> int:
        return self.network.dim

    def time_volumes(self) -> np.ndarray:
        return self.network.time_volumes()

    def input_penalty_diagonal(self) -> np.ndarray:
        """Diagonal of H_in restricted to proper network states.

        For the all-zeros valid input the penalty counts set bits (one
        projector per computation qubit); for other valid-input sets it is
        a flat penalty on every invalid input.
        """
        n = self.n
        k = 1 << n
        diag = np.zeros(self.dim)
        S_ints = {int(x, 2) if n else 0 for x in self.valid_inputs}
        bit_form = self.valid_inputs == ("0" * n,) and n > 0
        G, tm = self.network.graph, self.network.time_map
        for v in G.vertices:
            if tm[v] > self.L_i:
                continue
            base = G.index[v] * k
            for y in range(k):
                if bit_form:
                    diag[base + y] = self.in_strength * bin(y).count("1")
                elif y not in S_ints:
                    diag[base + y] = self.in_strength
        return diag

    def restricted(self, s: float) -> np.ndarray:
        """Dense H|_D(s) = network Laplacian at s plus the input penalty."""
        M = network_normalized_laplacian(self.network, s)
        M[np.diag_indices_from(M)] += self.input_penalty_diagonal()
        return M

    def trig(self) -> TrigHermitianFamily:
        """Structured H|_D(s) family with closed-form s-derivatives."""
        return trig_family(self.network, extra_diagonal=np.diag(self.input_penalty_diagonal()))

    def ground_basis(self, s: float) -> np.ndarray:
        """History states of the valid inputs (orthonormal null basis)."""
        return history_basis(self.network, s, self.valid_inputs)

    def input_null_basis(self) -> np.ndarray:
        """Orthonormal basis (standard basis columns) of null(H_in|_D)."""
        n = self.n
        k = 1 << n
        S_ints = {int(x, 2) if n else 0 for x in self.valid_inputs}
        G, tm = self.network.graph, self.network.time_map
        cols = []
        for v in G.vertices:
            base = G.index[v] * k
            for y in range(k):
                if tm[v] > self.L_i or y in S_ints:
                    cols.append(base + y)
        basis = np.zeros((self.dim, len(cols)))
        basis[cols, range(len(cols))] = 1.0
        return basis


# ---------------------------------------------------------------------------
# Derived quantities
# ---------------------------------------------------------------------------


def energy_gap(H: StandardGraphHamiltonian, s: float, tol: float = NULL_TOL) -> float:
    """Gap of H|_D(s) above its |S|-dimensional null space."""
    w, _ = eig_hermitian(H.restricted(s))
    summary = SpectralSummary.from_eigenvalues(w, tol=tol)
    n_null = len(H.valid_inputs)
    if summary.ground_multiplicity != n_null:
        raise ValueError(
            f"ground multiplicity {summary.ground_multiplicity} != |S| = {n_null}; "
            "construction violated"
        )
    if w[0] < -1e-9:
        raise ValueError(f"operator is not positive semi-definite: min eigenvalue {w[0]:.3e}")
    return float(w[n_null] - w[0])


def gap_angle_formula(H: StandardGraphHamiltonian) -> float:
    """sin^2(theta) as the initial-vertex volume fraction."""
    vols = H.time_volumes()
    return float(vols[: H.L_i + 1].sum() / vols.sum())


def gap_angle_oracle(H: StandardGraphHamiltonian, s: float, null_tol: float = 1e-10) -> float:
    """Gap angle from subspace geometry: principal angle between
    null(H_in|_D) and the non-valid-input part of null(H_prop|_D(s))."""
    Lap = network_normalized_laplacian(H.network, s)
    w, V = eig_hermitian(Lap)
    n_null = 1 << H.n
    if w[n_null - 1] > 1e-7 or (len(w) > n_null and w[n_null] < 1e-7):
        raise ValueError("unexpected null-space dimension of the network Laplacian")
    N_prop = V[:, :n_null]
    A = H.input_null_basis()
    # split N_prop into (inside N_in) + (orthogonal remainder)
    Q = N_prop - A @ (A.conj().T @ N_prop)
    _, sig, Vh = np.linalg.svd(Q, full_matrices=False)
    keep = sig > 1e-7
    remainder = orthonormal_columns(N_prop @ Vh.conj().T[:, keep])
    if remainder.shape[1] == 0:
        raise ValueError("every propagation null state is a valid-input state; gap angle undefined")
    return principal_angle(A, remainder)


def gap_angle(H: StandardGraphHamiltonian, s: float = 0.0, method: str = "auto") -> tuple[float, float]:
    """(theta, sin^2 theta formula value).

    theta comes from the subspace oracle when the restricted dimension is
    materializable, otherwise from the volume-fraction formula.
    """
    sin2 = gap_angle_formula(H)
    if method == "formula" or (method == "auto" and H.dim > 2048):
        return float(np.arcsin(math.sqrt(sin2))), sin2
    return gap_angle_oracle(H, s), sin2


def output_probability_formula(H: StandardGraphHamiltonian) -> float:
    vols = H.time_volumes()
    return float(vols[H.n_steps - H.L_f :].sum() / vols.sum())


def output_probability(
    H: StandardGraphHamiltonian,
    measurement_samples: int | None = None,
    seed: int = 0,
    state: np.ndarray | None = None,
) -> tuple[float, float | None]:
    """Final-vertex volume fraction, plus an empirical estimate.

    The empirical value simulates `measurement_samples` extended-vertex-basis
    measurements on the final history state (or a caller-provided state) and
    counts outcomes in the final time window.
    """
    p = output_probability_formula(H)
    if not measurement_samples:
        return p, None
    k = 1 << H.n
    if state is None:
        state = H.ground_basis(1.0)[:, 0]
    probs = np.abs(state) ** 2
    vertex_probs = probs.reshape(-1, k).sum(axis=1)
    vertex_probs = vertex_probs / vertex_probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(measurement_samples, vertex_probs)
    tm, G = H.network.time_map, H.network.graph
    final = sum(
        int(counts[G.index[v]]) for v in G.vertices if tm[v] >= H.n_steps - H.L_f
    )
    return p, final / measurement_samples


def measurement_distribution(
    H: StandardGraphHamiltonian, state: np.ndarray, samples: int, seed: int = 0
) -> list[tuple[str, int, str, int]]:
    """Sampled joint (vertex, computational outcome) measurement counts.

    Returns rows (vertex_label, time_step, outcome_bits, count) for every
    outcome that occurred.
    """
    k = 1 << H.n
    probs = np.abs(np.asarray(state)) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(samples, probs)
    G, tm = H.network.graph, H.network.time_map
    rows = []
    for flat in np.nonzero(counts)[0]:
        v = G.vertices[flat // k]
        y = format(flat % k, f"0{H.n}b") if H.n else ""
        rows.append((str(v), tm[v], y, int(counts[flat])))
    return rows


def gap_profile(
    H: StandardGraphHamiltonian,
    s_grid: np.ndarray | None = None,
    delta: float = 1e-4,
    tol: float = NULL_TOL,
) -> GapProfile:
    """Gap and derivative norms of H|_D over an s-grid (default 101 points)."""
    if s_grid is None:
        s_grid = np.linspace(0.0, 1.0, 101)
    s_grid = np.asarray(s_grid, dtype=float)
    family = H.trig()
    gam = np.array([energy_gap(H, s, tol=tol) for s in s_grid])
    d1 = np.empty_like(gam)
    d2 = np.empty_like(gam)
    for i, s in enumerate(s_grid):
        d1[i], d2[i] = derivative_norms(family, float(s), delta)
    return GapProfile(s_grid=s_grid, gamma=gam, d1_norm=d1, d2_norm=d2)


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _clock_span(t: int, L_prime: int) -> int:
    """Number of clock qubits touched by the domain-wall site operator at t."""
    if L_prime == 1:
        return 1
    if t <= 1 or t >= L_prime - 1:
        return 2
    return 3


def _gate_arity(circuit: QuantumCircuit, t: int) -> int:
    """Qubits the gate at step t (1-based) acts on; identity counts as 0."""
    g = circuit.gates[t - 1]
    return 0 if g.kind == "I" else g.arity


def _resolve_inputs(n: int, valid_inputs) -> tuple[str, ...]:
    if valid_inputs is None:
        return ("0" * n,)
    out = tuple(dict.fromkeys(valid_inputs))
    return out


def _input_terms(L_i: int, n: int, L_prime: int, valid_inputs: tuple[str, ...], extra_locality: int = 0) -> list[LocalTerm]:
    terms = []
    default = valid_inputs == ("0" * n,)
    for t in range(L_i + 1):
        span = _clock_span(t, L_prime) + extra_locality
        if default:
            terms.append(LocalTerm(f"input[{t}]", span + 1, 1.0 / n, count=n))
        else:
            n_invalid = (1 << n) - len(set(valid_inputs))
            if n_invalid:
                terms.append(LocalTerm(f"input[{t}]", span + n, 1.0 / n, count=n_invalid))
    return terms


def kitaev(C: QuantumCircuit, L_i: int, L_f: int, valid_inputs=None) -> StandardGraphHamiltonian:
    """Path-graph construction with a unary domain-wall clock.

    The restricted propagation term has 1/2 diagonal entries at the looped
    endpoints and -1/2 hoppings carrying U_t(s).
    """
    L = C.length
    L_prime = L_i + L + L_f
    if L_prime < 1:
        raise ValueError("extended circuit must have at least one gate")
    n = C.n
    inputs = _resolve_inputs(n, valid_inputs)
    ext = identity_extend(C, L_i, L_f)
    network = ParallelTransportNetwork(
        regular_path(L_prime), {t: t for t in range(L_prime + 1)}, time_dependent(ext)
    )
    terms = [LocalTerm("clock-end-projector", 2 if L_prime > 1 else 1, 0.5, count=2)]
    for t in range(1, L_prime):
        terms.append(LocalTerm(f"clock-site[{t}]", _clock_span(t, L_prime), 1.0))
    for t in range(1, L_prime + 1):
        span = 2 if (t == 1 or t == L_prime) and L_prime > 1 else (1 if L_prime == 1 else 3)
        terms.append(LocalTerm(f"hop[{t}]", span + _gate_arity(ext, t), 0.5))
    if n:
        terms.extend(_input_terms(L_i, n, L_prime, inputs))
    if L_prime >= 2:
        terms.append(LocalTerm("clock-domain-wall", 2, 1.0 / L_prime, count=L_prime - 1))
    return StandardGraphHamiltonian(
        "kitaev", network, L, L_i, L_f, inputs, 1.0 / n if n else 0.0, tuple(terms)
    )


def _split_pads(L: int, L_prime: int) -> tuple[int, int]:
    if L_prime < L:
        raise ValueError(
            f"L_prime = {L_prime} cannot implement a length-{L} circuit; "
            f"the network graph needs diameter at least {L}"
        )
    rem = L_prime - L
    L_i = rem // 2
    return L_i, rem - L_i  # odd remainder: extra identity after the circuit


def hypercube(C: QuantumCircuit, L_prime: int, valid_inputs=None) -> StandardGraphHamiltonian:
    """Degree-L' hypercube with Hamming weight as the time step."""
    L = C.length
    L_i, L_f = _split_pads(L, L_prime)
    n = C.n
    inputs = _resolve_inputs(n, valid_inputs)
    ext = identity_extend(C, L_i, L_f)
    graph = hypercube_graph(L_prime)
    tm = {v: v.count("1") for v in graph.vertices}
    network = ParallelTransportNetwork(graph, tm, time_dependent(ext))
    terms = [LocalTerm("identity", 0, 1.0)]
    for t in range(1, L_prime + 1):
        terms.append(
            LocalTerm(f"hop[{t}]", 1 + _clock_span(t, L_prime) + _gate_arity(ext, t), 1.0 / L_prime, count=L_prime)
        )
    if n:
        terms.extend(_input_terms(L_i, n, L_prime, inputs))
    terms.append(LocalTerm("label-penalty", 3 if L_prime > 1 else 2, 1.0 / L_prime, count=L_prime))
    if L_prime >= 2:
        terms.append(LocalTerm("weight-domain-wall", 2, 1.0 / L_prime, count=L_prime - 1))
    return StandardGraphHamiltonian(
        "hypercube", network, L, L_i, L_f, inputs, 1.0 / n if n else 0.0, tuple(terms)
    )


def contracted_hypercube_weight(t: int, L_prime: int) -> float:
    """w(t-1, t) of the Hamming-weight contraction: t * C(L', t)."""
    return float(t * math.comb(L_prime, t))


def contracted_hypercube_degree(t: int, L_prime: int) -> float:
    """d_t of the contracted path: L' * C(L', t) (fiber sum of degrees)."""
    return float(L_prime * math.comb(L_prime, t))


def contracted_hypercube_prefactor(t: int, L_prime: int) -> float:
    """Hopping prefactor w(t-1,t)/sqrt(d_{t-1} d_t) = sqrt(t(L'-t+1))/L'."""
    return math.sqrt(t * (L_prime - t + 1)) / L_prime


def path_contracted_hypercube(C: QuantumCircuit, L_prime: int, valid_inputs=None) -> StandardGraphHamiltonian:
    """Weighted path carrying the Hamming-weight contraction of the hypercube."""
    L = C.length
    L_i, L_f = _split_pads(L, L_prime)
    n = C.n
    inputs = _resolve_inputs(n, valid_inputs)
    ext = identity_extend(C, L_i, L_f)
    weights = {
        (t - 1, t): contracted_hypercube_weight(t, L_prime) for t in range(1, L_prime + 1)
    }
    graph = WeightedGraph(range(L_prime + 1), weights)
    network = ParallelTransportNetwork(graph, {t: t for t in range(L_prime + 1)}, time_dependent(ext))
    terms = [LocalTerm("clock-site", 3 if L_prime > 2 else min(L_prime, 2), 1.0, count=L_prime + 1)]
    for t in range(1, L_prime + 1):
        span = 2 if (t == 1 or t == L_prime) and L_prime > 1 else (1 if L_prime == 1 else 3)
        terms.append(
            LocalTerm(f"hop[{t}]", span + _gate_arity(ext, t), contracted_hypercube_prefactor(t, L_prime))
        )
    if n:
        terms.extend(_input_terms(L_i, n, L_prime, inputs))
    if L_prime >= 2:
        terms.append(LocalTerm("clock-domain-wall", 2, 1.0 / L_prime, count=L_prime - 1))
    return StandardGraphHamiltonian(
        "path_contracted", network, L, L_i, L_f, inputs, 1.0 / n if n else 0.0, tuple(terms)
    )


def covered_path_weight(t: int, L_prime: int) -> float:
    """w(t, t+1) of the covered path of the hypercube: sqrt((L'-t)(t+1))."""
    return math.sqrt((L_prime - t) * (t + 1))


def covered_path_graph(L_prime: int) -> WeightedGraph:
    weights = {(t, t + 1): covered_path_weight(t, L_prime) for t in range(L_prime)}
    return WeightedGraph(range(L_prime + 1), weights)


def covered_path_hypercube(C: QuantumCircuit, L_prime: int, valid_inputs=None) -> StandardGraphHamiltonian:
    """Weighted path covered by the degree-L' hypercube network."""
    L = C.length
    L_i, L_f = _split_pads(L, L_prime)
    n = C.n
    inputs = _resolve_inputs(n, valid_inputs)
    ext = identity_extend(C, L_i, L_f)
    graph = covered_path_graph(L_prime)
    network = ParallelTransportNetwork(graph, {t: t for t in range(L_prime + 1)}, time_dependent(ext))
    d = graph.degrees()
    terms = [LocalTerm("clock-site", 3 if L_prime > 2 else min(L_prime, 2), 1.0, count=L_prime + 1)]
    for t in range(1, L_prime + 1):
        span = 2 if (t == 1 or t == L_prime) and L_prime > 1 else (1 if L_prime == 1 else 3)
        pref = covered_path_weight(t - 1, L_prime) / math.sqrt(d[t - 1] * d[t])
        terms.append(LocalTerm(f"hop[{t}]", span + _gate_arity(ext, t), pref))
    if n:
        terms.extend(_input_terms(L_i, n, L_prime, inputs))
    if L_prime >= 2:
        terms.append(LocalTerm("clock-domain-wall", 2, 1.0 / L_prime, count=L_prime - 1))
    return StandardGraphHamiltonian(
        "covered_path", network, L, L_i, L_f, inputs, 1.0 / n if n else 0.0, tuple(terms)
    )


CONSTRUCTIONS = {
    "kitaev": kitaev,
    "hypercube": hypercube,
    "path_contracted": path_contracted_hypercube,
    "covered_path": covered_path_hypercube,
}


def local_term_audit(H: StandardGraphHamiltonian) -> LocalTermAudit:
    """Counts and norm range of the symbolic full-space term listing."""
    terms = H.local_terms
    if not terms:
        raise ValueError("no local terms recorded for this construction")
    return LocalTermAudit(
        term_count=sum(t.count for t in terms),
        max_locality=max(t.locality for t in terms),
        min_term_norm=min(t.norm for t in terms),
        max_term_norm=max(t.norm for t in terms),
    )


def build_from_spec(data: dict) -> StandardGraphHamiltonian:
    """Construct from the CLI JSON format: construction name + circuit +
    pad counts (kitaev) or L_prime (the rest), optional valid_inputs."""
    try:
        name = data["construction"]
        circuit = circuit_from_json(data["circuit"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed construction spec: {exc}") from exc
    if name not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {name!r}; expected one of {sorted(CONSTRUCTIONS)}")
    valid_inputs = data.get("valid_inputs")
    if name == "kitaev":
        if "L_i" not in data or "L_f" not in data:
            raise ValueError("kitaev construction needs L_i and L_f")
        return kitaev(circuit, int(data["L_i"]), int(data["L_f"]), valid_inputs)
    if "L_prime" not in data:
        raise ValueError(f"{name} construction needs L_prime")
    return CONSTRUCTIONS[name](circuit, int(data["L_prime"]), valid_inputs)


# ---------------------------------------------------------------------------
# Tiny full-qubit-space materialization (unary clock, Kitaev only)
# ---------------------------------------------------------------------------


def _clock_projector(pattern: str, qubits: tuple[int, ...], L_prime: int) -> np.ndarray:
    """Diagonal projector onto clock states matching `pattern` on 1-based qubits."""
    dim = 1 << L_prime
    diag = np.ones(dim)
    for bit, q in zip(pattern, qubits):
        want = int(bit)
        shift = L_prime - q
        sel = ((np.arange(dim) >> shift) & 1) == want
        diag *= sel
    return np.diag(diag.astype(complex))


def _overlined_pair(t: int, L_prime: int) -> tuple[np.ndarray, np.ndarray]:
    """(site projector at t, hop operator t-1 -> t) on the unary clock space."""
    dim = 1 << L_prime
    # site projector
    if L_prime == 1:
        proj = _clock_projector("1" if t == 1 else "0", (1,), L_prime)
    elif t == 0:
        proj = _clock_projector("00", (1, 2), L_prime)
    elif t == 1:
        proj = _clock_projector("10", (1, 2), L_prime)
    elif t == L_prime:
        proj = _clock_projector("11", (L_prime - 1, L_prime), L_prime)
    elif t == L_prime - 1:
        proj = _clock_projector("10", (L_prime - 1, L_prime), L_prime)
    else:
        proj = _clock_projector("110", (t - 1, t, t + 1), L_prime)
    # hop t-1 -> t: flip qubit t up, conditioned on the surrounding pattern
    hop = np.zeros((dim, dim), dtype=complex)
    if t >= 1:
        shift = L_prime - t
        for c in range(dim):
            if (c >> shift) & 1:
                continue
            ok = True
            if t > 1 and not (c >> (L_prime - (t - 1))) & 1:
                ok = False
            if t < L_prime and (c >> (L_prime - (t + 1))) & 1:
                ok = False
            if ok:
                hop[c | (1 << shift), c] = 1.0
    return proj, hop


def kitaev_full_space(H: StandardGraphHamiltonian, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Materialize the full 2^(L'+n)-dimensional Kitaev Hamiltonian.

    Returns (H_full(s), unary_indices) where unary_indices are the flat
    basis indices of the proper network states |t> (x) |y| in time order.
    Only sensible for tiny L' (the clock space alone is 2^L').
    """
    if H.construction != "kitaev":
        raise ValueError("full-space materialization is implemented for the kitaev construction")
    Lp, n = H.n_steps, H.n
    dim_c, dim_q = 1 << Lp, 1 << n
    if dim_c * dim_q > 4096:
        raise ValueError("full qubit space too large to materialize")
    eye_q = np.eye(dim_q, dtype=complex)
    M = np.zeros((dim_c * dim_q, dim_c * dim_q), dtype=complex)
    projs = []
    for t in range(Lp + 1):
        proj, hop = _overlined_pair(t, Lp)
        projs.append(proj)
        coeff = 0.5 if t in (0, Lp) else 1.0
        M += coeff * np.kron(proj, eye_q)
        if t >= 1:
            U = H.network.step_unitary(t, s)
            term = np.kron(hop, U)
            M += -0.5 * (term + term.conj().T)
    # input penalty on initial clock sites
    diag_pen = np.zeros(dim_q)
    S_ints = {int(x, 2) if n else 0 for x in H.valid_inputs}
    for y in range(dim_q):
        if H.valid_inputs == ("0" * n,) and n:
            diag_pen[y] = H.in_strength * bin(y).count("1")
        elif y not in S_ints:
            diag_pen[y] = H.in_strength
    pen_q = np.diag(diag_pen.astype(complex))
    for t in range(H.L_i + 1):
        M += np.kron(projs[t], pen_q)
    # graph penalty: domain-wall defects 01 on neighboring clock qubits
    if Lp >= 2:
        wall = np.zeros(dim_c)
        for c in range(dim_c):
            bits = format(c, f"0{Lp}b")
            wall[c] = sum(1 for i in range(Lp - 1) if bits[i] == "0" and bits[i + 1] == "1")
        M += np.kron(np.diag(wall.astype(complex) / Lp), eye_q)
    unary = [int("1" * t + "0" * (Lp - t), 2) if t else 0 for t in range(Lp + 1)]
    idx = np.array([c * dim_q + y for c in unary for y in range(dim_q)])
    return M, idx
