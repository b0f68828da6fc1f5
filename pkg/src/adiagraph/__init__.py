"""adiagraph: spectral-graph Hamiltonians for simulating quantum circuits
by adiabatic evolution, with the efficiency quantities (spectral gaps, gap
angles, output probabilities, evolution-time bounds, derivative norms) and
numerical checks of the underlying spectral and adiabatic theorems."""

from .adiabatic import (
    COMPILED_KERNEL,
    EvolutionResult,
    GapProfile,
    adiabatic_phase_and_error,
    backend_name,
    derivative_norms,
    evolution_time_projections,
    evolution_time_states,
    evolve_basis,
    projector_distance,
    schrodinger_evolve,
)
from .circuits import (
    Gate,
    QuantumCircuit,
    TimeDependentCircuit,
    circuit_from_json,
    circuit_to_json,
    circuit_unitary,
    embed_local,
    gate_matrix,
    identity_extend,
    identity_gate,
    time_dependent,
)
from .graphs import (
    WeightedGraph,
    cayley_bitstring,
    cayley_eigenvalues,
    cheeger_and_vertex_expansion,
    complete_graph,
    contract,
    diameter,
    from_edge_list,
    graph_from_json,
    graph_to_json,
    hypercube_graph,
    rayleigh_quotient,
    regular_path,
    spectral_gap,
    verify_covering,
)
from .hamiltonians import (
    LocalTerm,
    LocalTermAudit,
    StandardGraphHamiltonian,
    build_from_spec,
    covered_path_hypercube,
    energy_gap,
    gap_angle,
    gap_profile,
    hypercube,
    kitaev,
    local_term_audit,
    output_probability,
    path_contracted_hypercube,
)
from .linalg import (
    SpectralSummary,
    TrigHermitianFamily,
    eig_hermitian,
    expm_skew,
    log_unitary,
    principal_angle,
    spectral_summary,
)
from .networks import (
    ParallelTransportNetwork,
    associated_unitary,
    block_rotation,
    covered_path,
    history_state,
    network_from_json,
    network_normalized_laplacian,
    network_to_json,
    path_contraction,
    trig_family,
    validate,
)

__version__ = "0.1.0"
