"""Command-line experiment runner: spectra, gap scaling, pad trade-offs,
adiabatic evolutions, off-diagonal profiles, and local-term audits, all as
CSV with a versioned schema comment.

Exit codes: 0 success, 1 numeric/dimension failure, 2 input parse failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from . import hamiltonians as ham
from .adiabatic import (
    adiabatic_phase_and_error,
    evolution_time_projections,
    evolution_time_states,
    evolve_basis,
    projector_distance,
    schrodinger_evolve,
)
from .graphs import (
    WeightedGraph,
    complete_graph,
    graph_from_json,
    hypercube_graph,
    laplacian_spectrum,
    regular_path,
    save_graph,
    spectral_gap,
)
from .linalg import DimensionCapError

CSV_SCHEMA = "adiagraph-csv v1"


def _fmt(x):
    """Full-precision, locale-free decimal rendering for CSV cells."""
    if x is None:
        return ""
    return repr(float(x))


class ParseFailure(Exception):
    """Bad input file or malformed specification (exit code 2)."""


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path, command, header, rows, comments=()):
    fh, close = _open_out(path)
    try:
        fh.write(f"# {CSV_SCHEMA} {command}\n")
        for line in comments:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            fh.close()


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ParseFailure(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseFailure(f"malformed JSON in {path}: {exc}") from exc


def _build_graph(args) -> WeightedGraph:
    if args.graph:
        try:
            return graph_from_json(_load_json(args.graph))
        except ValueError as exc:
            raise ParseFailure(str(exc)) from exc
    if args.builder == "path":
        return regular_path(args.L)
    if args.builder == "hypercube":
        return hypercube_graph(args.L)
    if args.builder == "complete":
        return complete_graph(args.L)
    raise ParseFailure("need --graph FILE or --builder {path,hypercube,complete} --L N")


def cmd_spectrum(args) -> int:
    G = _build_graph(args)
    if args.save_graph:
        save_graph(G, args.save_graph)
    summary = laplacian_spectrum(G, tol=args.tol)
    rows = [
        (i, _fmt(ev), _fmt(summary.gap), summary.ground_multiplicity, _fmt(args.tol))
        for i, ev in enumerate(summary.eigenvalues)
    ]
    _write_csv(args.out, "spectrum", ["index", "eigenvalue", "gap", "ground_multiplicity", "tol"], rows)
    return 0


def _parse_l_list(text) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseFailure(f"bad L list {text!r}: {exc}") from exc
    if not values:
        raise ParseFailure("empty L list")
    return values


def _family_gap(construction: str, L: int) -> float:
    if construction == "kitaev":
        return spectral_gap(regular_path(L))
    if construction == "hypercube":
        return spectral_gap(hypercube_graph(L))
    if construction == "path_contracted":
        weights = {(t - 1, t): ham.contracted_hypercube_weight(t, L) for t in range(1, L + 1)}
        return spectral_gap(WeightedGraph(range(L + 1), weights))
    if construction == "covered_path":
        return spectral_gap(ham.covered_path_graph(L))
    raise ParseFailure(f"unknown construction {construction!r}")


def fit_loglog_exponent(L_values, gaps) -> float:
    """Least-squares slope of log(gap) vs log(L) over the largest decade."""
    L_values = np.asarray(L_values, dtype=float)
    gaps = np.asarray(gaps, dtype=float)
    sel = L_values >= L_values.max() / 10.0
    if sel.sum() < 2:
        sel[:] = True
    slope, _ = np.polyfit(np.log(L_values[sel]), np.log(gaps[sel]), 1)
    return float(slope)


def cmd_gap_scaling(args) -> int:
    Ls = _parse_l_list(args.L_list)
    gaps = [_family_gap(args.construction, L) for L in Ls]
    exponent = fit_loglog_exponent(Ls, gaps)
    rows = [(args.construction, L, _fmt(g)) for L, g in zip(Ls, gaps)]
    _write_csv(
        args.out,
        "gap-scaling",
        ["construction", "L", "gap"],
        rows,
        comments=[f"fitted_exponent={_fmt(exponent)} (log-log LSQ over the largest decade of L)"],
    )
    print(f"fitted_exponent={exponent}", file=sys.stderr)
    return 0


def hypercube_volume_fraction(L_prime: int, t_max: int) -> float:
    """Exact sum_{t<=t_max} C(L', t) / 2^L' as a float."""
    if t_max < 0:
        return 0.0
    total = sum(math.comb(L_prime, t) for t in range(min(t_max, L_prime) + 1))
    return float(Fraction(total, 2**L_prime))


def covered_path_volume_fraction(L_prime: int, t_max: int) -> float:
    d = ham.covered_path_graph(L_prime).degrees()
    return float(d[: t_max + 1].sum() / d.sum())


def _pads_for_policy(L: int, policy: str, param: float) -> tuple[int, int, int]:
    """Returns (L, L_prime, L_i); L_f = L_prime - L - L_i."""
    if policy == "none":
        return L, L, 0
    if policy == "linear":
        L_prime = int(round(param * L))
    elif policy == "square":
        L_prime = L * L
    elif policy == "fraction":
        # here the list entry is L'; pads are floor(L'/a) on both sides
        L_prime = L
        pad = int(L_prime // param)
        return L_prime - 2 * pad, L_prime, pad
    else:
        raise ParseFailure(f"unknown pad policy {policy!r}")
    if L_prime < L:
        raise ParseFailure(f"pad policy gives L' = {L_prime} < L = {L}")
    rem = L_prime - L
    return L, L_prime, rem // 2


def cmd_tradeoff(args) -> int:
    Ls = _parse_l_list(args.L_list)
    rows = []
    for entry in Ls:
        L, L_prime, L_i = _pads_for_policy(entry, args.pad_policy, args.pad_param)
        L_f = L_prime - L - L_i
        if args.construction == "hypercube":
            sin2 = hypercube_volume_fraction(L_prime, L_i)
            p = hypercube_volume_fraction(L_prime, L_f)
        elif args.construction == "covered_path":
            sin2 = covered_path_volume_fraction(L_prime, L_i)
            p = covered_path_volume_fraction(L_prime, L_f)
        else:
            raise ParseFailure(
                f"tradeoff supports hypercube and covered_path, not {args.construction!r}"
            )
        rows.append((args.construction, L, L_prime, L_i, L_f, _fmt(sin2), _fmt(p)))
    _write_csv(
        args.out,
        "tradeoff",
        ["construction", "L", "L_prime", "L_i", "L_f", "sin2_theta", "p"],
        rows,
    )
    return 0


def cmd_evolve(args) -> int:
    spec = _load_json(args.spec)
    try:
        H = ham.build_from_spec(spec)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from exc
    t_start = time.perf_counter()
    s_grid = np.linspace(0.0, 1.0, args.grid)
    profile = ham.gap_profile(H, s_grid)
    variant = args.variant
    if variant == "auto":
        variant = "states" if len(H.valid_inputs) == 1 else "projections"
    family = H.trig()
    if variant == "states":
        T = evolution_time_states(profile, args.epsilon)
        etas = []
        for s in s_grid:
            w, V = np.linalg.eigh(family.value(s))
            etas.append(V[:, 0])
        etas = np.array(etas)
        result = schrodinger_evolve(family, T, H.ground_basis(0.0)[:, 0], args.steps)
        beta, error = adiabatic_phase_and_error(family, result, etas, s_grid)
        final_state = result.final_state
    else:
        T = evolution_time_projections(profile, args.epsilon)
        evolved = evolve_basis(family, T, H.ground_basis(0.0), args.steps)
        error = projector_distance(evolved, H.ground_basis(1.0))
        beta = float("nan")
        final_state = evolved[:, 0]
    p_formula, p_emp = ham.output_probability(
        H, measurement_samples=args.samples, seed=args.seed, state=final_state
    )
    wall = time.perf_counter() - t_start
    row = (
        H.construction,
        H.L,
        H.n_steps,
        H.n,
        variant,
        _fmt(profile.gamma.min()),
        _fmt(profile.d1_norm.max()),
        _fmt(profile.d2_norm.max()),
        _fmt(args.epsilon),
        _fmt(T),
        args.steps,
        _fmt(error),
        _fmt(beta),
        _fmt(p_formula),
        _fmt(p_emp),
        args.samples,
        f"{wall:.3f}",
    )
    _write_csv(
        args.out,
        "evolve",
        [
            "construction", "L", "L_prime", "n", "variant", "gamma_min", "d1_max",
            "d2_max", "epsilon", "T", "steps", "adiabatic_error", "beta",
            "p_formula", "p_empirical", "samples", "wall_time_s",
        ],
        [row],
    )
    if args.dist_out:
        dist = ham.measurement_distribution(H, final_state, args.samples, seed=args.seed)
        _write_csv(
            args.dist_out,
            "evolve-distribution",
            ["vertex", "time_step", "outcome", "count", "frequency"],
            [(v, t, y, c, _fmt(c / args.samples)) for v, t, y, c in dist],
        )
    return 0


def cmd_offdiag(args) -> int:
    L_prime = args.L_prime
    G = ham.covered_path_graph(L_prime)
    d = G.degrees()
    rows = []
    for t in range(L_prime):
        w = ham.covered_path_weight(t, L_prime)
        entry = -w / math.sqrt(d[t] * d[t + 1])
        rows.append((t, _fmt(entry)))
    _write_csv(args.out, "offdiag", ["t", "laplacian_entry"], rows)
    return 0


def cmd_audit(args) -> int:
    spec = _load_json(args.spec)
    try:
        H = ham.build_from_spec(spec)
    except ValueError as exc:
        raise ParseFailure(str(exc)) from exc
    audit = ham.local_term_audit(H)
    row = (
        H.construction,
        H.L,
        H.n_steps,
        audit.term_count,
        audit.max_locality,
        _fmt(audit.min_term_norm),
        _fmt(audit.max_term_norm),
    )
    _write_csv(
        args.out,
        "audit",
        ["construction", "L", "L_prime", "term_count", "max_locality", "min_term_norm", "max_term_norm"],
        [row],
    )
    return 0


def _add_common(p):
    p.add_argument("--out", default=None, help="output CSV path (default: stdout)")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed for sampling")
    p.add_argument("--tol", type=float, default=1e-8, help="degeneracy tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adiagraph",
        description="Graph-Hamiltonian toolkit for adiabatic circuit simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="normalized-Laplacian spectrum of a graph")
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--builder", choices=["path", "hypercube", "complete"])
    p.add_argument("--L", type=int, default=4, help="builder size parameter")
    p.add_argument("--save-graph", default=None, help="also write the graph as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gap-scaling", help="spectral gap vs family size with a log-log fit")
    p.add_argument("--construction", required=True,
                   choices=["kitaev", "hypercube", "path_contracted", "covered_path"])
    p.add_argument("--L-list", required=True, help="comma-separated sizes, e.g. 8,16,32")
    _add_common(p)
    p.set_defaults(func=cmd_gap_scaling)

    p = sub.add_parser("tradeoff", help="gap angle and output probability vs identity pads")
    p.add_argument("--construction", required=True, choices=["hypercube", "covered_path"])
    p.add_argument("--L-list", required=True,
                   help="circuit lengths (or L' values for --pad-policy fraction)")
    p.add_argument("--pad-policy", default="none",
                   choices=["none", "linear", "square", "fraction"])
    p.add_argument("--pad-param", type=float, default=2.0,
                   help="linear: L' = param*L; fraction: pads = floor(L'/param)")
    _add_common(p)
    p.set_defaults(func=cmd_tradeoff)

    p = sub.add_parser("evolve", help="adiabatic evolution at the theorem's T")
    p.add_argument("--spec", required=True, help="construction spec JSON")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--steps", type=int, default=50_000)
    p.add_argument("--grid", type=int, default=101, help="s-grid points for the profile")
    p.add_argument("--samples", type=int, default=100_000, help="measurement samples")
    p.add_argument("--variant", default="auto", choices=["auto", "states", "projections"])
    p.add_argument("--dist-out", default=None, help="CSV path for the sampled distribution")
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("offdiag", help="off-diagonal Laplacian entries of the covered path")
    p.add_argument("--L-prime", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_offdiag)

    p = sub.add_parser("audit", help="local-term audit of a construction")
    p.add_argument("--spec", required=True, help="construction spec JSON")
    _add_common(p)
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DimensionCapError, np.linalg.LinAlgError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
