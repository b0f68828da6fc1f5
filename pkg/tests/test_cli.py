import csv
import json
import math

import numpy as np
import pytest

import adiagraph as ag
from adiagraph.circuits import circuit_to_json
from adiagraph.cli import fit_loglog_exponent, hypercube_volume_fraction, main


def read_csv(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if not l.startswith("#")]
    rows = list(csv.reader(body))
    return comments, rows[0], rows[1:]


def spec_file(tmp_path, construction="kitaev", circuit=None, **kwargs):
    if circuit is None:
        circuit = ag.QuantumCircuit(1, (ag.Gate("H", (0,)), ag.Gate("T", (0,))))
    spec = {"construction": construction, "circuit": circuit_to_json(circuit)}
    spec.update(kwargs)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    return str(path)


def test_spectrum_builder_path(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--builder", "path", "--L", "4", "--out", str(out)]) == 0
    comments, header, rows = read_csv(out)
    assert comments[0].startswith("# adiagraph-csv v1 spectrum")
    assert header == ["index", "eigenvalue", "gap", "ground_multiplicity", "tol"]
    assert len(rows) == 5
    gap = float(rows[0][2])
    assert gap == pytest.approx(1 - math.cos(math.pi / 5), abs=1e-10)


def test_spectrum_builder_hypercube(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--builder", "hypercube", "--L", "8", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    assert float(rows[0][2]) == pytest.approx(0.25, abs=1e-10)


def test_spectrum_graph_file(tmp_path):
    gpath = tmp_path / "g.json"
    gpath.write_text(json.dumps(ag.graph_to_json(ag.complete_graph(3))))
    out = tmp_path / "out.csv"
    assert main(["spectrum", "--graph", str(gpath), "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    assert [float(r[1]) for r in rows] == pytest.approx([0.0, 1.5, 1.5], abs=1e-12)


def test_spectrum_malformed_json_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["spectrum", "--graph", str(bad)]) == 2


def test_spectrum_missing_file_exit_2(tmp_path):
    assert main(["spectrum", "--graph", str(tmp_path / "nope.json")]) == 2


def test_gap_scaling_kitaev(tmp_path):
    out = tmp_path / "gaps.csv"
    code = main(["gap-scaling", "--construction", "kitaev",
                 "--L-list", "8,12,16,24,32,48,64,96,128", "--out", str(out)])
    assert code == 0
    comments, header, rows = read_csv(out)
    assert header == ["construction", "L", "gap"]
    exp_line = [c for c in comments if "fitted_exponent" in c][0]
    exponent = float(exp_line.split("fitted_exponent=")[1].split()[0])
    assert -2.2 <= exponent <= -1.8


def test_gap_scaling_path_contracted(tmp_path):
    out = tmp_path / "gaps.csv"
    assert main(["gap-scaling", "--construction", "path_contracted",
                 "--L-list", "4,8,16,32", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    gaps = [float(r[2]) for r in rows]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))  # shrinking with size


def test_spectrum_builder_complete(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--builder", "complete", "--L", "3", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    assert [float(r[1]) for r in rows] == pytest.approx([0.0, 1.5, 1.5], abs=1e-12)


def test_gap_scaling_hypercube(tmp_path):
    out = tmp_path / "gaps.csv"
    assert main(["gap-scaling", "--construction", "hypercube",
                 "--L-list", "4,6,8,10,12", "--out", str(out)]) == 0
    comments, _, rows = read_csv(out)
    for row in rows:
        assert float(row[2]) == pytest.approx(2 / int(row[1]), abs=1e-10)
    exponent = float(comments[1].split("fitted_exponent=")[1].split()[0])
    assert abs(exponent + 1) <= 0.05


def test_tradeoff_hypercube_square(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["tradeoff", "--construction", "hypercube", "--L-list", "4",
                 "--pad-policy", "square", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    sin2, p = float(rows[0][5]), float(rows[0][6])
    assert sin2 == p
    # exact binomial oracle at L' = 16, L_i = 6
    expected = sum(math.comb(16, t) for t in range(7)) / 2**16
    assert sin2 == pytest.approx(expected, abs=1e-15)


def test_tradeoff_hypercube_linear_decay(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["tradeoff", "--construction", "hypercube", "--L-list", "4,6,8,10",
                 "--pad-policy", "linear", "--pad-param", "2", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    sin2 = [float(r[5]) for r in rows]
    assert all(b < a for a, b in zip(sin2, sin2[1:]))


def test_tradeoff_covered_path_fraction(tmp_path):
    out = tmp_path / "t.csv"
    assert main(["tradeoff", "--construction", "covered_path", "--L-list", "16,40",
                 "--pad-policy", "fraction", "--pad-param", "4", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    for row in rows:
        L_prime = int(row[2])
        bound = (1 - 1 / L_prime) / 64
        assert float(row[5]) >= bound and float(row[6]) >= bound


def test_evolve_small_fixture(tmp_path):
    spec = spec_file(tmp_path, L_i=1, L_f=1)
    out = tmp_path / "evolve.csv"
    dist = tmp_path / "dist.csv"
    code = main(["evolve", "--spec", spec, "--epsilon", "0.5", "--steps", "20000",
                 "--samples", "50000", "--seed", "3", "--out", str(out),
                 "--dist-out", str(dist)])
    assert code == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["construction"] == "kitaev" and row["variant"] == "states"
    assert float(row["adiabatic_error"]) <= 0.5
    p_f, p_e = float(row["p_formula"]), float(row["p_empirical"])
    assert p_f == pytest.approx(0.4, abs=1e-12)
    sigma = math.sqrt(p_f * (1 - p_f) / 50000)
    assert abs(p_e - p_f) <= 3.5 * sigma
    _, dheader, drows = read_csv(dist)
    assert sum(int(r[3]) for r in drows) == 50000


def test_evolve_distribution_matches_circuit_output(tmp_path):
    C = ag.QuantumCircuit(1, (ag.Gate("H", (0,)), ag.Gate("T", (0,))))
    spec = spec_file(tmp_path, circuit=C, L_i=1, L_f=1)
    dist = tmp_path / "dist.csv"
    assert main(["evolve", "--spec", spec, "--epsilon", "0.25", "--steps", "60000",
                 "--samples", "100000", "--seed", "5", "--out", str(tmp_path / "e.csv"),
                 "--dist-out", str(dist)]) == 0
    _, _, drows = read_csv(dist)
    # on final vertices the computational outcome follows |<y|U...U|0>|^2
    U = ag.circuit_unitary(C)
    amp = np.abs(U[:, 0]) ** 2
    Lp = 4
    final_counts = {}
    for v, t, y, c, _f in drows:
        if int(t) == Lp:
            final_counts[y] = final_counts.get(y, 0) + int(c)
    total = sum(final_counts.values())
    for y, c in final_counts.items():
        p = amp[int(y, 2)]
        sigma = math.sqrt(max(p * (1 - p), 1e-12) / total)
        assert abs(c / total - p) <= 3 * sigma


def test_evolve_huge_epsilon_bounded_error(tmp_path):
    spec = spec_file(tmp_path, L_i=1, L_f=1)
    out = tmp_path / "evolve.csv"
    assert main(["evolve", "--spec", spec, "--epsilon", "1e9", "--steps", "200",
                 "--samples", "100", "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    assert float(row["T"]) < 1e-2
    assert float(row["adiabatic_error"]) <= 2.0


def test_evolve_projection_variant(tmp_path):
    C = ag.QuantumCircuit(2, (ag.Gate("H", (0,)), ag.Gate("CNOT", (0, 1))))
    spec = spec_file(tmp_path, circuit=C, L_i=1, L_f=1, valid_inputs=["00", "11"])
    out = tmp_path / "evolve.csv"
    assert main(["evolve", "--spec", spec, "--epsilon", "0.5", "--steps", "40000",
                 "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["variant"] == "projections"
    assert float(row["adiabatic_error"]) <= 0.5


def test_evolve_dimension_cap_exit_1(tmp_path):
    spec = spec_file(tmp_path, construction="hypercube", L_prime=14)
    assert main(["evolve", "--spec", spec, "--epsilon", "0.5"]) == 1


def test_offdiag(tmp_path):
    out = tmp_path / "off.csv"
    assert main(["offdiag", "--L-prime", "100", "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    entries = np.array([float(r[1]) for r in rows])
    assert len(entries) == 100
    assert abs(entries[50] + 0.5) <= 0.02
    central = entries[25:75]
    assert central.min() >= -0.52 and central.max() <= -0.48
    assert np.abs(entries - entries[::-1]).max() <= 1e-9
    # the boundary entry sits farther from -1/2
    assert abs(entries[0] + 0.5) > abs(entries[50] + 0.5)


def test_audit(tmp_path):
    spec = spec_file(tmp_path, L_i=1, L_f=0)
    out = tmp_path / "audit.csv"
    assert main(["audit", "--spec", spec, "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    assert int(row["term_count"]) == 11
    assert float(row["max_term_norm"]) <= 1.0


def test_evolve_deterministic_given_seed(tmp_path):
    spec = spec_file(tmp_path, L_i=1, L_f=0)
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert main(["evolve", "--spec", spec, "--epsilon", "0.5", "--steps", "5000",
                     "--samples", "20000", "--seed", "11", "--out", str(out)]) == 0
        outs.append(out.read_text())
    # identical apart from the wall-time column
    rows = [o.splitlines()[-1].rsplit(",", 1)[0] for o in outs]
    assert rows[0] == rows[1]


def test_evolve_formula_columns_reproducible(tmp_path):
    from adiagraph.hamiltonians import build_from_spec, output_probability_formula

    spec_path = spec_file(tmp_path, L_i=2, L_f=1)
    out = tmp_path / "out.csv"
    assert main(["evolve", "--spec", spec_path, "--epsilon", "0.5", "--steps", "2000",
                 "--samples", "1000", "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    H = build_from_spec(json.loads(open(spec_path).read()))
    assert row["p_formula"] == repr(output_probability_formula(H))


def test_fit_exponent_helper():
    L = np.array([10, 20, 40, 80, 160])
    gaps = 3.0 / L**2
    assert fit_loglog_exponent(L, gaps) == pytest.approx(-2.0, abs=1e-9)


def test_hypercube_volume_fraction_exact():
    assert hypercube_volume_fraction(4, 1) == pytest.approx(5 / 16, abs=1e-16)
    assert hypercube_volume_fraction(4, -1) == 0.0
    assert hypercube_volume_fraction(4, 4) == 1.0


def test_spectrum_save_graph_roundtrip(tmp_path):
    saved = tmp_path / "saved.json"
    out = tmp_path / "s.csv"
    assert main(["spectrum", "--builder", "path", "--L", "3",
                 "--save-graph", str(saved), "--out", str(out)]) == 0
    G = ag.graph_from_json(json.loads(saved.read_text()))
    assert G.n_vertices == 4 and G.weight(0, 0) == 1.0 and G.weight(1, 2) == 1.0
    out2 = tmp_path / "s2.csv"
    assert main(["spectrum", "--graph", str(saved), "--out", str(out2)]) == 0
    assert out.read_text() == out2.read_text()
