import csv
import io
import json

import pytest

from lattice_ineq.cli import main
from lattice_ineq.lattice import load_domain
from lattice_ineq.report import COLUMNS


def write_config(tmp_path, name="cfg.json", **overrides):
    cfg = {
        "domains": [{"id": "p2", "shape": "box", "dims": [2]}],
        "potential": "zero",
        "density": "one",
        "k_range": "all",
        "seed": 0,
        "output": {"path": "report.csv", "format": "csv"},
    }
    cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


def read_rows(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def test_run_path_of_two(tmp_path):
    assert main(["run", "--config", str(write_config(tmp_path))]) == 0
    rows = read_rows(tmp_path / "report.csv")
    ineq = [r for r in rows if r["k"]]
    assert [r["theorem"] for r in ineq] == ["YANG1", "YANG2", "HP", "PPW"]
    assert float(ineq[0]["slack"]) == pytest.approx(1.5, abs=1e-12)
    assert (tmp_path / "report.csv").read_text().splitlines()[0] == ",".join(COLUMNS)


def test_run_single_vertex(tmp_path):
    cfg = write_config(tmp_path, domains=[{"shape": "box", "dims": [1]}])
    assert main(["run", "--config", str(cfg)]) == 0
    rows = read_rows(tmp_path / "report.csv")
    assert not [r for r in rows if r["k"]]
    assert any(r["theorem"] == "GREEN_FORMULA" for r in rows)


def test_run_rejects_zero_density(tmp_path, capsys):
    cfg = write_config(tmp_path, density="const:0")
    assert main(["run", "--config", str(cfg)]) == 1
    assert "density must be positive" in capsys.readouterr().err


def test_run_rejects_negative_potential(tmp_path, capsys):
    cfg = write_config(tmp_path, potential="const:-1")
    assert main(["run", "--config", str(cfg)]) == 1
    assert "potential must be nonnegative" in capsys.readouterr().err


def test_run_missing_config(tmp_path):
    assert main(["run", "--config", str(tmp_path / "nope.json")]) == 1


def test_row_count_contract(tmp_path):
    doms = [
        {"shape": "box", "dims": [3, 3]},
        {"shape": "lshape", "arm": 2},
        {"shape": "random", "n": 3, "size": 10, "seed": 4},
        {"shape": "box", "dims": [1]},
    ]
    cfg = write_config(tmp_path, domains=doms, k_range=[1, 2, 5, 11], density="uniform:0.5,2.0",
                       potential="uniform:2")
    assert main(["run", "--config", str(cfg)]) == 0
    rows = read_rows(tmp_path / "report.csv")
    ineq = [r for r in rows if r["k"]]
    # |k_range cap [1, N-1]| per domain: N=9 -> {1,2,5}; N=12 -> {1,2,5,11}; N=10 -> {1,2,5}; N=1 -> {}
    assert len(ineq) == 4 * (3 + 4 + 3 + 0)


def test_run_json_format(tmp_path):
    cfg = write_config(tmp_path, output={"path": "r.json", "format": "json"})
    assert main(["run", "--config", str(cfg)]) == 0
    payload = json.loads((tmp_path / "r.json").read_text())
    assert set(payload["meta"]) >= {"config_sha256", "seed", "versions"}
    assert list(payload["rows"][0]) == list(COLUMNS)


def test_run_reports_failed_check(tmp_path):
    cfg = write_config(tmp_path, tolerances={"identity_tol": -1.0, "slack_tol": 1e-9})
    assert main(["run", "--config", str(cfg)]) == 2


def test_gen_box(tmp_path):
    out = tmp_path / "d.json"
    assert main(["gen", "--shape", "box", "--dims", "3x3", "--out", str(out)]) == 0
    assert len(load_domain(out)) == 9


def test_gen_random_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "--shape", "random", "--n", "2", "--size", "25", "--seed", "9", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(load_domain(a)) == 25


def test_gen_lshape(tmp_path, capsys):
    assert main(["gen", "--shape", "lshape", "--arm", "2"]) == 0
    text = capsys.readouterr().out
    assert len(json.loads(text)["vertices"]) == 12


def test_gen_rejects_bad_params():
    assert main(["gen", "--shape", "lshape", "--arm", "1"]) == 1
    assert main(["gen", "--shape", "box", "--dims", "0x3"]) == 1


def test_verify_prints_table(tmp_path, capsys):
    dom = tmp_path / "p.json"
    main(["gen", "--shape", "box", "--dims", "2", "--out", str(dom)])
    capsys.readouterr()
    assert main(["verify", str(dom), "--rho", "one", "--potential", "zero"]) == 0
    out = capsys.readouterr().out
    lines = [ln for ln in out.splitlines()[1:] if ln.split()[0] == "1"]
    assert len(lines) == 4


def test_verify_k_out_of_range(tmp_path, capsys):
    dom = tmp_path / "p.json"
    main(["gen", "--shape", "box", "--dims", "2", "--out", str(dom)])
    assert main(["verify", str(dom), "--k", "3"]) == 1
    assert "k out of range" in capsys.readouterr().err


def test_verify_deterministic(tmp_path):
    dom = tmp_path / "d.json"
    main(["gen", "--shape", "random", "--n", "2", "--size", "30", "--seed", "1", "--out", str(dom)])
    outs = []
    for name in ("r1.csv", "r2.csv"):
        out = tmp_path / name
        assert main(["verify", str(dom), "--rho", "uniform:0.5,2.0", "--seed", "11", "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_vertex_file_potential(tmp_path):
    (tmp_path / "v.json").write_text(json.dumps({"vertices": [[1], [0]], "values": [0.0, 3.0]}))
    cfg = write_config(tmp_path, potential="file:v.json")
    assert main(["run", "--config", str(cfg)]) == 0
    rows = read_rows(tmp_path / "report.csv")
    energy = next(r for r in rows if r["theorem"] == "ENERGY_BOUND")
    assert float(energy["lhs"]) > 0
