import json
import os

from origamilab.cli import main


def run(args):
    return main(args)


def test_info(capsys):
    assert run(["info", "--origami", "ornithorynque"]) == 0
    out = capsys.readouterr().out
    assert "n=12" in out and "genus=4" in out and "|Aut|=3" in out
    assert "cones=2,2,2" in out


def test_info_missing_file():
    assert run(["info", "--origami", "no_such_file.origami"]) == 2


def test_act_and_orbit(tmp_path, capsys):
    assert run(["act", "--origami", "ornithorynque", "--matrix", "1,1,0,1",
                "--out", "acted.origami", "--out-dir", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "isomorphic to input: True" in out
    assert (tmp_path / "acted.origami").exists()

    assert run(["orbit", "--origami", "genus2_L",
                "--out-dir", str(tmp_path)]) == 0
    files = sorted(os.listdir(tmp_path))
    assert "orbit_000.origami" in files and "orbit_002.origami" in files
    adj = (tmp_path / "orbit_adjacency.csv").read_text().splitlines()
    assert adj[0] == "from,token,to"
    assert len(adj) == 1 + 3 * 4


def test_cf(capsys):
    assert run(["cf", "--rational", "5/7"]) == 0
    out = capsys.readouterr().out
    assert "3 2 5 7" in out


def test_flow_csv(tmp_path):
    assert run(["flow", "--origami", "ornithorynque", "--slope", "1/2",
                "--start", "0,1/8,1/8", "--crossings", "10",
                "--out", "ev.csv", "--out-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "ev.csv").read_text().splitlines()
    assert lines[0] == "k,t,square,side,edge_class,label,pos"
    assert len(lines) == 11


def test_cutseq(capsys):
    assert run(["cutseq", "--origami", "ornithorynque", "--slope", "0",
                "--start", "7,1/2,0", "--span", "6"]) == 0
    assert capsys.readouterr().out.split() == ["A0", "A1", "A2", "A0"]


def test_cylinders_csv(tmp_path):
    assert run(["cylinders", "--origami", "ornithorynque",
                "--out", "cyl.csv", "--out-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "cyl.csv").read_text().splitlines()
    assert lines[0] == "index,slope,L,W,squares"
    assert len(lines) == 3


def test_verify_tiles(tmp_path):
    assert run(["verify", "tiles", "--origami", "ornithorynque",
                "--trials", "25", "--seed", "3",
                "--out", "tiles.json", "--out-dir", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "tiles.json").read_text())
    assert payload["ok"] and payload["violations"] == 0


def test_verify_transitions_reports_known_excess(tmp_path):
    # the narrow successor table is violated on the B rows (see ledger);
    # the command reports it and exits nonzero, while the verified table
    # shows no violations
    assert run(["verify", "transitions", "--origami", "ornithorynque",
                "--trials", "300", "--seed", "1",
                "--out", "trans.json", "--out-dir", str(tmp_path)]) == 1
    payload = json.loads((tmp_path / "trans.json").read_text())
    assert payload["violations_vs_verified"] == []
    letters = sorted(v["letter"] for v in payload["violations_vs_asserted"])
    assert letters == ["B0", "B1", "B2"]


def test_verify_intersections(tmp_path):
    assert run(["verify", "intersections", "--origami", "ornithorynque",
                "--trials", "60", "--seed", "2", "--K", "17",
                "--out", "ix.json", "--out-dir", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "ix.json").read_text())
    assert payload["main"]["failures"] == 0
    assert payload["reflected"]["failures"] == 0
    assert "config_hash" in payload


def test_hitting_exponent_pipeline(tmp_path):
    radii = "1/4,1/8,1/16,1/32,1/64,1/128"
    assert run(["hitting", "--origami", "torus", "--slope", "golden",
                "--start", "0,3/16,5/16", "--radii", radii, "--cap", "4000",
                "--out", "rec.csv", "--out-dir", str(tmp_path),
                "--seed", "5"]) == 0
    assert run(["exponent", "--in", str(tmp_path / "rec.csv"),
                "--out", "fit.json", "--plot", "fit.svg",
                "--out-dir", str(tmp_path)]) == 0
    fit = json.loads((tmp_path / "fit.json").read_text())
    assert 0.5 < fit["h_hat"] < 1.8
    svg = (tmp_path / "fit.svg").read_text()
    assert svg.startswith("<svg") and "fitted exponent" in svg


def test_hitting_determinism(tmp_path):
    radii = "1/4,1/8,1/16"
    for name in ("a.csv", "b.csv"):
        assert run(["hitting", "--origami", "torus", "--slope", "golden",
                    "--start", "0,3/16,5/16", "--radii", radii,
                    "--cap", "2000", "--out", name,
                    "--out-dir", str(tmp_path), "--seed", "7"]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_hitting_jobs_parallel_matches(tmp_path):
    radii = "1/4,1/8,1/16"
    for name, jobs in (("s.csv", "1"), ("p.csv", "2")):
        assert run(["hitting", "--origami", "torus", "--slope", "golden",
                    "--start", "0,3/16,5/16", "--radii", radii,
                    "--cap", "2000", "--out", name, "--jobs", jobs,
                    "--out-dir", str(tmp_path), "--seed", "7"]) == 0
    assert (tmp_path / "s.csv").read_bytes() == (tmp_path / "p.csv").read_bytes()


def test_run_config(tmp_path, capsys):
    cfg = tmp_path / "job.ini"
    cfg.write_text("[run]\ntask = info\n\n[info]\norigami = ornithorynque\n")
    assert run(["run", "--config", str(cfg)]) == 0
    assert "genus=4" in capsys.readouterr().out


def test_run_config_missing(tmp_path, capsys):
    assert run(["run", "--config", str(tmp_path / "missing.ini")]) == 2
    assert "cannot read config" in capsys.readouterr().err


def test_hitting_check_upper(tmp_path):
    assert run(["hitting", "--origami", "ornithorynque", "--slope", "golden",
                "--start", "0,3/16,5/16", "--check", "upper",
                "--levels", "6,7,8", "--K", "17",
                "--out", "up.csv", "--out-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "up.csv").read_text().splitlines()
    assert len(lines) == 4
