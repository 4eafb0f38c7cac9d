from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from plabic_lab.cli import EXIT_DOMAIN, EXIT_IO, EXIT_OK, EXIT_USAGE, run
from plabic_lab.generators import gr25_example_graph, gr23_graph, wiring_graph


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("gr23", gr23_graph()), ("gr25_example", gr25_example_graph()), ("bigon", wiring_graph(2, [1, 1]))):
        p = tmp_path / f"{name}.json"
        p.write_text(g.dumps())
        paths[name] = str(p)
    code, text = call("generate", "big-cell", "--k", "2", "--n", "5")
    assert code == EXIT_OK
    p = tmp_path / "g25.json"
    p.write_text(text)
    paths["g25"] = str(p)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    paths["bad"] = str(bad)
    return paths


def test_generate_kinds():
    for argv in (
        ["generate", "grid", "--k", "2", "--n", "4"],
        ["generate", "wiring", "--n", "3", "--word", "2,1,2"],
        ["generate", "double-word", "--n", "2", "--double-word", "1:0,1:inf"],
        ["generate", "triangle", "--n", "2"],
    ):
        code, text = call(*argv)
        assert code == EXIT_OK
        assert "rotations" in json.loads(text)


def test_validate_and_reduced(files):
    assert call("validate", files["gr25_example"]) == (EXIT_OK, "ok\n")
    assert call("reduced", files["gr25_example"]) == (EXIT_OK, "reduced\n")
    code, text = call("reduced", files["bigon"])
    assert code == EXIT_DOMAIN and "(3)" in text


def test_strands_and_quiver(files):
    code, text = call("strands", files["gr25_example"])
    assert code == EXIT_OK and json.loads(text)["trip_permutation"] == [3, 4, 5, 1, 2]
    code, text = call("strands", files["gr25_example"], "--format", "dot")
    assert text.startswith("digraph")
    code, text = call("quiver", files["gr25_example"])
    assert len(json.loads(text)["vertices"]) == 2
    code, text = call("quiver", files["gr25_example"], "--boundary", "--format", "dot")
    assert code == EXIT_OK and "->" in text


def test_seed(files):
    code, text = call("seed", files["gr25_example"])
    data = json.loads(text)
    assert code == EXIT_OK and data["rank"] == 2 and len(data["faces"]) == 2
    code, text = call("seed", files["gr25_example"], "--marked", str(data["faces"][0]))
    assert len(json.loads(text)["vectors"]) == 1


def test_measure(files):
    code, text = call("measure", files["gr23"])
    assert code == EXIT_OK
    rows = text.strip().splitlines()
    assert rows[0] == "subset,numerator,denominator" and len(rows) == 4
    code, text = call("measure", files["gr25_example"], "--random-weights", "--seed", "3", "--format", "json")
    assert code == EXIT_OK and json.loads(text)


def test_mutate(files):
    code, text = call("seed", files["g25"])
    face = json.loads(text)["faces"][0]
    code, text = call("mutate", files["g25"], "--face", str(face), "--random-weights", "--seed", "1")
    assert code == EXIT_OK
    data = json.loads(text)
    assert len(data["steps"]) == 1 and set(data) == {"steps", "graph", "weights"}
    code, _ = call("mutate", files["gr23"], "--face", "0")
    assert code == EXIT_DOMAIN


def test_labels_and_ws(files):
    code, text = call("labels", files["gr23"])
    assert sorted(json.loads(text).values()) == [[1, 2], [1, 3], [2, 3]]
    assert call("ws-check", files["gr25_example"])[0] == EXIT_OK
    assert call("ws-check", "--n", "4", "--a", "1,2", "--b", "3,4")[0] == EXIT_OK
    assert call("ws-check", "--n", "4", "--a", "1,3", "--b", "2,4")[0] == EXIT_DOMAIN
    assert call("ws-check")[0] == EXIT_USAGE


def test_orbit_and_counts(files):
    code, text = call("orbit", files["g25"], "--labels")
    data = json.loads(text)
    assert code == EXIT_OK and len(data["nodes"]) == 5
    code, text = call("orbit", files["g25"], "--format", "dot", "--jobs", "2", "--labels")
    assert code == EXIT_OK and text.count(" -- ") == 5
    assert call("count-fillings", "--k", "2", "--n", "6") == (EXIT_OK, "14\n")
    assert call("count-fillings", "--k", "3", "--n", "6", "--max-nodes", "5")[1] == "5\n"
    assert call("count-fillings", "--k", "3", "--n", "6", "--max-nodes", "5", "--strict")[0] == EXIT_DOMAIN


def test_stokes():
    assert call("stokes", "--n", "1") == (EXIT_OK, "crossing_count 3\n")
    assert call("stokes", "--n", "3", "--epsilon", "1/3")[1] == "crossing_count 5\n"


def test_verify_lagrangian(tmp_path):
    out = tmp_path / "res.csv"
    code, text = call("verify-lagrangian", "--ns", "20", "--nt", "20", "--csv", str(out))
    assert code == EXIT_OK
    assert "phase_value_at_half -16.0" in text
    assert len(out.read_text().splitlines()) == 401


def test_error_codes(files, tmp_path):
    assert call("no-such-command")[0] == EXIT_USAGE
    assert call()[0] == EXIT_USAGE
    assert call("validate", str(tmp_path / "missing.json"))[0] == EXIT_IO
    assert call("validate", files["bad"])[0] == EXIT_IO
    assert call("measure", files["gr23"], "--random-weights")[0] == EXIT_USAGE
    assert call("generate", "wiring", "--n", "2", "--word", "5")[0] == EXIT_DOMAIN


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "plabic_lab", "stokes", "--n", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout == "crossing_count 4\n"
