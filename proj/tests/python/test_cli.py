"""End-to-end CLI tests: exit codes, schemas, determinism, batch mode."""

import json
import os


def test_check_exit_codes(cli):
    assert cli("check", "X9", "--into", "2D4").returncode == 1
    assert cli("check", "K(3,4)", "--into", "6A3").returncode == 2
    assert cli("check", "K(4,2)", "--into", "3D4+3A1").returncode == 0
    assert cli("check", "A4", "--into", "2A1").returncode == 64
    assert cli("nope").returncode == 64
    assert cli("check", "X9").returncode == 64  # --into is required


def test_check_report_schema(cli, schema):
    r = cli("--format", "json", "check", "X9", "--into", "2D4")
    report = schema("report", r.json)
    assert report["verdict"] == "IMPOSSIBLE"
    statuses = {rule["id"]: rule["status"] for rule in report["rules"]}
    assert statuses["rule_series"] == "FAIL"
    assert statuses["rule_hirzebruch"] == "SKIPPED"
    assert report["problem"]["expr"]["targets"] == "2D_4"


def test_check_text_output(cli):
    r = cli("check", "J10", "--into", "3A3")
    assert r.returncode == 1
    assert "verdict: IMPOSSIBLE" in r.stdout
    assert "rule_dual_graph: PASS" in r.stdout
    assert "rule_spectrum_signature: FAIL" in r.stdout


def test_budget_exit_and_env(cli):
    r = cli("decompose", "K(3,4)", "--into", "6A3", "--budget", "2")
    assert r.returncode == 65
    r2 = cli("decompose", "K(3,4)", "--into", "6A3", env_extra={"COLLIDERE_BUDGET": "2"})
    assert r2.returncode == 65
    r3 = cli("decompose", "K(3,4)", "--into", "6A3")
    assert r3.returncode == 0


def test_collide_nodes_text_bytes(cli):
    r = cli("collide-nodes", "6")
    assert r.returncode == 0
    assert r.stdout == "collisions of 6 nodes:\n  A_11\n  D_10\n  J_10\n  X_9\n"


def test_collide_nodes_schema(cli, schema):
    r = cli("--format", "json", "collide-nodes", "7")
    payload = schema("collide_nodes", r.json)
    assert [t["name"] for t in payload["types"]] == ["A_13", "D_12", "J_{2,2}", "X_{1,2}"]


def test_invariants_json(cli, schema):
    r = cli("--format", "json", "invariants", "J10")
    payload = schema("invariants", r.json)
    entry = payload["types"][0]
    assert entry["invariants"]["delta"] == 6
    assert entry["invariants"]["tau_es"] == 9
    assert entry["signature"] == {"plus": 0, "zero": 2, "minus": 8}
    assert payload["totals"]["kappa"] == 12

    r3a3 = cli("--format", "json", "invariants", "3A3")
    payload = schema("invariants", r3a3.json)
    assert payload["totals"]["tau_es"] == 9
    assert payload["totals"]["signature"] == {"plus": 0, "zero": 0, "minus": 9}


def test_decompose_schemas(cli, schema):
    r = cli("--format", "json", "decompose", "K(4,2)", "--into", "3D4+3A1")
    payload = schema("decompose_check", r.json)
    assert payload["status"] == "WITNESS"
    assert len(payload["witness"]["components"]) == 6

    r2 = cli("--format", "json", "decompose", "D6")
    payload2 = schema("decompose_enumerate", r2.json)
    assert payload2["complete"]
    assert sorted(e["targets_expr"] for e in payload2["entries"]) == [
        "4A_1",
        "A_3+2A_1",
        "D_4+A_1",
    ]


def test_canonical_omp_schema(cli, schema):
    r = cli("--format", "json", "canonical-omp", "K(4,3)")
    payload = schema("canonical_omp", r.json)
    assert payload["pieces"] == [{"p": 4, "count": 3}]


def test_witness_omp(cli, schema):
    r = cli("--format", "json", "witness-omp", "6", "--parts", "4,3")
    payload = schema("witness_omp", r.json)
    assert payload["criterion"] == "POSSIBLE"
    schema("incidence", payload["incidence"])
    assert cli("witness-omp", "5", "--parts", "3,3,3").returncode == 1
    assert cli("witness-omp", "9", "--parts", "4,4,4,4,3").returncode == 2


def test_spectrum_schema(cli, schema):
    r = cli("--format", "json", "spectrum", "5", "5")
    payload = schema("spectrum", r.json)
    assert payload["mu"] == 16
    assert payload["spectrum"][0] == ["-3/5", 1]
    assert payload["signature"] == {"plus": 2, "zero": 0, "minus": 14}


def test_graph_file_input(cli, schema, tmp_path):
    path = tmp_path / "t224.json"
    path.write_text(json.dumps({
        "branches": 3,
        "weights": [[0, 1, 2], [0, 2, 2], [1, 2, 4]],
    }))
    r = cli("--format", "json", "canonical-omp", f"@{path}")
    payload = schema("canonical_omp", r.json)
    assert payload["pieces"] == [{"p": 3, "count": 2}, {"p": 2, "count": 2}]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"branches": 3, "weights": [[0, 1, 1], [0, 2, 2], [1, 2, 3]]}))
    assert cli("invariants", f"@{bad}").returncode == 64


def test_byte_identical_reruns(cli):
    a = cli("--format", "json", "check", "K5", "--into", "3K3+A1")
    b = cli("--format", "json", "check", "K5", "--into", "3K3+A1")
    assert a.stdout == b.stdout
    assert a.returncode == b.returncode == 1


def test_batch_mode(cli, schema, tmp_path):
    lines = [
        {"source": "X9", "targets": "2D4"},
        {"source": "K(3,4)", "targets": "6A3"},
        {"source": "K(4,2)", "targets": ["3D4", "3A1"]},
        {"source": {"branches": 3, "weights": [[0, 1, 2], [0, 2, 2], [1, 2, 2]]},
         "targets": "3A3"},
    ]
    path = tmp_path / "problems.jsonl"
    path.write_text("\n".join(json.dumps(line) for line in lines) + "\n# comment\n")

    r = cli("batch", str(path))
    assert r.returncode == 0
    assert r.stdout.splitlines() == [
        "X_9 -> 2D_4: IMPOSSIBLE",
        "K(3,4) -> 6A_3: UNKNOWN",
        "K(4,2) -> 3D_4 + 3A_1: POSSIBLE",
        "J_10 -> 3A_3: IMPOSSIBLE",
    ]

    rj = cli("--format", "json", "batch", str(path))
    reports = [schema("report", json.loads(line)) for line in rj.stdout.splitlines()]
    assert [rep["verdict"] for rep in reports] == [
        "IMPOSSIBLE", "UNKNOWN", "POSSIBLE", "IMPOSSIBLE",
    ]

    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"source": "X9"}\n')
    assert cli("batch", str(bad)).returncode == 64


def test_fixture_witness_schema(schema, fixtures_dir):
    with open(os.path.join(fixtures_dir, "pg2q4_witness.json")) as f:
        schema("witness", json.load(f))
