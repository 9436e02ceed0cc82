import json

import pytest

from quotbench import cli
from quotbench.theory import CheckReport

STABLE = "example-4-1-selfinjective.json"
ORBIT = "example-4-2-orbit-A3.json"


def run(argv):
    status, text, _ = cli.run_command(argv)
    return status, text


def run_json(argv):
    status, text = run(argv)
    return status, json.loads(text)


def test_ar_quiver_dot_has_six_nodes():
    status, text = run(["ar-quiver", STABLE, "--format", "dot"])
    assert status == 0
    assert text.startswith("digraph")
    nodes = [l for l in text.splitlines() if l.strip().endswith(";") and "->" not in l]
    assert len(nodes) == 6
    solid = [l for l in text.splitlines() if "->" in l and "dashed" not in l]
    assert len(solid) == 8
    assert '"ba" -> "aba";' in text and '"ab" -> "a";' in text


def test_dot_is_deterministic():
    assert run(["ar-quiver", STABLE, "--format", "dot"]) == run(["ar-quiver", STABLE, "--format", "dot"])
    assert run(["ar-quiver", ORBIT, "--format", "dot"]) == run(["ar-quiver", ORBIT, "--format", "dot"])


def test_check_functor_all_pass():
    status, body = run_json(["check-functor", STABLE, "--T", "ba,b"])
    assert status == 0 and body["status"] == 0
    assert [r["verdict"] for r in body["reports"]] == ["pass"] * 5


def test_check_functor_failure_exit_status():
    status, body = run_json(["check-functor", STABLE, "--T", "ba"])
    assert status == 1
    failing = [r for r in body["reports"] if r["verdict"] == "fail"]
    assert failing and all(r["witnesses"] for r in failing)


def test_find_cluster_tilting_empty():
    status, body = run_json(["find-cluster-tilting", STABLE])
    assert status == 0
    assert body["cluster_tilting"] == []
    assert body["subsets_examined"] == 15 and not body["partial"]


def test_find_cluster_tilting_pentagon():
    _, body = run_json(["find-cluster-tilting", "cluster-A2-pentagon.json"])
    assert len(body["cluster_tilting"]) == 5
    assert all(len(T) == 2 for T in body["cluster_tilting"])


def test_find_cluster_tilting_cap_marks_partial():
    _, body = run_json(["find-cluster-tilting", STABLE, "--cap-subsets", "3"])
    assert body["subsets_examined"] == 3 and body["partial"]


def test_quotient_command():
    status, body = run_json(["quotient", STABLE, "--kill", "a"])
    assert status == 0
    assert sorted(body["objects"]) == ["ab", "b", "ba"]
    assert sorted(body["projective_generator"]) == ["b", "ba"]


def test_projective_generator_ka3():
    status, body = run_json(["projective-generator", "kA3.json"])
    assert status == 0
    assert sorted(body["P"]) == ["3", "32", "321"]


def test_orbit_check_functor():
    status, body = run_json(["check-functor", ORBIT, "--T", "321,32,3"])
    assert status == 0
    assert body["gamma_dim"] == 6


def test_json_report_roundtrip(tmp_path):
    out = tmp_path / "report.json"
    assert cli.main(["check-functor", STABLE, "--T", "ba", "--out", str(out)]) == 1
    body = json.loads(out.read_text())
    reports = [CheckReport.from_json(r) for r in body["reports"]]
    assert [r.to_json() for r in reports] == body["reports"]
    status, again = run_json(body["invocation"])
    assert status == body["status"]
    assert [r["verdict"] for r in again["reports"]] == [r.verdict for r in reports]


@pytest.mark.parametrize(
    "argv",
    [
        ["check-functor", STABLE, "--T", "zz"],
        ["harada-sai", ORBIT],
        ["ar-quiver", "does-not-exist.json"],
        ["check-functor", STABLE],
        ["find-cluster-tilting", STABLE, "--cap-subsets", "0"],
        ["harada-sai", STABLE, "--format", "dot", "--samples", "10"],
        ["nonsense", STABLE],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2


def test_stable_command_text():
    status, text = run(["stable", STABLE, "--format", "text"])
    assert status == 0
    assert "[PASS] serre_numerics" in text


def test_harada_sai_command():
    status, body = run_json(["harada-sai", STABLE, "--samples", "200"])
    assert status == 0
    assert body["reports"][0]["data"]["N"] == 3


def test_field_override():
    _, body = run_json(["stable", STABLE, "--field", "7"])
    assert body["objects"] == ["ba", "ab", "a", "b"]


def test_config_validation(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"backend": "algebra", "file": "missing.json"}))
    with pytest.raises(cli.UsageError):
        cli.load_config(str(bad))
    caps = tmp_path / "caps.json"
    caps.write_text(json.dumps({"backend": "mesh", "file": cli.resolve_path(ORBIT).as_posix(), "caps": {"subsets": -1}}))
    with pytest.raises(cli.UsageError):
        cli.load_config(str(caps))
