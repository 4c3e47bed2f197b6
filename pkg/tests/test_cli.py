"""CLI thin client: subcommands, exit codes, report shape, determinism."""

import json

import pytest

from borderlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_khintchine(capsys):
    code, report = run(capsys, "khintchine", "--weights", "[1,1]")
    assert code == 0
    assert report["results"] == {"K": "1", "K_decimal": "1"}
    assert report["caps"]["cap"] == 2**24
    assert set(report) == {"command", "inputs_digest", "results", "caps", "timing"}


def test_chow_member_infeasible_exits_zero(capsys):
    code, report = run(capsys, "chow", "member", "--vector", '["1/2","3/10","3/10"]')
    assert code == 0
    assert report["results"]["status"] == "infeasible"
    assert report["results"]["certificate"]["kind"] == "separating_functional"


def test_reduce_matroid_from_file(tmp_path, capsys):
    graph = tmp_path / "K2.json"
    graph.write_text(json.dumps({"vertices": 2, "edges": [[0, 1]]}))
    code, report = run(capsys, "reduce", "matroid", "--graph", str(graph), "--s", "0", "--t", "1")
    assert code == 0
    assert report["results"] == {"C1": "3/2", "C2": "5/4", "p": "1/2", "identity": True}


def test_feasible_lp_and_border(tmp_path, capsys):
    env = {
        "players": 2,
        "supports": [["0", "1"], ["0", "1"]],
        "priors": [["1/2", "1/2"], ["1/2", "1/2"]],
        "family": {"kind": "single_item"},
    }
    env_path = tmp_path / "env.json"
    env_path.write_text(json.dumps(env))
    rule = '{"y": [["1/4","3/4"],["1/4","3/4"]]}'
    code, report = run(capsys, "feasible", "--env", str(env_path), "--rule", rule)
    assert code == 0 and report["results"]["status"] == "feasible"
    code, report = run(
        capsys, "feasible", "--env", str(env_path), "--rule", rule, "--method", "border"
    )
    assert code == 0 and report["results"]["status"] == "feasible"


def test_optrev_and_optwel_inline(capsys):
    env = json.dumps(
        {
            "players": 1,
            "supports": [["0", "1"]],
            "priors": [["1/2", "1/2"]],
            "family": {"kind": "public_project"},
        }
    )
    code, report = run(capsys, "optrev", "--env", env)
    assert code == 0 and report["results"]["value"] == "1/2"
    code, report = run(capsys, "optwel", "--env", env)
    assert code == 0 and report["results"]["value"] == "1/2"
    code, report = run(capsys, "optrev", "--env", env, "--method", "myerson")
    assert code == 1  # wrong family is a domain error
    assert report["error"]["type"] == "WrongFamily"


def test_pp_and_chow_subcommands(capsys):
    assert run(capsys, "pp-rev", "--weights", "[3,1]")[1]["results"]["value"] == "3/2"
    assert run(capsys, "pp-audit", "--weights", "[1]")[1]["results"]["ok"] is True
    code, report = run(capsys, "chow", "compute", "--function", '["0","1","0","1"]')
    assert report["results"]["chow"] == ["1/2", "1/2", "0"]
    code, report = run(capsys, "chow", "opt", "--a0", "1", "--weights", '["1"]')
    assert report["results"]["value"] == "1"
    code, report = run(capsys, "chow", "from-conditionals", "--conditionals", '["1/2","7/10","7/10"]')
    assert report["results"]["chow"] == ["1/2", "1/5", "1/5"]
    code, report = run(capsys, "chow", "vertex", "--vector", '["1/2","1/2"]')
    assert report["results"]["status"] == "vertex"
    code, report = run(capsys, "chow", "majority", "--n", "3")
    assert report["results"]["ok"] is True
    code, report = run(capsys, "reduce", "partition", "--weights", "[1,1]")
    assert report["results"]["count"] == 2
    code, report = run(
        capsys,
        "reduce",
        "stconn",
        "--graph",
        '{"vertices":2,"directed":true,"edges":[[0,1]]}',
        "--s",
        "0",
        "--t",
        "1",
    )
    assert report["results"]["p"] == "1/2" and report["results"]["check"] is True


def test_validate_reports_problems(capsys):
    env = json.dumps(
        {
            "players": 1,
            "supports": [["0", "1"]],
            "priors": [["1/2", "1/3"]],
            "family": {"kind": "single_item"},
        }
    )
    code, report = run(capsys, "validate", "--env", env)
    assert code == 1  # codec refuses to ingest an invalid environment
    assert "sum" in report["error"]["message"]


def test_domain_error_exit_code(capsys):
    code, report = run(capsys, "khintchine", "--weights", "[]")
    assert code == 1
    assert "error" in report
    code, report = run(capsys, "khintchine", "--weights", '["1"]' , "--cap", "1")
    assert code == 1 and report["error"]["type"] == "CapExceeded"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["khintchine"])  # missing --weights
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 2


def test_results_block_is_deterministic(capsys):
    _, first = run(capsys, "optrev", "--env", json.dumps(
        {
            "players": 2,
            "supports": [["0", "1"], ["0", "2"]],
            "priors": [["1/2", "1/2"], ["1/3", "2/3"]],
            "family": {"kind": "single_item"},
        }
    ))
    _, second = run(capsys, "optrev", "--env", json.dumps(
        {
            "players": 2,
            "supports": [["0", "1"], ["0", "2"]],
            "priors": [["1/2", "1/2"], ["1/3", "2/3"]],
            "family": {"kind": "single_item"},
        }
    ))
    assert first["results"] == second["results"]
    assert first["inputs_digest"] == second["inputs_digest"]


def test_threads_env_var(capsys, monkeypatch):
    monkeypatch.setenv("BORDERLAB_THREADS", "4")
    _, report = run(capsys, "khintchine", "--weights", "[1]")
    assert report["caps"]["threads"] == 4
    _, report = run(capsys, "khintchine", "--weights", "[1]", "--threads", "2")
    assert report["caps"]["threads"] == 2


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('["1","1"]'))
    code, report = run(capsys, "khintchine", "--weights", "-")
    assert code == 0 and report["results"]["K"] == "1"


def test_emitted_environment_reingests_identically(tmp_path, capsys):
    from borderlab import codec

    env = {
        "players": 2,
        "supports": [["0", "1"], ["0", "3/2"]],
        "priors": [["1/2", "1/2"], ["2/5", "3/5"]],
        "family": {"kind": "k_unit", "k": 1},
    }
    parsed = codec.environment_from_dict(env)
    emitted = codec.environment_to_dict(parsed)
    assert codec.environment_from_dict(emitted) == parsed
    assert emitted == env  # canonical strings round-trip byte-for-byte here
