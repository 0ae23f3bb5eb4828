import csv
import io
import json

import pytest

from subsetnet.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_encode(capsys):
    code, out, _ = run(capsys, "encode", "--set", "2,3,7")
    data = json.loads(out)
    assert code == 0
    assert data["Z"] == 12 and data["split_rows"] == [1, 3, 6]
    code, out, _ = run(capsys, "encode", "--set", "1")
    assert json.loads(out)["Z"] == 1


def test_encode_rejects_non_positive(capsys):
    code, _, err = run(capsys, "encode", "--set", "0,3")
    assert code == 1
    assert "elements must be positive" in err


def test_simulate_ideal(capsys):
    code, out, _ = run(capsys, "simulate", "--set", "5,6,7", "--ppj", "0", "--agents", "79", "--seed", "7")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    occupied = {int(r["exit"]) for r in rows if int(r["count"]) > 0}
    assert occupied <= {0, 5, 6, 7, 11, 12, 13, 18}
    assert sum(int(r["count"]) for r in rows) == 79


def test_simulate_traced_and_sidecar(tmp_path, capsys):
    code, _, _ = run(capsys, "simulate", "--set", "5,6,7", "--ppj", "0.01", "--agents", "182",
                     "--seed", "7", "--traced", "--out", str(tmp_path))
    assert code == 0
    header = (tmp_path / "histogram.csv").read_text().splitlines()[0]
    assert header == "exit,count,correct,faulty"
    meta = json.loads((tmp_path / "histogram.json").read_text())
    assert meta["config"]["seed"] == 7 and meta["config"]["ppj"] == 0.01
    assert meta["version"]


def test_simulate_threads_byte_identical(capsys):
    args = ["simulate", "--set", "5,6,7", "--ppj", "0.01", "--agents", "200000", "--seed", "7", "--traced"]
    _, one, _ = run(capsys, *args)
    _, eight, _ = run(capsys, *args, "--threads", "8")
    assert one == eight


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--set", "5,6,7", "--agents", "10"],  # no seed
        ["simulate", "--set", "5,6,7", "--seed", "1"],  # no agents
        ["simulate", "--set", "5,6,7", "--ppj", "1.5", "--agents", "10", "--seed", "1"],
        ["simulate", "--set", "5,6,7", "--psj", "0.5,0.5", "--agents", "10", "--seed", "1"],
        ["solve", "--set", "5,6,7"],
        ["plan"],
    ],
)
def test_invalid_input_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_plan_ideal(capsys):
    code, out, _ = run(capsys, "plan", "--set", "5,6,7", "--ppj", "0")
    data = json.loads(out)
    assert code == 0
    assert data["plan"]["N_min"] == 79
    assert all(b["noise_hi"] == 0 for b in data["bands"]["bands"])


def test_analyze_pinned_floor(capsys):
    code, out, _ = run(capsys, "analyze", "--set", "5,6,7", "--ppj", "0.05", "--ni", "28")
    data = json.loads(out)
    assert code == 0
    assert abs(data["plan"]["N_min_non"] - 915) <= 1
    assert data["noise_distribution"]["i_max"] == 9


def test_plan_warns_and_exits_2_in_bad_regime(capsys):
    code, out, _ = run(capsys, "plan", "--set", "5,6,7", "--ppj", "0.2")
    data = json.loads(out)
    assert code == 2
    assert "p_c <= 0.5: approximation regime exceeded" in data["warnings"]


def test_strict_flag(capsys):
    assert run(capsys, "analyze", "--set", "5,6,7", "--ppj", "0.05", "--ni", "28")[0] == 0
    assert run(capsys, "analyze", "--set", "5,6,7", "--ppj", "0.05", "--ni", "28", "--strict")[0] == 2


def test_solve_ideal(tmp_path, capsys):
    code, _, _ = run(capsys, "solve", "--set", "2,3,7", "--ppj", "0", "--seed", "1", "--out", str(tmp_path))
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert code == 0
    assert summary["solutions"] == [0, 2, 3, 5, 7, 9, 10, 12]
    assert summary["verification"]["exact_match"]
    assert (tmp_path / "verdicts.csv").read_text().startswith("exit,count,noise_lo")


def test_solve_nonideal(tmp_path, capsys):
    code, _, _ = run(capsys, "solve", "--set", "5,6,7", "--ppj", "0.01", "--seed", "1", "--out", str(tmp_path))
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert code == 0
    assert summary["solutions"] == [0, 5, 6, 7, 11, 12, 13, 18]


def test_solve_hard_regime_exit_codes(tmp_path, capsys):
    codes = set()
    for seed in range(1, 6):
        out = tmp_path / str(seed)
        code, _, _ = run(capsys, "solve", "--set", "5,6,7", "--ppj", "0.1", "--seed", str(seed),
                         "--agents", "5765", "--out", str(out))
        codes.add(code)
        summary = json.loads((out / "summary.json").read_text())
        assert (code == 3) == bool(summary["ambiguous"])
    assert 3 in codes


def test_solve_without_agents_in_divergent_regime(capsys):
    code, out, _ = run(capsys, "solve", "--set", "5,6,7", "--ppj", "0.2", "--seed", "1")
    assert code == 2
    assert json.loads(out)["plan"]["converged"] is False


def test_config_merging(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"elements": [2, 3, 7], "agents": 50, "seed": 3, "ppj": 0.5}))
    code, out, _ = run(capsys, "simulate", "--config", str(cfg), "--ppj", "0")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert sum(int(r["count"]) for r in rows) == 50
    # flag wins over config: ideal grid, so only subset sums are hit
    assert {int(r["exit"]) for r in rows if int(r["count"])} <= {0, 2, 3, 5, 7, 9, 10, 12}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "encode", "--config", str(bad))[0] == 1


def test_reproduce_panels(tmp_path, capsys):
    code, _, _ = run(capsys, "reproduce", "--figure", "3a", "--out", str(tmp_path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO((tmp_path / "fig3a.csv").read_text())))
    assert [int(r["exit"]) for r in rows] == list(range(1, 18))
    assert abs(sum(float(r["p_non_analytic"]) for r in rows) - 1) < 1e-9

    assert run(capsys, "reproduce", "--figure", "5d", "--out", str(tmp_path))[0] == 0
    meta = json.loads((tmp_path / "fig5d.json").read_text())
    assert meta["n_agents"] in range(5763, 5768)

    assert run(capsys, "reproduce", "--figure", "2", "--out", str(tmp_path))[0] == 0
    rows = list(csv.DictReader(io.StringIO((tmp_path / "fig2.csv").read_text())))
    assert sum(int(r["count"]) for r in rows) == 79
    assert all(float(r["noise_hi"]) == 0 for r in rows)


def test_reproduce_unknown_figure(capsys):
    assert run(capsys, "reproduce", "--figure", "9z")[0] == 1


def test_identical_argv_identical_bytes(tmp_path, capsys):
    for d in ("a", "b"):
        run(capsys, "solve", "--set", "5,6,7", "--ppj", "0.02", "--seed", "4", "--out", str(tmp_path / d))
    for name in ("verdicts.csv", "summary.json"):
        assert (tmp_path / "a" / name).read_bytes() != b""
    assert (tmp_path / "a" / "verdicts.csv").read_bytes() == (tmp_path / "b" / "verdicts.csv").read_bytes()
    a = json.loads((tmp_path / "a" / "summary.json").read_text())
    b = json.loads((tmp_path / "b" / "summary.json").read_text())
    a["config"].pop("out"), b["config"].pop("out")
    assert a == b
