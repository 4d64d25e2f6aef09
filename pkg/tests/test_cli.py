import csv
import io
import json
import subprocess
import sys

import pytest

from classical_chars import cli, symbols as sy
from classical_chars.symbols import sym


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mn_value(capsys):
    code, out, _ = run(capsys, "mn", "value", "--partition", "3,1,1", "--cycles", "5")
    assert code == 0 and out.strip() == "1"


def test_mn_table_csv(capsys):
    code, out, _ = run(capsys, "--format", "csv", "mn", "table", "--n", "5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8 and all(len(r) == 8 for r in rows)


def test_mn_nonvanishing(capsys):
    code, out, _ = run(capsys, "mn", "nonvanishing", "--n", "7", "--a", "2", "--variant", "x", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 10


@pytest.mark.parametrize("argv", [
    ("mn", "value", "--partition", "3,1", "--cycles", "5"),
    ("mn", "value", "--partition", "3,x", "--cycles", "4"),
    ("mn", "nonvanishing", "--n", "7", "--a", "3", "--variant", "x"),
    ("mn", "table", "--n", "12"),
    ("nonsense",),
    ("--workers", "0", "mn", "value", "--partition", "1", "--cycles", "1"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_symbols_enumerate_json(capsys):
    code, out, _ = run(capsys, "symbols", "enumerate", "--rank", "1", "--defect", "even", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {(tuple(d["A"]), tuple(d["B"])) for d in data} == {((1, 0), ()), ((0,), (1,)), ((1,), (0,)), ((), (1, 0))}


def test_symbols_enumerate_level_cap_csv(capsys):
    code, out, _ = run(capsys, "symbols", "enumerate", "--rank", "30", "--level-cap", "1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows and all(int(r["level"]) <= 1 for r in rows)


def test_howe_map_from_file(capsys, tmp_path):
    d = sy.unipotent_descriptor(sym((9,), (0,)), "D")
    p = tmp_path / "desc.json"
    p.write_text(json.dumps(d.to_dict()))
    code, out, _ = run(capsys, "howe", "map", "--desc", str(p))
    res = json.loads(out)
    assert code == 0 and res["compatible"] and res["target_dim"] == 0


def test_howe_map_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{}")
    code, _, _ = run(capsys, "howe", "map", "--desc", str(p))
    assert code == 2


def test_howe_verify_csv(capsys):
    code, out, _ = run(capsys, "howe", "verify", "--rank", "6", "--report", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 14 and all(r["failures"] == "0" for r in rows)


def test_group_build_and_coverage(capsys):
    code, out, _ = run(capsys, "--format", "json", "group", "build", "--family", "A", "--n", "5")
    info = json.loads(out)
    assert code == 0 and info["order"] == 60 and info["classes"] == 5
    code, out, _ = run(capsys, "group", "coverage", "--family", "A", "--n", "5", "--class", "2")
    assert json.loads(out)["covered"] and code == 0
    code, out, _ = run(capsys, "group", "coverage", "--family", "A", "--n", "5", "--matrix")
    assert code == 0 and len(list(csv.reader(io.StringIO(out)))) == 6


def test_group_coverage_bad_class(capsys):
    code, _, _ = run(capsys, "group", "coverage", "--family", "A", "--n", "5", "--class", "9")
    assert code == 2


def test_cap_abort_exit_3(capsys):
    code, _, err = run(capsys, "--order-cap", "100", "group", "coverage", "--family", "PSL", "--n", "2",
                       "--q", "7", "--class", "1")
    assert code == 3 and "cap" in err
    code, _, _ = run(capsys, "--work-cap", "10", "group", "coverage", "--family", "A", "--n", "5", "--class", "2")
    assert code == 3


def test_group_frobenius(capsys):
    code, out, _ = run(capsys, "group", "frobenius", "--x", "2,3", "--y", "5", "--g", "1,1,3")
    res = json.loads(out)
    assert code == 0 and res["equal"] and res["direct"] == int(res["formula"])


def test_empty_report_schema(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, _, _ = run(capsys, "report", "--out", str(out_path))
    doc = json.loads(out_path.read_text())
    assert code == 0 and doc["schema"] == 1 and doc["properties"] == []
    assert doc["summary"] == {"total": 0, "passed": 0, "failed": 0}


def test_report_unwritable_path(capsys, tmp_path):
    code, _, _ = run(capsys, "report", "--out", str(tmp_path / "missing" / "r.json"))
    assert code == 2


def test_verify_howe_report_and_determinism(capsys, tmp_path):
    docs = []
    for k in range(2):
        path = tmp_path / f"h{k}.json"
        code, _, _ = run(capsys, "--rank-cap", "8", "verify", "howe", "--report", str(path))
        assert code == 0
        docs.append(json.loads(path.read_text()))
    strip = lambda d: [(p["name"], p["status"], json.dumps(p["counts"], sort_keys=True)) for p in d["properties"]]
    assert strip(docs[0]) == strip(docs[1])
    assert all(p["anchor"] for p in docs[0]["properties"])
    assert docs[0]["config"]["rank_cap"] == 8


def test_config_file_overridden_by_flags(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("rank_cap = 5\nworkers = 2  # comment\nformat = csv\n")
    args = cli.build_parser().parse_args(["--config", str(cfg), "--workers", "3", "verify", "howe"])
    c = cli.make_config(args)
    assert (c.rank_cap, c.workers, c.format) == (5, 3, "csv")
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    with pytest.raises(cli.UsageError):
        cli.make_config(cli.build_parser().parse_args(["--config", str(bad), "verify", "howe"]))


def test_failure_exit_1(monkeypatch, capsys):
    monkeypatch.setitem(cli.SUITES, "howe", [("always-fails", "anchor", lambda cfg: (False, {}))])
    code, out, _ = run(capsys, "verify", "howe")
    assert code == 1 and "FAIL" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "classical_chars", "mn", "value", "--partition", "2,2",
                        "--cycles", "2,2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "2"
