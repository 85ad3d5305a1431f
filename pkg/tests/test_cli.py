import csv
import io
import json

import pytest

from specseq.cli import complex_from_json, complex_to_json, dump_complex, main
from specseq.cosimplicial import Unit, materialize


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_universal_default_cap_and_roundtrip(tmp_path, capsys):
    path = tmp_path / "d.json"
    code, _, _ = run(capsys, "universal", "2", "1", "1", "--out", str(path))
    assert code == 0
    text = path.read_text()
    doc = json.loads(text)
    assert doc["level_cap"] == 7 and doc["kind"] == "cosimplicial"
    Y, _, _ = complex_from_json(doc)
    assert dump_complex(complex_to_json(Y)) == text


def test_universal_inf_needs_cap(capsys):
    assert run(capsys, "universal", "inf", "1", "1")[0] == 2
    code, out, _ = run(capsys, "universal", "inf", "1", "1", "--cap", "5")
    assert code == 0 and json.loads(out)["level_cap"] == 5


@pytest.mark.parametrize("argv", [["universal", "2", "1", "0"], ["universal", "0", "1", "1"],
                                  ["universal", "x", "1", "1"], ["verify", "nosuch"]])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_invalid_complex_is_rejected(tmp_path, capsys):
    doc = complex_to_json(materialize(Unit(), 3))
    doc["cofaces"] = [c for c in doc["cofaces"] if c[:2] != [1, 0]]
    path = tmp_path / "bad.json"
    path.write_text(dump_complex(doc))
    code, _, err = run(capsys, "pages", "--in", str(path))
    assert code == 2 and "validation" in err


def test_out_of_range_entry_is_rejected(tmp_path, capsys):
    doc = complex_to_json(materialize(Unit(), 2))
    doc["cofaces"].append([0, 0, 0, 5, 0])
    path = tmp_path / "bad.json"
    path.write_text(dump_complex(doc))
    code, _, err = run(capsys, "pages", "--in", str(path))
    assert code == 2 and "out of range" in err


def _dims_from(fmt, out, window):
    plo, phi, qlo, qhi = window
    dims = {}
    if fmt == "json":
        for pg in json.loads(out)["pages"]:
            for p, q, d in pg["dims"]:
                dims[(pg["r"], -p, q)] = d
    elif fmt == "csv":
        for row in csv.DictReader(io.StringIO(out)):
            dims[(int(row["r"]), -int(row["p"]), int(row["q"]))] = int(row["dim"])
    else:
        r = None
        cols = list(range(phi, plo - 1, -1))
        for line in out.splitlines():
            if line.startswith("E^"):
                r = int(line[2:])
            elif "|" in line:
                q, cells = line.split("|")
                for c, cell in zip(cols, cells.split()):
                    dims[(r, c, int(q))] = 0 if cell == "." else int(cell)
    return dims


def test_formats_carry_the_same_dims(capsys):
    window = ["0", "6", "1", "5"]
    got = {}
    for fmt in ("json", "csv", "ascii"):
        code, out, _ = run(capsys, "pages", "--universal", "2", "1", "1", "--orbit", "--rmax", "4",
                           "--window", *window, "--format", fmt)
        assert code == 0
        got[fmt] = _dims_from(fmt, out, tuple(map(int, window)))
    assert got["json"] == got["csv"] == got["ascii"]
    assert all(d == 0 for (r, c, q), d in got["json"].items() if r == 4)
    assert got["json"][(2, 5, 4)] == 1


def test_universal_pages_shape(capsys):
    code, out, _ = run(capsys, "pages", "--universal", "2", "1", "1", "--rmax", "3", "--format", "json")
    assert code == 0
    pages = {pg["r"]: {(p, q) for p, q, d in pg["dims"] if d} for pg in json.loads(out)["pages"]}
    assert pages[1] == pages[2] == {(-1, 1), (-3, 2)}
    assert pages[3] == set()


def test_empty_window(capsys):
    code, out, _ = run(capsys, "pages", "--universal", "2", "1", "1", "--window", "3", "1", "0", "2",
                       "--format", "json")
    assert code == 0
    assert all(pg["dims"] == [] for pg in json.loads(out)["pages"])


def test_window_underflow(tmp_path, capsys):
    path = tmp_path / "d.json"
    run(capsys, "universal", "2", "1", "1", "--out", str(path))
    code, _, err = run(capsys, "pages", "--in", str(path), "--rmax", "3", "--window", "0", "6", "0", "4")
    assert code == 3
    assert "--window 0 5 0 4" in err
    assert run(capsys, "pages", "--in", str(path), "--rmax", "3", "--window", "0", "5", "0", "4")[0] == 0


def test_eop_iota(capsys):
    code, out, _ = run(capsys, "eop", "--universal", "3", "2", "2", "--iota", "--product")
    assert code == 0
    doc = json.loads(out)
    pages = {e["m"]: e["page"] for e in doc["external"]}
    assert pages[0] == 3 and pages[1] == 4 and pages[2] == 3
    assert not doc["product"]["zero"]


def test_eop_internal_from_file(tmp_path, capsys):
    Y = materialize(Unit(), 5)
    doc = complex_to_json(Y, involution=[[p, 0, 0, 0] for p in range(6)],
                          structure=[[p, 0, 0, 0, 0, 0, 0, 0] for p in range(6)])
    path = tmp_path / "u.json"
    path.write_text(dump_complex(doc))
    code, out, _ = run(capsys, "eop", "--in", str(path), "--r", "2", "--s", "0", "--t", "0",
                       "--coords", "0", "--m", "0", "1", "--internal")
    assert code == 0
    res = json.loads(out)["internal"]
    assert [e["zero"] for e in res] == [False, True]


def test_verify_report(capsys):
    code, out, _ = run(capsys, "verify", "upsilon", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["suite"] == "upsilon" and rep["failures"] == []


def test_verify_is_deterministic(capsys):
    a = json.loads(run(capsys, "verify", "mayonethree", "--seed", "7")[1])
    b = json.loads(run(capsys, "verify", "mayonethree", "--seed", "7")[1])
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_verify_failure_exit_code(capsys, monkeypatch):
    from specseq import verify

    monkeypatch.setitem(verify.SUITES, "skeleton", lambda seed=0: {"suite": "skeleton", "cases": 1,
                                                                     "failures": [{"p": 0}]})
    code, out, _ = run(capsys, "verify", "skeleton")
    assert code == 1 and json.loads(out)["failures"] == [{"p": 0}]
