import json

import pytest

from z4wb.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK, main, save_database
from z4wb.gf2core import format_code, named_code, parse_code
from z4wb.refdata import c6, fig1_code, table4_code
from z4wb.z4core import format_z4, is_extremal, parse_z4


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.startswith("{")]


@pytest.fixture(scope="module")
def db(dag, tmp_path_factory):
    path = tmp_path_factory.mktemp("db")
    save_database(dag, path, seed=0)
    return path


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_verify_targets(capsys, db):
    for target in ("fig1", "appendix", "prop411"):
        assert main(["verify", target]) == EXIT_OK
        recs = records(capsys.readouterr().out)
        assert recs and all(r["verdict"] == "pass" for r in recs)
        assert {"subject", "claim", "payload", "tool_version", "seed", "timestamp"} <= set(recs[0])
    assert main(["--out", str(db), "verify", "table2-chains"]) == EXIT_OK
    recs = records(capsys.readouterr().out)
    assert len(recs) >= 19 and all(r["verdict"] == "pass" for r in recs)


def test_unknown_target_is_an_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "table9"])
    assert exc.value.code == EXIT_MISMATCH


def test_classify_is_byte_identical(capsys, db, tmp_path):
    out = tmp_path / "again"
    assert main(["--out", str(out), "classify"]) == EXIT_OK
    mine = sorted(p.relative_to(db) for p in db.rglob("*") if p.is_file())
    again = sorted(p.relative_to(out) for p in out.rglob("*") if p.is_file())
    assert mine == again
    for rel in mine:
        assert (db / rel).read_bytes() == (out / rel).read_bytes()
    manifest = json.loads((out / "manifest.json").read_text())
    assert len(manifest["records"]) == 179


def test_report(capsys, db):
    assert main(["--out", str(db), "report"]) == EXIT_OK
    text = capsys.readouterr().out
    assert "Realizable: 149  non-realizable: 30" in text
    assert "149 moonshine, 30 not moonshine, 0 unknown" in text
    for name in ("C6", "C9_4", "C12"):
        assert f"D({name}): Moonshine" in text


def test_report_needs_a_database(capsys, tmp_path):
    assert main(["--out", str(tmp_path / "none"), "report"]) == EXIT_MISMATCH


def test_canon_and_double(capsys, files):
    path = files("g.txt", format_code(named_code("g24")))
    assert main(["canon", path]) == EXIT_OK
    out = capsys.readouterr().out
    rec = records(out)[0]
    assert rec["payload"]["aut_order"] == 244823040
    assert main(["double", path]) == EXIT_OK
    d = parse_code(capsys.readouterr().out)
    assert (d.n, d.k) == (48, 13)


def test_lifts_command(capsys, files):
    assert main(["lifts", files("c6.txt", format_code(c6()))]) == EXIT_OK
    rec = records(capsys.readouterr().out)[0]
    assert rec["payload"]["extremal_classes"] == 1 and rec["payload"]["m"] == 1
    path = files("n.txt", format_code(table4_code("N9_1")))
    assert main(["lifts", path, "--cap", "10"]) == EXIT_BUDGET


def test_augment_round_trip(capsys, files):
    f = fig1_code()
    res = f.residue
    a = next(t for t in range(1, 1 << 24) if t.bit_count() == 4
             and all((t & b).bit_count() % 2 == 0 for b in res.basis) and t not in res)
    bits = "".join(str((a >> i) & 1) for i in range(24))
    assert main(["augment", files("f.txt", format_z4(f)), bits]) == EXIT_OK
    up = parse_z4(capsys.readouterr().out.split("{")[0])
    assert is_extremal(up) and up.residue.k == 7
    assert main(["deaugment", files("u.txt", format_z4(up)), bits]) == EXIT_OK
    down = parse_z4(capsys.readouterr().out.split("{")[0])
    assert down.residue == res
    assert main(["augment", files("f2.txt", format_z4(f)), "1" * 23]) == EXIT_MISMATCH


def test_moonshine_command(capsys, db, files):
    path = files("c6.txt", format_code(c6()))
    assert main(["--out", str(db), "moonshine", path]) == EXIT_OK
    assert records(capsys.readouterr().out)[0]["claim"] == "moonshine"
    path = files("n.txt", format_code(table4_code("N9_1")))
    assert main(["--out", str(db), "moonshine", path]) == EXIT_OK
    assert records(capsys.readouterr().out)[0]["claim"] == "not moonshine"
