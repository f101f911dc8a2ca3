import json
from pathlib import Path

import pytest

from fdalg.cli import main
from fdalg.families import hom_ext_grid

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_paper_passes(capsys):
    code, out, _ = run(capsys, "verify-paper", "--cs", "1,2,3")
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"]["failed"] == 0
    assert rep["bound"] == 12 and rep["field"] == "Q" and rep["r"] == "2"
    assert all(c["evidence"] or c["status"] == "skipped" for c in rep["checks"])


def test_verify_paper_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "verify-paper", "--cs", "1,2", "--bound", "6", "--out", str(a))[0] == 0
    assert run(capsys, "verify-paper", "--cs", "1,2", "--bound", "6", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_r_zero_is_usage_error(capsys):
    code, _, err = run(capsys, "verify-paper", "--r", "0")
    assert code == 2
    assert "nonzero" in err


def test_r_one_warns_and_skips(capsys):
    code, out, err = run(capsys, "verify-paper", "--r", "1", "--format", "text")
    assert code == 0
    assert "r^2 = 1 violates the simplicity assumption" in err
    assert "SKIPPED hom_dimension_formula" in out


def test_bad_field_and_duplicate_cs(capsys):
    assert run(capsys, "verify-paper", "--field", "R")[0] == 2
    assert run(capsys, "verify-paper", "--cs", "1,1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


def test_witness_command(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, _, _ = run(capsys, "witness", "--cs", "1", "--depth", "4", "--out", str(out))
    assert code == 0
    w = json.loads(out.read_text())["witness"]
    assert [d["value"] for d in w["certificates"]["cosyzygy_codomdims"]] == [1, 2, 3, 4]
    assert w["certificates"]["codomdim"]["value"] == 0


def test_witness_failure_exit_code(capsys):
    # at H = 2 the cosyzygy chain cannot certify codominant dimensions 3 and 4
    code, out, _ = run(capsys, "witness", "--cs", "1", "--bound", "2")
    assert code == 1
    assert not json.loads(out)["witness"]["ok"]


def test_lspecial_scan_rational(capsys):
    code, out, _ = run(capsys, "lspecial-scan", "--cs", "1,2,3")
    assert code == 0
    rows = json.loads(out)["candidates"]
    assert [r["l"] for r in rows] == [1, 1, 1]


def test_lspecial_scan_root_of_unity(capsys):
    code, out, _ = run(capsys, "lspecial-scan", "--field", "Fp:13", "--r", "3", "--cs", "1,2", "--bound", "9")
    rows = json.loads(out)["candidates"]
    assert code == 0
    for r in rows:
        assert r["l"] is None
        assert r["ext_dims"][:3] == r["ext_dims"][3:6] == r["ext_dims"][6:9]


def test_lspecial_scan_empty_grid(capsys):
    code, out, _ = run(capsys, "lspecial-scan", "--generators")
    assert code == 0
    assert json.loads(out)["candidates"] == []


def test_lspecial_scan_bad_generator(capsys):
    assert run(capsys, "lspecial-scan", "--generators", "x*y")[0] == 2
    assert run(capsys, "lspecial-scan", "--generators", "x+")[0] == 2


def test_compute_matches_grid(capsys):
    code, out, _ = run(capsys, "compute", str(SAMPLES / "ext_query.json"))
    assert code == 0
    res = [r["result"] for r in json.loads(out)["results"]]
    t = hom_ext_grid(2, [1, 2, 4], 4)
    hom = {(c["c"], c["d"]): c["dim"] for c in t.hom}
    ext1 = {(c["c"], c["d"]): c["dim"] for c in t.ext1}
    assert res[0]["associative"]
    assert res[1]["dim"] == hom[("1", "4")]
    assert res[2]["dim"] == ext1[("1", "2")]
    assert res[3]["dim"] == ext1[("1", "4")]


def test_compute_rejects_nonassociative(capsys):
    code, _, err = run(capsys, "compute", str(SAMPLES / "nonassociative.json"))
    assert code == 2
    assert "rejected" in err


def test_compute_schema_errors_name_the_path(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"algebra": {"family": "liu-schulz"}, "queries": [{"op": "nope"}]}))
    code, _, err = run(capsys, "compute", str(bad))
    assert code == 2
    assert "/queries/0/op" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"algebra": ')
    code, _, err = run(capsys, "compute", str(broken))
    assert code == 2 and "line" in err


def test_algebra_write_read_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "compute", str(SAMPLES / "dual_numbers.json"))
    assert code == 0
    written = json.loads(out)["results"][1]["result"]["algebra"]
    src = json.loads((SAMPLES / "dual_numbers.json").read_text())["algebra"]
    assert written == src
    job = tmp_path / "again.json"
    job.write_text(json.dumps({"algebra": written, "queries": [{"op": "write_algebra"}]}))
    code, out, _ = run(capsys, "compute", str(job))
    assert json.loads(out)["results"][0]["result"]["algebra"] == written


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_text_and_json_formats(capsys, fmt):
    code, out, _ = run(capsys, "verify-paper", "--cs", "1", "--bound", "4", "--format", fmt)
    assert code == 0
    if fmt == "json":
        json.loads(out)
    else:
        assert "passed" in out


def test_small_characteristic_checks_are_skipped(capsys):
    # End(N) is 19-dimensional, too large for the trace-form radical over F_13
    code, out, _ = run(capsys, "verify-paper", "--field", "Fp:13", "--r", "2", "--bound", "6", "--format", "text")
    assert code == 0
    assert "PASS    ext1_formula" in out
    assert "SKIPPED mueller_domdim" in out and "char > 19" in out
    code, _, _ = run(capsys, "witness", "--field", "Fp:13", "--r", "2", "--bound", "6", "--format", "text")
    assert code == 1


def test_witness_is_not_certified_over_prime_field(capsys):
    # 2 has order 100 mod 101, so 1/2 = 2^99 and the Ext tail eventually returns
    code, out, _ = run(capsys, "verify-paper", "--field", "Fp:101", "--r", "2", "--cs", "1", "--bound", "6")
    assert code == 1
    rep = {c["name"]: c for c in json.loads(out)["checks"]}
    assert rep["nearly_gorenstein_witness"]["status"] == "fail"
    assert "domdim(R) is finite" in rep["nearly_gorenstein_witness"]["message"]
    assert [n for n, c in rep.items() if c["status"] == "fail"] == ["nearly_gorenstein_witness"]
