"""Command-line surface: flags, formats, exit codes."""
import json

import pytest

from starconfig import cli, verify
from starconfig.fio import FioMorphism, elementary_insertion


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


# ---------------------------------------------------------------------------
# complex


def test_complex_basic(capsys):
    code, out = run(capsys, ["complex", "--particles", "2", "--leaves", "3"])
    assert code == 0
    assert out.splitlines()[0] == "18 18 1 1"


def test_complex_one_particle_five_leaves(capsys):
    code, out = run(capsys, ["complex", "--particles", "1", "--leaves", "5"])
    assert code == 0
    assert out.splitlines()[0] == "6 5 1 0"


def test_complex_rank_61(capsys):
    code, out = run(capsys, ["complex", "--particles", "3", "--leaves", "4"])
    assert code == 0
    assert out.splitlines()[0].endswith(" 61")


def test_complex_json_export(capsys, tmp_path):
    out_path = tmp_path / "c.json"
    code, _ = run(capsys, ["complex", "--particles", "2", "--leaves", "3",
                           "--export", "json", "--out", str(out_path)])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert len(payload["vertices"]) == 18


def test_complex_dot_export_cap(capsys):
    code, _ = run(capsys, ["complex", "--particles", "4", "--leaves", "3",
                           "--export", "dot"])
    assert code == 1


def test_complex_resource_cap(capsys, monkeypatch):
    monkeypatch.setenv("STARCONFIG_MAX_VERTICES", "10")
    code, _ = run(capsys, ["complex", "--particles", "3", "--leaves", "3"])
    assert code == 1


def test_bad_flags_exit_2():
    with pytest.raises(SystemExit) as err:
        cli.main(["complex", "--particles", "2"])
    assert err.value.code == 2


# ---------------------------------------------------------------------------
# nerve


def test_nerve_torus(capsys):
    code, out = run(capsys, ["nerve", "--rows", "4", "--cols", "3"])
    assert code == 0
    assert out.splitlines() == ["0 1 - Z", "1 2 - Z", "2 1 - Z"]


def test_nerve_mod2_degree(capsys):
    code, out = run(capsys, ["nerve", "--rows", "6", "--cols", "4",
                             "--coeff", "z2", "--degree", "2"])
    assert code == 0
    assert out.strip() == "2 5 - Z/2"


def test_nerve_h2_fourteen(capsys):
    code, out = run(capsys, ["nerve", "--rows", "3", "--cols", "5",
                             "--degree", "2"])
    assert code == 0
    assert out.strip() == "2 14 - Z"


def test_nerve_torsion_display(capsys):
    code, out = run(capsys, ["nerve", "--rows", "5", "--cols", "5",
                             "--degree", "2"])
    assert code == 0
    assert out.strip() == "2 0 3 Z"


def test_nerve_csv_export(capsys, tmp_path):
    out_path = tmp_path / "n.csv"
    code, _ = run(capsys, ["nerve", "--rows", "3", "--cols", "3",
                           "--export", "csv", "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "m,k,degree,betti,torsion,coeff"
    assert lines[2] == "3,3,1,4,,Z"


def test_nerve_bad_coeff_exit_2():
    with pytest.raises(SystemExit) as err:
        cli.main(["nerve", "--rows", "3", "--cols", "3", "--coeff", "q"])
    assert err.value.code == 2


# ---------------------------------------------------------------------------
# spectral surfaces


def test_ss_summary(capsys):
    code, out = run(capsys, ["ss", "--particles", "3", "--leaves", "3"])
    assert code == 0
    got = dict(line.split() for line in out.splitlines())
    assert got["E1_01_rank"] == "9"
    assert got["E2_10_rank"] == "4"
    assert got["E2_01_rank"] == "9"


def test_generation_single(capsys):
    code, out = run(capsys, ["generation", "--leaves", "4", "--particles", "3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["Q"] == 61
    assert payload["cokernel_rank"] == 2


def test_generation_table(capsys, tmp_path):
    out_path = tmp_path / "g.csv"
    code, _ = run(capsys, ["generation", "--leaves", "5", "--max", "3",
                           "--out", str(out_path)])
    assert code == 0
    assert out_path.read_text() == "n_plus_1,k,cokernel_rank\n2,5,11\n3,5,0\n"


def test_presentation_table(capsys):
    code, out = run(capsys, ["presentation", "--leaves", "3", "--max", "5"])
    assert code == 0
    assert out.splitlines()[0] == "n_plus_1,k,beta2,torsion"
    assert out.splitlines()[-1] == "5,3,14,"


# ---------------------------------------------------------------------------
# fio


def test_fio_count(capsys):
    code, out = run(capsys, ["fio", "count", "--source", "1", "--target", "2",
                             "--colors", "3"])
    assert code == 0
    assert "morphisms 6" in out
    assert "free_module_dimension 6" in out


def test_fio_enumerate(capsys):
    code, out = run(capsys, ["fio", "enumerate", "--source", "0",
                             "--target", "1", "--colors", "2"])
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["complement"] == [{"color": 1, "elem": 1, "rank": 1}]


def test_fio_compose_and_decompose(capsys, tmp_path):
    inner = elementary_insertion(1, 2, 3)
    outer = elementary_insertion(2, 1, 3)
    inner_path = tmp_path / "inner.json"
    outer_path = tmp_path / "outer.json"
    inner_path.write_text(inner.to_json())
    outer_path.write_text(outer.to_json())
    code, out = run(capsys, ["fio", "compose", "--outer", str(outer_path),
                             "--inner", str(inner_path)])
    assert code == 0
    combined = FioMorphism.from_json(out.strip())
    assert combined.n == 1 and combined.m == 3
    morphism_path = tmp_path / "m.json"
    morphism_path.write_text(combined.to_json())
    code, out = run(capsys, ["fio", "decompose", "--morphism", str(morphism_path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["insertions"] == [1, 2]


# ---------------------------------------------------------------------------
# verify-paper


def fake_claims(ok=True):
    return [
        verify.Claim("T1.always-passes", "self-test pass", "small",
                     lambda ctx: (1, 1)),
        verify.Claim("T2.tampered", "self-test tamper", "small",
                     lambda ctx: (1, 1 if ok else 2)),
    ]


def test_verify_paper_mechanics(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(verify, "claims", lambda: fake_claims(ok=True))
    report_path = tmp_path / "report.json"
    code, out = run(capsys, ["verify-paper", "--budget", "small",
                             "--out", str(report_path)])
    assert code == 0
    assert "all checks passed" in out
    payload = json.loads(report_path.read_text())
    assert payload["schema"] == 1
    assert [r["status"] for r in payload["records"]] == ["pass", "pass"]


def test_verify_paper_tampered_value_fails(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(verify, "claims", lambda: fake_claims(ok=False))
    report_path = tmp_path / "report.json"
    code, out = run(capsys, ["verify-paper", "--budget", "small",
                             "--out", str(report_path)])
    assert code == 1
    payload = json.loads(report_path.read_text())
    statuses = {r["claim_id"]: r["status"] for r in payload["records"]}
    assert statuses == {"T1.always-passes": "pass", "T2.tampered": "fail"}


def test_verify_paper_reports_are_deterministic(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(verify, "claims", lambda: fake_claims(ok=True))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, ["verify-paper", "--out", str(a)])
    run(capsys, ["verify-paper", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_verify_budget_filters_claims():
    claim_list = [
        verify.Claim("A.small", "x", "small", lambda ctx: (0, 0)),
        verify.Claim("B.full", "x", "full", lambda ctx: (0, 0)),
    ]
    records = verify.run_suite("small", claim_list)
    assert [r.status for r in records] == ["pass", "skipped"]
    records = verify.run_suite("full", claim_list)
    assert [r.status for r in records] == ["pass", "pass"]


def test_verify_claim_exceptions_become_failures():
    def boom(ctx):
        raise RuntimeError("exploded")
    records = verify.run_suite("small", [verify.Claim("X", "x", "small", boom)])
    assert records[0].status == "fail"
    assert "exploded" in records[0].computed
