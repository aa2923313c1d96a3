"""Command line tests: every subcommand and every exit code, run in process."""

from fractions import Fraction
from pathlib import Path

import pytest

import liepres
from liepres.cli import main
from liepres.table import StructureTable
from liepres.tabledoc import load_table, save_table

FIXTURES = Path(liepres.__file__).parent / "fixtures"
G2 = str(FIXTURES / "g2.lp")
SL2 = str(FIXTURES / "sl2.lp")
HEIS = str(FIXTURES / "heisenberg.lp")
MUTANT = str(FIXTURES / "g2_mutated.lp")
GOLDEN = str(FIXTURES / "g2_table.json")


@pytest.fixture()
def run(capsys):
    def go(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return go


def test_derive_both_agrees_and_writes_golden_bytes(run, tmp_path):
    out = tmp_path / "t.json"
    code, stdout, stderr = run("derive", G2, "--out", str(out))
    assert code == 0, stderr
    assert "engine: both" in stdout
    assert "dim = 14" in stdout
    assert "stabilized: yes" in stdout
    assert "engines agree on all 91 bracket pairs" in stdout
    assert f"wrote {out}" in stdout
    assert out.read_bytes() == Path(GOLDEN).read_bytes()


def test_derive_closure_engine_matches_golden(run, tmp_path):
    out = tmp_path / "t.json"
    code, stdout, _ = run("derive", G2, "--engine", "closure", "--out", str(out))
    assert code == 0
    assert "engine: closure" in stdout
    assert "degree 4: 18 Lyndon words, 0 independent in the quotient" in stdout
    assert out.read_bytes() == Path(GOLDEN).read_bytes()


def test_derive_rewriter_engine_matches_golden(run, tmp_path):
    out = tmp_path / "t.json"
    code, stdout, _ = run("derive", G2, "--engine", "rewriter", "--out", str(out))
    assert code == 0
    assert "engine: rewriter" in stdout
    assert "stabilization: not applicable" in stdout
    assert out.read_bytes() == Path(GOLDEN).read_bytes()


def test_derive_sl2_skips_rewriter(run):
    code, stdout, _ = run("derive", SL2, "--max-degree", "4")
    assert code == 0
    assert "dim = 3" in stdout
    assert "rewriter engine skipped:" in stdout


def test_derive_mutant_fails_to_stabilize(run):
    code, stdout, stderr = run("derive", MUTANT, "--max-degree", "6")
    assert code == 4
    assert "not stabilized" in stderr
    assert "stabilized: no" in stdout


def test_derive_rewriter_rejected_off_domain(run):
    code, _, stderr = run("derive", SL2, "--engine", "rewriter")
    assert code == 2
    assert "3 generators" in stderr
    code, _, stderr = run("derive", MUTANT, "--engine", "rewriter")
    assert code == 2
    assert "standard quadruple" in stderr


def test_derive_parse_error_reports_line(run, tmp_path):
    bad = tmp_path / "bad.lp"
    bad.write_text("generators: a b\nrelation: [a,b = 0\n")
    code, _, stderr = run("derive", str(bad))
    assert code == 2
    assert "line 2" in stderr


def test_derive_missing_file(run, tmp_path):
    code, _, stderr = run("derive", str(tmp_path / "nope.lp"))
    assert code == 2
    assert "cannot read" in stderr


def test_derive_bound_below_relation_degree(run):
    code, _, stderr = run("derive", G2, "--max-degree", "2")
    assert code == 2
    assert "error:" in stderr


def test_derive_bad_flag_values(run):
    code, _, stderr = run("derive", G2, "--jobs", "0")
    assert code == 2
    assert "at least 1" in stderr
    code, _, stderr = run("derive", G2, "--max-degree", "x")
    assert code == 2


def test_derive_jobs_do_not_change_bytes(run, tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    code1, out1, _ = run("derive", G2, "--jobs", "1", "--out", str(p1))
    code2, out2, _ = run("derive", G2, "--jobs", "3", "--out", str(p2))
    assert code1 == code2 == 0
    assert p1.read_bytes() == p2.read_bytes()
    assert out1.replace(str(p1), "") == out2.replace(str(p2), "")


def test_verify_agreement(run):
    code, stdout, _ = run("verify", "--table", GOLDEN, "--golden", GOLDEN)
    assert code == 0
    assert "tables agree on all 91 bracket pairs" in stdout


def test_verify_reports_differing_pair(run, tmp_path):
    golden = load_table(GOLDEN)
    c = dict(golden.c)
    x1, y1, h1 = golden.index_of("x1"), golden.index_of("y1"), golden.index_of("h1")
    assert c[(x1, y1, h1)] == 2
    c[(x1, y1, h1)] = Fraction(1)
    p = tmp_path / "mut.json"
    save_table(StructureTable(golden.names, c), str(p))
    code, stdout, _ = run("verify", "--table", str(p), "--golden", GOLDEN)
    assert code == 1
    assert "tables differ on 1 bracket pairs:" in stdout
    assert "  [x1,y1]: table has h1 + h2, golden has 2*h1 + h2" in stdout


def test_verify_name_mismatch(run, tmp_path):
    golden = load_table(GOLDEN)
    names = list(golden.names)
    names[0] = "z1"
    p = tmp_path / "renamed.json"
    save_table(StructureTable(names, dict(golden.c)), str(p))
    code, stdout, _ = run("verify", "--table", str(p), "--golden", GOLDEN)
    assert code == 1
    assert "basis names do not match" in stdout


def test_verify_schema_error(run, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"schema_version": "99", "dim": 0, "names": [], "brackets": []}')
    code, _, stderr = run("verify", "--table", str(p), "--golden", GOLDEN)
    assert code == 2
    assert "schema_version" in stderr


def test_classify_g2(run):
    code, stdout, _ = run("classify", "--table", GOLDEN)
    assert code == 0
    assert "jacobi: ok (364 triples)" in stdout
    assert "derived dim: 14" in stdout
    assert "center dim: 0" in stdout
    assert "killing determinant: 9618527719784448 (nonzero)" in stdout
    assert "cartan: h1 h2" in stdout
    assert "roots: 12 (multiplicities: 1)" in stdout
    assert "cartan matrix: [[2, -1], [-3, 2]]" in stdout
    assert "type: G2" in stdout


def test_classify_sl2(run, tmp_path):
    p = tmp_path / "sl2.json"
    assert run("derive", SL2, "--max-degree", "4", "--out", str(p))[0] == 0
    code, stdout, _ = run("classify", "--table", str(p))
    assert code == 0
    assert "killing determinant: -128 (nonzero)" in stdout
    assert "cartan matrix: [[2]]" in stdout
    assert "type: A1" in stdout


def test_classify_nilpotent(run, tmp_path):
    p = tmp_path / "heis.json"
    assert run("derive", HEIS, "--max-degree", "5", "--out", str(p))[0] == 0
    code, stdout, _ = run("classify", "--table", str(p))
    assert code == 1
    assert "killing determinant: 0 (zero: degenerate)" in stdout
    assert "type: unrecognized (nilpotent: Killing form degenerate)" in stdout


def test_classify_jacobi_failure(run, tmp_path):
    golden = load_table(GOLDEN)
    c = dict(golden.c)
    h1, a12 = golden.index_of("h1"), golden.index_of("a12")
    c[(h1, a12, a12)] = Fraction(3)
    p = tmp_path / "broken.json"
    save_table(StructureTable(golden.names, c), str(p))
    code, _, stderr = run("classify", "--table", str(p))
    assert code == 5
    assert "jacobi: FAIL at (" in stderr
    assert "of 364 triples" in stderr


def test_export_json_is_fixed_point(run):
    code, stdout, _ = run("export", "--table", GOLDEN, "--format", "json")
    assert code == 0
    assert stdout == Path(GOLDEN).read_text(encoding="utf-8")


def test_export_csv(run):
    code, stdout, _ = run("export", "--table", GOLDEN, "--format", "csv")
    assert code == 0
    lines = stdout.splitlines()
    assert lines[0].startswith("i,j,h1,h2,")
    assert len(lines) == 92


def test_export_latex(run):
    code, stdout, _ = run("export", "--table", GOLDEN, "--format", "latex")
    assert code == 0
    assert "$2y_3$" in stdout
    assert stdout.startswith("\\begin{tabular}")


def test_export_empty_table(run, tmp_path):
    p = tmp_path / "empty.json"
    p.write_text('{"schema_version": "1", "dim": 0, "names": [], "brackets": []}')
    code, _, stderr = run("export", "--table", str(p), "--format", "csv")
    assert code == 2
    assert "empty table" in stderr


def test_export_unknown_format(run):
    code, _, stderr = run("export", "--table", GOLDEN, "--format", "yaml")
    assert code == 2
    assert "invalid choice" in stderr


def test_free_counts(run):
    code, stdout, _ = run("free", "--alphabet", "3", "--max-degree", "3")
    assert code == 0
    assert stdout == "3 3 8, total 14\n"
    code, stdout, _ = run("free", "--alphabet", "3", "--max-degree", "6")
    assert stdout == "3 3 8 18 48 116, total 196\n"
    code, stdout, _ = run("free", "--alphabet", "2", "--max-degree", "4")
    assert stdout == "2 1 2 3, total 8\n"


def test_no_command_is_usage_error(run):
    code, _, _ = run()
    assert code == 2
