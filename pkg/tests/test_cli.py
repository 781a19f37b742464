import json

import pytest

from conjlab import fixtures as F
from conjlab.cli import main
from conjlab.semigroup import format_table


@pytest.fixture
def strict_file(tmp_path):
    p = tmp_path / "strict.txt"
    p.write_text(format_table(F.strict()))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classes_tsv(capsys, strict_file):
    code, out, _ = run(capsys, "classes", "--input", strict_file, "--relation", "n")
    assert code == 0
    rows = [r.split("\t") for r in out.strip().split("\n")]
    assert sum(int(r[1]) for r in rows) == F.strict().order


def test_classes_json(capsys, strict_file):
    code, out, _ = run(capsys, "classes", "--input", strict_file, "--relation", "c", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["relation"].lower() == "c"
    assert sum(c["size"] for c in data["classes"]) == data["order"]


def test_classes_non_equivalence(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text(format_table(F.n_proper()))
    code, _, err = run(capsys, "classes", "--input", str(p), "--relation", "i")
    assert code in (0, 2)
    if code == 2:
        assert "error" in err


def test_decide_and_witness(capsys, tmp_path):
    p = tmp_path / "np.txt"
    p.write_text(format_table(F.n_proper()))
    S = F.n_proper()
    a, b = S.label(2), S.label(3)
    code, out, _ = run(capsys, "decide", a, b, "--input", str(p), "--relation", "p", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["result"] is True and data["witness"]
    code, out, _ = run(capsys, "decide", a, b, "--input", str(p), "--relation", "n", "--format", "json")
    assert json.loads(out)["result"] is False


def test_bad_input_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 1\n1 0 0\n")
    code, _, err = run(capsys, "classes", "--input", str(p), "--relation", "n")
    assert code == 2 and err


def test_unknown_relation_exit_2(capsys, strict_file):
    code, _, _ = run(capsys, "classes", "--input", strict_file, "--relation", "zz")
    assert code == 2


def test_build_bound_exit_3(capsys):
    code, _, err = run(capsys, "build", "--kind", "full", "--n", "6")
    assert code == 3 and "bound" in err


def test_build_and_output_file(capsys, tmp_path):
    out_path = tmp_path / "t2.txt"
    code, _, _ = run(capsys, "build", "--kind", "full", "--n", "2", "--output", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "classes", "--input", str(out_path), "--relation", "n")
    assert code == 0 and len(out.strip().split("\n")) == 3


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "--kind", "brauer", "--n", "2", "--format", "json")
    assert code == 0 and json.loads(out)["order"] == 3


def test_compare(capsys, strict_file):
    code, out, _ = run(capsys, "compare", "--input", strict_file, "--relations", "n,p,c", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["inclusions"]


def test_inn(capsys, tmp_path):
    p = tmp_path / "z2.txt"
    p.write_text(format_table(F.z(2)))
    code, out, _ = run(capsys, "inn", "--input", str(p), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 2 and data["idempotents"] == 2


def test_diagram_normal_form(capsys):
    code, out, _ = run(capsys, "diagram", "--kind", "B", "3; {1,2}{3,1'}{2',3'}")
    assert code == 0
    assert "normal_form\t3; {1,2}{3,3'}{1',2'}" in out


def test_diagram_decide(capsys):
    code, out, _ = run(capsys, "diagram", "--kind", "B", "--relation", "o",
                       "3; {1,1'}{2,2'}{3,3'}", "3; {1,2'}{2,3'}{3,1'}")
    assert code == 0 and out.strip().endswith("false")


def test_diagram_wrong_kind(capsys):
    code, _, _ = run(capsys, "diagram", "--kind", "B", "2; {1}{2}{1'}{2'}")
    assert code == 2


def test_gset(capsys, tmp_path):
    p = tmp_path / "x.gset"
    p.write_text("G=2\norbit stab={}\norbit stab={}\n")
    code, out, _ = run(capsys, "gset", "--input", str(p))
    assert code == 0 and "endomorphisms\t16" in out
    code, out, _ = run(capsys, "gset", "--input", str(p), "(1,0) (0,0)", "(1,1) (0,0)")
    assert code == 0 and out.strip().endswith("false")


def test_polygrowth(capsys):
    code, out, _ = run(capsys, "polygrowth", "--n", "2", "--max", "4", "--relation", "n", "--verify")
    rows = [r.split("\t") for r in out.strip().split("\n")]
    assert code == 0 and rows[3] == ["3", "24", "24"]
    code, _, _ = run(capsys, "polygrowth", "--n", "1")
    assert code == 2


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "idempotents", "--n", "3")
    assert code == 0 and out.startswith("PASS")


def test_verify_bound(capsys):
    code, _, _ = run(capsys, "verify", "polycyclic", "--max", "20")
    assert code == 3


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO(format_table(F.z(3))))
    code, out, _ = run(capsys, "classes", "--input", "-", "--relation", "n")
    assert code == 0 and len(out.strip().split("\n")) == 3


def test_threads_env(capsys, monkeypatch, strict_file):
    monkeypatch.setenv("CONJLAB_THREADS", "nope")
    code, _, _ = run(capsys, "classes", "--input", strict_file, "--relation", "n")
    assert code == 2
