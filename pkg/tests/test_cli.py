import io
import json

import numpy as np
import pytest

from unibraid.braidgen import rhat
from unibraid.cli import MatrixDocument, main, run_verify


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_gen_rhat_document():
    code, text = run("gen", "--n", "1", "--class", "KJ", "--z", "1")
    assert code == 0
    doc = MatrixDocument.loads(text)
    assert doc.rows == doc.cols == 4
    assert np.array_equal(doc.matrix, rhat(1))
    assert doc.meta["class"] == "KJ"


def test_document_round_trip_is_bit_exact():
    rng = np.random.default_rng(0)
    m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    doc = MatrixDocument(m, {"family": "random"})
    again = MatrixDocument.loads(doc.dumps())
    assert np.array_equal(again.matrix, m)
    assert again.dumps() == doc.dumps()


def test_malformed_document():
    with pytest.raises(ValueError, match="malformed"):
        MatrixDocument.loads('{"rows": 2, "cols": 2, "data": [[1, 0]]}')


@pytest.mark.parametrize("family", ["rhat", "P+", "P-", "M", "Minv", "V", "diag", "odd", "phased"])
def test_gen_check_round_trip(family):
    code, text = run("gen", "--family", family, "--n", "2", "--z", "0.3", "--check")
    assert code == 0
    assert "round-trip\tidentical" in text


def test_gen_output_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run("gen", "--n", "2", "--z", "0.4", "-o", str(a))
    run("gen", "--n", "2", "--z", "0.4", "-o", str(b))
    assert a.read_text() == b.read_text()
    code, text = run("check", str(a))
    assert code == 0 and text.startswith("check\t")


def test_check_fails_for_non_braid(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(MatrixDocument(np.diag([1.0, 1.0, 1.0, 2.0]), {"family": "rhat", "z": "1"}).dumps())
    code, _ = run("check", str(path))
    assert code == 1


def test_verify_small_sweep():
    code, text = run("verify", "--max-n", "2", "--grid", "3", "--draws", "1", "--jobs", "2")
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0].startswith("check\t") and all(line.endswith("pass") for line in lines[1:])


def test_verify_is_deterministic_across_jobs():
    a = [r.row() for r in run_verify(1, 3, 5, 2, 1, 1e-12)]
    b = [r.row() for r in run_verify(1, 3, 5, 2, 3, 1e-12)]
    assert a == b


def test_verify_tolerance_env(monkeypatch):
    monkeypatch.setenv("UNIBRAID_TOL", "1e-30")
    code, _ = run("verify", "--max-n", "1", "--grid", "2", "--draws", "0")
    assert code == 1


def test_invariant_usage_error():
    code, _ = run("invariant", "--n", "1", "--d", "1", "--strands", "2", "--word", "1,2")
    assert code == 2


def test_invariant_value():
    code, text = run("invariant", "--n", "1", "--d", "1", "--strands", "2", "--word", "1")
    assert code == 0
    report = json.loads(text)
    assert report["value"][0] == pytest.approx(2.0)
    assert report["unknot_trace_F"] == pytest.approx(2 * report["unknot_b_over_sqrt2"])


def test_usage_errors():
    assert run("frobnicate")[0] == 2
    assert run("gen", "--bogus")[0] == 2
    assert run("gen", "--z", "3")[0] == 2


def test_tower_command():
    code, text = run("tower", "--n", "2", "--z", "0.9", "--order", "6", "--kind", "T")
    assert code == 0 and text.count("pass") == 7


def test_hamiltonian_command():
    code, text = run("hamiltonian", "--n", "2", "--sites", "2")
    assert code == 0
    assert MatrixDocument.loads(text).meta["formula_residual"] == "0.0"


def test_potential_command():
    code, text = run("potential", "--n", "2", "--z", "0.5", "--mu", "0.3+0.2i")
    assert code == 0
    assert float(MatrixDocument.loads(text).meta["closed_form_residual"]) < 1e-10
    assert run("potential", "--n", "1", "--z", "0", "--mu", "1")[0] == 1


def test_entangle_command():
    code, text = run("entangle", "--n", "1", "--z", "1", "--c", "1", "--cp", "2")
    assert code == 0
    assert json.loads(text)["schmidt"]["entropy_bits"] == pytest.approx(1.0)
    code, text = run("entangle", "--odd", "--theta", "0.3")
    assert code == 0 and json.loads(text)[4]["output"][0]["ket"] == "00"
    assert run("entangle", "--n", "2", "--bell", "0,1,-1")[0] == 0
    assert run("entangle", "--n", "2", "--bell", "2,0,1")[0] == 2


def test_gauge_command():
    code, text = run("gauge", "--phi", "1.2")
    assert code == 0
    doc = MatrixDocument.loads(text)
    assert np.allclose(doc.matrix, rhat(1, 1.0, "LK"), atol=1e-13)
