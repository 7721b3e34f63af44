import io
import json

import numpy as np
import pytest

from kregular.cli import main
from kregular.corpus import diag_z3c, kaijser_varopoulos, parrott, shift_compression
from kregular.documents import ReportDocument, case_documents, make_document
from kregular.sampling import random_unitary


def run(args):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in args], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
    return path


def test_check_kaijser_varopoulos(tmp_path):
    path = write(tmp_path, "kv.json", case_documents(kaijser_varopoulos())["operator_chain"])
    code, out, _ = run(["check", path])
    assert code == 1
    rep = json.loads(out)
    assert rep["verdict"] is False
    assert rep["dims"] == {"product": 5, "factors": [3, 3, 3], "sum": 9}
    assert rep["tolerances"]["rank_tol"] == 1e-10
    assert any(c.startswith("dimension") for c in rep["citations"])
    again = ReportDocument.from_json(out)
    assert again.to_json() + "\n" == out
    assert again == ReportDocument.from_json(again.to_json())


def test_check_unitary_factors(tmp_path):
    rng = np.random.default_rng(0)
    path = write(tmp_path, "u.json", make_document("operator_chain", [random_unitary(rng, 3) for _ in range(3)]))
    code, out, _ = run(["check", path])
    assert code == 0 and json.loads(out)["verdict"] is True


def test_check_truncated_json(tmp_path):
    path = write(tmp_path, "bad.json", '{"kind": "operator_chain", "factors": [[[1')
    code, out, err = run(["check", path])
    assert code == 2 and out == "" and "line 1" in err


def test_check_wrong_kind_and_missing_file(tmp_path):
    path = write(tmp_path, "c.json", make_document("contraction", np.zeros((1, 1))))
    assert run(["check", path])[0] == 2
    assert run(["check", tmp_path / "missing.json"])[0] == 2


def test_tolerance_flags_are_recorded(tmp_path):
    path = write(tmp_path, "kv.json", case_documents(kaijser_varopoulos())["operator_chain"])
    _, out, _ = run(["check", path, "--tol-rank", "1e-9", "--tol-unitary", "1e-7"])
    tol = json.loads(out)["tolerances"]
    assert tol["rank_tol"] == 1e-9 and tol["unitary_tol"] == 1e-7


def test_symmetric_parrott(tmp_path):
    path = write(tmp_path, "p.json", case_documents(parrott())["commuting_tuple"])
    code, out, _ = run(["symmetric", path])
    assert code == 1
    rep = json.loads(out)
    assert len(rep["details"]["per_permutation"]) == 6


def test_symmetric_commuting_unitaries(tmp_path):
    U = random_unitary(np.random.default_rng(1), 4)
    path = write(tmp_path, "u.json", make_document("commuting_tuple", [U, U @ U, U.conj().T]))
    code, out, _ = run(["symmetric", path])
    assert code == 0 and json.loads(out)["details"]["shortcut_used"]


def test_symmetric_nine_tuple_no_shortcut(tmp_path):
    path = write(tmp_path, "n.json", make_document("commuting_tuple", [np.diag([0.5, 0.0])] * 9))
    code, _, err = run(["symmetric", path, "--no-shortcut"])
    assert code == 2 and "max-k" in err


def test_charfn_values(tmp_path):
    path = write(tmp_path, "z.json", make_document("contraction", np.zeros((1, 1))))
    code, out, _ = run(["charfn", path, "--z", "0.5,0"])
    assert code == 0
    value = json.loads(out)["details"]["values"][0]["value"]["data"][0][0]
    assert value == pytest.approx([0.5, 0.0])


def test_charfn_grid_near_boundary(tmp_path):
    path = write(tmp_path, "l.json", make_document("contraction", np.array([[0.3]])))
    code, out, _ = run(["charfn", path, "--grid", 8, "--csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "index,z_re,z_im,row,col,re,im"
    assert len(lines) == 9
    for line in lines[1:]:
        re, im = map(float, line.split(",")[-2:])
        assert abs(complex(re, im)) == pytest.approx(1.0, abs=1e-6)


def test_charfn_outside_disk_and_unitary(tmp_path):
    path = write(tmp_path, "z.json", make_document("contraction", np.zeros((1, 1))))
    assert run(["charfn", path, "--z", "1,0"])[0] == 2
    U = random_unitary(np.random.default_rng(2), 2)
    path = write(tmp_path, "u.json", make_document("contraction", U))
    code, out, _ = run(["charfn", path, "--z", "0.1,0.1"])
    rep = json.loads(out)
    assert code == 0 and rep["details"]["notes"] == ["trivial defect spaces"]
    assert rep["details"]["values"][0]["value"]["shape"] == [0, 0]
    code, out, _ = run(["charfn", path, "--grid", 2, "--csv"])
    assert out.strip().splitlines() == ["index,z_re,z_im,row,col,re,im"]


def test_corpus_command():
    code, out, _ = run(["corpus", "--all"])
    rep = json.loads(out)
    assert code == 0 and all(rep["criteria"].values()) and len(rep["criteria"]) == 5
    code, out, _ = run(["corpus", "--case", "crabb_davie"])
    rows = {r["check"]: r for r in json.loads(out)["details"]["rows"]}
    assert code == 0 and rows["dim_product"]["computed"] == 7 and rows["factor_dims"]["computed"] == [3, 3, 3]
    assert run(["corpus", "--case", "unknown"])[0] == 2
    code, out, _ = run(["corpus", "--case", "parrott", "--format", "table"])
    assert code == 0 and "FAIL" not in out


def test_boundary_command(tmp_path):
    path = write(tmp_path, "d.json", case_documents(diag_z3c(0.5))["analytic_chain"])
    code, out, _ = run(["boundary", path, "--samples", 64])
    rep = json.loads(out)
    assert code == 0 and rep["label"] == "SAMPLED" and rep["verdict"] is True
    assert run(["boundary", path, "--samples", 0])[0] == 2
    zero = write(tmp_path, "z.json", make_document("analytic_chain", [[np.zeros((1, 1))], [np.zeros((1, 1))]]))
    code, out, _ = run(["boundary", zero, "--samples", 64])
    assert code == 1 and len(json.loads(out)["details"]["failures"]) == 64
    big = write(tmp_path, "b.json", make_document("analytic_chain", [[[[0.6]], [[0.6]]], [np.eye(1)]]))
    code, _, err = run(["boundary", big, "--samples", 8])
    assert code == 2 and "t=0" in err


def test_boundary_shift_chain(tmp_path):
    path = write(tmp_path, "s.json", case_documents(shift_compression(4))["analytic_chain"])
    assert run(["boundary", path, "--samples", 32])[0] == 0


def test_exit_code_agrees_with_printed_verdict(tmp_path):
    docs = [case_documents(kaijser_varopoulos())["operator_chain"],
            make_document("operator_chain", [random_unitary(np.random.default_rng(3), 2)] * 2)]
    for i, doc in enumerate(docs):
        code, out, _ = run(["check", write(tmp_path, f"{i}.json", doc)])
        rep = json.loads(out)
        expected = 3 if not rep["consistent"] else (0 if rep["verdict"] else 1)
        assert code == expected


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "kregular", "corpus", "--case", "kaijser_varopoulos"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tool"] == "kregular"
