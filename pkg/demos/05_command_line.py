# The command line front end reads JSON documents and prints JSON reports.
# This script writes a few documents to a temporary directory and runs the
# tool on them in-process; `python -m kregular ...` does the same from a shell.
import json
import tempfile
from pathlib import Path

from kregular.cli import main
from kregular.corpus import diag_z3c, kaijser_varopoulos
from kregular.documents import case_documents, make_document

tmp = Path(tempfile.mkdtemp())
kv = tmp / "kv.json"
kv.write_text(json.dumps(case_documents(kaijser_varopoulos())["operator_chain"]))
diag = tmp / "diag.json"
diag.write_text(json.dumps(case_documents(diag_z3c(0.5))["analytic_chain"]))
zero = tmp / "zero.json"
zero.write_text(json.dumps(make_document("contraction", [[0.0]])))

print("$ kregular check kv.json")
print("exit code", main(["check", str(kv)]))
print("\n$ kregular boundary diag.json --samples 64")
print("exit code", main(["boundary", str(diag), "--samples", "64"]))
print("\n$ kregular charfn zero.json --grid 4 --csv")
print("exit code", main(["charfn", str(zero), "--grid", "4", "--csv"]))
