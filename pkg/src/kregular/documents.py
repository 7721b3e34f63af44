"""JSON input documents and report documents.

Input (``ChainDocument``), UTF-8 JSON::

    {"kind": "operator_chain",  "factors":   [M_1, ..., M_k]}
    {"kind": "commuting_tuple", "operators": [T_1, ..., T_k]}
    {"kind": "analytic_chain",  "factors":   [[C_0, C_1, ...], ...]}
    {"kind": "contraction",     "matrix":    M}

plus an optional ``"tolerances"`` object overriding fields of
:class:`~kregular.matrix_core.ToleranceProfile` and an optional ``"name"``.
Matrices are row-major nested lists whose entries are ``[re, im]`` pairs
(bare real numbers are accepted too).  Factor lists start with the factor
that acts first; polynomial coefficients start with the constant term.
"""

import json
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Optional

import numpy as np

from .matrix_core import DEFAULT_TOL

__all__ = [
    "KINDS",
    "DocumentError",
    "ChainDocument",
    "ReportDocument",
    "encode_matrix",
    "decode_matrix",
    "encode_shaped",
    "decode_shaped",
    "parse_document",
    "load_document",
    "make_document",
    "case_documents",
]

KINDS = ("operator_chain", "commuting_tuple", "analytic_chain", "contraction")


class DocumentError(ValueError):
    """Malformed input; ``where`` is a JSON path or a ``line:col`` position."""

    def __init__(self, msg, where=None):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def encode_matrix(M):
    return [[encode_complex(x) for x in row] for row in np.asarray(M)]


def encode_shaped(M):
    """Matrix with an explicit shape, safe for zero-sized arrays."""
    M = np.asarray(M)
    return {"shape": list(M.shape), "data": encode_matrix(M)}


def decode_shaped(obj):
    shape = tuple(obj["shape"])
    if 0 in shape:
        return np.zeros(shape, dtype=np.complex128)
    return decode_matrix(obj["data"])


def _decode_entry(x, where):
    if isinstance(x, bool):
        raise DocumentError("expected a number or [re, im] pair, got a boolean", where)
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x):
        return complex(x[0], x[1])
    raise DocumentError(f"expected a number or [re, im] pair, got {json.dumps(x)[:40]}", where)


def decode_matrix(obj, where="$"):
    if not isinstance(obj, list) or not obj:
        raise DocumentError("expected a non-empty list of rows", where)
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise DocumentError("expected a non-empty row", f"{where}[{i}]")
        rows.append([_decode_entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DocumentError(f"row has {len(row)} entries, expected {width}", f"{where}[{i}]")
    A = np.array(rows, dtype=np.complex128)
    if not np.all(np.isfinite(A)):
        raise DocumentError("non-finite entry", where)
    return A


@dataclass
class ChainDocument:
    kind: str
    matrices: list = field(default_factory=list)
    polynomials: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    name: Optional[str] = None

    def tolerance_profile(self, base=DEFAULT_TOL):
        return base.with_overrides(**self.tolerances)


def _list_field(doc, key):
    if key not in doc:
        raise DocumentError(f"missing field {key!r}", "$")
    val = doc[key]
    if not isinstance(val, list) or not val:
        raise DocumentError("expected a non-empty list", f"$.{key}")
    return val


def parse_document(text):
    """Parse a ChainDocument from JSON text; errors carry a position or path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object", "$")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {', '.join(KINDS)}; got {kind!r}", "$.kind")
    tols = doc.get("tolerances", {})
    if not isinstance(tols, dict):
        raise DocumentError("expected an object", "$.tolerances")
    allowed = {f.name for f in fields(DEFAULT_TOL)}
    for key, val in tols.items():
        if key not in allowed:
            raise DocumentError(f"unknown tolerance {key!r}", f"$.tolerances.{key}")
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise DocumentError("expected a number", f"$.tolerances.{key}")
    out = ChainDocument(kind=kind, tolerances=dict(tols), name=doc.get("name"))
    if kind == "operator_chain":
        out.matrices = [decode_matrix(m, f"$.factors[{i}]") for i, m in enumerate(_list_field(doc, "factors"))]
    elif kind == "commuting_tuple":
        out.matrices = [decode_matrix(m, f"$.operators[{i}]") for i, m in enumerate(_list_field(doc, "operators"))]
    elif kind == "contraction":
        if "matrix" not in doc:
            raise DocumentError("missing field 'matrix'", "$")
        out.matrices = [decode_matrix(doc["matrix"], "$.matrix")]
    else:
        for i, poly in enumerate(_list_field(doc, "factors")):
            if not isinstance(poly, list) or not poly:
                raise DocumentError("expected a non-empty list of coefficients", f"$.factors[{i}]")
            out.polynomials.append([decode_matrix(c, f"$.factors[{i}][{j}]") for j, c in enumerate(poly)])
    return out


def load_document(path):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def make_document(kind, objects, name=None, tolerances=None):
    """Serialise matrices (or coefficient lists, for analytic chains) to a document dict."""
    doc = {"kind": kind}
    if name:
        doc["name"] = name
    if kind == "operator_chain":
        doc["factors"] = [encode_matrix(M) for M in objects]
    elif kind == "commuting_tuple":
        doc["operators"] = [encode_matrix(M) for M in objects]
    elif kind == "contraction":
        doc["matrix"] = encode_matrix(objects)
    elif kind == "analytic_chain":
        doc["factors"] = [[encode_matrix(C) for C in poly] for poly in objects]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if tolerances:
        doc["tolerances"] = dict(tolerances)
    return doc


def case_documents(case):
    """Every input document a corpus case can be expressed as, keyed by kind."""
    out = {}
    if case.kind == "commuting_tuple":
        ops = [c.matrix for c in case.obj.operators]
        out["commuting_tuple"] = make_document("commuting_tuple", ops, case.name)
        # identity ordering: T_1 T_2 ... T_k, so T_k acts first
        out["operator_chain"] = make_document("operator_chain", ops[::-1], case.name)
    else:
        polys = [[C for C in f.coeffs] for f in case.obj.factors]
        out["analytic_chain"] = make_document("analytic_chain", polys, case.name)
        if "T" in case.extras:
            out["contraction"] = make_document("contraction", case.extras["T"], case.name)
    return out


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, complex):
        return encode_complex(x)
    return x


@dataclass
class ReportDocument:
    """Machine-readable result of one command.

    ``verdict`` is ``None`` for commands that only evaluate (``charfn``).
    ``citations`` names the criteria that decided the verdict.
    """

    command: str
    kind: str
    verdict: Optional[bool] = None
    label: Optional[str] = None
    consistent: bool = True
    dims: dict = field(default_factory=dict)
    defects: dict = field(default_factory=dict)
    criteria: dict = field(default_factory=dict)
    citations: list = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    tool: str = "kregular"
    version: str = ""

    def __post_init__(self):
        for f in fields(self):
            setattr(self, f.name, _plain(getattr(self, f.name)))
        if not self.version:
            from . import __version__
            self.version = __version__

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_dict(cls, d: Any) -> "ReportDocument":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise DocumentError(f"unknown report fields {sorted(unknown)}")
        return cls(**d)
