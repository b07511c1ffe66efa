"""JSON documents for presentations, module algebras, subgroup data and Fredholm modules.

Every document is a single JSON object with a ``"kind"`` key.  Scalars are
arrays of ``"num/den"`` strings (one per power-basis coordinate) and matrices
are row-major nested arrays.  ``dumps`` sorts keys and fixes separators so the
output is byte-stable.
"""

from __future__ import annotations

import json
from typing import Any

from .actions import ModuleAlgebra, RightModule
from .errors import SchemaError
from .homogeneous import SubgroupDatum
from .hopf import Algebra, Hopf
from .index import FiniteCoaction, FredholmModule, _block_diag, _graded
from .linalg import QQ, Field, Mat, to_dense, to_sparse

KINDS = ("algebra", "hopf", "module-algebra", "subgroup-datum", "fredholm-module")


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# primitives
# --------------------------------------------------------------------------

def field_to_json(f: Field) -> dict:
    return {"minpoly": ["%d/%d" % (c.numerator, c.denominator) for c in f.minpoly]}


def field_from_json(doc: dict | None) -> Field:
    if doc is None:
        return QQ
    try:
        f = Field(doc["minpoly"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError("field.minpoly: %s" % exc) from None
    return QQ if f == QQ else f


def vector_to_json(v: dict, n: int, f: Field) -> list:
    return [f.to_json(x) for x in to_dense(v, n, f)]


def vector_from_json(data, n: int, f: Field, where: str) -> dict:
    if not isinstance(data, list) or len(data) != n:
        raise SchemaError("%s: expected a list of %d scalars" % (where, n))
    return to_sparse(_scalar(x, f, "%s[%d]" % (where, i)) for i, x in enumerate(data))


def _scalar(x, f: Field, where: str):
    try:
        return f(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError("%s: bad scalar %r (%s)" % (where, x, exc)) from None


def matrix_to_json(m: Mat) -> list:
    f = m.field
    return [[f.to_json(x) for x in row] for row in m.to_lists()]


def matrix_from_json(data, f: Field, where: str, shape: tuple | None = None) -> Mat:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("%s: expected a list of rows" % where)
    nrows = len(data)
    ncols = len(data[0]) if data else (shape[1] if shape else 0)
    if shape is not None and (nrows, ncols) != tuple(shape):
        raise SchemaError("%s: expected shape %s, got %s" % (where, tuple(shape), (nrows, ncols)))
    rows = []
    for i, r in enumerate(data):
        if len(r) != ncols:
            raise SchemaError("%s: row %d has %d entries, expected %d" % (where, i, len(r), ncols))
        rows.append([_scalar(x, f, "%s[%d][%d]" % (where, i, j)) for j, x in enumerate(r)])
    return Mat.from_rows(rows, f, ncols=ncols)


def _get(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise SchemaError("%s: expected an object" % where)
    if key not in doc:
        raise SchemaError("%s: missing key %r" % (where, key))
    return doc[key]


def _dim(doc: dict, where: str) -> int:
    d = _get(doc, "dim", where)
    if not isinstance(d, int) or d < 1:
        raise SchemaError("%s.dim: expected a positive integer" % where)
    return d


# --------------------------------------------------------------------------
# algebras and Hopf algebras
# --------------------------------------------------------------------------

def algebra_to_json(a: Algebra) -> dict:
    f = a.field
    d = a.dim
    mult = [vector_to_json(a.table[i][j], d, f) for i in range(d) for j in range(d)]
    return {"kind": "algebra", "name": a.name, "dim": d, "mult": mult,
            "unit": vector_to_json(a.unit, d, f), "field": field_to_json(f)}


def algebra_from_json(doc: dict, where: str = "algebra") -> Algebra:
    d = _dim(doc, where)
    f = field_from_json(doc.get("field"))
    mult = matrix_from_json(_get(doc, "mult", where), f, where + ".mult", (d * d, d))
    unit = vector_from_json(_get(doc, "unit", where), d, f, where + ".unit")
    rows = mult.T.columns()
    table = [[rows[i * d + j] for j in range(d)] for i in range(d)]
    return Algebra(d, table, unit, f, doc.get("name", ""))


def hopf_to_json(h: Hopf) -> dict:
    f = h.field
    d = h.dim
    doc = algebra_to_json(h.alg)
    doc["kind"] = "hopf"
    doc["name"] = h.name
    doc["comult"] = [vector_to_json({j * d + k: v for (j, k), v in h.comult[i].items()}, d * d, f)
                     for i in range(d)]
    doc["counit"] = [f.to_json(c) for c in h.counit]
    doc["antipode"] = matrix_to_json(h.antipode)
    doc["antipode_inv"] = matrix_to_json(h.antipode_inv)
    return doc


def hopf_from_json(doc: dict, where: str = "hopf") -> Hopf:
    alg = algebra_from_json(doc, where)
    d, f = alg.dim, alg.field
    co_rows = matrix_from_json(_get(doc, "comult", where), f, where + ".comult", (d, d * d))
    comult = [{divmod(k, d): v for k, v in row.items()} for row in co_rows.T.columns()]
    counit_data = _get(doc, "counit", where)
    if not isinstance(counit_data, list) or len(counit_data) != d:
        raise SchemaError("%s.counit: expected %d scalars" % (where, d))
    counit = [_scalar(x, f, "%s.counit[%d]" % (where, i)) for i, x in enumerate(counit_data)]
    s = matrix_from_json(_get(doc, "antipode", where), f, where + ".antipode", (d, d))
    s_inv = None
    if "antipode_inv" in doc:
        s_inv = matrix_from_json(doc["antipode_inv"], f, where + ".antipode_inv", (d, d))
    elif not s.is_invertible():
        raise SchemaError("%s.antipode: not invertible" % where)
    return Hopf(alg, comult, counit, s, s_inv, doc.get("name", ""))


# --------------------------------------------------------------------------
# module algebras
# --------------------------------------------------------------------------

def module_algebra_to_json(b: ModuleAlgebra) -> dict:
    f = b.field
    action = [vector_to_json(b.module.act[i][j], b.dim, f)
              for i in range(b.dim) for j in range(b.hopf.dim)]
    return {"kind": "module-algebra", "name": b.name, "algebra": algebra_to_json(b.alg),
            "hopf": hopf_to_json(b.hopf), "action": action}


def module_algebra_from_json(doc: dict, where: str = "module-algebra") -> ModuleAlgebra:
    alg = algebra_from_json(_get(doc, "algebra", where), where + ".algebra")
    h = hopf_from_json(_get(doc, "hopf", where), where + ".hopf")
    if alg.field != h.field:
        raise SchemaError("%s: algebra and Hopf algebra use different fields" % where)
    d, dh = alg.dim, h.dim
    act = matrix_from_json(_get(doc, "action", where), alg.field, where + ".action", (d * dh, d))
    rows = act.T.columns()
    module = RightModule(h, d, [[rows[i * dh + j] for j in range(dh)] for i in range(d)],
                         doc.get("name", ""))
    return ModuleAlgebra(alg, module, doc.get("name", ""))


# --------------------------------------------------------------------------
# subgroup data
# --------------------------------------------------------------------------

def subgroup_to_json(sd: SubgroupDatum) -> dict:
    return {"kind": "subgroup-datum", "name": sd.name, "A": hopf_to_json(sd.a),
            "A0": hopf_to_json(sd.a0), "P": matrix_to_json(sd.P)}


def subgroup_from_json(doc: dict, where: str = "subgroup-datum") -> SubgroupDatum:
    a = hopf_from_json(_get(doc, "A", where), where + ".A")
    a0 = hopf_from_json(_get(doc, "A0", where), where + ".A0")
    p = matrix_from_json(_get(doc, "P", where), a.field, where + ".P", (a0.dim, a.dim))
    return SubgroupDatum(a, a0, p, doc.get("name", ""))


# --------------------------------------------------------------------------
# Fredholm modules
# --------------------------------------------------------------------------

def _blocks_of(m: Mat, n_minus: int) -> tuple:
    n = m.nrows
    lo = list(range(n_minus))
    hi = list(range(n_minus, n))
    return m.select_rows(lo).select_cols(lo), m.select_rows(hi).select_cols(hi)


def fredholm_to_json(fm: FredholmModule) -> dict:
    if fm.coaction is None:
        raise SchemaError("Fredholm module %r has no coaction to serialize" % fm.name)
    f = fm.field
    n_minus = sum(1 for i in range(fm.dim) if fm.gamma[i, i] == -f.one)
    minus, plus = zip(*(_blocks_of(p, n_minus) for p in fm.pi))
    co = fm.coaction
    return {"kind": "fredholm-module", "name": fm.name,
            "A": hopf_to_json(co.hopf), "B": algebra_to_json(co.alg),
            "alpha": matrix_to_json(co.alpha),
            "n_minus": n_minus, "n_plus": fm.dim - n_minus,
            "pi_minus": [matrix_to_json(m) for m in minus],
            "pi_plus": [matrix_to_json(m) for m in plus],
            "F": matrix_to_json(fm.F),
            "U": [matrix_to_json(m) for m in fm.pi_u]}


def fredholm_from_json(doc: dict, where: str = "fredholm-module") -> FredholmModule:
    a = hopf_from_json(_get(doc, "A", where), where + ".A")
    b_alg = algebra_from_json(_get(doc, "B", where), where + ".B")
    f = a.field
    alpha = matrix_from_json(_get(doc, "alpha", where), f, where + ".alpha",
                             (a.dim * b_alg.dim, b_alg.dim))
    co = FiniteCoaction(a, b_alg, alpha)
    nm, np_ = _get(doc, "n_minus", where), _get(doc, "n_plus", where)
    if not (isinstance(nm, int) and isinstance(np_, int) and nm >= 0 and np_ >= 0):
        raise SchemaError("%s: n_minus and n_plus must be non-negative integers" % where)
    n = nm + np_

    def mats(key, count, shape):
        data = _get(doc, key, where)
        if not isinstance(data, list) or len(data) != count:
            raise SchemaError("%s.%s: expected %d matrices" % (where, key, count))
        return [matrix_from_json(m, f, "%s.%s[%d]" % (where, key, i), shape)
                for i, m in enumerate(data)]
    pm = mats("pi_minus", b_alg.dim, (nm, nm))
    pp = mats("pi_plus", b_alg.dim, (np_, np_))
    pi = [_block_diag(x, y) for x, y in zip(pm, pp)]
    F = matrix_from_json(_get(doc, "F", where), f, where + ".F", (n, n))
    U = mats("U", a.dim, (n, n))
    return FredholmModule(co.module_algebra(), _graded(f, nm, np_), pi, F, U,
                          doc.get("name", ""), co)


# --------------------------------------------------------------------------
# dispatch
# --------------------------------------------------------------------------

_TO = {Algebra: algebra_to_json, Hopf: hopf_to_json, ModuleAlgebra: module_algebra_to_json,
       SubgroupDatum: subgroup_to_json, FredholmModule: fredholm_to_json}
_FROM = {"algebra": algebra_from_json, "hopf": hopf_from_json,
         "module-algebra": module_algebra_from_json, "subgroup-datum": subgroup_from_json,
         "fredholm-module": fredholm_from_json}


def to_document(obj) -> dict:
    for cls, fn in _TO.items():
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError("cannot serialize %r" % type(obj).__name__)


def from_document(doc) -> Any:
    kind = _get(doc, "kind", "document")
    if kind not in _FROM:
        raise SchemaError("document.kind: unknown kind %r (expected one of %s)"
                          % (kind, ", ".join(KINDS)))
    return _FROM[kind](doc)


def load(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("%s: invalid JSON at line %d column %d: %s"
                          % (path, exc.lineno, exc.colno, exc.msg)) from None
    except OSError as exc:
        raise SchemaError("%s: %s" % (path, exc.strerror)) from None
    return from_document(doc)
