"""Command-line front end.

Every command reads one JSON document, runs the engine and prints a report.
Exit status: 0 when every check passes, 1 on a failed check or engine error,
2 on usage, schema or budget errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .actions import ModuleAlgebra, crossed_product, trivial_module
from .equivariant import (DEFAULT_BUDGET, build_equivariant, build_nonequivariant,
                          invariant_subalgebra, rho_star)
from .errors import EngineError, SchemaError, SizeBudgetExceeded
from .fixtures import FIXTURES, fixtures_emit
from .homogeneous import (SubgroupDatum, build_homogeneous, decompose_equivariant, decompose_module,
                          enumerate_modules, invariant_idempotents, irreducible_right_modules,
                          regular_a_module, verify_subgroup)
from .hopf import Algebra, Hopf, wedderburn_blocks
from .index import (FredholmModule, index_theorem_check, ind_f, modular_element, q_ind_check,
                    verify_fredholm)
from .ktheory import (BMatrix, check_idempotent, julg_forward, k0_semisimple, multiplicities,
                      pair_even, pair_twisted)
from .linalg import Field
from .report import Report
from .serialize import dumps, load

THEORIES = ("hochschild", "cyclic", "lambda", "periodic", "all")


@dataclass
class JobConfig:
    command: str
    inputs: list
    max_degree: int = 3
    theory: str = "all"
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    fmt: str = "json"
    omega: str | None = None
    rho: str | None = None
    timings: bool = False
    max_dim: int = 0
    out: str = "fixtures"


@dataclass
class RunReport:
    command: list
    results: dict = dc_field(default_factory=dict)
    reports: list = dc_field(default_factory=list)
    timings: dict = dc_field(default_factory=dict)
    error: dict | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(r.ok for r in self.reports)

    def to_json(self, with_timings: bool) -> dict:
        out = {"command": self.command, "engine_version": __version__, "results": self.results,
               "checks": [r.to_json() for r in self.reports], "pass": self.passed}
        if self.error is not None:
            out["error"] = self.error
        if with_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


class _Timer:
    def __init__(self, report: RunReport, name: str):
        self.report, self.name = report, name

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.name] = time.perf_counter() - self.start
        return False


# --------------------------------------------------------------------------
# element parsing
# --------------------------------------------------------------------------

def parse_element(text: str, h: Hopf) -> dict:
    """``1`` or ``unit`` for the unit, ``e<i>`` for a basis vector, else comma-separated coordinates."""
    f = h.field
    t = text.strip()
    if t in ("1", "unit") and h.dim > 1:
        return dict(h.alg.unit)
    if t.startswith("e") and t[1:].isdigit():
        i = int(t[1:])
        if i >= h.dim:
            raise SchemaError("element %r: basis index out of range (dim %d)" % (text, h.dim))
        return {i: f.one}
    parts = [p for p in t.split(",") if p.strip()]
    if len(parts) != h.dim:
        raise SchemaError("element %r: expected %d coordinates" % (text, h.dim))
    try:
        coords = [f(p.strip()) for p in parts]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError("element %r: %s" % (text, exc)) from None
    return {i: c for i, c in enumerate(coords) if c}


def _vec_json(v: dict, f: Field) -> dict:
    return {str(k): f.to_json(x) for k, x in sorted(v.items())}


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _object_for(doc, cfg: JobConfig):
    if isinstance(doc, ModuleAlgebra):
        return build_equivariant(doc, cfg.max_degree, cfg.budget)
    if isinstance(doc, Algebra):
        return build_nonequivariant(doc, cfg.max_degree, cfg.budget)
    raise SchemaError("expected an algebra or module-algebra document, got %s" % type(doc).__name__)


def cmd_verify(doc, cfg: JobConfig, out: RunReport) -> None:
    if isinstance(doc, Hopf):
        out.reports.append(doc.alg.verify())
        out.reports.append(doc.verify())
        out.results["dim"] = doc.dim
        out.results["involutive"] = doc.is_involutive()
    elif isinstance(doc, Algebra):
        out.reports.append(doc.verify())
        obj = build_nonequivariant(doc, cfg.max_degree, cfg.budget)
        out.reports.append(obj.verify())
    elif isinstance(doc, ModuleAlgebra):
        out.reports.append(doc.hopf.verify())
        out.reports.append(doc.verify())
        obj = build_equivariant(doc, cfg.max_degree, cfg.budget)
        out.reports.append(obj.check_preserved())
        out.reports.append(obj.verify())
        out.results["dims"] = [obj.dim(n) for n in range(cfg.max_degree + 1)]
    elif isinstance(doc, SubgroupDatum):
        out.reports.append(doc.a.verify())
        out.reports.append(doc.a0.verify())
        out.reports.append(verify_subgroup(doc))
    elif isinstance(doc, FredholmModule):
        if doc.coaction is not None:
            out.reports.append(doc.coaction.verify())
        out.reports.append(verify_fredholm(doc))
    else:
        raise SchemaError("cannot verify %s" % type(doc).__name__)


def cmd_cohomology(doc, cfg: JobConfig, out: RunReport) -> None:
    obj = _object_for(doc, cfg)
    n = cfg.max_degree
    f = obj.field
    theories = ("hochschild", "cyclic", "lambda", "periodic") if cfg.theory == "all" else (cfg.theory,)
    res: dict = {"max_degree": n, "cochain_dims": [obj.dim(k) for k in range(n + 1)]}
    for th in theories:
        if th == "hochschild":
            res["hochschild"] = [obj.hochschild(k).to_json(f) for k in range(n)]
        elif th == "cyclic":
            res["cyclic"] = [obj.cyclic(k).to_json(f) for k in range(max(n - 1, 0))]
        elif th == "lambda":
            res["lambda"] = [obj.lambda_cohomology(k).to_json(f) for k in range(n)]
        elif th == "periodic":
            per = {}
            for parity in (0, 1):
                try:
                    per["even" if parity == 0 else "odd"] = obj.periodic(parity).to_json(f)
                except EngineError as exc:
                    per["even" if parity == 0 else "odd"] = {"error": exc.code, "detail": exc.detail}
            res["periodic"] = per
    if "cyclic" in res and "lambda" in res:
        bad = [k for k, c in enumerate(res["cyclic"]) if c["dim"] != res["lambda"][k]["dim"]]
        rep = Report("cyclic-vs-lambda")
        rep.add("dim HC^n = dim H_lambda^n in trusted degrees", [(k,) for k in bad])
        out.reports.append(rep)
    out.results.update(res)


def _even_cocycles(obj, level: int) -> list:
    return obj.lambda_cohomology(level).representatives


def cmd_pair(doc, cfg: JobConfig, out: RunReport) -> None:
    if not isinstance(doc, ModuleAlgebra):
        raise SchemaError("pair expects a module-algebra document")
    obj = build_equivariant(doc, cfg.max_degree, cfg.budget)
    h, f = doc.hopf, doc.field
    x = trivial_module(h, 1)
    idem = check_idempotent(x, BMatrix.identity(doc, 1))
    omega = parse_element(cfg.omega, h) if cfg.omega else None
    rho = parse_element(cfg.rho, h) if cfg.rho else None
    twisted = rho_star(obj, rho, cfg.max_degree) if rho is not None else None
    rows = []
    square = Report("twisted-square")
    for level in range(0, cfg.max_degree, 2):
        for i, rep_vec in enumerate(_even_cocycles(obj, level)):
            val = pair_even(obj, level, rep_vec, idem)
            row = {"degree": level, "class": i, "p": "1", "values": val.to_json()}
            if omega is not None:
                row["at_omega"] = f.to_json(val(omega))
            if twisted is not None:
                tgt, maps = twisted
                g = maps[level].apply_sparse(rep_vec)
                tw = pair_twisted(tgt, level, g, idem, rho, h)
                row["twisted"] = f.to_json(tw)
                if tw != val(rho):
                    square.add("degree %d class %d" % (level, i), [(level, i)])
            rows.append(row)
    if twisted is not None:
        square.add("<rho_* f, p>_rho = <f, p>(rho) on all classes", [])
        out.reports.append(square)
    out.results["pairings"] = rows


def cmd_ktheory(doc, cfg: JobConfig, out: RunReport) -> None:
    if not isinstance(doc, ModuleAlgebra):
        raise SchemaError("ktheory expects a module-algebra document")
    cp = crossed_product(doc)
    out.reports.append(cp.verify())
    k0 = k0_semisimple(cp, cfg.seed)
    out.results["k0_crossed_product"] = k0.to_json(doc.field)
    blocks = wedderburn_blocks(cp.alg, seed=cfg.seed)
    classes = []
    for xi, x in enumerate(irreducible_right_modules(doc.hopf, cfg.seed)):
        for counts, p in invariant_idempotents(x, doc, cfg.seed):
            idem = check_idempotent(x, p)
            pres = julg_forward(x, idem, cp)
            classes.append({"module": xi, "dim_x": x.dim, "idempotent": list(counts),
                            "julg_generators": pres.k,
                            "multiplicities": multiplicities(pres.module, blocks)})
    out.results["invariant_idempotents"] = classes
    reached = {tuple(c["multiplicities"]) for c in classes}
    unit_vectors = {tuple(int(i == j) for i in range(k0.rank)) for j in range(k0.rank)}
    rep = Report("julg")
    rep.add("every simple crossed-product module is reached", sorted(unit_vectors - reached))
    out.reports.append(rep)


def cmd_index(doc, cfg: JobConfig, out: RunReport) -> None:
    if not isinstance(doc, FredholmModule):
        raise SchemaError("index expects a fredholm-module document")
    f = doc.field
    out.reports.append(verify_fredholm(doc))
    hhat = doc.hopf
    inv = invariant_subalgebra(doc.b)
    prims = [bl_p for bl in wedderburn_blocks(inv.alg, seed=cfg.seed).blocks for bl_p in bl.primitives]
    candidates = [("1", dict(doc.b.alg.unit))]
    for i, e in enumerate(prims):
        p = inv.incl.apply_sparse(e)
        if all(p != q for _, q in candidates):
            candidates.append(("e%d" % i, p))
    rho = parse_element(cfg.rho, hhat) if cfg.rho else modular_element(hhat, cfg.seed)
    omega = parse_element(cfg.omega, hhat) if cfg.omega else None
    central = [bl.idempotent for bl in wedderburn_blocks(hhat.alg, seed=cfg.seed).blocks]
    table = []
    for name, p in candidates:
        ch = ind_f(doc, p)
        row = {"p": name, "p_coords": _vec_json(p, f), "character": ch.to_json(),
               "at_unit": f.to_json(ch(dict(hhat.alg.unit))), "at_rho": f.to_json(ch(rho)),
               "at_central_blocks": [f.to_json(ch(e)) for e in central]}
        if omega is not None:
            row["at_omega"] = f.to_json(ch(omega))
        table.append(row)
        for n in range(max(1, min(2, cfg.max_degree))):
            out.reports.append(index_theorem_check(doc, p, n))
        out.reports.append(q_ind_check(doc, p, rho, 0))
    out.results["rho"] = _vec_json(rho, f)
    out.results["index"] = table


def cmd_homogeneous(doc, cfg: JobConfig, out: RunReport) -> None:
    if not isinstance(doc, SubgroupDatum):
        raise SchemaError("homogeneous expects a subgroup-datum document")
    out.reports.append(verify_subgroup(doc))
    hs = build_homogeneous(doc, cfg.seed)
    out.reports.append(hs.q.verify())
    for sm in hs.spectral:
        out.reports.append(sm.report)
    out.results["dim_B"] = hs.q.dim
    out.results["crossed_product_blocks"] = hs.blocks.sizes
    out.results["classes"] = [{"label": sm.t.label, "dim_H": sm.t.dim, "trivial": sm.t.trivial,
                               "dim_X": sm.X.ncols, "dim_A_t": sm.A_t.ncols,
                               "block": hs.labels[sm.t.label], "generators": len(sm.generators)}
                              for sm in hs.spectral]
    out.results["regular"] = decompose_module(hs, regular_a_module(hs), cfg.seed).to_json()
    if cfg.max_dim:
        seen = {}
        for (combo, counts), x, p in enumerate_modules(hs, cfg.max_dim, cfg.seed):
            d = decompose_equivariant(hs, x, p, cfg.seed)
            key = tuple(d.multiplicities[t] for t in sorted(d.multiplicities))
            seen[key] = seen.get(key, 0) + 1
        out.results["enumeration"] = {"max_dim": cfg.max_dim,
                                      "multiplicity_vectors": [list(k) for k in sorted(seen)],
                                      "modules": sum(seen.values())}


COMMANDS = {"verify": cmd_verify, "cohomology": cmd_cohomology, "pair": cmd_pair,
            "ktheory": cmd_ktheory, "index": cmd_index, "homogeneous": cmd_homogeneous}


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hopfcyc", description="Exact equivariant cyclic cohomology, "
                                 "K-theory and index computations for finite Hopf actions.")
    ap.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--max-degree", type=int, default=3, help="top cochain level N_max (default 3)")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="largest ambient cochain dimension per level")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--timings", action="store_true", help="include wall-clock timings")

    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input")
        common(p)
        if name == "cohomology":
            p.add_argument("--theory", choices=THEORIES, default="all")
        if name in ("pair", "index"):
            p.add_argument("--omega", help="element of H: 1, e<i>, or comma-separated coordinates")
            p.add_argument("--rho", help="group-like element, same syntax as --omega")
        if name == "homogeneous":
            p.add_argument("--max-dim", type=int, default=0,
                           help="also decompose every equivariant module of dimension <= this")
    p = sub.add_parser("fixtures")
    p.add_argument("names", nargs="*", help="fixture names (default: all)")
    p.add_argument("--out", default="fixtures")
    p.add_argument("--list", action="store_true")
    p.add_argument("--format", choices=("json", "table"), default="json")
    return ap


def _table(doc: dict) -> str:
    lines = ["command: %s" % " ".join(doc["command"]), "pass: %s" % doc["pass"]]
    if "error" in doc:
        lines.append("error: %s: %s" % (doc["error"]["code"], doc["error"]["detail"]))
    for key, val in doc["results"].items():
        lines.append(_table_entry(key, val))
    for rep in doc["checks"]:
        for c in rep["checks"]:
            lines.append("  [%s] %s: %s" % ("ok" if c["pass"] else "FAIL", rep["title"], c["name"]))
    return "\n".join(lines) + "\n"


def _table_entry(key, val) -> str:
    if isinstance(val, list) and val and isinstance(val[0], dict) and "dim" in val[0]:
        return "%s: %s" % (key, " ".join("%d:%d" % (v["degree"], v["dim"]) for v in val))
    if isinstance(val, list) and val and isinstance(val[0], dict):
        rows = ["%s:" % key]
        for v in val:
            rows.append("  " + ", ".join("%s=%s" % (k, _short(x)) for k, x in sorted(v.items())))
        return "\n".join(rows)
    return "%s: %s" % (key, _short(val))


def _short(x) -> str:
    if isinstance(x, list) and x and all(isinstance(s, str) for s in x):
        return "(" + ", ".join(s[:-2] if s.endswith("/1") else s for s in x) + ")" if len(x) > 1 \
            else (x[0][:-2] if x[0].endswith("/1") else x[0])
    if isinstance(x, list):
        return "[" + ", ".join(_short(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ", ".join("%s: %s" % (k, _short(v)) for k, v in sorted(x.items())) + "}"
    return str(x)


def run(cfg: JobConfig, argv: list) -> tuple:
    """Run one job; returns (report dict, exit code)."""
    out = RunReport(list(argv))
    code = 0
    try:
        with _Timer(out, "load"):
            doc = load(cfg.inputs[0])
        with _Timer(out, cfg.command):
            COMMANDS[cfg.command](doc, cfg, out)
        code = 0 if out.passed else 1
    except (SchemaError, SizeBudgetExceeded) as exc:
        out.error = {"code": exc.code, "detail": exc.detail}
        if isinstance(exc, SizeBudgetExceeded):
            out.error["guidance"] = "lower --max-degree or raise --budget"
        code = 2
    except EngineError as exc:
        out.error = {"code": exc.code, "detail": exc.detail}
        code = 1
    return out.to_json(cfg.timings), code


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if ns.command == "fixtures":
        if ns.list:
            sys.stdout.write(dumps(sorted(FIXTURES)) if ns.format == "json"
                             else "\n".join(sorted(FIXTURES)) + "\n")
            return 0
        try:
            paths = fixtures_emit(ns.names, ns.out)
        except EngineError as exc:
            sys.stderr.write("%s\n" % exc)
            return 2
        sys.stdout.write(dumps({"written": paths}) if ns.format == "json" else "\n".join(paths) + "\n")
        return 0
    if ns.max_degree < 0 or ns.budget <= 0:
        sys.stderr.write("--max-degree must be >= 0 and --budget > 0\n")
        return 2
    cfg = JobConfig(ns.command, [ns.input], ns.max_degree, getattr(ns, "theory", "all"), ns.budget,
                    ns.seed, ns.format, getattr(ns, "omega", None), getattr(ns, "rho", None),
                    ns.timings, getattr(ns, "max_dim", 0))
    doc, code = run(cfg, argv)
    sys.stdout.write(dumps(doc) if cfg.fmt == "json" else _table(doc))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
