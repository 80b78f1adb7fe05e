"""Command line front end.

    brieskorn reps sigma(2,3,5) [--realize]
    brieskorn knot sigma(2,3,7) [--export-pd] [--mirror]
    brieskorn audit sigma(2,3,7) [--strict]
    brieskorn sweep --max-product 500
    brieskorn cobordism sigma(2,3,5) --claim

Every verb accepts ``--format table|json|csv`` (``--json`` and ``--csv`` are
shortcuts).  Exit codes: 0 success, 1 bad input, 2 theorem violation (or a
strict-form audit finding under ``--strict``), 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import repspace
from .errors import BrieskornError, ResourceLimit, TheoremViolation
from .floer import SCHEMA, compute_bundle, cobordism_report, jones_floer_audit, knot_summary
from .seifert import SeifertData, coprime_triples, parse_sigma, solve_seifert_invariants

__all__ = ["RunConfig", "parse_input", "run", "main", "CSV_COLUMNS"]

CSV_COLUMNS = ["p", "q", "r", "lambda", "sign_k", "r0", "r2", "nu", "mu_bar", "det", "jones_logderiv", "flags"]
VERBS = ("reps", "knot", "audit", "sweep", "cobordism")
FORMATS = ("table", "json", "csv")
WORKERS_ENV = "BRIESKORN_WORKERS"

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class RunConfig:
    verb: str
    target: SeifertData | None = None
    max_product: int | None = None
    fmt: str = "table"
    workers: int = 1
    strict: bool = False
    realize: bool = False
    export_pd: bool = False
    mirror: bool = False
    claim: bool = False
    residual_tol: float = repspace.RELATION_TOL
    rho_tol: float = repspace.RHO_TOL

    def __post_init__(self):
        if self.verb not in VERBS:
            raise ValueError(f"unknown verb {self.verb!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.max_product is not None and self.max_product <= 0:
            raise ValueError("sweep bound must be positive")
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")


def parse_input(text: str):
    """``sigma(...)`` gives SeifertData; ``sweep --max-product N`` gives the triple list."""
    words = text.split()
    if words and words[0] == "sweep":
        p = argparse.ArgumentParser(prog="sweep", add_help=False, exit_on_error=False)
        p.add_argument("--max-product", type=int, required=True)
        try:
            ns = p.parse_args(words[1:])
        except (argparse.ArgumentError, SystemExit) as exc:
            raise SyntaxError(f"cannot parse sweep request {text!r}") from exc
        if ns.max_product <= 0:
            raise SyntaxError("sweep bound must be positive")
        return coprime_triples(ns.max_product)
    return parse_sigma(text)


# --- output helpers ----------------------------------------------------------

def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(rows, header) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _flag_text(flags) -> str:
    return ";".join(f"{k}={int(v)}" for k, v in flags.__dict__.items())


# --- verbs ---------------------------------------------------------------------

def _reps(cfg: RunConfig) -> tuple[str, int]:
    data = cfg.target
    vectors = repspace.enumerate_rotation_vectors(data)
    lam = repspace.casson_lambda(data)
    entries = []
    for v in vectors:
        item = {"h": v.h_sign, "l": list(v.ells), "angles": [str(a) for a in v.angles]}
        if cfg.realize:
            rep = repspace.realize_representation(data, v, tol=cfg.residual_tol)
            rho = repspace.verify_rho_invariance(rep, tol=cfg.rho_tol)
            item["images"] = rep.to_json(12)
            item["rho"] = [0.0 if abs(c) < 1e-14 else float(f"{c:.12g}") for c in rho]
        entries.append(item)
    if cfg.fmt == "json":
        return _dump({"schema": SCHEMA, "seifert": data.to_json(), "lambda": lam, "vectors": entries}), EXIT_OK
    header = ["h", "l1", "l2", "l3", "theta/pi"]
    if cfg.realize:
        header += ["x", "y", "z", "rho"]
    rows = []
    for e in entries:
        row = [e["h"], *e["l"], " ".join(e["angles"])]
        if cfg.realize:
            row += [" ".join(f"{c:.12g}" for c in e["images"][k]) for k in "xyz"]
            row.append(" ".join(f"{c:.12g}" for c in e["rho"]))
        rows.append(row)
    if cfg.fmt == "csv":
        return _csv(rows, header), EXIT_OK
    head = f"{data.text()}  {data}  vectors={len(vectors)}  lambda={lam}\n"
    return head + _table(rows, header), EXIT_OK


def _knot(cfg: RunConfig) -> tuple[str, int]:
    data = cfg.target
    k = knot_summary(data, cfg.mirror)
    d = k.diagram
    payload = {
        "schema": SCHEMA,
        "seifert": data.to_json(),
        "mirrored": cfg.mirror,
        "crossings": d.n,
        "writhe": d.writhe(),
        "determinant": k.determinant,
        "signature": k.signature,
        "jones": k.jones.to_pairs(),
        "jones_logderiv": str(k.log_derivative),
    }
    if cfg.export_pd:
        payload["pd"] = d.to_json()
        payload["gauss"] = d.gauss_code()
    if cfg.fmt == "json":
        return _dump(payload), EXIT_OK
    rows = [
        ["crossings", d.n],
        ["writhe", payload["writhe"]],
        ["determinant", k.determinant],
        ["signature", k.signature],
        ["jones", k.jones],
        ["jones_logderiv", payload["jones_logderiv"]],
    ]
    if cfg.export_pd:
        rows += [["pd", d.to_text()], ["gauss", " ".join(map(str, payload["gauss"]))]]
    if cfg.fmt == "csv":
        return _csv(rows, ["field", "value"]), EXIT_OK
    title = f"k{data.text()[5:]}{' (mirror)' if cfg.mirror else ''}\n"
    return title + "".join(f"{name:>15}  {value}\n" for name, value in rows), EXIT_OK


def _bundle_row(b):
    p, q, r = b.seifert.multiplicities
    return [p, q, r, b.lam, b.sign_k, b.ranks.r0, b.ranks.r2, b.nu, b.mu_bar, b.determinant,
            str(b.jones_log_derivative), _flag_text(b.audit_flags)]


def _audit_one(data: SeifertData, mirror: bool = False):
    b = compute_bundle(data, mirror)
    return b, jones_floer_audit(b)


def _audit(cfg: RunConfig) -> tuple[str, int]:
    b, a = _audit_one(cfg.target, cfg.mirror)
    code = EXIT_VIOLATION if cfg.strict and not a.strict else EXIT_OK
    if cfg.fmt == "json":
        return _dump({**b.to_json(), "audit": a.to_json()}), code
    if cfg.fmt == "csv":
        return _csv([_bundle_row(b)], CSV_COLUMNS), code
    lines = [
        f"{cfg.target.text()}  {cfg.target}{'  (mirror diagram)' if cfg.mirror else ''}",
        f"lambda = {b.lam}   sign k = {b.sign_k}   det = {b.determinant}",
        f"ranks I0..I6 = {b.ranks.as_tuple()}   nu = {b.nu}   mu_bar = {b.mu_bar}   chi_rho = {b.chi_rho}",
        f"V(t) = {b.jones}",
        f"x = -(1/12) V'(-1)/V(-1) = {a.x}   strict: {'pass' if a.strict else 'fail'}"
        f"   mirror-robust: {'pass' if a.robust else 'fail'}   strict chirality: {a.strict_chirality}",
        f"flags: {_flag_text(b.audit_flags)}",
    ]
    lines += [f"finding: {f}" for f in a.findings]
    return "\n".join(lines) + "\n", code


def _sweep_item(triple):
    b, a = _audit_one(solve_seifert_invariants(triple))
    return b, a.strict


def _sweep(cfg: RunConfig) -> tuple[str, int]:
    triples = coprime_triples(cfg.max_product)
    if cfg.workers > 1 and len(triples) > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(_sweep_item, triples, chunksize=4))
    else:
        results = [_sweep_item(t) for t in triples]
    code = EXIT_VIOLATION if cfg.strict and not all(ok for _, ok in results) else EXIT_OK
    if cfg.fmt == "json":
        return _dump({"schema": SCHEMA, "bundles": [b.to_json() for b, _ in results]}), code
    rows = [_bundle_row(b) for b, _ in results]
    if cfg.fmt == "table":
        return _table(rows, CSV_COLUMNS), code
    return _csv(rows, CSV_COLUMNS), code


def _cobordism(cfg: RunConfig) -> tuple[str, int]:
    rep = cobordism_report(cfg.target, cfg.claim)
    if cfg.fmt == "json":
        return _dump({"schema": SCHEMA, **rep.to_json()}), EXIT_OK
    if cfg.fmt == "csv":
        fam = "" if rep.family is None else " ".join(map(str, rep.family))
        return _csv([[cfg.target.text(), rep.nu, int(rep.claimed), int(rep.refuted), fam]],
                     ["input", "nu", "claimed", "refuted", "family"]), EXIT_OK
    return cfg.target.text() + "\n" + "".join(f"  {n}\n" for n in rep.notes), EXIT_OK


_HANDLERS = {"reps": _reps, "knot": _knot, "audit": _audit, "sweep": _sweep, "cobordism": _cobordism}


def run(cfg: RunConfig, out=None) -> int:
    """Execute a configuration, writing to ``out`` (stdout by default)."""
    out = out or sys.stdout
    try:
        text, code = _HANDLERS[cfg.verb](cfg)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc} {exc.inputs}", file=sys.stderr)
        return EXIT_VIOLATION
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    out.write(text)
    return code


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--json", dest="format", action="store_const", const="json")
    common.add_argument("--csv", dest="format", action="store_const", const="csv")
    common.add_argument("--strict", action="store_true", help="strict-form audit failures exit with status 2")
    common.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    common.add_argument("--residual-tol", type=float, default=repspace.RELATION_TOL)
    common.add_argument("--rho-tol", type=float, default=repspace.RHO_TOL)

    parser = argparse.ArgumentParser(prog="brieskorn", description="Invariants of Brieskorn homology spheres.")
    sub = parser.add_subparsers(dest="verb", required=True)
    p = sub.add_parser("reps", parents=[common], help="rotation vectors and the Casson invariant")
    p.add_argument("sigma")
    p.add_argument("--realize", action="store_true", help="add quaternion images and rho")
    p = sub.add_parser("knot", parents=[common], help="Montesinos knot invariants")
    p.add_argument("sigma")
    p.add_argument("--export-pd", action="store_true")
    p.add_argument("--mirror", action="store_true")
    p = sub.add_parser("audit", parents=[common], help="full invariant bundle and Jones audit")
    p.add_argument("sigma")
    p.add_argument("--mirror", action="store_true")
    p = sub.add_parser("sweep", parents=[common], help="bundles for all triples up to a product bound")
    p.add_argument("--max-product", type=int, required=True)
    p = sub.add_parser("cobordism", parents=[common], help="nu obstructions to homology cobordism")
    p.add_argument("sigma")
    p.add_argument("--claim", action="store_true", help="test the claim that the sphere bounds")
    return parser


def _workers(value) -> int:
    if value is not None:
        return value
    env = os.environ.get(WORKERS_ENV, "").strip()
    return int(env) if env else 1


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        target = parse_sigma(args.sigma) if hasattr(args, "sigma") else None
        fmt = args.format or ("csv" if args.verb == "sweep" else "table")
        cfg = RunConfig(
            verb=args.verb,
            target=target,
            max_product=getattr(args, "max_product", None),
            fmt=fmt,
            workers=_workers(args.workers),
            strict=args.strict,
            realize=getattr(args, "realize", False),
            export_pd=getattr(args, "export_pd", False),
            mirror=getattr(args, "mirror", False),
            claim=getattr(args, "claim", False),
            residual_tol=args.residual_tol,
            rho_tol=args.rho_tol,
        )
    except (SyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.verb != "sweep" and cfg.target.n != 3 and cfg.verb != "cobordism":
        print(f"error: {cfg.verb} needs three fibers", file=sys.stderr)
        return EXIT_INPUT
    try:
        return run(cfg)
    except BrieskornError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
