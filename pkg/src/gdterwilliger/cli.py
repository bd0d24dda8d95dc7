"""Command line front end: analyze, verify and sweep.

Exit codes: 0 success, 1 a verification check failed, 2 usage error
(malformed parameters, non-prime characteristic, unwritable output),
3 vertex cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .golden import GOLDEN
from .scheme_core import GDParams, enumerate_colors, parse_params
from .structure_theory import (
    corner_table,
    is_semisimple,
    quotient_basis,
    radical_basis,
    radical_nilpotency_index,
    wedderburn,
)
from .terwilliger_algebra import b2_labels, center_basis, center_dim, dim_T

log = logging.getLogger("gdterwilliger")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
CACHE_ENV = "GDTERWILLIGER_CACHE_DIR"
CSV_FIELDS = [
    "params", "char", "dim_T", "center_dim", "is_semisimple", "radical_dim",
    "nilpotency_index", "n_classes", "quotient_dim", "blocks",
]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# analysis

def analysis_report(params: GDParams) -> dict:
    """Every closed-form invariant for one (params, characteristic) cell."""
    w = wedderburn(params)
    report = {
        "params": {
            "spec": params.spec_string(),
            "factors": [list(f) for f in params.factors],
            "char": params.characteristic,
        },
        "dim_T": dim_T(params),
        "center_dim": center_dim(params),
        "is_semisimple": is_semisimple(params),
        "radical_dim": w.radical_dim,
        "nilpotency_index": w.nilpotency_index,
        "corner_table": corner_table(params),
        "wedderburn": {
            **w.to_json(),
            "block_sizes": w.block_sizes(),
            "decomposition": w.pretty(),
            "quotient_dim": w.quotient_dim,
            "center_quotient_count": w.center_quotient_count,
        },
    }
    squares = sum(s * s * m for s, m in w.blocks)
    if report["radical_dim"] + squares != report["dim_T"]:
        raise AssertionError("radical_dim + sum of squared block sizes != dim_T")
    return report


def _blocks_csv(report: dict) -> str:
    return ";".join(f"{b['size']}×{b['multiplicity']}" for b in report["wedderburn"]["blocks"])


def csv_row(report: dict) -> dict:
    return {
        "params": report["params"]["spec"],
        "char": report["params"]["char"],
        "dim_T": report["dim_T"],
        "center_dim": report["center_dim"],
        "is_semisimple": str(report["is_semisimple"]).lower(),
        "radical_dim": report["radical_dim"],
        "nilpotency_index": report["nilpotency_index"],
        "n_classes": report["wedderburn"]["n_classes"],
        "quotient_dim": report["wedderburn"]["quotient_dim"],
        "blocks": _blocks_csv(report),
    }


def render_csv(reports: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(csv_row(r))
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    w = report["wedderburn"]
    lines = [
        f"params            {report['params']['spec']}",
        f"characteristic    {report['params']['char']}",
        f"dim T             {report['dim_T']}",
        f"dim Z(T)          {report['center_dim']}",
        f"semisimple        {'yes' if report['is_semisimple'] else 'no'}",
        f"dim Rad(T)        {report['radical_dim']}",
        f"nilpotency index  {report['nilpotency_index']}",
        f"T/Rad(T)          {w['decomposition']}",
        f"blocks            {w['n_classes']}",
        "",
        "corner            dim  quotient  index",
    ]
    for row in report["corner_table"]:
        color = "".join(str(c) for c in row["color"])
        lines.append(f"  {color:<15} {row['corner_dim']:>4}  {row['quotient_dim']:>8}  {row['nilpotency_index']:>5}")
    if "timing_s" in report:
        lines.append(f"\ntime              {report['timing_s']:.3f}s")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verification

def _sample(items: list, k: int, rng: random.Random) -> list:
    if len(items) <= k:
        return items
    return rng.sample(items, k)


def run_verification(
    params: GDParams,
    max_vertices: int | None = None,
    seed: int = 0,
    pairs: int = 10000,
    closure_limit: int = 81,
) -> list:
    """Oracle checks of every closed form; deterministic for a fixed seed.

    Product and matrix-unit checks are exhaustive when the number of pairs is
    at most ``pairs`` and a seeded sample of that size otherwise.  The span
    closure is only run up to ``closure_limit`` vertices; above that the
    dimension rests on the orbit certificate alone.
    """
    from . import matrix_oracle as mo

    rng = random.Random(seed)
    space = mo.VertexSpace(params, max_vertices=max_vertices)
    checks = [mo.verify_axioms(space), mo.verify_triple_regularity(space)]

    cert = mo.certified_dimension(space)
    detail = {"lower": cert.lower, "upper": cert.upper, "dim_T": dim_T(params)}
    ok = cert.exact and cert.lower == dim_T(params)
    if space.N <= closure_limit:
        detail["span_closure"] = mo.generated_algebra_dimension(space)
        ok = ok and detail["span_closure"] == dim_T(params)
    checks.append(mo.CheckReport("dimension", ok, detail))

    labels = b2_labels(params)
    all_pairs = [(a, b) for a in labels for b in labels]
    checks.append(mo.verify_homomorphism(space, _sample(all_pairs, pairs, rng)))
    checks.append(mo.verify_center(space, [x for _, x in center_basis(params)]))

    rad = radical_basis(params)
    checks.append(mo.CheckReport(
        "semisimplicity",
        (not rad) == is_semisimple(params),
        {"radical_dim": len(rad), "is_semisimple": is_semisimple(params)},
    ))
    checks.append(mo.verify_ideal(space, rad))
    checks.append(mo.verify_nilpotency(space, rad, radical_nilpotency_index(params)))
    for g in enumerate_colors(params):
        checks.append(mo.verify_corner(space, g))

    qb = quotient_basis(params)
    q_pairs = [(a, b) for a in qb for b in qb]
    checks.append(mo.verify_matrix_units(space, _sample(q_pairs, pairs, rng)))

    for case in GOLDEN:
        if case.factors == params.factors and case.characteristic == params.characteristic:
            w = wedderburn(params)
            got = {"blocks": [list(b) for b in w.blocks], "index": w.nilpotency_index}
            want = {"blocks": [list(b) for b in case.blocks], "index": case.nilpotency_index}
            checks.append(mo.CheckReport("golden", got == want, {"case": case.name, "got": got, "want": want}))
    return checks


# ---------------------------------------------------------------------------
# sweep

def _cache_key(params: GDParams) -> str:
    blob = json.dumps(
        {"kind": "analysis", "version": __version__, "factors": params.factors, "char": params.characteristic},
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def _analyze_cell(factors: tuple, char: int, cache_dir: str | None) -> dict:
    params = GDParams(factors, char)
    path = Path(cache_dir) / f"{_cache_key(params)}.json" if cache_dir else None
    if path is not None and path.exists():
        return json.loads(path.read_text(encoding="utf-8"))
    report = analysis_report(params)
    if path is not None:
        tmp = path.with_suffix(f".{os.getpid()}.tmp")
        tmp.write_text(render_json(report), encoding="utf-8")
        os.replace(tmp, path)
    return report


def load_grid(path: str) -> list[GDParams]:
    try:
        grid = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read grid file {path}: {exc}") from exc
    if not isinstance(grid, dict) or not isinstance(grid.get("params"), list) or not isinstance(grid.get("chars"), list):
        raise UsageError('grid must be a JSON object {"params": [...], "chars": [...]}')
    cells = []
    for spec in grid["params"]:
        for char in grid["chars"]:
            cells.append(_parse(str(spec), char))
    return cells


def run_sweep(cells: Sequence[GDParams], jobs: int, cache_dir: str | None) -> list[dict]:
    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
    args = [(c.factors, c.characteristic, cache_dir) for c in cells]
    if jobs <= 1 or len(args) <= 1:
        return [_analyze_cell(*a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_analyze_cell, *a) for a in args]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# argument handling

def _parse(spec: str, char) -> GDParams:
    try:
        return parse_params(spec, int(char))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gdterwilliger", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="closed-form report for one parameter list")
    a.add_argument("--params", required=True, help="e.g. 2x3,3x3")
    a.add_argument("--char", default="0", help="0 or a prime")
    a.add_argument("--format", choices=["json", "csv", "text"], default="json")
    a.add_argument("--timing", action="store_true", help="include wall time (output is then not reproducible)")
    a.add_argument("--out", help="write here instead of stdout")

    v = sub.add_parser("verify", help="check the closed forms against explicit matrices")
    v.add_argument("--params", required=True)
    v.add_argument("--char", default="0")
    v.add_argument("--max-vertices", type=int, default=None, help="vertex cap (default 256 or $GDTERWILLIGER_MAX_VERTICES)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--pairs", type=int, default=10000, help="sample size for pair checks")
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.add_argument("--out")

    s = sub.add_parser("sweep", help="analyze every cell of a parameter grid")
    s.add_argument("--grid", required=True, help='JSON file {"params": [...], "chars": [...]}')
    s.add_argument("--out", required=True, help="output file; .csv gives the flat projection, anything else JSON")
    s.add_argument("--jobs", type=int, default=min(4, os.cpu_count() or 1))
    s.add_argument("--cache-dir", default=None, help=f"cache directory (default ${CACHE_ENV})")
    return parser


def _cmd_analyze(args) -> int:
    params = _parse(args.params, args.char)
    start = time.perf_counter()
    report = analysis_report(params)
    if args.timing:
        report["timing_s"] = round(time.perf_counter() - start, 6)
    if args.format == "json":
        text = render_json(report)
    elif args.format == "csv":
        text = render_csv([report])
    else:
        text = render_text(report)
    _write(text, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .matrix_oracle import ResourceCapExceeded

    params = _parse(args.params, args.char)
    try:
        checks = run_verification(params, args.max_vertices, args.seed, args.pairs)
    except ResourceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    passed = all(c.passed for c in checks)
    if args.format == "json":
        text = render_json({
            "params": params.spec_string(),
            "char": params.characteristic,
            "seed": args.seed,
            "passed": passed,
            "checks": [c.to_json() for c in checks],
        })
    else:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {json.dumps(c.detail, sort_keys=True)}" for c in checks]
        lines.append(f"{sum(c.passed for c in checks)}/{len(checks)} checks passed")
        text = "\n".join(lines) + "\n"
    _write(text, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def _cmd_sweep(args) -> int:
    cells = load_grid(args.grid)
    cache_dir = args.cache_dir or os.environ.get(CACHE_ENV) or None
    out = Path(args.out)
    if not out.parent.exists():
        raise UsageError(f"cannot write {out}: directory does not exist")
    reports = run_sweep(cells, max(1, args.jobs), cache_dir)
    text = render_csv(reports) if out.suffix.lower() == ".csv" else render_json({"records": reports})
    _write(text, args.out)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handler = {"analyze": _cmd_analyze, "verify": _cmd_verify, "sweep": _cmd_sweep}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
