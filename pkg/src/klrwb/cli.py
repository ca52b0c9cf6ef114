"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error or resource cap hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, verify
from .cache import ENV_VAR, DiskCache
from .crystal import Crystal, CrystalError
from .klr_core import DEFAULT_DEGREE_BOUND, KLRAlgebra
from .modcat import ModuleError
from .root_datum import (
    CapExceeded,
    QuiverError,
    parse_weight,
    reflect_orientation,
    resolve_quiver,
    weight_of,
)

SCHEMA_VERSION = 1
# crystal listings grow exponentially with height
CRYSTAL_HEIGHT_LIMIT = 12


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, default_quiver: str | None) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--quiver", action="append", default=None, metavar="PATH",
                   help=f"quiver JSON file or bundled name (default: {default_quiver or 'suite defaults'})")
    g.add_argument("--reflect-orientation", nargs="+", default=[], metavar="VERTEX",
                   help="reverse the arrows at these vertices, in order (default: none)")
    g.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND,
                   help=f"top degree of truncated series (default: {DEFAULT_DEGREE_BOUND})")
    g.add_argument("--height", type=int, default=None, help="height cap N (default: per command)")
    g.add_argument("--format", choices=("table", "json"), default="table", help="output format (default: table)")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for verify (default: 1)")
    g.add_argument("--cache-dir", default=None,
                   help=f"table cache directory (default: ${ENV_VAR} or ~/.cache/klrwb)")
    g.add_argument("--no-cache", action="store_true", help="do not read or write the table cache")
    g.add_argument("--seed", type=int, default=0, help="seed for sampled property checks (default: 0)")
    p.set_defaults(default_quiver=default_quiver)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klrwb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"klrwb {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="graded dimensions of R_beta or of a corner e(word2) R e(word)")
    _common(p, "A2")
    p.add_argument("--beta", required=True, help="weight, coefficients in vertex order, e.g. 1,1")
    p.add_argument("--word", default=None, help="right idempotent word e(word)")
    p.add_argument("--word2", default=None, help="left idempotent word e(word2)")

    p = sub.add_parser("simples", help="character table of simple modules at a weight")
    _common(p, "A2")
    p.add_argument("--beta", required=True)

    p = sub.add_parser("crystal", help="B(infinity) up to a height")
    _common(p, "A2")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead")

    p = sub.add_parser("reflect", help="Saito reflection of a crystal element")
    _common(p, "A2")
    p.add_argument("--i", required=True, help="vertex of the reflection")
    p.add_argument("--fstring", default="", help="lowering string from b_infinity, e.g. 2 or 1,2")
    p.add_argument("--inverse", action="store_true")

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p, None)
    p.add_argument("suite", choices=verify.SUITES + ("all",))
    p.add_argument("--out", default="klrwb-reports", help="report directory (default: klrwb-reports)")
    p.add_argument("--module-cap", type=int, default=verify.DEFAULT_MODULE_CAP,
                   help=f"height cap for single simple modules (default: {verify.DEFAULT_MODULE_CAP})")

    p = sub.add_parser("cache", help="manage the table cache")
    p.add_argument("action", choices=("clear",))
    p.add_argument("--cache-dir", default=None)
    return parser


# ---------------------------------------------------------------- helpers

def _quivers(args) -> list[tuple[str, object]]:
    names = args.quiver or ([args.default_quiver] if args.default_quiver else [])
    out = []
    for name in names:
        try:
            q = resolve_quiver(name)
            for v in args.reflect_orientation:
                q = reflect_orientation(q, q.index(v))
        except QuiverError as exc:
            raise UsageError(str(exc)) from None
        label = Path(name).stem + "".join(f"~{v}" for v in args.reflect_orientation)
        out.append((label, q))
    return out


def _single_quiver(args):
    qs = _quivers(args)
    if len(qs) != 1:
        raise UsageError("this command takes exactly one --quiver")
    return qs[0]


def _config(args, label=None) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("default_quiver", "jobs", "cache_dir", "no_cache", "out")}
    if label is not None:
        cfg["quiver_label"] = label
    cfg["version"] = __version__
    cfg["schema"] = SCHEMA_VERSION
    return cfg


def _cache(args) -> DiskCache:
    return DiskCache(args.cache_dir, enabled=not getattr(args, "no_cache", False))


def _weight(q, text: str):
    try:
        return parse_weight(q, text)
    except (QuiverError, ValueError) as exc:
        raise UsageError(f"bad weight {text!r}: {exc}") from None


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _series_line(series) -> str:
    body = ", ".join(f"{d}:{c}" for d, c in sorted(series.as_dict().items())) or "0"
    return f"{body}  (degrees <= {series.bound})"


# ---------------------------------------------------------------- commands

def cmd_dims(args) -> int:
    label, q = _single_quiver(args)
    beta = _weight(q, args.beta)
    R = KLRAlgebra(q, beta)
    D = args.degree_bound
    if args.word or args.word2:
        right = q.parse_word(args.word or args.word2)
        left = q.parse_word(args.word2 or args.word)
        for w in (right, left):
            if weight_of(q, w) != beta:
                raise UsageError(f"word {q.word_str(w)} does not have weight {args.beta}")
        pairs = [(right, left)]
    else:
        pairs = [(r, l) for l in R.words for r in R.words]
    rows = []
    lines = [f"quiver {label} {q!r}", f"beta = {args.beta}"]
    for r, l in pairs:
        s = R.corner_series(r, l, D)
        rows.append({"right": q.word_str(r), "left": q.word_str(l), "series": s.to_json()})
        lines.append(f"e({q.word_str(l)}) R e({q.word_str(r)}): " + _series_line(s))
    if len(pairs) > 1:
        s = R.series(D)
        lines.append("R_beta: " + _series_line(s))
        rows.append({"right": "*", "left": "*", "series": s.to_json()})
    _emit(args, {"config": _config(args, label), "corners": rows}, lines)
    return 0


def cmd_simples(args) -> int:
    label, q = _single_quiver(args)
    beta = _weight(q, args.beta)
    cap = args.height if args.height is not None else 5
    cache = _cache(args)
    wb = verify.workbench(q, max(sum(beta), 1), cache=cache) if sum(beta) <= cap else None
    if wb is None:
        raise CapExceeded(f"weight {args.beta} has height {sum(beta)} above the cap {cap}")
    table = wb.table(beta)
    lines = [f"quiver {label} {q!r}", f"simples at beta = {args.beta}: {len(table)}"]
    for s in table.simples:
        b = wb.label_element(s)
        lines.append(f"  {s.label}  dim {s.module.dim}  eps {list(s.eps)}  eps* {list(s.eps_star)}  crystal {list(b.coords)}")
        for w, p in sorted(s.character.items(), reverse=True):
            lines.append(f"      {q.word_str(w) or '()'}: {p}")
    payload = {"config": _config(args, label), "table": table.to_json(),
               "crystal": {s.label: list(wb.label_element(s).coords) for s in table.simples}}
    _emit(args, payload, lines)
    return 0


def cmd_crystal(args) -> int:
    label, q = _single_quiver(args)
    n = args.height if args.height is not None else 4
    if n > CRYSTAL_HEIGHT_LIMIT:
        raise CapExceeded(f"crystal height {n} exceeds the limit {CRYSTAL_HEIGHT_LIMIT}")
    C = Crystal(q, cap=max(n, 1))
    if args.dot:
        sys.stdout.write(C.to_dot(n))
        return 0
    g = C.graph(n)
    lines = [f"quiver {label} {q!r}", f"B(infinity) to height {n}: {len(g['nodes'])} elements"]
    for k, node in enumerate(g["nodes"]):
        lines.append(f"  #{k} coords {node['coords']} weight {node['weight']} eps {node['eps']} eps* {node['eps_star']}")
    for a, b, i in g["edges"]:
        lines.append(f"  #{a} -f{i}-> #{b}")
    _emit(args, {"config": _config(args, label), "graph": g}, lines)
    return 0


def cmd_reflect(args) -> int:
    label, q = _single_quiver(args)
    try:
        i = q.index(args.i)
        string = q.parse_word(args.fstring)
    except QuiverError as exc:
        raise UsageError(str(exc)) from None
    C = Crystal(q, cap=max(4 * len(string) + 4, 8))
    b = C.element(string)
    status = "ok"
    try:
        t = C.saito_reflect_inv(i, b) if args.inverse else C.saito_reflect(i, b)
        result = C.describe(t)
    except CrystalError as exc:
        status, result = f"undefined: {exc}", None
    payload = {"config": _config(args, label), "input": C.describe(b), "result": result, "status": status}
    name = ("T^-1_" if args.inverse else "T_") + q.name(i)
    lines = [f"quiver {label} {q!r}", f"b = {C.describe(b)}", f"{name}(b) = {result}", f"status: {status}"]
    _emit(args, payload, lines)
    return 0 if result is not None else 1


def _run_one(job, cache_dir, no_cache, module_cap):
    cache = None if no_cache else DiskCache(cache_dir)
    report = verify.run_job(job, cache=cache, module_cap=module_cap)
    return report


def cmd_verify(args) -> int:
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    jobs = []
    for suite in suites:
        if args.quiver:
            targets = _quivers(args)
        else:
            saved = args.quiver
            targets = []
            for name in verify.DEFAULT_QUIVERS[suite]:
                args.quiver = [name]
                targets.extend(_quivers(args))
            args.quiver = saved
        for label, q in targets:
            jobs.extend(verify.plan(suite, label, q, args.height, args.degree_bound))
    names = [j.name for j in jobs]
    if len(set(names)) != len(names):
        raise UsageError("duplicate job names; give distinct quiver files")
    out = Path(args.out)
    reports_dir = out / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)
    for old in reports_dir.glob("*.json"):
        old.unlink()
    start = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            futures = [pool.submit(_run_one, j, args.cache_dir, args.no_cache, args.module_cap) for j in jobs]
            reports = [f.result() for f in futures]
    else:
        cache = None if args.no_cache else _cache(args)
        reports = [verify.run_job(j, cache=cache, module_cap=args.module_cap) for j in jobs]
    # merged by job name, so the report set does not depend on scheduling
    results = sorted(zip(names, reports), key=lambda x: x[0])
    timings = {}
    failed = capped = 0
    lines = []
    for name, rep in results:
        (reports_dir / f"{name}.json").write_text(rep.dumps())
        timings[name] = round(rep.seconds, 3)
        failed += not rep.verdict and not rep.capped
        capped += rep.capped
        lines.append(f"{rep.status.upper():<12}  {name}")
    summary = {
        "config": _config(args),
        "jobs": len(results),
        "failed": [n for n, r in results if not r.verdict and not r.capped],
        "cap_exceeded": [n for n, r in results if r.capped],
    }
    (reports_dir / "summary.json").write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    timings["_total"] = round(time.perf_counter() - start, 3)
    (out / "timings.json").write_text(json.dumps(timings, sort_keys=True, indent=2) + "\n")
    passed = len(results) - failed - capped
    lines.append(f"{passed}/{len(results)} checks passed, {failed} failed, {capped} hit a cap; reports in {reports_dir}")
    _emit(args, {"summary": summary, "reports": [r.to_json() for _, r in results]}, lines)
    return 1 if failed else 2 if capped else 0


def cmd_cache(args) -> int:
    removed = DiskCache(args.cache_dir).clear()
    print(f"removed {removed} cache entries")
    return 0


COMMANDS = {
    "dims": cmd_dims,
    "simples": cmd_simples,
    "crystal": cmd_crystal,
    "reflect": cmd_reflect,
    "verify": cmd_verify,
    "cache": cmd_cache,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"klrwb: error: {exc}", file=sys.stderr)
        return 2
    except (CapExceeded, QuiverError) as exc:
        print(f"klrwb: {exc}", file=sys.stderr)
        return 2
    except ModuleError as exc:
        print(f"klrwb: module computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
