"""Command-line front end.

Human-readable tables go to stdout, JSON via ``--format json``; progress
chatter goes to stderr.  Exit codes: 0 success, 1 verification failure,
2 usage error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from multiprocessing import Pool
from pathlib import Path

from . import __version__
from .bipartitions import (
    Bipartition,
    bipartition_to_json,
    biorder_leq,
    degeneration_moves,
    enhanced_orbit_dim,
    enumerate_bipartitions,
    format_bipartition,
    parse_bipartition,
    size as bp_size,
)
from .quiver import (
    enumerate_strata,
    naive_dims,
    quiver_data,
    verify_conjecture,
)
from .selftest import SUITES

MAX_ORBITS_N = 12

_PART_CHOICES = {"1": (1,), "2": (2,), "3": (3,), "all": (1, 2, 3)}


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _log(line: str) -> None:
    sys.stderr.write(line + "\n")


def cmd_orbits(args) -> int:
    if not 0 <= args.n <= MAX_ORBITS_N:
        raise UsageError(f"--n must be between 0 and {MAX_ORBITS_N}")
    rows = [
        {"mu": list(b.mu), "nu": list(b.nu), "dim": enhanced_orbit_dim(b)}
        for b in enumerate_bipartitions(args.n)
    ]
    if args.format == "json":
        _out(json.dumps(rows, sort_keys=True))
    else:
        for b, row in zip(enumerate_bipartitions(args.n), rows):
            _out(f"{format_bipartition(b):20s} dim {row['dim']}")
    return 0


def cmd_closure(args) -> int:
    a = parse_bipartition(args.a)
    b = parse_bipartition(args.b)
    leq = biorder_leq(a, b)
    if args.format == "json":
        _out(
            json.dumps(
                {
                    "a": bipartition_to_json(a),
                    "b": bipartition_to_json(b),
                    "a_leq_b": leq,
                    "dim_a": enhanced_orbit_dim(a),
                    "dim_b": enhanced_orbit_dim(b),
                },
                sort_keys=True,
            )
        )
    else:
        word = "lies" if leq else "does not lie"
        _out(
            f"orbit of {format_bipartition(a)} (dim {enhanced_orbit_dim(a)}) "
            f"{word} in the closure of {format_bipartition(b)} "
            f"(dim {enhanced_orbit_dim(b)})"
        )
    return 0


def cmd_hasse(args) -> int:
    if not 0 <= args.n <= MAX_ORBITS_N:
        raise UsageError(f"--n must be between 0 and {MAX_ORBITS_N}")
    edges = []
    for b in enumerate_bipartitions(args.n):
        for m in degeneration_moves(b):
            edges.append(
                {
                    "from": format_bipartition(b),
                    "to": format_bipartition(m.result),
                    "type": m.move_type,
                    "boxes": m.boxes_moved,
                }
            )
    if args.format == "json":
        _out(json.dumps(edges, sort_keys=True))
    else:
        for e in edges:
            _out(
                f"{e['from']:16s} -> {e['to']:16s} type {e['type']} "
                f"boxes {e['boxes']}"
            )
    return 0


def cmd_quiver(args) -> int:
    b = parse_bipartition(args.bipartition)
    q = quiver_data(b)
    d_r, d_ri = naive_dims(q)
    payload = {
        "bipartition": format_bipartition(b),
        "r": list(q.r),
        "I": sorted(q.marked),
        "t": q.t,
        "dims_u": list(q.dims_u),
        "d": d_r,
        "d_I": d_ri,
    }
    if args.format == "json":
        _out(json.dumps(payload, sort_keys=True))
    else:
        _out(f"bipartition {payload['bipartition']}")
        _out(f"r = {tuple(q.r)}, I = {set(sorted(q.marked)) or '{}'}, t = {q.t}")
        _out(f"dims U = {tuple(q.dims_u)}")
        _out(f"expected dimension {d_r} (plain), {d_ri} (with vectors)")
    return 0


def cmd_strata(args) -> int:
    b = parse_bipartition(args.bipartition)
    q = quiver_data(b)
    records = enumerate_strata(q)
    if args.format == "json":
        _out(json.dumps([r.to_json() for r in records], sort_keys=True))
    else:
        _, d_ri = naive_dims(q)
        _out(
            f"{len(records)} strata for {format_bipartition(b)} "
            f"(expected top dimension {d_ri})"
        )
        for r in records:
            flags = ("G" if r.generic else " ") + ("S" if r.in_smooth_locus else " ")
            xi_txt = " | ".join(
                f"{','.join(map(str, s.mu))};{','.join(map(str, s.nu))};{s.eps}"
                for s in r.xi
            )
            _out(
                f"dim {r.dim_exact:3d} (bound {r.dim_bound:3d}) {flags} "
                f"phi {format_bipartition(r.phi_image):12s} xi: {xi_txt}"
            )
    return 0


def _record_key(record: dict) -> tuple:
    b = parse_bipartition(record["bipartition"])
    return (bp_size(b), enumerate_bipartitions(bp_size(b)).index(b))


def _verify_one(text: str) -> dict:
    b = parse_bipartition(text)
    start = time.perf_counter()
    report = verify_conjecture(b)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    record = {
        "bipartition": format_bipartition(b),
        "tool_version": __version__,
        "parts_passed": list(report.parts_passed()),
        "stratum_count": report.stratum_count,
        "max_dim": report.max_dim,
        "expected_dim": report.expected_dim,
        "runtime_ms": elapsed_ms,
    }
    witnesses = {}
    for idx, part in enumerate((report.part1, report.part2, report.part3), start=1):
        if not part.passed:
            witnesses[str(idx)] = part.witnesses
    if witnesses:
        record["witnesses"] = witnesses
    return record


def _load_cache(path: Path) -> dict:
    cache = {}
    if path.exists():
        with path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                cache[(record["bipartition"], record["tool_version"])] = record
    return cache


def cmd_verify(args) -> int:
    parts = _PART_CHOICES[args.part]
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    cache_path = Path(args.cache) if args.cache else None
    cache = _load_cache(cache_path) if cache_path else {}
    texts = [
        format_bipartition(b)
        for n in range(1, args.n + 1)
        for b in enumerate_bipartitions(n)
    ]
    todo = [t for t in texts if (t, __version__) not in cache]
    _log(
        f"verify: {len(texts)} bipartitions up to size {args.n}, "
        f"{len(todo)} to compute, parts {args.part}"
    )
    fresh = []
    if todo:
        if args.jobs == 1:
            for i, text in enumerate(todo):
                fresh.append(_verify_one(text))
                _log(f"  [{i + 1}/{len(todo)}] {text}")
        else:
            with Pool(args.jobs) asics:
                for i, record in enumerate(ics.imap_unordered(_verify_one, todo)):
                    fresh.append(record)
                    _log(f"  [{i + 1}/{len(todo)}] {record['bipartition']}")
    if cache_path and fresh:
        with cache_path.open("a") as fh:
            for record in fresh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
    records = {(r["bipartition"], r["tool_version"]): r for r in fresh}
    records.update(cache)
    chosen = [records[(t, __version__)] for t in texts]
    chosen.sort(key=_record_key)

    failed = [
        r for r in chosen if not all(r["parts_passed"][p - 1] for p in parts)
    ]
    if args.format == "json":
        summary = {
            "n_max": args.n,
            "part": args.part,
            "tool_version": __version__,
            "all_passed": not failed,
            "results": [
                {k: v for k, v in r.items() if k != "runtime_ms"} for r in chosen
            ],
        }
        _out(json.dumps(summary, sort_keys=True))
    else:
        by_size: dict[int, list[dict]] = {}
        for r in chosen:
            by_size.setdefault(bp_size(parse_bipartition(r["bipartition"])), []).append(r)
        for n in sorted(by_size):
            group = by_size[n]
            counts = [
                sum(1 for r in group if r["parts_passed"][p - 1]) for p in parts
            ]
            summary = " ".join(
                f"part{p} {c}/{len(group)}" for p, c in zip(parts, counts)
            )
            _out(f"size {n}: {len(group)} bipartitions, {summary}")
        if failed:
            _out(f"FAILED: {len(failed)} bipartitions")
            for r in failed[:10]:
                _out(f"  {r['bipartition']}: parts_passed {r['parts_passed']}")
        else:
            _out(f"all requested parts passed for sizes 1..{args.n}")
    return 1 if failed else 0


def cmd_selftest(args) -> int:
    ok = True
    for name, suite in SUITES:
        suite_ok, detail = suite()
        ok &= suite_ok
        status = "ok" if suite_ok else "FAIL"
        _out(f"{status:4s} {name}" + (f": {detail}" if detail else ""))
    _out("selftest " + ("passed" if ok else "FAILED"))
    return 0 if ok else 1


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="enhorbits",
        description="Exact combinatorics of vector-enhanced nilpotent orbits.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("orbits", help="list orbits of a given size with dimensions")
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("closure", help="test closure containment of two orbits")
    p.add_argument("--a", required=True, help='bipartition, e.g. "2,1;1"')
    p.add_argument("--b", required=True)
    add_format(p)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("hasse", help="covering edges with move types")
    p.add_argument("--n", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("quiver", help="column data and expected dimensions")
    p.add_argument("--bipartition", required=True)
    add_format(p)
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("strata", help="stratum table for one bipartition")
    p.add_argument("--bipartition", required=True)
    add_format(p)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("verify", help="run the stratum-dimension checks")
    p.add_argument("--n", type=int, required=True, help="largest size to check")
    p.add_argument("--part", choices=tuple(_PART_CHOICES), default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", default=None, help="append-only JSON-lines cache")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run every formula-vs-oracle suite")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _log(f"usage error: {exc}")
        return 2
    except ValueError as exc:
        _log(f"bad input: {exc}")
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        _log(f"internal error: {exc!r}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
