"""Command line entry point: ``umip <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .algebra import GroupAlgebra
from .catalogue import TARGET_ORDERS, CatalogueError, eligible_groups, get_entry, load_catalogue
from .invariants import ALL_TIERS, LADDER, compute_record
from .involutions import DEFAULT_SPLIT_BITS, build_quadratic_map, count_involutions
from .pipeline import default_cache_dir, ensure_records, render_report, split_groups
from .unitpc import build_unit_pc_presentation

log = logging.getLogger("umip")


def _tiers(text: str) -> frozenset[int]:
    try:
        tiers = frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tier list {text!r}") from None
    if not tiers or not tiers <= ALL_TIERS:
        raise argparse.ArgumentTypeError(f"tiers must be a nonempty subset of 1,2,3 (got {text!r})")
    return tiers


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _cache_dir(args) -> Path | None:
    return Path(args.cache_dir) if args.cache_dir else default_cache_dir()


def _progress(label: str):
    last = [0.0]

    def report(points: int, done: int, total: int) -> None:
        now = time.monotonic()
        if done == total or now - last[0] > 2.0:
            last[0] = now
            log.info("%s: %d/%d tasks, %d points", label, done, total, points)

    return report


# ---------------------------------------------------------------- commands


def cmd_catalogue(args) -> int:
    try:
        entries = load_catalogue(args.catalogue, verify=True)
    except CatalogueError as exc:
        print(f"catalogue invalid: {exc}", file=sys.stderr)
        return 1
    orders = sorted({e.order for e in entries})
    for n in orders:
        group = [e for e in entries if e.order == n]
        print(f"order {n:2d}: {len(group)} groups verified")
    for n in TARGET_ORDERS:
        if n in orders:
            ids = [e.catalogue_id for e in eligible_groups(n, entries)]
            print(f"order {n:2d}: {len(ids)} eligible: {','.join(map(str, ids))}")
    print("catalogue OK")
    return 0


def _print_record(rec) -> None:
    print(f"group ({rec.order},{rec.catalogue_id})  |V| = 2^{rec.v_order_log2}  tiers {sorted(rec.tiers)}")
    for name, tier, label in LADDER:
        v = rec.value(name)
        if v is not None:
            print(f"  [{tier}] {label}: {v}")
    if rec.involutions is not None:
        print(f"      solutions of x^2 = 1 in V(KG): {rec.square_roots_of_one}")


def cmd_invariants(args) -> int:
    entries = load_catalogue(args.catalogue)
    if args.id is not None:
        targets = [get_entry(args.order, args.id, entries)]
    else:
        targets = eligible_groups(args.order, entries)
    failed: dict[int, str] = {}
    records = ensure_records(
        targets, args.tiers, _cache_dir(args), args.force, args.threads, args.split_bits, failed=failed
    )
    for e in targets:
        if e.catalogue_id in records and e.catalogue_id not in failed:
            _print_record(records[e.catalogue_id])
    for i, msg in sorted(failed.items()):
        print(f"group ({args.order},{i}) FAILED: {msg}", file=sys.stderr)
    return 1 if failed else 0


def cmd_split(args) -> int:
    entries = load_catalogue(args.catalogue)
    report = split_groups(
        args.order,
        args.tiers,
        cache_dir=_cache_dir(args),
        force=args.force,
        threads=args.threads,
        split_bits=args.split_bits,
        early_stop=not args.exhaustive,
        entries=entries,
    )
    md = render_report(report, "markdown")
    if args.report:
        Path(args.report).write_text(md)
    else:
        sys.stdout.write(md)
    if args.csv:
        Path(args.csv).write_text(render_report(report, "csv"))
    if report.unresolved_pairs:
        pairs = " ".join(f"({a},{b})" for a, b in report.unresolved_pairs)
        print(f"unresolved pairs: {pairs}", file=sys.stderr)
    else:
        print("unresolved pairs: none", file=sys.stderr)
    for i, msg in sorted(report.failed.items()):
        print(f"group ({args.order},{i}) FAILED: {msg}", file=sys.stderr)
    return 1 if report.failed else 0


def cmd_count(args) -> int:
    entry = get_entry(args.order, args.id, load_catalogue(args.catalogue))
    alg = GroupAlgebra(entry.table())
    basis = alg.basis if args.basis == "weighted" else None
    q = build_quadratic_map(alg.tables, basis)
    t0 = time.perf_counter()
    n = count_involutions(
        q,
        split_bits=args.split_bits,
        threads=args.threads,
        method=args.method,
        progress=_progress(entry.label) if args.verbose else None,
    )
    dt = time.perf_counter() - t0
    print(f"group ({entry.order},{entry.catalogue_id}): {n} involutions in V(KG)")
    print(f"solutions of x^2 = 1: {n + 1}")
    print(f"time {dt:.2f} s ({args.method}, s={args.split_bits}, threads={args.threads})")
    return 0


def cmd_oracle(args) -> int:
    from . import oracles

    if args.order > oracles.MAX_ORDER:
        print(f"oracle is limited to |G| <= {oracles.MAX_ORDER}", file=sys.stderr)
        return 2
    entry = get_entry(args.order, args.id, load_catalogue(args.catalogue))
    t = entry.table()
    rec = compute_record(entry, ALL_TIERS)
    alg = GroupAlgebra(t)
    units = build_unit_pc_presentation(alg.basis, alg.tables)
    gens = [units.generator(i) for i in range(units.m)]
    cf = oracles.center_facts(t, gens)
    checks = [
        ("|V(KG)|", 1 << rec.v_order_log2, len(oracles.all_units(t))),
        ("center order", 1 << rec.center_order_log2, cf.order),
        ("center exponent", rec.center_exponent, cf.exponent),
        ("center involutions", rec.center_involutions, cf.involutions),
        ("Frattini order", 1 << rec.frattini_order_log2, oracles.frattini_order(t)),
        ("involutions", rec.involutions, oracles.involution_count(t)),
    ]
    bad = 0
    for name, ladder, brute in checks:
        ok = ladder == brute
        bad += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {name}: ladder {ladder}, brute force {brute}")
    return 1 if bad else 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="umip", description="Invariants of normalized unit groups V(KG) over GF(2).")
    p.add_argument("--version", action="version", version=f"umip {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p.add_argument("--catalogue", help="catalogue file (default: the packaged one)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tiers=True):
        sp.add_argument("--order", type=int, required=True)
        if tiers:
            sp.add_argument("--tiers", type=_tiers, default=ALL_TIERS, help="comma list, e.g. 1,2,3")
        sp.add_argument("--threads", type=_positive, default=1)
        sp.add_argument("--split-bits", type=int, default=DEFAULT_SPLIT_BITS)

    def caching(sp):
        sp.add_argument("--force", action="store_true", help="ignore cached records")
        sp.add_argument("--cache-dir", help="record cache (default: $UMIP_CACHE_DIR, else none)")

    cat = sub.add_parser("catalogue", help="catalogue maintenance")
    cat.add_argument("action", choices=["verify"])
    cat.set_defaults(func=cmd_catalogue)

    inv = sub.add_parser("invariants", help="invariant records for one or all eligible groups")
    common(inv)
    inv.add_argument("--id", type=int)
    caching(inv)
    inv.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("split", help="run the ladder and report families and unresolved pairs")
    common(sp)
    caching(sp)
    sp.add_argument("--report", help="write the Markdown report here instead of stdout")
    sp.add_argument("--csv", help="also write a CSV report")
    sp.add_argument("--exhaustive", action="store_true", help="compute every tier for every group")
    sp.set_defaults(func=cmd_split)

    cnt = sub.add_parser("count-involutions", help="count involutions of V(KG) for one group")
    common(cnt, tiers=False)
    cnt.add_argument("--id", type=int, required=True)
    cnt.add_argument("--method", choices=["split", "walk"], default="split")
    cnt.add_argument("--basis", choices=["natural", "weighted"], default="natural")
    cnt.set_defaults(func=cmd_count)

    orc = sub.add_parser("oracle", help="compare the ladder with brute force (|G| <= 16)")
    orc.add_argument("--order", type=int, required=True)
    orc.add_argument("--id", type=int, required=True)
    orc.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        return args.func(args)
    except (CatalogueError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
