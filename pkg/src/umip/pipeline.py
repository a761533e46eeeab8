"""End-to-end UMIP check: tiered invariants, family partition, reports, cache."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable

from . import __version__
from .catalogue import CatalogueEntry, eligible_groups
from .invariants import ALL_TIERS, LADDER, InvariantRecord, compute_record

log = logging.getLogger(__name__)

CACHE_SCHEMA = "umip-invariant-record"
CACHE_VERSION = 1
CACHE_ENV = "UMIP_CACHE_DIR"


# ---------------------------------------------------------------- cache


def default_cache_dir() -> Path | None:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else None


def _cache_path(cache_dir: Path, order: int, catalogue_id: int) -> Path:
    return Path(cache_dir) / f"order{order:02d}_id{catalogue_id:02d}.json"


def record_to_json(rec: InvariantRecord) -> str:
    doc = {
        "schema": CACHE_SCHEMA,
        "version": CACHE_VERSION,
        "toolkit": __version__,
        "order": rec.order,
        "catalogue_id": rec.catalogue_id,
        "presentation_hash": rec.presentation_hash,
        "v_order_log2": rec.v_order_log2,
        "tiers": sorted(rec.tiers),
        "values": rec.values(),
        "runtime_ms": dict(sorted(rec.runtime_ms.items())),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def record_from_json(text: str) -> InvariantRecord:
    doc = json.loads(text)
    if doc.get("schema") != CACHE_SCHEMA:
        raise ValueError("not an invariant record")
    if doc.get("version") != CACHE_VERSION:
        raise VersionMismatch(f"cache version {doc.get('version')} != {CACHE_VERSION}")
    known = {name for name, _, _ in LADDER}
    values = doc["values"]
    if set(values) - known:
        raise ValueError(f"unknown invariants {sorted(set(values) - known)}")
    return InvariantRecord(
        order=int(doc["order"]),
        catalogue_id=int(doc["catalogue_id"]),
        v_order_log2=int(doc["v_order_log2"]),
        presentation_hash=str(doc["presentation_hash"]),
        tiers=frozenset(int(t) for t in doc["tiers"]),
        runtime_ms={str(k): float(v) for k, v in doc["runtime_ms"].items()},
        **{k: (None if v is None else int(v)) for k, v in values.items()},
    )


class VersionMismatch(ValueError):
    pass


def cache_store(rec: InvariantRecord, cache_dir: Path | str) -> Path:
    path = _cache_path(Path(cache_dir), rec.order, rec.catalogue_id)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(record_to_json(rec))
    tmp.replace(path)
    return path


def cache_load(
    order: int, catalogue_id: int, cache_dir: Path | str, presentation_hash: str | None = None
) -> InvariantRecord | None:
    """Cached record, or None on a miss (absent, stale, corrupt or foreign)."""
    path = _cache_path(Path(cache_dir), order, catalogue_id)
    if not path.exists():
        return None
    try:
        rec = record_from_json(path.read_text())
    except VersionMismatch as exc:
        log.info("cache miss for %s: %s", path.name, exc)
        return None
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring corrupt cache file %s: %s", path, exc)
        return None
    if (rec.order, rec.catalogue_id) != (order, catalogue_id):
        log.warning("ignoring cache file %s: it describes group (%d, %d)", path, rec.order, rec.catalogue_id)
        return None
    if presentation_hash is not None and rec.presentation_hash != presentation_hash:
        log.warning("ignoring cache file %s: presentation changed", path)
        return None
    return rec


# ---------------------------------------------------------------- records


def _compute(args: tuple[CatalogueEntry, frozenset[int], int, int]) -> InvariantRecord:
    entry, tiers, threads, split_bits = args
    return compute_record(entry, tiers, threads=threads, split_bits=split_bits)


def ensure_records(
    entries: Iterable[CatalogueEntry],
    tiers: Iterable[int],
    cache_dir: Path | str | None = None,
    force: bool = False,
    threads: int = 1,
    split_bits: int = 8,
    records: dict[int, InvariantRecord] | None = None,
    failed: dict[int, str] | None = None,
) -> dict[int, InvariantRecord]:
    """Make sure every entry has the requested tiers, using and updating the cache.

    Tiers 1 and 2 are spread over ``threads`` worker processes, one group
    each; tier 3 runs groups one after another with ``threads`` counter threads.
    """
    tiers = frozenset(tiers)
    records = {} if records is None else records
    failed = {} if failed is None else failed
    todo: list[tuple[CatalogueEntry, frozenset[int]]] = []
    for e in entries:
        rec = records.get(e.catalogue_id)
        if rec is None and cache_dir is not None and not force:
            rec = cache_load(e.order, e.catalogue_id, cache_dir, e.content_hash())
            if rec is not None:
                records[e.catalogue_id] = rec
        have = rec.tiers if rec is not None else frozenset()
        # with force the cache was skipped, so `have` only reflects this run
        missing = tiers - have
        if missing:
            todo.append((e, missing))

    def accept(e: CatalogueEntry, new: InvariantRecord) -> None:
        old = records.get(e.catalogue_id)
        rec = new if old is None else new.merge(old)
        records[e.catalogue_id] = rec
        if cache_dir is not None:
            cache_store(rec, cache_dir)

    cheap = [(e, t & {1, 2}) for e, t in todo if t & {1, 2}]
    if threads > 1 and len(cheap) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            futs = [(e, pool.submit(_compute, (e, t, 1, split_bits))) for e, t in cheap]
            for e, fut in futs:
                try:
                    accept(e, fut.result())
                except Exception as exc:  # reported per group, run continues
                    failed[e.catalogue_id] = f"{type(exc).__name__}: {exc}"
    else:
        for e, t in cheap:
            try:
                accept(e, compute_record(e, t, split_bits=split_bits))
            except Exception as exc:
                failed[e.catalogue_id] = f"{type(exc).__name__}: {exc}"
    for e, t in todo:
        if 3 in t and e.catalogue_id not in failed:
            log.info("counting involutions of V(K %s)", e.label)
            try:
                accept(e, compute_record(e, {3}, threads=threads, split_bits=split_bits))
            except Exception as exc:
                failed[e.catalogue_id] = f"{type(exc).__name__}: {exc}"
    return records


# ---------------------------------------------------------------- splitting


def invariant_vector(rec: InvariantRecord, max_tier: int = 3) -> tuple:
    return tuple(rec.value(name) for name, tier, _ in LADDER if tier <= max_tier)


@dataclass
class SplitReport:
    order: int
    tiers: frozenset[int]
    ids: list[int]
    records: dict[int, InvariantRecord]
    families: list[tuple[tuple, list[int]]]
    resolution: dict[tuple[int, int], str | None]
    unresolved_pairs: list[tuple[int, int]]
    failed: dict[int, str] = field(default_factory=dict)
    toolkit: str = __version__

    def runtimes(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for rec in self.records.values():
            for k, v in rec.runtime_ms.items():
                out[k] = out.get(k, 0.0) + v
        return dict(sorted(out.items()))

    @property
    def separated(self) -> list[int]:
        bad = {i for pair in self.unresolved_pairs for i in pair}
        return [i for i in self.ids if i not in bad and i not in self.failed]


def _separating_invariant(a: InvariantRecord, b: InvariantRecord) -> str | None:
    for name, _, _ in LADDER:
        va, vb = a.value(name), b.value(name)
        if va is not None and vb is not None and va != vb:
            return name
    return None


def _classes(ids: list[int], records: dict[int, InvariantRecord], max_tier: int) -> dict[tuple, list[int]]:
    out: dict[tuple, list[int]] = {}
    for i in ids:
        out.setdefault(invariant_vector(records[i], max_tier), []).append(i)
    return out


def split_groups(
    order: int,
    tiers: Iterable[int] = ALL_TIERS,
    cache_dir: Path | str | None = None,
    force: bool = False,
    threads: int = 1,
    split_bits: int = 8,
    early_stop: bool = True,
    entries: list[CatalogueEntry] | None = None,
) -> SplitReport:
    """Run the invariant ladder over the eligible groups of ``order``.

    With ``early_stop`` a tier is only computed for groups that still share
    their invariant vector with another group.
    """
    tiers = frozenset(tiers)
    if not tiers or not tiers <= ALL_TIERS:
        raise ValueError(f"tiers must be a nonempty subset of {sorted(ALL_TIERS)}")
    groups = eligible_groups(order, entries)
    by_id = {e.catalogue_id: e for e in groups}
    ids = sorted(by_id)
    records: dict[int, InvariantRecord] = {}
    failed: dict[int, str] = {}
    for tier in sorted(tiers):
        live = [i for i in ids if i not in failed]
        if early_stop and tier > min(tiers):
            done = sorted(t for t in tiers if t < tier)
            classes = _classes(live, records, done[-1])
            live = [i for members in classes.values() if len(members) > 1 for i in members]
        ensure_records(
            [by_id[i] for i in live], {tier}, cache_dir, force, threads, split_bits, records, failed
        )
    ok = [i for i in ids if i not in failed]
    fam_tier = 1 if 1 in tiers else max(tiers)
    fam_key = (lambda r: (r.center_order_log2, r.frattini_order_log2)) if fam_tier == 1 else (
        lambda r: invariant_vector(r, fam_tier)
    )
    fams: dict[tuple, list[int]] = {}
    for i in ok:
        fams.setdefault(fam_key(records[i]), []).append(i)
    families = sorted(fams.items(), key=lambda kv: (tuple(-1 if v is None else v for v in kv[0]), kv[1]))
    resolution = {}
    unresolved = []
    for _, members in families:
        for a, b in combinations(members, 2):
            sep = _separating_invariant(records[a], records[b])
            resolution[(a, b)] = sep
            if sep is None:
                unresolved.append((a, b))
    return SplitReport(order, tiers, ids, records, families, resolution, sorted(unresolved), failed)


# ---------------------------------------------------------------- rendering

PLACEHOLDER = "n/c"


def _pow2(k: int | None) -> str:
    return PLACEHOLDER if k is None else f"2^{k}"


def _num(v: int | None) -> str:
    return PLACEHOLDER if v is None else str(v)


def _factored(v: int | None) -> str:
    """``2^a * b`` with ``b`` odd."""
    if v is None:
        return PLACEHOLDER
    if v == 0:
        return "0"
    a = (v & -v).bit_length() - 1
    b = v >> a
    if a == 0:
        return str(b)
    return f"2^{a}" if b == 1 else f"2^{a}*{b}"


def render_markdown(report: SplitReport | None) -> str:
    out = io.StringIO()
    w = out.write
    if report is None:
        w("# Invariants of normalized unit groups V(KG), K = GF(2)\n")
        return out.getvalue()
    w(f"# Invariants of normalized unit groups V(KG), K = GF(2), |G| = {report.order}\n\n")
    w(f"Toolkit {report.toolkit}; tiers {','.join(map(str, sorted(report.tiers)))}; "
      f"{len(report.ids)} eligible groups (non-abelian, not of maximal class).\n")
    w(f"Values marked `{PLACEHOLDER}` were not computed.\n\n")

    w("## Families\n\n")
    if 1 in report.tiers:
        w("| Family | Catalogue numbers of G | Order of the center of V(KG) | Order of the Frattini subgroup of V(KG) |\n")
        w("|---|---|---|---|\n")
        for k, (key, members) in enumerate(report.families, start=1):
            w(f"| {k} | {','.join(map(str, members))} | {_pow2(key[0])} | {_pow2(key[1])} |\n")
    else:
        w("| Family | Catalogue numbers of G |\n|---|---|\n")
        for k, (_, members) in enumerate(report.families, start=1):
            w(f"| {k} | {','.join(map(str, members))} |\n")

    w("\n## Invariants per group\n\n")
    w("| Catalogue number of G | Center of V | Frattini subgroup of V | Exponent of center | "
      "Involutions in center | 2-class | Elements of order 2 | Solutions of x^2 = 1 |\n")
    w("|---|---|---|---|---|---|---|---|\n")
    for i in report.ids:
        rec = report.records.get(i)
        if rec is None:
            w(f"| {i} | failed | | | | | | |\n")
            continue
        w(f"| {i} | {_pow2(rec.center_order_log2)} | {_pow2(rec.frattini_order_log2)} | "
          f"{_num(rec.center_exponent)} | {_num(rec.center_involutions)} | {_num(rec.p_class)} | "
          f"{_num(rec.involutions)} | {_factored(rec.square_roots_of_one)} |\n")

    w("\n## Pair resolution within families\n\n")
    labels = {name: label for name, _, label in LADDER}
    pairs = sorted(report.resolution.items())
    if pairs:
        w("| Pair | Separated by |\n|---|---|\n")
        for (a, b), sep in pairs:
            w(f"| ({a},{b}) | {labels[sep] if sep else 'UNRESOLVED'} |\n")
    else:
        w("No pairs share a family.\n")

    w("\n## Unresolved pairs\n\n")
    if report.unresolved_pairs:
        for a, b in report.unresolved_pairs:
            w(f"- ({a},{b})\n")
    else:
        w("None: every eligible group is determined by the computed invariants of V(KG).\n")
    if report.failed:
        w("\n## Failed groups\n\n")
        for i, msg in sorted(report.failed.items()):
            w(f"- {i}: {msg}\n")
    return out.getvalue()


def render_csv(report: SplitReport | None) -> str:
    """Rows ``order, id, invariant, value, runtime_ms``."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["order", "id", "invariant", "value", "runtime_ms"])
    if report is None:
        return out.getvalue()
    for i in report.ids:
        rec = report.records.get(i)
        if rec is None:
            continue
        for name, _, _ in LADDER:
            v = rec.value(name)
            if v is None:
                continue
            rt = rec.runtime_ms.get(name)
            writer.writerow([rec.order, i, name, v, "" if rt is None else f"{rt:.3f}"])
    return out.getvalue()


def render_report(report: SplitReport | None, fmt: str = "markdown") -> str:
    if fmt == "markdown":
        return render_markdown(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"unknown report format {fmt!r}")
