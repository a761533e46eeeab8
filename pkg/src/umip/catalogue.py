"""Catalogue of refined PC presentations for the groups of order 2 to 32.

Plain-text format, one block per group::

    group <order> <id>
    ngens <n>
    p <i> : <j1> <j2> ...        # g_i^2 = g_j1 g_j2 ..., indices 1-based, increasing, > i
    c <j> <i> : <k1> ...         # [g_j, g_i] with j > i; trivial tails are omitted
    fp classes=<k> center=<z> derived=<d> exponent=<e> abelian=<0|1> maxclass=<0|1> [abinv=<a1>,<a2>,...]
    end

``#`` starts a comment; blank lines are ignored.  The ``fp`` line is a stored
fingerprint that is recomputed and compared on every load.  ``abinv`` (the
abelian invariants of ``G/G'``) is optional.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import pcgroup
from .pcgroup import GroupPresentation, GroupTable, PresentationError, word_to_mask

NUMBER_OF_GROUPS = {2: 1, 4: 2, 8: 5, 16: 14, 32: 51}
TARGET_ORDERS = (16, 32)


class CatalogueError(ValueError):
    pass


class CatalogueParseError(CatalogueError):
    def __init__(self, source: str, line: int, column: int, msg: str) -> None:
        super().__init__(f"{source}:{line}:{column}: {msg}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Fingerprint:
    classes: int
    center: int
    derived: int
    exponent: int
    abelian: bool
    maxclass: bool
    abinv: tuple[int, ...] | None = None

    def matches(self, other: "Fingerprint") -> bool:
        mine = (self.classes, self.center, self.derived, self.exponent, self.abelian, self.maxclass)
        theirs = (other.classes, other.center, other.derived, other.exponent, other.abelian, other.maxclass)
        if mine != theirs:
            return False
        return self.abinv is None or other.abinv is None or self.abinv == other.abinv

    def format(self) -> str:
        s = (
            f"fp classes={self.classes} center={self.center} derived={self.derived} "
            f"exponent={self.exponent} abelian={int(self.abelian)} maxclass={int(self.maxclass)}"
        )
        if self.abinv is not None:
            s += " abinv=" + ",".join(map(str, self.abinv))
        return s


def compute_fingerprint(t: GroupTable) -> Fingerprint:
    n = t.order.bit_length() - 1
    nc = pcgroup.nilpotency_class(t)
    return Fingerprint(
        classes=len(pcgroup.conjugacy_classes(t)),
        center=len(pcgroup.center_of_group(t)),
        derived=len(pcgroup.derived_subgroup(t)),
        exponent=pcgroup.exponent(t),
        abelian=pcgroup.is_abelian(t),
        maxclass=n >= 3 and nc == n - 1,
        abinv=pcgroup.abelian_invariants(t),
    )


@dataclass(frozen=True)
class CatalogueEntry:
    order: int
    catalogue_id: int
    presentation: GroupPresentation
    fingerprint: Fingerprint

    @property
    def label(self) -> str:
        return f"SmallGroup({self.order},{self.catalogue_id})"

    def table(self) -> GroupTable:
        return _table(self.presentation)

    def content_hash(self) -> str:
        return presentation_hash(self.presentation)


@lru_cache(maxsize=None)
def _table(pres: GroupPresentation) -> GroupTable:
    return pcgroup.build_group_table(pres)


def presentation_text(pres: GroupPresentation) -> str:
    lines = [f"ngens {pres.ngens}"]
    for i in range(pres.ngens):
        w = pres.power_word(i)
        if w:
            lines.append(f"p {i + 1} : " + " ".join(str(k + 1) for k in w))
    for i in range(pres.ngens):
        for j in range(i + 1, pres.ngens):
            w = pres.commutator_word(j, i)
            if w:
                lines.append(f"c {j + 1} {i + 1} : " + " ".join(str(k + 1) for k in w))
    return "\n".join(lines) + "\n"


def presentation_hash(pres: GroupPresentation) -> str:
    return hashlib.sha256(presentation_text(pres).encode()).hexdigest()[:16]


def _ints(tokens: list[tuple[int, str]], source: str, lineno: int) -> list[int]:
    out = []
    for col, tok in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise CatalogueParseError(source, lineno, col, f"expected integer, got {tok!r}") from None
    return out


def _tokenize(line: str) -> list[tuple[int, str]]:
    toks = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        toks.append((i + 1, line[i:j]))
        i = j
    return toks


def _parse_fp(toks: list[tuple[int, str]], source: str, lineno: int) -> Fingerprint:
    vals: dict[str, str] = {}
    for col, tok in toks[1:]:
        key, eq, val = tok.partition("=")
        if not eq:
            raise CatalogueParseError(source, lineno, col, f"expected key=value, got {tok!r}")
        vals[key] = val
    required = ("classes", "center", "derived", "exponent", "abelian", "maxclass")
    for key in required:
        if key not in vals:
            raise CatalogueParseError(source, lineno, 1, f"fingerprint lacks {key!r}")
    unknown = set(vals) - set(required) - {"abinv"}
    if unknown:
        raise CatalogueParseError(source, lineno, 1, f"unknown fingerprint keys {sorted(unknown)}")
    try:
        abinv = None
        if "abinv" in vals:
            abinv = tuple(int(a) for a in vals["abinv"].split(",") if a)
        return Fingerprint(
            classes=int(vals["classes"]),
            center=int(vals["center"]),
            derived=int(vals["derived"]),
            exponent=int(vals["exponent"]),
            abelian=vals["abelian"] == "1",
            maxclass=vals["maxclass"] == "1",
            abinv=abinv,
        )
    except ValueError as exc:
        raise CatalogueParseError(source, lineno, 1, f"bad fingerprint value: {exc}") from None


def parse_catalogue(text: str, source: str = "<catalogue>") -> list[tuple[int, int, GroupPresentation, Fingerprint]]:
    """Parse catalogue text without building or verifying any group."""
    blocks = []
    cur: dict | None = None
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokenize(line)
        if not toks:
            continue
        kw = toks[0][1]
        if cur is None:
            if kw != "group":
                raise CatalogueParseError(source, lineno, toks[0][0], f"expected 'group', got {kw!r}")
            if len(toks) != 3:
                raise CatalogueParseError(source, lineno, 1, "expected 'group <order> <id>'")
            order, gid = _ints(toks[1:], source, lineno)
            cur = {"order": order, "id": gid, "ngens": None, "p": {}, "c": {}, "fp": None, "line": lineno}
            continue
        if kw == "ngens":
            if len(toks) != 2:
                raise CatalogueParseError(source, lineno, 1, "expected 'ngens <n>'")
            (cur["ngens"],) = _ints(toks[1:], source, lineno)
            if cur["order"] != 1 << cur["ngens"]:
                raise CatalogueParseError(source, lineno, toks[1][0], "order must equal 2^ngens")
        elif kw in ("p", "c"):
            if cur["ngens"] is None:
                raise CatalogueParseError(source, lineno, 1, "relation before 'ngens'")
            colons = [k for k, (_, t) in enumerate(toks) if t == ":"]
            nhead = 2 if kw == "p" else 3
            if colons != [nhead]:
                raise CatalogueParseError(source, lineno, 1, f"malformed {kw!r} line")
            head = _ints(toks[1:nhead], source, lineno)
            tail = _ints(toks[nhead + 1:], source, lineno)
            n = cur["ngens"]
            lo = head[-1]
            if any(not 1 <= h <= n for h in head) or (kw == "c" and head[0] <= head[1]):
                raise CatalogueParseError(source, lineno, toks[1][0], "generator index out of range")
            if any(b <= a for a, b in zip(tail, tail[1:])) or any(k <= lo or k > n for k in tail):
                raise CatalogueParseError(source, lineno, toks[nhead + 1][0] if tail else 1,
                                          "tail must be strictly increasing indices above the relation")
            mask = word_to_mask(k - 1 for k in tail)
            key = head[0] - 1 if kw == "p" else (head[0] - 1, head[1] - 1)
            if key in cur[kw]:
                raise CatalogueParseError(source, lineno, 1, f"duplicate relation {kw} {head}")
            cur[kw][key] = mask
        elif kw == "fp":
            cur["fp"] = _parse_fp(toks, source, lineno)
        elif kw == "end":
            if cur["ngens"] is None or cur["fp"] is None:
                raise CatalogueParseError(source, lineno, 1, "block lacks 'ngens' or 'fp'")
            n = cur["ngens"]
            try:
                pres = GroupPresentation(
                    n, tuple(cur["p"].get(i, 0) for i in range(n)), dict(cur["c"])
                )
            except PresentationError as exc:
                raise CatalogueParseError(source, cur["line"], 1, str(exc)) from None
            blocks.append((cur["order"], cur["id"], pres, cur["fp"]))
            cur = None
        else:
            raise CatalogueParseError(source, lineno, toks[0][0], f"unknown keyword {kw!r}")
    if cur is not None:
        raise CatalogueParseError(source, lineno + 1, 1, "unexpected end of file inside a group block")
    return blocks


def load_catalogue(path: str | Path | None = None, verify: bool = True) -> list[CatalogueEntry]:
    """Load, consistency-check and fingerprint-check a catalogue file.

    With ``path=None`` the packaged catalogue is used (and memoized).
    """
    if path is None:
        return list(_default_catalogue(verify))
    path = Path(path)
    return _load_text(path.read_text(), str(path), verify)


@lru_cache(maxsize=2)
def _default_catalogue(verify: bool) -> tuple[CatalogueEntry, ...]:
    text = resources.files("umip.data").joinpath("catalogue.txt").read_text()
    return tuple(_load_text(text, "catalogue.txt", verify))


def _load_text(text: str, source: str, verify: bool) -> list[CatalogueEntry]:
    entries = []
    seen = set()
    for order, gid, pres, fp in parse_catalogue(text, source):
        if (order, gid) in seen:
            raise CatalogueError(f"duplicate entry SmallGroup({order},{gid})")
        seen.add((order, gid))
        entry = CatalogueEntry(order, gid, pres, fp)
        if verify:
            try:
                table = entry.table()
            except PresentationError as exc:
                raise CatalogueError(f"{entry.label}: inconsistent presentation: {exc}") from None
            actual = compute_fingerprint(table)
            if not fp.matches(actual):
                raise CatalogueError(
                    f"{entry.label}: fingerprint mismatch: stored {fp.format()!r}, computed {actual.format()!r}"
                )
        entries.append(entry)
    by_order: dict[int, set[int]] = {}
    for e in entries:
        by_order.setdefault(e.order, set()).add(e.catalogue_id)
    for order, ids in by_order.items():
        expected = NUMBER_OF_GROUPS.get(order)
        if expected is not None and ids != set(range(1, expected + 1)):
            raise CatalogueError(f"order {order}: ids {sorted(ids)} do not cover 1..{expected}")
    return entries


def get_entry(order: int, catalogue_id: int, entries: list[CatalogueEntry] | None = None) -> CatalogueEntry:
    for e in entries if entries is not None else load_catalogue():
        if e.order == order and e.catalogue_id == catalogue_id:
            return e
    raise KeyError(f"no catalogue entry SmallGroup({order},{catalogue_id})")


def eligible_groups(order: int, entries: list[CatalogueEntry] | None = None) -> list[CatalogueEntry]:
    """Non-abelian groups not of maximal class, sorted by id."""
    if order not in TARGET_ORDERS:
        raise CatalogueError(f"order {order} is not a target order (expected one of {TARGET_ORDERS})")
    entries = entries if entries is not None else load_catalogue()
    out = [e for e in entries if e.order == order and not e.fingerprint.abelian and not e.fingerprint.maxclass]
    return sorted(out, key=lambda e: e.catalogue_id)
