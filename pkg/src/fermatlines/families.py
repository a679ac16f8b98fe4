"""Skew families of lines: validation, explicit constructions, completion, file I/O."""

from __future__ import annotations

import io
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

import networkx as nx

from ._tables import BUILTIN_FAMILIES
from .errors import (
    ConstructionFailedError,
    InvalidFamilyError,
    InvalidLineError,
    UnsupportedDegreeError,
)
from .lines import LineId, check_line, meets
from .residue import SurfaceParams, phi_minus, phi_plus, psi


@dataclass(frozen=True)
class Family:
    d: int
    lines: frozenset[LineId]
    label: str = ""

    @classmethod
    def from_lines(cls, d: int, lines: Iterable, label: str = "") -> "Family":
        members = [LineId(*l) for l in lines]
        if len(set(members)) != len(members):
            dupes = sorted({l for l in members if members.count(l) > 1})
            raise InvalidFamilyError(f"duplicate lines in family: {[tuple(l) for l in dupes]}")
        params = SurfaceParams(d)
        for line in members:
            try:
                check_line(params, line)
            except InvalidLineError as exc:
                raise InvalidFamilyError(str(exc)) from None
        return cls(d, frozenset(members), label)

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(sorted(self.lines))

    def part(self, s: int) -> list[LineId]:
        """C^s, the members in family L^s, in canonical order."""
        return sorted(l for l in self.lines if l.s == s)

    def sizes(self) -> tuple[int, int, int]:
        return tuple(len(self.part(s)) for s in range(3))

    def union(self, other: Iterable, label: str | None = None) -> "Family":
        return Family.from_lines(self.d, sorted(self.lines | {LineId(*l) for l in other}),
                                 self.label if label is None else label)


@dataclass
class ValidationReport:
    is_skew: bool
    violating_pair: tuple[LineId, LineId] | None
    sizes: tuple[int, int, int]
    # residue profiles, listed in canonical member order of each C^s
    phi_minus_c0: tuple[int, ...] = ()
    phi_plus_c0: tuple[int, ...] = ()
    phi_plus_c1: tuple[int, ...] = ()
    psi_c1: tuple[int, ...] = ()
    phi_plus_c2: tuple[int, ...] = ()
    psi_c2: tuple[int, ...] = ()
    members: tuple[tuple[LineId, ...], ...] = field(default=((), (), ()), repr=False)

    def __post_init__(self):
        assert self.is_skew == (self.violating_pair is None)


def _check_family(params: SurfaceParams, f: Family) -> None:
    if f.d != params.d:
        raise InvalidFamilyError(f"family is for d={f.d}, surface has d={params.d}")
    for line in f.lines:
        try:
            check_line(params, line)
        except InvalidLineError as exc:
            raise InvalidFamilyError(str(exc)) from None


def _report(params: SurfaceParams, f: Family, pair) -> ValidationReport:
    d = params.d
    c0, c1, c2 = (f.part(s) for s in range(3))
    report = ValidationReport(
        is_skew=pair is None,
        violating_pair=pair,
        sizes=(len(c0), len(c1), len(c2)),
        phi_minus_c0=tuple(phi_minus(d, l.k, l.i) for l in c0),
        phi_plus_c0=tuple(phi_plus(d, l.k, l.i) for l in c0),
        phi_plus_c1=tuple(phi_plus(d, l.k, l.i) for l in c1),
        psi_c1=tuple(psi(d, l.k, l.i) for l in c1),
        phi_plus_c2=tuple(phi_plus(d, l.k, l.i) for l in c2),
        psi_c2=tuple(psi(d, l.k, l.i) for l in c2),
        members=(tuple(c0), tuple(c1), tuple(c2)),
    )
    if report.is_skew:
        # a skew family has at most d lines in each L^s
        assert max(report.sizes) <= d, report.sizes
    return report


def is_skew_family(params: SurfaceParams, f: Family) -> ValidationReport:
    """Pairwise check; reports the first meeting pair in canonical order."""
    _check_family(params, f)
    members = sorted(f.lines)
    for x, a in enumerate(members):
        for b in members[x + 1:]:
            if meets(params, a, b):
                return _report(params, f, (a, b))
    return _report(params, f, None)


def _collisions(buckets: dict) -> list[tuple[LineId, LineId]]:
    out = []
    for group in buckets.values():
        if len(group) > 1:
            group.sort()
            out.append((group[0], group[1]))
    return out


def _cross(left: dict, right: dict) -> list[tuple[LineId, LineId]]:
    return [(min(left[key]), min(right[key])) for key in left.keys() & right.keys()]


def validate_structured(params: SurfaceParams, f: Family) -> ValidationReport:
    """Decide skewness from residue criteria only, without calling :func:`meets`.

    Within C^0 columns and rows must be distinct; within C^1 and C^2 rows and
    phi_+ values must be distinct.  Across families: no C^1 column lies in
    phi_-(C^0), no C^2 column lies in phi_+(C^0), and psi(C^1) avoids
    psi(C^2) + c (plain disjointness when d is odd and v = -1).
    """
    _check_family(params, f)
    d, c = params.d, params.c
    c0, c1, c2 = (f.part(s) for s in range(3))

    def bucket(lines, key):
        out = defaultdict(list)
        for l in lines:
            out[key(l)].append(l)
        return out

    pairs = []
    pairs += _collisions(bucket(c0, lambda l: l.k))
    pairs += _collisions(bucket(c0, lambda l: l.i))
    for cs in (c1, c2):
        pairs += _collisions(bucket(cs, lambda l: l.i))
        pairs += _collisions(bucket(cs, lambda l: phi_plus(d, l.k, l.i)))
    pairs += _cross(bucket(c0, lambda l: phi_minus(d, l.k, l.i)), bucket(c1, lambda l: l.k))
    pairs += _cross(bucket(c0, lambda l: phi_plus(d, l.k, l.i)), bucket(c2, lambda l: l.k))
    pairs += _cross(bucket(c1, lambda l: psi(d, l.k, l.i)),
                    bucket(c2, lambda l: (psi(d, l.k, l.i) + c) % d))
    return _report(params, f, min(pairs) if pairs else None)


# -- constructions -----------------------------------------------------------

def _mod_family(d: int, strata: dict[str, list[tuple[int, int, int]]], label: str) -> Family:
    lines = [LineId(s, k % d, i % d) for part in strata.values() for (s, k, i) in part]
    return Family.from_lines(d, lines, label)


def construct_even(d: int) -> Family:
    """Diagonal of L^0 plus the columns L^1_1 and L^2_1: 3d skew lines for even d."""
    if d % 2 or d < 4:
        raise UnsupportedDegreeError(f"construct_even needs even d >= 4, got {d}")
    lines = [LineId(0, a, a) for a in range(d)]
    lines += [LineId(s, 1, i) for s in (1, 2) for i in range(d)]
    return Family.from_lines(d, lines, f"even d={d}")


def construct_builtin(d: int) -> Family:
    if d not in BUILTIN_FAMILIES:
        raise UnsupportedDegreeError(f"no built-in family for d={d}; have {sorted(BUILTIN_FAMILIES)}")
    return Family.from_lines(d, BUILTIN_FAMILIES[d], f"builtin d={d}")


def odd_1mod4_strata(d: int) -> dict[str, list[tuple[int, int, int]]]:
    """Named strata of the 3d-line family for d = 4k + 1, indices not yet reduced."""
    if d % 4 != 1 or d < 13:
        raise UnsupportedDegreeError(f"need d = 1 mod 4 with d >= 13, got {d}")
    k = (d - 1) // 4
    return {
        "C0.i": [(0, 1 + i, 2 * k + i) for i in range(k + 1)],
        "C0.ii": [(0, k + i, k + i) for i in range(2, k)],
        "C0.iii": [(0, 2 * k + i, 1 + i) for i in range(k + 1)],
        "C0.iv": [(0, 3 * k + i, 3 * k + i) for i in range(1, k + 2)],
        "A1": [(1, 2 * k + 1, 2 * k + i) for i in range(1, k)],
        "A2": [(1, 3 * k + 1, 2 * k)],
        "A3": [(1, 1, k + i) for i in range(k)],
        "A4": [(1, 2 * k + 1, i) for i in range(k)],
        "A5": [(1, 3 * k + 2, 4 * k)],
        "A6": [(1, 2, 3 * k + i) for i in range(k)],
        "B1": [(2, 1, i) for i in range(k)],
        "B2": [(2, 2 * k + 2, 3 * k + i) for i in range(k + 1)],
        "B3": [(2, 2, 2 * k + i) for i in range(k)],
        "B4": [(2, 2 * k + 2, k + i) for i in range(k)],
    }


def construct_odd_1mod4(d: int) -> Family:
    return _mod_family(d, odd_1mod4_strata(d), f"odd d={d} (1 mod 4)")


def odd_3mod4_strata(d: int) -> dict[str, list[tuple[int, int, int]]]:
    """Named strata for d = 4k + 3.

    C^1 reuses the six strata of the d = 1 mod 4 pattern and has only
    4k + 1 = d - 2 members; :func:`construct_odd_3mod4` completes it.
    In C^0 the first stratum runs along a diagonal (L^0_{2k+1+i, i}) and the
    second has columns 3k+2+i; with row 0 and column k+1+i respectively the
    lines would share rows and columns.
    """
    if d % 4 != 3 or d < 15:
        raise UnsupportedDegreeError(f"need d = 3 mod 4 with d >= 15, got {d}")
    k = (d - 3) // 4
    return {
        "C0.i": [(0, 2 * k + 1 + i, i) for i in range(k + 2)],
        "C0.ii": [(0, 3 * k + 2 + i, 3 * k + i) for i in range(1, k + 3)],
        "C0.iii": [(0, 2 + i, 2 * k - 1 + i) for i in range(k + 2)],
        "C0.iv": [(0, k + 4 + i, k + 2 + i) for i in range(k - 3)],
        "A1": [(1, 2 * k + 1, 2 * k + i) for i in range(1, k)],
        "A2": [(1, 3 * k + 1, 2 * k)],
        "A3": [(1, 1, k + i) for i in range(k)],
        "A4": [(1, 2 * k + 1, i) for i in range(k)],
        "A5": [(1, 3 * k + 2, 4 * k)],
        "A6": [(1, 2, 3 * k + i) for i in range(k)],
        "B1": [(2, 3, i) for i in range(k + 1)],
        "B2": [(2, 2 * k + 4, k + 1 + i) for i in range(k + 1)],
        "B3": [(2, 2, 2 * k + 2 + i) for i in range(k + 1)],
        "B4": [(2, 2 * k + 4, 3 * k + 3 + i) for i in range(k)],
    }


def construct_odd_3mod4(d: int) -> Family:
    """3d skew lines for d = 4k + 3: C^0 and C^2 as listed, C^1 completed by search.

    The listed C^1 lines that are compatible with C^0 and C^2 (kept greedily
    in canonical order) seed an exact completion inside L^1; if that cannot
    reach d lines, C^1 is rebuilt from scratch by the same exact search.
    """
    strata = odd_3mod4_strata(d)
    params = SurfaceParams(d)
    base = _mod_family(d, {n: v for n, v in strata.items() if not n.startswith("A")}, "")
    if base.sizes() != (d, 0, d) or not is_skew_family(params, base).is_skew:
        raise ConstructionFailedError(f"C0 and C2 for d={d} are not {d} + {d} skew lines")

    candidates = sorted({LineId(s, k % d, i % d) for n, v in strata.items() if n.startswith("A") for s, k, i in v})
    kept: list[LineId] = []
    for line in candidates:
        if not any(meets(params, line, other) for other in [*base.lines, *kept]):
            kept.append(line)
    seeded = complete_family(params, base.union(kept), 1)
    if len(seeded.part(1)) == d:
        result, note = seeded, f"{len(kept)} listed C1 lines kept, {d - len(kept)} found by search"
    else:
        result, note = complete_family(params, base, 1), "C1 found by search"
    result = Family(d, result.lines, f"odd d={d} (3 mod 4); {note}")
    if len(result) != 3 * d or not is_skew_family(params, result).is_skew:
        raise ConstructionFailedError(f"could not complete C1 to {d} lines for d={d}")
    return result


def construct_2d(d: int, variant: str) -> Family:
    """2d skew lines: A = L^0 diagonal + L^1_1, B = L^0 anti-diagonal + L^2_1, C = D^1_0 + D^2_1."""
    if d < 3:
        raise UnsupportedDegreeError(f"need d >= 3, got {d}")
    if variant == "A":
        lines = [LineId(0, a, a) for a in range(d)] + [LineId(1, 1, i) for i in range(d)]
    elif variant == "B":
        lines = [LineId(0, a, (-a) % d) for a in range(d)] + [LineId(2, 1, i) for i in range(d)]
    elif variant == "C":
        lines = [LineId(1, k, i) for k in range(d) for i in range(d) if psi(d, k, i) == 0]
        lines += [LineId(2, k, i) for k in range(d) for i in range(d) if psi(d, k, i) == 1]
    else:
        raise ValueError(f"unknown 2d variant {variant!r}; expected A, B or C")
    return Family.from_lines(d, lines, f"2d variant {variant}")


def construct_auto(d: int) -> Family:
    if d % 2 == 0:
        return construct_even(d)
    if d in BUILTIN_FAMILIES:
        return construct_builtin(d)
    if d % 4 == 1:
        return construct_odd_1mod4(d)
    return construct_odd_3mod4(d)


def complete_family(params: SurfaceParams, f: Family, target_s: int) -> Family:
    """Extend a skew family by as many lines of L^target_s as possible.

    Candidates are the lines of L^s that avoid the forbidden columns and psi
    values imposed by the other two parts and whose row and second key
    (column for s = 0, k + i otherwise) are still free.  Inside one family two
    lines meet exactly when they share a row or a second key, so a largest
    extension is a maximum bipartite matching between free rows and free keys.
    """
    if target_s not in (0, 1, 2):
        raise ValueError(f"target family must be 0, 1 or 2, got {target_s}")
    if not is_skew_family(params, f).is_skew:
        raise InvalidFamilyError("complete_family needs a skew family as input")
    d, c = params.d, params.c
    c0, c1, c2 = (f.part(s) for s in range(3))
    second = (lambda k, i: k) if target_s == 0 else (lambda k, i: (k + i) % d)
    own = f.part(target_s)
    used_rows = {l.i for l in own}
    used_keys = {second(l.k, l.i) for l in own}

    if target_s == 0:
        banned_phi_minus = {l.k for l in c1}
        banned_phi_plus = {l.k for l in c2}
        allowed = lambda k, i: (phi_minus(d, k, i) not in banned_phi_minus
                                and phi_plus(d, k, i) not in banned_phi_plus)
    elif target_s == 1:
        banned_cols = {phi_minus(d, l.k, l.i) for l in c0}
        banned_psi = {(psi(d, l.k, l.i) + c) % d for l in c2}
        allowed = lambda k, i: k not in banned_cols and psi(d, k, i) not in banned_psi
    else:
        banned_cols = {phi_plus(d, l.k, l.i) for l in c0}
        banned_psi = {(psi(d, l.k, l.i) - c) % d for l in c1}
        allowed = lambda k, i: k not in banned_cols and psi(d, k, i) not in banned_psi

    graph = nx.Graph()
    rows = [("row", i) for i in range(d) if i not in used_rows]
    graph.add_nodes_from(rows)
    graph.add_nodes_from(("key", u) for u in range(d) if u not in used_keys)
    for i in range(d):
        if i in used_rows:
            continue
        for k in range(d):
            u = second(k, i)
            if u not in used_keys and allowed(k, i):
                graph.add_edge(("row", i), ("key", u), line=LineId(target_s, k, i))
    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=rows)
    added = [graph.edges[r, matching[r]]["line"] for r in rows if r in matching]
    result = f.union(added)
    if not is_skew_family(params, result).is_skew:
        raise ConstructionFailedError("completion produced a non-skew family")
    return result


# -- family files ------------------------------------------------------------

_HEADER = re.compile(r"#\s*d\s*=\s*(\d+)")


def write_family(f: Family, sink: TextIO) -> None:
    sink.write(f"# d={f.d}\n")
    if f.label:
        sink.write(f"# {f.label}\n")
    for line in f:
        sink.write(f"{line}\n")


def family_to_text(f: Family) -> str:
    buf = io.StringIO()
    write_family(f, buf)
    return buf.getvalue()


def read_family(source: TextIO | str | Path, d: int | None = None) -> Family:
    """Parse a family file; ``d`` overrides the ``# d=`` header when given."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            return read_family(fh, d)
    header_d = None
    lines = []
    for raw in source:
        text = raw.strip()
        if not text:
            continue
        if text.startswith("#"):
            m = _HEADER.match(text)
            if m and header_d is None:
                header_d = int(m.group(1))
            continue
        text = text.split("#", 1)[0]
        try:
            lines.append(LineId.parse(text))
        except ValueError as exc:
            raise InvalidFamilyError(f"bad family line {raw!r}: {exc}") from None
    degree = d if d is not None else header_d
    if degree is None:
        raise InvalidFamilyError("family file has no '# d=' header and no degree was given")
    return Family.from_lines(degree, lines)


def read_family_header(path: str | Path) -> int | None:
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            m = _HEADER.match(raw.strip())
            if m:
                return int(m.group(1))
    return None


def render_report(params: SurfaceParams, report: ValidationReport) -> str:
    """Plain-text tables of the residue profiles, one table per nonempty C^s."""
    out = []
    total = sum(report.sizes)
    verdict = "skew" if report.is_skew else "NOT skew"
    out.append(f"d={params.d}: {total} lines, {verdict}")
    out.append("sizes |C0|={} |C1|={} |C2|={}".format(*report.sizes))
    if report.violating_pair:
        a, b = report.violating_pair
        out.append(f"first meeting pair: {a} | {b}")
    rows = {
        0: (("phi-", report.phi_minus_c0), ("phi+", report.phi_plus_c0)),
        1: (("phi+", report.phi_plus_c1), ("psi", report.psi_c1)),
        2: (("phi+", report.phi_plus_c2), ("psi", report.psi_c2)),
    }
    for s in range(3):
        members = report.members[s]
        if not members:
            continue
        labels = [f"L{s}[{l.k},{l.i}]" for l in members]
        width = max(len(x) for x in labels)
        out.append("")
        out.append(f"C{s:<4} | " + " ".join(x.rjust(width) for x in labels))
        out.append("-" * (8 + (width + 1) * len(labels)))
        for name, values in rows[s]:
            out.append(f"{name:<5} | " + " ".join(str(v).rjust(width) for v in values))
    return "\n".join(out)
