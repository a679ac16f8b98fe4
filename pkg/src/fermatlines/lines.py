"""The 3d^2 lines of the Fermat surface as indexed objects and their incidence.

A line L^s_{k,i} is a :class:`LineId` ``(s, k, i)``.  Tuple ordering is the
canonical order (family, then column, then row).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import IdenticalLineError, InvalidLineError, UnsupportedViewError
from .residue import SurfaceParams


class LineId(NamedTuple):
    s: int
    k: int
    i: int

    def __str__(self) -> str:
        return f"{self.s} {self.k} {self.i}"

    @classmethod
    def parse(cls, text: str) -> "LineId":
        parts = text.split()
        if len(parts) != 3:
            raise ValueError(f"expected 's k i', got {text!r}")
        return cls(*(int(p) for p in parts))


def check_line(params: SurfaceParams, line: LineId) -> None:
    d = params.d
    s, k, i = line
    if s not in (0, 1, 2) or not (0 <= k < d and 0 <= i < d):
        raise InvalidLineError(f"line {tuple(line)} out of range for d={d}")


def enumerate_lines(params: SurfaceParams) -> list[LineId]:
    d = params.d
    return [LineId(s, k, i) for s in range(3) for k in range(d) for i in range(d)]


def meets(params: SurfaceParams, a: LineId, b: LineId) -> bool:
    """True iff the distinct lines ``a`` and ``b`` intersect."""
    if a == b:
        raise IdenticalLineError(f"meets() called on the same line {tuple(a)}")
    if a.s > b.s:
        a, b = b, a
    d = params.d
    (s, k, i), (t_s, t, j) = a, b
    if s == t_s == 0:
        return k == t or i == j
    if s == t_s:
        return i == j or (k + i - t - j) % d == 0
    if s == 0 and t_s == 1:
        return (i - k) % d == t
    if s == 0:
        return (i + k) % d == t
    # s == 1, t_s == 2: v^2 eta^(t+2j) = eta^(k+2i) with v^2 = eta^c
    return (k + 2 * i - t - 2 * j - params.c) % d == 0


def neighbors(params: SurfaceParams, line: LineId) -> list[LineId]:
    """All lines meeting ``line``, generated from the incidence rules, sorted."""
    d, c = params.d, params.c
    s, k, i = line
    out: set[LineId] = set()
    if s == 0:
        out.update(LineId(0, k, j) for j in range(d))
        out.update(LineId(0, t, i) for t in range(d))
        out.update(LineId(1, (i - k) % d, j) for j in range(d))
        out.update(LineId(2, (i + k) % d, j) for j in range(d))
    else:
        other = 3 - s
        out.update(LineId(s, t, i) for t in range(d))
        out.update(LineId(s, (k + i - j) % d, j) for j in range(d))
        if s == 1:
            out.update(LineId(0, a, (a + k) % d) for a in range(d))
            out.update(LineId(2, (k + 2 * i - c - 2 * j) % d, j) for j in range(d))
        else:
            out.update(LineId(0, a, (k - a) % d) for a in range(d))
            out.update(LineId(other, (k + 2 * i + c - 2 * j) % d, j) for j in range(d))
    out.discard(line)
    return sorted(out)


def degree_of(params: SurfaceParams, line: LineId) -> int:
    """Number of lines meeting ``line``, by brute force over all partners."""
    check_line(params, line)
    return sum(1 for b in enumerate_lines(params) if b != line and meets(params, line, b))


VIEW_KINDS = ("column", "diagonal", "anti_diagonal", "psi_fiber")


@dataclass(frozen=True)
class LineSetView:
    """Selector for a d-line subset.

    kind            s       param
    column          0,1,2   column index k
    diagonal        0       u, lines of L^0 with i - k = u
    anti_diagonal   0       u, lines of L^0 with i + k = u
    psi_fiber       1,2     u, lines of L^s with k + 2i = u
    """

    kind: str
    s: int
    param: int


def resolve_view(params: SurfaceParams, view: LineSetView) -> frozenset[LineId]:
    d = params.d
    kind, s, u = view.kind, view.s, view.param
    if kind not in VIEW_KINDS:
        raise UnsupportedViewError(f"unknown view kind {kind!r}")
    if s not in (0, 1, 2) or not 0 <= u < d:
        raise UnsupportedViewError(f"view parameters out of range: s={s}, param={u}")
    if kind == "column":
        out = [LineId(s, u, i) for i in range(d)]
    elif kind in ("diagonal", "anti_diagonal"):
        if s != 0:
            raise UnsupportedViewError(f"{kind} views are defined on L^0 only")
        sign = 1 if kind == "diagonal" else -1
        out = [LineId(0, k, (u + sign * k) % d) for k in range(d)]
    else:
        if s == 0:
            raise UnsupportedViewError("psi fibers are defined for s = 1, 2 only")
        out = [LineId(s, (u - 2 * i) % d, i) for i in range(d)]
    if kind != "column":
        for x in range(len(out)):
            for y in range(x + 1, len(out)):
                if meets(params, out[x], out[y]):
                    raise AssertionError(f"D-set {view} is not skew: {out[x]} meets {out[y]}")
    return frozenset(out)
