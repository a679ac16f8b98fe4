"""Line-intersection graph, DIMACS export and exact maximum skew sets.

Vertices are numbered v(s, k, i) = s*d^2 + k*d + i, so vertex order is the
canonical line order.  Adjacency rows are Python ints used as bit vectors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

from .errors import InvalidCertificateError, ResourceLimitError
from .lines import LineId, neighbors
from .residue import SurfaceParams

DEFAULT_MAX_DEGREE = 258  # 3d^2 vertices, about 2e5 at the cap
DEFAULT_TIME_LIMIT = 900.0

OPTIMAL = "optimal"
LOWER_BOUND_ONLY = "lower_bound_only"
TIMEOUT = "timeout"
STATUSES = (OPTIMAL, LOWER_BOUND_ONLY, TIMEOUT)


def vertex_id(d: int, line: LineId) -> int:
    return line.s * d * d + line.k * d + line.i


def line_of(d: int, v: int) -> LineId:
    s, rest = divmod(v, d * d)
    k, i = divmod(rest, d)
    return LineId(s, k, i)


class IntersectionGraph:
    """Immutable intersection graph of the 3d^2 lines.

    Rows are generated from the incidence rules on first use and cached, so
    only the rows a caller touches are ever materialised.
    """

    def __init__(self, params: SurfaceParams):
        self.params = params
        self.d = params.d
        self.n = 3 * params.d ** 2
        self._rows: dict[int, int] = {}

    def neighbors(self, v: int) -> list[int]:
        self._check(v)
        return [vertex_id(self.d, l) for l in neighbors(self.params, line_of(self.d, v))]

    def row(self, v: int) -> int:
        bits = self._rows.get(v)
        if bits is None:
            bits = 0
            for u in self.neighbors(v):
                bits |= 1 << u
            self._rows[v] = bits
        return bits

    def rows(self) -> list[int]:
        return [self.row(v) for v in range(self.n)]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.row(u) >> v & 1)

    @property
    def edge_count(self) -> int:
        # regular of degree 4d - 2, checked in build_graph
        return self.n * (4 * self.d - 2) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors(u):
                if v > u:
                    yield u, v

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")


def build_graph(params: SurfaceParams, max_degree: int = DEFAULT_MAX_DEGREE) -> IntersectionGraph:
    if params.d > max_degree:
        raise ResourceLimitError(
            f"d={params.d} gives {3 * params.d ** 2} vertices, above the cap for d <= {max_degree}")
    graph = IntersectionGraph(params)
    expected = 4 * params.d - 2
    for v in range(graph.n):
        deg = graph.degree(v)
        if deg != expected:
            raise AssertionError(f"vertex {v} ({line_of(params.d, v)}) has degree {deg}, expected {expected}")
    return graph


def structural_upper_bound(params: SurfaceParams) -> int:
    """At most d pairwise skew lines inside each of L^0, L^1, L^2."""
    return 3 * params.d


@dataclass
class Certificate:
    vertices: tuple[int, ...]
    size: int
    status: str
    elapsed: float = 0.0
    nodes: int = 0

    def lines(self, d: int) -> list[LineId]:
        return [line_of(d, v) for v in sorted(self.vertices)]

    def to_text(self, d: int) -> str:
        body = "".join(f"{line}\n" for line in self.lines(d))
        return f"size {self.size} status {self.status}\n{body}"


def read_certificate(source: TextIO | str, d: int) -> Certificate:
    text = source if isinstance(source, str) else source.read()
    rows = [r.strip() for r in text.splitlines() if r.strip()]
    if not rows:
        raise InvalidCertificateError("empty certificate")
    head = rows[0].split()
    if len(head) != 4 or head[0] != "size" or head[2] != "status" or head[3] not in STATUSES:
        raise InvalidCertificateError(f"bad certificate header {rows[0]!r}")
    try:
        members = [LineId.parse(r) for r in rows[1:]]
    except ValueError as exc:
        raise InvalidCertificateError(str(exc)) from None
    for line in members:
        if line.s not in (0, 1, 2) or not (0 <= line.k < d and 0 <= line.i < d):
            raise InvalidCertificateError(f"line {line} out of range for d={d}")
    return Certificate(tuple(vertex_id(d, l) for l in members), int(head[1]), head[3])


def verify_certificate(graph: IntersectionGraph, cert: Certificate) -> bool:
    """Re-check a claimed skew set against the graph, independent of the solver."""
    for v in cert.vertices:
        if not isinstance(v, int) or not 0 <= v < graph.n:
            raise InvalidCertificateError(f"vertex id {v!r} out of range 0..{graph.n - 1}")
    members = set(cert.vertices)
    if len(members) != len(cert.vertices) or len(members) != cert.size:
        return False
    mask = 0
    for v in members:
        mask |= 1 << v
    return all(not graph.row(v) & mask for v in members)


def export_dimacs(graph: IntersectionGraph, sink: TextIO) -> None:
    """Write ``p edge n m`` and one ``e u v`` line per edge (1-based, u < v)."""
    sink.write(f"p edge {graph.n} {graph.edge_count}\n")
    for u, v in graph.edges():
        sink.write(f"e {u + 1} {v + 1}\n")


class _Stop(Exception):
    def __init__(self, status: str):
        self.status = status


class _Search:
    def __init__(self, graph: IntersectionGraph, deadline: float | None, node_limit: int | None):
        d = graph.d
        self.d = d
        self.n = graph.n
        self.adj = graph.rows()
        self.deadline = deadline
        self.node_limit = node_limit
        self.nodes = 0
        self.best: list[int] = []
        self.best_size = 0
        self.target = structural_upper_bound(graph.params)
        # each row of L^s, and each column (s = 0) or k+i class (s = 1, 2), is a clique
        self.fam_masks = []
        self.row_masks = []
        self.key_masks = []
        for s in range(3):
            fam, rows, keys = 0, [0] * d, [0] * d
            for k in range(d):
                for i in range(d):
                    bit = 1 << (s * d * d + k * d + i)
                    fam |= bit
                    rows[i] |= bit
                    keys[k if s == 0 else (k + i) % d] |= bit
            self.fam_masks.append(fam)
            self.row_masks.append(rows)
            self.key_masks.append(keys)

    def family_bound(self, P: int) -> int:
        total = 0
        for s in range(3):
            Ps = P & self.fam_masks[s]
            if not Ps:
                continue
            rows = sum(1 for m in self.row_masks[s] if Ps & m)
            keys = sum(1 for m in self.key_masks[s] if Ps & m)
            total += min(rows, keys)
        return total

    def cover_bound(self, P: int) -> int:
        """Greedy partition of P into cliques, lowest vertex first."""
        adj = self.adj
        count = 0
        while P:
            U, clique = P, 0
            while U:
                low = U & -U
                clique |= low
                U &= adj[low.bit_length() - 1]
            P &= ~clique
            count += 1
        return count

    def tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _Stop(LOWER_BOUND_ONLY)
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Stop(TIMEOUT)

    def record(self, chosen: list[int]) -> None:
        if len(chosen) > self.best_size:
            self.best = list(chosen)
            self.best_size = len(chosen)
            if self.best_size >= self.target:
                raise _Stop(OPTIMAL)

    def expand(self, P: int, chosen: list[int]) -> None:
        adj = self.adj
        chosen = list(chosen)
        while True:
            self.tick()
            if not P:
                self.record(chosen)
                return
            room = min(self.family_bound(P), self.cover_bound(P))
            if len(chosen) + room <= self.best_size:
                return
            pick, pick_deg, U = -1, -1, P
            while U:
                low = U & -U
                U ^= low
                v = low.bit_length() - 1
                deg = (adj[v] & P).bit_count()
                if deg <= 1:
                    # some maximum set contains a vertex of degree <= 1
                    pick, pick_deg = v, deg
                    break
                if deg > pick_deg:
                    pick, pick_deg = v, deg
            bit = 1 << pick
            if pick_deg <= 1:
                chosen.append(pick)
                P &= ~(adj[pick] | bit)
                continue
            self.expand(P & ~(adj[pick] | bit), chosen + [pick])
            P &= ~bit


def greedy_independent_set(graph: IntersectionGraph) -> list[int]:
    """Take vertices in id order whenever they miss everything taken so far."""
    taken, blocked = [], 0
    for v in range(graph.n):
        if not blocked >> v & 1:
            taken.append(v)
            blocked |= graph.row(v)
    return taken


def max_independent_set(
    graph: IntersectionGraph,
    time_limit: float | None = DEFAULT_TIME_LIMIT,
    initial_lower_bound: int | None = None,
    initial_solution: Iterable[int] | None = None,
    deterministic: bool = True,
    node_limit: int | None = None,
) -> Certificate:
    """Exact branch and bound for a largest set of pairwise skew lines.

    Branches on the vertex of highest degree among the remaining candidates
    (ties to the lowest id), include-branch first.  A node is pruned when the
    chosen count plus min(per-family bound, greedy clique-cover bound) cannot
    beat the incumbent.  ``initial_solution`` seeds the incumbent with a known
    skew set; ``initial_lower_bound`` alone restricts the search to sets at
    least that large.  Without a seed the incumbent starts from a greedy set.
    The search is single-threaded and fully deterministic
    regardless of ``deterministic``.

    Running out of ``time_limit`` seconds gives status ``timeout`` and
    exhausting ``node_limit`` gives ``lower_bound_only``; both keep the best
    set found so far.
    """
    start = time.monotonic()
    deadline = None if time_limit is None else start + time_limit
    search = _Search(graph, deadline, node_limit)
    if initial_solution is not None:
        seed = sorted(set(initial_solution))
        if not verify_certificate(graph, Certificate(tuple(seed), len(seed), LOWER_BOUND_ONLY)):
            raise InvalidCertificateError("initial solution is not a skew set")
        search.best, search.best_size = seed, len(seed)
    else:
        search.best = greedy_independent_set(graph)
        search.best_size = len(search.best)
    threshold_only = False
    if initial_lower_bound is not None and initial_lower_bound - 1 > search.best_size:
        # look only for sets of size >= initial_lower_bound
        search.best_size = initial_lower_bound - 1
        threshold_only = True

    def run() -> str:
        if search.best_size >= search.target:
            return OPTIMAL
        try:
            search.expand((1 << graph.n) - 1, [])
        except _Stop as stop:
            return stop.status
        return OPTIMAL

    status = run()
    if threshold_only and len(search.best) < initial_lower_bound and status == OPTIMAL:
        # the claimed lower bound was too high; search again without it
        search.best_size = len(search.best)
        status = run()
    elapsed = time.monotonic() - start
    best = tuple(sorted(search.best))
    return Certificate(best, len(best), status, elapsed, search.nodes)


def family_vertices(d: int, lines: Iterable[LineId]) -> list[int]:
    return sorted(vertex_id(d, LineId(*l)) for l in lines)
