"""Graph search over semigroups reachable by normalized Nash blowup.

Nodes are unimodular-equivalence classes of pointed semigroups, each kept
as the first representative discovered; edges remember the chart subset
and a certificate matrix onto the target representative.  Breadth-first
expansion stops at the depth or node limits; smooth nodes are leaves.  A
cycle of length k is a simple directed cycle in the class graph, i.e. a
chart at depth k from some node isomorphic to that node.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exactmath import Mat, identity, vec
from .iso import certificate_for_matrix, find_isomorphism, fingerprint, verify_certificate
from .nash import blowup_step, chart
from .semigroup import AffineSemigroup

DEFAULT_MAX_DEPTH = 4
DEFAULT_MAX_NODES = 10_000

TERMINATION_EXHAUSTED = "exhausted"
TERMINATION_DEPTH = "depth-limit"
TERMINATION_NODES = "node-limit"
TERMINATION_CYCLE = "cycle-found"


class GraphFormatError(ValueError):
    """Bad persisted graph; the message carries the offending line number."""


@dataclass
class GraphNode:
    key: str
    semigroup: AffineSemigroup
    depth: int
    smooth: bool


@dataclass
class GraphEdge:
    src: str
    dst: str
    subset: tuple[int, ...]  # 0-based indices into sorted H(source representative)
    certificate: Mat  # maps the saturated chart onto the target representative


@dataclass
class CycleRecord:
    length: int
    node_keys: tuple[str, ...]  # visiting order; node_keys[0] is lex-least
    certificates: tuple[Mat, ...]  # one per edge, aligned with node_keys


@dataclass
class SearchReport:
    characteristic: int
    normalized: bool
    nodes: dict[str, GraphNode]
    edges: list[GraphEdge]
    cycles: list[CycleRecord]
    frontier: list[str]  # unexpanded non-smooth node keys
    termination: str
    start_key: str

    @property
    def nodes_explored(self) -> int:
        return len(self.nodes)

    def cycle_lengths_found(self) -> set[int]:
        return {c.length for c in self.cycles}


def _node_is_smooth(s: AffineSemigroup) -> bool:
    try:
        return s.is_smooth()
    except ValueError:
        return False


class _ClassIndex:
    """Fingerprint buckets over node representatives."""

    def __init__(self) -> None:
        self.buckets: dict[bytes, list[str]] = {}

    def locate(
        self, s: AffineSemigroup, nodes: dict[str, GraphNode]
    ) -> tuple[bytes, Optional[str], Optional[IsoCertificate]]:
        fp = fingerprint(s).to_bytes()
        for key in self.buckets.get(fp, []):
            cert = find_isomorphism(s, nodes[key].semigroup)
            if cert is not None:
                return fp, key, cert
        return fp, None, None

    def insert(self, fp: bytes, key: str) -> None:
        self.buckets.setdefault(fp, []).append(key)


def _fresh_key(fp: bytes, index: _ClassIndex) -> str:
    digest = hashlib.sha256(fp).hexdigest()[:12]
    return f"{digest}-{len(index.buckets.get(fp, []))}"


def _chart_targets(
    s: AffineSemigroup, p: int, normalized: bool
) -> list[tuple[tuple[int, ...], AffineSemigroup]]:
    """(subset indices, chart target semigroup) for every pointed chart."""
    h = s.hilbert_basis()
    pos = {v: i for i, v in enumerate(h)}
    out = []
    for ch in blowup_step(s, p, normalized=normalized):
        if not ch.pointed:
            continue
        target = ch.normalized_chart if normalized else ch.chart_semigroup
        subset = tuple(sorted(pos[v] for v in ch.subset))
        out.append((subset, target))
    return out


def explore(
    start: AffineSemigroup,
    p: int,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_nodes: int = DEFAULT_MAX_NODES,
    cycle_lengths: Iterable[int] = (1,),
    normalized: bool = True,
    threads: int = 1,
    halt_on_cycle: bool = False,
    state: Optional[SearchReport] = None,
) -> SearchReport:
    """Breadth-first class graph from a saturated pointed start semigroup.

    With halt_on_cycle the walk stops early once some requested cycle
    length exists in the graph so far; otherwise it runs to exhaustion or
    to the depth/node limits.  Passing a loaded report as `state` resumes
    its frontier; its characteristic and mode must match.
    """
    wanted = sorted(set(int(k) for k in cycle_lengths))
    if any(k < 1 for k in wanted):
        raise ValueError("cycle lengths must be positive")

    index = _ClassIndex()
    if state is None:
        if not start.is_pointed:
            raise ValueError("search requires a pointed start semigroup")
        if not start.is_saturated():
            raise ValueError("search requires a saturated start semigroup")
        if not start.generates_full_lattice():
            raise ValueError("search requires a start semigroup spanning Z^d")
        fp = fingerprint(start).to_bytes()
        start_key = _fresh_key(fp, index)
        index.insert(fp, start_key)
        nodes = {start_key: GraphNode(start_key, start, 0, _node_is_smooth(start))}
        edges: list[GraphEdge] = []
        frontier = [] if nodes[start_key].smooth else [start_key]
    else:
        if state.characteristic != p or state.normalized != normalized:
            raise ValueError("resume state does not match the requested search")
        nodes = dict(state.nodes)
        edges = list(state.edges)
        frontier = list(state.frontier)
        start_key = state.start_key
        for key, node in nodes.items():
            index.insert(fingerprint(node.semigroup).to_bytes(), key)

    termination = TERMINATION_EXHAUSTED
    truncated_by_depth = False

    def expand(key: str) -> list[tuple[tuple[int, ...], AffineSemigroup]]:
        return _chart_targets(nodes[key].semigroup, p, normalized)

    pool = (
        concurrent.futures.ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    )
    try:
        while frontier:
            frontier.sort()
            layer = [k for k in frontier if nodes[k].depth < max_depth]
            if not layer:
                truncated_by_depth = True
                break
            depth_now = min(nodes[k].depth for k in layer)
            batch = [k for k in layer if nodes[k].depth == depth_now]
            rest = [k for k in frontier if k not in batch]

            if pool is not None:
                results = list(pool.map(expand, batch))
            else:
                results = [expand(k) for k in batch]

            stop = False
            new_frontier: list[str] = []
            for key, targets in zip(batch, results):
                depth = nodes[key].depth
                for subset, target in targets:
                    fp, found, cert = index.locate(target, nodes)
                    if found is None:
                        if len(nodes) >= max_nodes:
                            termination = TERMINATION_NODES
                            stop = True
                            break
                        found = _fresh_key(fp, index)
                        index.insert(fp, found)
                        node = GraphNode(found, target, depth + 1, _node_is_smooth(target))
                        nodes[found] = node
                        cert = certificate_for_matrix(target, identity(target.dim))
                        if not node.smooth:
                            new_frontier.append(found)
                    edges.append(GraphEdge(key, found, subset, cert.matrix))
                if stop:
                    break
                if halt_on_cycle and wanted:
                    if find_cycles(nodes, edges, wanted):
                        termination = TERMINATION_CYCLE
                        stop = True
                        break
            done = set(batch if not stop else batch[: batch.index(key) + 1])
            frontier = [k for k in rest if k not in done] + [
                k for k in new_frontier if k not in done
            ]
            if stop:
                break
    finally:
        if pool is not None:
            pool.shutdown()

    if termination == TERMINATION_EXHAUSTED and (truncated_by_depth or
            any(nodes[k].depth >= max_depth for k in frontier)):
        termination = TERMINATION_DEPTH

    cycles = find_cycles(nodes, edges, wanted)
    return SearchReport(
        characteristic=p,
        normalized=normalized,
        nodes=nodes,
        edges=edges,
        cycles=cycles,
        frontier=sorted(frontier),
        termination=termination,
        start_key=start_key,
    )


def find_cycles(
    nodes: dict[str, GraphNode], edges: Sequence[GraphEdge], lengths: Iterable[int]
) -> list[CycleRecord]:
    """Simple directed cycles of the requested lengths, one per node orbit.

    Each cycle is reported once, anchored at its lexicographically least
    node key; parallel edges contribute a single deterministic
    representative (the lex-least chart subset).
    """
    wanted = sorted(set(int(k) for k in lengths))
    if not wanted:
        return []
    best_edge: dict[tuple[str, str], GraphEdge] = {}
    for e in edges:
        cur = best_edge.get((e.src, e.dst))
        if cur is None or e.subset < cur.subset:
            best_edge[(e.src, e.dst)] = e
    adj: dict[str, list[str]] = {}
    for (src, dst) in best_edge:
        adj.setdefault(src, []).append(dst)
    for v in adj.values():
        v.sort()

    found: list[CycleRecord] = []
    seen: set[tuple[str, ...]] = set()
    maxlen = max(wanted)
    keys = sorted(nodes)

    def walk(anchor: str, path: list[str]) -> None:
        cur = path[-1]
        for nxt in adj.get(cur, []):
            if nxt == anchor and len(path) in wanted:
                tup = tuple(path)
                if tup not in seen:
                    seen.add(tup)
                    certs = []
                    cyc = path + [anchor]
                    for a, b in zip(cyc, cyc[1:]):
                        certs.append(best_edge[(a, b)].certificate)
                    found.append(
                        CycleRecord(length=len(path), node_keys=tup, certificates=tuple(certs))
                    )
            if nxt <= anchor or nxt in path:
                continue
            if len(path) < maxlen:
                walk(anchor, path + [nxt])

    for anchor in keys:
        walk(anchor, [anchor])
    found.sort(key=lambda c: (c.length, c.node_keys))
    return found


def verify_report_cycles(report: SearchReport) -> bool:
    """Re-derive each cycle edge's chart and check its certificate."""
    for cyc in report.cycles:
        ring = list(cyc.node_keys) + [cyc.node_keys[0]]
        for a, b, cert_matrix in zip(ring, ring[1:], cyc.certificates):
            edge = None
            for e in report.edges:
                if e.src == a and e.dst == b and e.certificate == cert_matrix:
                    edge = e
                    break
            if edge is None:
                return False
            src = report.nodes[a].semigroup
            h = src.hilbert_basis()
            subset = tuple(h[i] for i in edge.subset)
            ch = chart(src, subset, report.characteristic, normalize=report.normalized)
            if not ch.pointed:
                return False
            target = ch.normalized_chart if report.normalized else ch.chart_semigroup
            cert = certificate_for_matrix(target, cert_matrix)
            if not verify_certificate(target, report.nodes[b].semigroup, cert):
                return False
    return True


# ---------------------------------------------------------------------------
# persistence: one self-contained record per line
#
#   meta <characteristic> <normalized 0|1> <termination> <start-key>
#   node <key> <depth> <smooth 0|1> <dim> <ngens> <gen entries row-major>
#   edge <src> <dst> <subset indices comma-joined> <dim> <matrix row-major>
#   frontier <key>
# ---------------------------------------------------------------------------


def save_graph(report: SearchReport, path: str) -> None:
    lines = [
        "meta {} {} {} {}".format(
            report.characteristic,
            1 if report.normalized else 0,
            report.termination,
            report.start_key,
        )
    ]
    for key in sorted(report.nodes):
        n = report.nodes[key]
        gens = n.semigroup.hilbert_basis()  # minimal, so reloads stay canonical
        flat = " ".join(str(e) for g in gens for e in g)
        lines.append(
            f"node {key} {n.depth} {1 if n.smooth else 0} {n.semigroup.dim} {len(gens)} {flat}".rstrip()
        )
    for e in report.edges:
        subset = ",".join(str(i) for i in e.subset)
        dim = len(e.certificate)
        flat = " ".join(str(x) for col in zip(*e.certificate) for x in col)
        lines.append(f"edge {e.src} {e.dst} {subset} {dim} {flat}")
    for key in report.frontier:
        lines.append(f"frontier {key}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))


def load_graph(path: str) -> SearchReport:
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    nodes: dict[str, GraphNode] = {}
    edges: list[GraphEdge] = []
    frontier: list[str] = []
    meta: Optional[tuple[int, bool, str, str]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "meta":
                if meta is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate meta record")
                meta = (int(parts[1]), parts[2] == "1", parts[3], parts[4])
            elif kind == "node":
                key, depth, smooth, dim, ngens = (
                    parts[1],
                    int(parts[2]),
                    parts[3] == "1",
                    int(parts[4]),
                    int(parts[5]),
                )
                if key in nodes:
                    raise GraphFormatError(f"line {lineno}: duplicate node key {key}")
                entries = [int(x) for x in parts[6:]]
                if len(entries) != dim * ngens:
                    raise GraphFormatError(
                        f"line {lineno}: expected {dim * ngens} generator entries"
                    )
                gens = [vec(entries[i * dim : (i + 1) * dim]) for i in range(ngens)]
                s = AffineSemigroup(gens, dim)
                s._hilbert = s.generators
                nodes[key] = GraphNode(key, s, depth, smooth)
            elif kind == "edge":
                src, dst = parts[1], parts[2]
                subset = tuple(int(x) for x in parts[3].split(",")) if parts[3] else ()
                dim = int(parts[4])
                entries = [int(x) for x in parts[5:]]
                if len(entries) != dim * dim:
                    raise GraphFormatError(f"line {lineno}: expected {dim * dim} matrix entries")
                cols = tuple(
                    tuple(entries[r * dim + c] for r in range(dim)) for c in range(dim)
                )
                edges.append(GraphEdge(src, dst, subset, cols))
            elif kind == "frontier":
                frontier.append(parts[1])
            else:
                raise GraphFormatError(f"line {lineno}: unknown record kind {kind!r}")
        except GraphFormatError:
            raise
        except (IndexError, ValueError) as exc:
            raise GraphFormatError(f"line {lineno}: malformed {kind} record: {exc}") from None
    if meta is None:
        if nodes or edges or frontier:
            raise GraphFormatError("line 1: missing meta record")
        return SearchReport(0, True, {}, [], [], [], TERMINATION_EXHAUSTED, "")
    for e in edges:
        if e.src not in nodes or e.dst not in nodes:
            raise GraphFormatError(f"edge {e.src}->{e.dst} references a missing node")
    for key in frontier:
        if key not in nodes:
            raise GraphFormatError(f"frontier references a missing node {key}")
    p, normalized, termination, start_key = meta
    report = SearchReport(
        characteristic=p,
        normalized=normalized,
        nodes=nodes,
        edges=edges,
        cycles=[],
        frontier=sorted(frontier),
        termination=termination,
        start_key=start_key,
    )
    report.cycles = find_cycles(nodes, edges, _RELOAD_CYCLE_LENGTHS)
    return report


# cycles are recomputed on load; lengths past the default depth add nothing
_RELOAD_CYCLE_LENGTHS = (1, 2, 3, 4)
