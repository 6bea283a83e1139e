"""High-throughput predicate scans over graph6 streams and small-order censuses.

``scan`` decodes a line-oriented graph6 stream, solves both dimensions for
every connected graph, and records the ones matching a dim/edim predicate.
Reports are deterministic regardless of worker count: counts are additive
and matches are sorted by line number at the end.

``verify_small_orders`` exhausts every labelled connected graph up to order
seven without any external stream.  Its hot loop avoids graph objects: each
vertex pair (or edge pair) turns into a bitmask of the landmarks that
separate it, and a landmark set resolves the graph exactly when it hits all
of those masks.  A deterministic sample of graphs is re-solved with the
regular solver as a running self-check.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .families import FamilyGraph, chain_order, make_chain
from .graph import Graph
from .graph6 import Graph6Error, decode_graph6, encode_graph6, is_record_line
from .solver import ResolveResult, edge_metric_dimension, metric_dimension

MAX_ENUM_ORDER = 7
MAX_ERROR_DETAILS = 1000  # diagnostics kept verbatim; the rest only counted
_SELF_CHECK_STRIDE = 9973  # prime, so the sample is spread over edge masks


class OrderTooLarge(ValueError):
    """Exhaustive labelled enumeration asked for an order beyond its limit."""


@dataclass(frozen=True)
class Predicate:
    """Comparison between the two dimensions of a scanned graph.

    Kinds: ``lt`` (edim < dim), ``gt`` (edim > dim), ``eq``, ``diff``
    (dim - edim equals ``diff``) and ``ratio`` (dim/edim at least ``ratio``,
    counting a positive dim over edim zero as infinite).  The optional caps
    bound the subset search for early exit; capped-out searches are finished
    exactly before a graph is reported, so caps never change the match set.
    """

    kind: str
    diff: int = 0
    ratio: Fraction = Fraction(1)
    dim_cap: int | None = None
    edim_cap: int | None = None

    def __post_init__(self):
        if self.kind not in ("lt", "gt", "eq", "diff", "ratio"):
            raise ValueError(f"unknown predicate kind {self.kind!r}")
        for cap in (self.dim_cap, self.edim_cap):
            if cap is not None and cap < 0:
                raise ValueError("caps must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "Predicate":
        head, sep, arg = text.partition(":")
        if head in ("lt", "gt", "eq") and not sep:
            return cls(head)
        if head == "diff" and sep:
            return cls("diff", diff=int(arg))
        if head == "ratio" and sep:
            return cls("ratio", ratio=Fraction(arg))
        raise ValueError(f"malformed predicate {text!r}")

    def matches(self, dim: int, edim: int) -> bool:
        if self.kind == "lt":
            return edim < dim
        if self.kind == "gt":
            return edim > dim
        if self.kind == "eq":
            return dim == edim
        if self.kind == "diff":
            return dim - edim == self.diff
        if edim == 0:
            return dim > 0
        return Fraction(dim, edim) >= self.ratio


@dataclass(frozen=True)
class ScanMatch:
    line: int
    record: str
    dim: int
    edim: int


@dataclass
class ScanReport:
    predicate: Predicate
    total: int = 0
    decoded: int = 0
    connected: int = 0
    matches: list[ScanMatch] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)
    error_total: int = 0
    wall_time: float = 0.0
    complete: bool = True
    resumed_from: int = 0


def _finish_exact(g: Graph, kind: str, cap: int | None) -> ResolveResult:
    solve = metric_dimension if kind == "vertex" else edge_metric_dimension
    res = solve(g, max_k=cap)
    if res is None:
        res = solve(g, min_k=(cap or 0) + 1)
    assert res is not None
    return res


def _evaluate(g: Graph, pred: Predicate) -> tuple[bool, int, int]:
    """Decide the predicate for one graph, returning exact dimensions.

    For the one-sided kinds the cheaper dimension is solved first and the
    other searched only up to that cardinality; the search resumes exactly
    when the graph turns out to be a match candidate.
    """
    if pred.kind in ("lt", "gt"):
        if pred.kind == "lt":
            edim = _finish_exact(g, "edge", pred.edim_cap).dimension
            probe = metric_dimension(g, max_k=edim)
            if probe is not None:
                return pred.matches(probe.dimension, edim), probe.dimension, edim
            dim = metric_dimension(g, min_k=edim + 1)
            assert dim is not None
            return True, dim.dimension, edim
        dim = _finish_exact(g, "vertex", pred.dim_cap).dimension
        probe = edge_metric_dimension(g, max_k=dim)
        if probe is not None:
            return pred.matches(dim, probe.dimension), dim, probe.dimension
        edim_res = edge_metric_dimension(g, min_k=dim + 1)
        assert edim_res is not None
        return True, dim, edim_res.dimension
    dim = _finish_exact(g, "vertex", pred.dim_cap).dimension
    edim = _finish_exact(g, "edge", pred.edim_cap).dimension
    return pred.matches(dim, edim), dim, edim


def _normalize_line(raw: str | bytes) -> str:
    line = raw.decode("latin-1") if isinstance(raw, bytes) else raw
    return line.strip()


def _scan_batch(payload: tuple[list[tuple[int, str]], Predicate]):
    batch, pred = payload
    decoded = connected = 0
    errors: list[tuple[int, str]] = []
    matches: list[ScanMatch] = []
    for lineno, line in batch:
        try:
            g = decode_graph6(line)
        except Graph6Error as exc:
            errors.append((lineno, str(exc)))
            continue
        decoded += 1
        if not g.is_connected():
            continue
        connected += 1
        ok, dim, edim = _evaluate(g, pred)
        if ok:
            matches.append(ScanMatch(lineno, line, dim, edim))
    return len(batch), decoded, connected, errors, matches


def _write_checkpoint(path: str, last_line: int, report: ScanReport) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write(f"last_line_processed={last_line}\n")
        fh.write(f"total={report.total}\n")
        fh.write(f"decoded={report.decoded}\n")
        fh.write(f"connected={report.connected}\n")
        fh.write(f"errors={report.error_total}\n")
        for m in sorted(report.matches, key=lambda m: m.line):
            fh.write(f"match={m.line}\t{m.record}\t{m.dim}\t{m.edim}\n")
    os.replace(tmp, path)


def _load_checkpoint(path: str, report: ScanReport) -> int:
    last = 0
    with open(path, encoding="ascii") as fh:
        for line in fh:
            key, _, value = line.rstrip("\n").partition("=")
            if key == "last_line_processed":
                last = int(value)
            elif key in ("total", "decoded", "connected"):
                setattr(report, key, int(value))
            elif key == "errors":
                report.error_total = int(value)
            elif key == "match":
                ln, rec, dim, edim = value.split("\t")
                report.matches.append(ScanMatch(int(ln), rec, int(dim), int(edim)))
    return last


def scan(
    source: Iterable[str | bytes],
    predicate: Predicate,
    *,
    jobs: int = 1,
    strict: bool = False,
    checkpoint: str | None = None,
    checkpoint_every: int = 10_000_000,
    batch_size: int = 512,
) -> ScanReport:
    """Test every connected graph of a graph6 stream against a predicate.

    Disconnected entries are counted and skipped; malformed lines become
    per-line diagnostics unless ``strict``.  With ``jobs > 1`` the stream is
    decoded and solved in worker processes, batch by batch, with bounded
    in-flight work.  A ``checkpoint`` file makes multi-hour scans resumable:
    progress is flushed every ``checkpoint_every`` records and picked up
    automatically when the file already exists.
    """
    report = ScanReport(predicate=predicate)
    start = time.monotonic()
    resume_line = 0
    if checkpoint and os.path.exists(checkpoint):
        resume_line = _load_checkpoint(checkpoint, report)
        report.resumed_from = resume_line
    since_checkpoint = 0
    last_line = resume_line

    def records() -> Iterator[tuple[int, str]]:
        for lineno, raw in enumerate(source, start=1):
            line = _normalize_line(raw)
            if not is_record_line(line) or lineno <= resume_line:
                continue
            yield lineno, line

    def absorb(result) -> None:
        nonlocal since_checkpoint, last_line
        batch_total, decoded, connected, errors, matches = result
        report.total += batch_total
        report.decoded += decoded
        report.connected += connected
        if strict and errors:
            lineno, msg = errors[0]
            raise Graph6Error(f"line {lineno}: {msg}")
        room = MAX_ERROR_DETAILS - len(report.errors)
        if room > 0:
            report.errors.extend(errors[:room])
        report.error_total += len(errors)
        report.matches.extend(matches)
        since_checkpoint += batch_total
        if checkpoint and since_checkpoint >= checkpoint_every:
            _write_checkpoint(checkpoint, last_line, report)
            since_checkpoint = 0

    try:
        if jobs <= 1:
            batch: list[tuple[int, str]] = []
            for item in records():
                batch.append(item)
                if len(batch) >= batch_size:
                    last_line = batch[-1][0]
                    absorb(_scan_batch((batch, predicate)))
                    batch = []
            if batch:
                last_line = batch[-1][0]
                absorb(_scan_batch((batch, predicate)))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                pending = []
                batch = []
                for item in records():
                    batch.append(item)
                    if len(batch) >= batch_size:
                        pending.append(
                            (batch[-1][0], pool.submit(_scan_batch, (batch, predicate)))
                        )
                        batch = []
                        while len(pending) >= jobs * 2:
                            line_mark, fut = pending.pop(0)
                            last_line = line_mark
                            absorb(fut.result())
                if batch:
                    pending.append(
                        (batch[-1][0], pool.submit(_scan_batch, (batch, predicate)))
                    )
                for line_mark, fut in pending:
                    last_line = line_mark
                    absorb(fut.result())
    except OSError:
        report.complete = False
    report.matches.sort(key=lambda m: m.line)
    if checkpoint and report.complete:
        _write_checkpoint(checkpoint, last_line, report)
    report.wall_time = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# Built-in exhaustive enumeration for small orders
# ---------------------------------------------------------------------------


def _mask_rows(mask: int, pairs: list[tuple[int, int]], n: int) -> list[int]:
    adj = [0] * n
    i = 0
    while mask:
        if mask & 1:
            u, v = pairs[i]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        mask >>= 1
        i += 1
    return adj


def _distance_rows(adj: list[int], n: int) -> list[tuple[int, ...]] | None:
    """BFS rows from every vertex, or None when the graph is disconnected."""
    full = (1 << n) - 1
    rows = []
    for s in range(n):
        row = [0] * n
        seen = frontier = 1 << s
        d = 0
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= adj[b.bit_length() - 1]
                f ^= b
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
            f = frontier
            while f:
                b = f & -f
                row[b.bit_length() - 1] = d
                f ^= b
        if seen != full:
            return None
        rows.append(tuple(row))
    return rows


def enumerate_labeled_connected(n: int) -> Iterator[Graph]:
    """Every labelled connected simple graph on ``n <= 7`` vertices, once each.

    All ``2**(n(n-1)/2)`` candidate edge sets are generated and filtered for
    connectivity; no isomorphism deduplication happens.
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise OrderTooLarge(f"labelled enumeration supports 1 <= n <= {MAX_ENUM_ORDER}")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        adj = _mask_rows(mask, pairs, n)
        if _distance_rows(adj, n) is not None:
            yield Graph(n, adj, _validate=False)


_SUBSET_MASKS: dict[int, list[list[int]]] = {}


def _subset_masks(n: int) -> list[list[int]]:
    """Landmark subsets per cardinality, one nibble-spaced bit per landmark.

    Landmark z occupies bit 4z so that subset masks combine directly with
    the nibble-packed distance signatures below.  Cached per order.
    """
    cached = _SUBSET_MASKS.get(n)
    if cached is None:
        cached = []
        for k in range(n + 1):
            level = []
            for combo in combinations(range(n), k):
                s = 0
                for z in combo:
                    s |= 1 << (4 * z)
                level.append(s)
            cached.append(level)
        _SUBSET_MASKS[n] = cached
    return cached


def _separation_masks(sigs: list[int], low: int) -> list[int]:
    """Per-pair masks of the landmarks that tell the two items apart.

    Each signature packs an item's distances to all landmarks into nibbles
    (hop counts at these orders fit in three bits), so the XOR of two
    signatures has a non-zero nibble exactly at the separating landmarks.
    Folding each nibble onto its low bit yields the pair's landmark mask in
    the same nibble-spaced layout as ``_subset_masks``.  Duplicates are
    collapsed and the result is sorted by popcount so covers fail fast.
    """
    masks: set[int] = set()
    ground = len(sigs)
    for a in range(ground):
        sa = sigs[a]
        for b in range(a + 1, ground):
            d = sa ^ sigs[b]
            d |= d >> 1
            d |= d >> 2
            masks.add(d & low)
    return sorted(masks, key=int.bit_count)


def _min_cover(masks: list[int], levels: list[list[int]]) -> int:
    """Smallest landmark set hitting every separation mask."""
    if not masks:
        return 0
    for k, level in enumerate(levels):
        if k == 0:
            continue
        for s in level:
            for m in masks:
                if not m & s:
                    break
            else:
                return k
    raise AssertionError("the full landmark set always separates")


def _census_dims(rows: list[tuple[int, ...]], edges: list[tuple[int, int]], n: int) -> tuple[int, int]:
    levels = _subset_masks(n)
    low = sum(1 << (4 * z) for z in range(n))
    vsigs = []
    for v in range(n):
        s = 0
        shift = 0
        for row in rows:
            s |= row[v] << shift
            shift += 4
        vsigs.append(s)
    dim = _min_cover(_separation_masks(vsigs, low), levels)
    if len(edges) <= 1:
        return dim, 0
    esigs = []
    for u, v in edges:
        s = 0
        shift = 0
        for row in rows:
            ru, rv = row[u], row[v]
            s |= (ru if ru < rv else rv) << shift
            shift += 4
        esigs.append(s)
    edim = _min_cover(_separation_masks(esigs, low), levels)
    return dim, edim


def _census_range(args: tuple[int, int, int, bool]) -> tuple[dict[int, int], list[str], int]:
    """Census of the labelled graphs with edge-set masks in ``[lo, hi)``."""
    n, lo, hi, self_check = args
    pairs = list(combinations(range(n), 2))
    hist: dict[int, int] = {}
    violations: list[str] = []
    checked = 0
    for mask in range(lo, hi):
        adj = _mask_rows(mask, pairs, n)
        rows = _distance_rows(adj, n)
        if rows is None:
            continue
        checked += 1
        edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        dim, edim = _census_dims(rows, edges, n)
        gap = dim - edim
        hist[gap] = hist.get(gap, 0) + 1
        if edim < dim or (self_check and mask % _SELF_CHECK_STRIDE == 0):
            g = Graph(n, adj, _validate=False)
            ref_dim = metric_dimension(g)
            ref_edim = edge_metric_dimension(g)
            assert ref_dim is not None and ref_edim is not None
            if (ref_dim.dimension, ref_edim.dimension) != (dim, edim):
                raise AssertionError(
                    f"census solver disagrees with exact solver on {encode_graph6(g)}"
                )
            if edim < dim:
                violations.append(encode_graph6(g))
    return hist, violations, checked


@dataclass
class SmallOrderReport:
    """Histogram of dim - edim per order plus any edim < dim offenders."""

    max_order: int
    histograms: dict[int, dict[int, int]] = field(default_factory=dict)
    violations: list[tuple[int, str]] = field(default_factory=list)
    graphs_checked: dict[int, int] = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def violation_free(self) -> bool:
        return not self.violations


def verify_small_orders(max_n: int, *, jobs: int = 1) -> SmallOrderReport:
    """Exhaust all connected labelled graphs with 3 <= n <= ``max_n``.

    Universality over labelled graphs implies universality over isomorphism
    classes, so an empty violation list certifies that no connected graph of
    these orders has edge dimension below vertex dimension.
    """
    if not 3 <= max_n <= MAX_ENUM_ORDER:
        raise OrderTooLarge(f"verify_small_orders supports 3 <= max_n <= {MAX_ENUM_ORDER}")
    report = SmallOrderReport(max_order=max_n)
    start = time.monotonic()
    for n in range(3, max_n + 1):
        top = 1 << (n * (n - 1) // 2)
        if jobs <= 1:
            parts = [_census_range((n, 0, top, True))]
        else:
            step = -(-top // (jobs * 4))
            chunks = [
                (n, lo, min(lo + step, top), True) for lo in range(0, top, step)
            ]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_census_range, chunks))
        hist: dict[int, int] = {}
        checked = 0
        for part_hist, part_violations, part_checked in parts:
            for gap, count in part_hist.items():
                hist[gap] = hist.get(gap, 0) + count
            report.violations.extend((n, rec) for rec in part_violations)
            checked += part_checked
        report.histograms[n] = dict(sorted(hist.items()))
        report.graphs_checked[n] = checked
    report.wall_time = time.monotonic() - start
    return report


@dataclass(frozen=True)
class RatioWitness:
    """A chain construction certifying a prescribed dim/edim ratio."""

    graph: FamilyGraph
    ell: int
    predicted_dim: int
    predicted_edim: int
    confirmed_dim: int | None
    confirmed_edim: int | None

    @property
    def predicted_ratio(self) -> Fraction:
        return Fraction(self.predicted_dim, self.predicted_edim)


def ratio_witness(q, *, confirm_order_limit: int = 24) -> RatioWitness:
    """Chain whose vertex-to-edge dimension ratio is at least ``q >= 1``.

    Even six-cycles pin the edge dimension at two while each extra copy adds
    one to the vertex dimension, so ``ell`` copies give ratio ``(2+ell)/2``.
    The dimensions are confirmed by the exact solver when the order stays
    within ``confirm_order_limit``.
    """
    q = Fraction(q)
    if q < 1:
        raise ValueError(f"ratio target must be at least 1, got {q}")
    ell = max(1, math.ceil(2 * q - 2))
    chain = make_chain(6, 1, 2, ell)
    predicted_dim, predicted_edim = 2 + ell, 2
    confirmed_dim = confirmed_edim = None
    if chain_order(6, 1, 2, ell) <= confirm_order_limit:
        dim_res = metric_dimension(chain.graph)
        edim_res = edge_metric_dimension(chain.graph)
        assert dim_res is not None and edim_res is not None
        confirmed_dim, confirmed_edim = dim_res.dimension, edim_res.dimension
    return RatioWitness(
        graph=chain,
        ell=ell,
        predicted_dim=predicted_dim,
        predicted_edim=predicted_edim,
        confirmed_dim=confirmed_dim,
        confirmed_edim=confirmed_edim,
    )
