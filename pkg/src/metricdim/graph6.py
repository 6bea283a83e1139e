"""Bit-exact codec for the graph6 interchange format.

A record is a run of printable bytes 63..126.  The order ``n`` comes first:
one byte ``n + 63`` for ``n <= 62``, or ``'~'`` plus three bytes holding an
18-bit big-endian value for ``63 <= n < 2**18``.  The ``'~~'`` prefix used
for even larger graphs is rejected.  After the header, the upper triangle of
the adjacency matrix follows in column-major order ``(0,1), (0,2), (1,2),
(0,3), ...``, packed big-endian six bits per byte with value ``byte - 63``
and zero padding to a byte boundary.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .graph import Graph

MAX_ORDER = 1 << 18
HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Base class for malformed graph6 input."""


class MalformedHeader(Graph6Error):
    pass


class NonPrintableByte(Graph6Error):
    pass


class TruncatedBitVector(Graph6Error):
    pass


class TrailingData(Graph6Error):
    pass


class PaddingBitsSet(Graph6Error):
    pass


class GraphTooLarge(Graph6Error):
    pass


def encode_graph6(g: Graph) -> str:
    """Canonical graph6 record for a labelled graph (no trailing newline)."""
    n = g.n
    if n >= MAX_ORDER:
        raise GraphTooLarge(f"graph6 supports n < {MAX_ORDER}, got {n}")
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(
            chr(((n >> shift) & 0x3F) + 63) for shift in (12, 6, 0)
        )
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    acc = 0
    adj = g.adj
    for v in range(1, n):
        col = adj[v]
        for u in range(v):
            acc = (acc << 1) | ((col >> u) & 1)
    acc <<= nbytes * 6 - nbits
    body = "".join(
        chr(((acc >> (6 * (nbytes - 1 - i))) & 0x3F) + 63) for i in range(nbytes)
    )
    return head + body


def decode_graph6(record: str | bytes) -> Graph:
    """Parse one graph6 record into a labelled graph.

    A trailing newline is stripped and a leading ``>>graph6<<`` marker is
    tolerated.  Every structural defect raises a ``Graph6Error`` subclass.
    """
    if isinstance(record, bytes):
        record = record.decode("latin-1")
    record = record.rstrip("\r\n")
    if record.startswith(HEADER):
        record = record[len(HEADER) :]
    if not record:
        raise MalformedHeader("empty record")
    codes = [ord(ch) for ch in record]
    for pos, c in enumerate(codes):
        if not 63 <= c <= 126:
            raise NonPrintableByte(f"byte {c} at offset {pos} outside 63..126")
    n, at = _parse_order(codes)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = codes[at:]
    if len(body) < nbytes:
        raise TruncatedBitVector(
            f"order {n} needs {nbytes} data bytes, found {len(body)}"
        )
    if len(body) > nbytes:
        raise TrailingData(
            f"order {n} needs {nbytes} data bytes, found {len(body)}"
        )
    acc = 0
    for c in body:
        acc = (acc << 6) | (c - 63)
    total = 6 * nbytes
    pad = total - nbits
    if pad and acc & ((1 << pad) - 1):
        raise PaddingBitsSet(f"{pad} padding bits are not all zero")
    adj = [0] * n
    i = total - 1
    for v in range(1, n):
        for u in range(v):
            if (acc >> i) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            i -= 1
    return Graph(n, adj, _validate=False)


def _parse_order(codes: list[int]) -> tuple[int, int]:
    if codes[0] != 126:
        if codes[0] == 63:
            raise MalformedHeader("order-0 records are not supported")
        return codes[0] - 63, 1
    if len(codes) >= 2 and codes[1] == 126:
        raise GraphTooLarge(f"very-long order form (n >= {MAX_ORDER}) rejected")
    if len(codes) < 4:
        raise MalformedHeader("long order form needs three bytes after '~'")
    n = ((codes[1] - 63) << 12) | ((codes[2] - 63) << 6) | (codes[3] - 63)
    if n < 63:
        raise MalformedHeader(f"non-canonical long order form for n={n}")
    return n, 4


def is_record_line(line: str) -> bool:
    """True for lines that carry a record: not blank, not a bare header.

    A ``>>graph6<<`` marker glued to a record on the same line still counts
    as a record; any other ``>``-prefixed line is a header to skip.
    """
    if not line:
        return False
    if line.startswith(">"):
        return line.startswith(HEADER) and len(line) > len(HEADER)
    return True


def stream_graph6(
    source: Iterable[str | bytes],
    strict: bool = False,
    on_error: Callable[[int, Graph6Error], None] | None = None,
) -> Iterator[tuple[int, Graph]]:
    """Decode a line-oriented stream of graph6 records lazily.

    Yields ``(line_number, graph)`` pairs, numbering lines from 1.  Blank
    lines and ``>``-prefixed header lines are skipped.  In the default
    lenient mode a malformed record is reported through ``on_error`` and the
    stream continues; with ``strict`` the error propagates.
    """
    for lineno, raw in enumerate(source, start=1):
        line = raw.decode("latin-1") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not is_record_line(line):
            continue
        try:
            yield lineno, decode_graph6(line)
        except Graph6Error as exc:
            if strict:
                raise Graph6Error(f"line {lineno}: {exc}") from exc
            if on_error is not None:
                on_error(lineno, exc)
