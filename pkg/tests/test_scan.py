from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from metricdim import (
    OrderTooLarge,
    Predicate,
    chain_order,
    decode_graph6,
    disjoint_union,
    edge_metric_dimension,
    encode_graph6,
    enumerate_labeled_connected,
    make_chain,
    make_complete,
    make_cycle,
    make_path,
    metric_dimension,
    ratio_witness,
    scan,
    verify_small_orders,
)
from conftest import random_connected_graph


def connected_labeled_count(n: int) -> int:
    """Counting oracle: peel the component of vertex 1 off all graphs.

    Every labelled graph on n vertices decomposes uniquely into the
    connected component containing the first vertex (k vertices) and an
    arbitrary graph on the rest, which yields a recurrence for the
    connected count.
    """
    counts = [0, 1]
    for m in range(2, n + 1):
        total = 1 << (m * (m - 1) // 2)
        for k in range(1, m):
            total -= (
                math.comb(m - 1, k - 1)
                * counts[k]
                * (1 << ((m - k) * (m - k - 1) // 2))
            )
        counts.append(total)
    return counts[n]


def test_predicate_parse_and_match():
    assert Predicate.parse("lt").matches(3, 2)
    assert not Predicate.parse("lt").matches(2, 2)
    assert Predicate.parse("gt").matches(2, 3)
    assert Predicate.parse("eq").matches(2, 2)
    assert Predicate.parse("diff:1").matches(3, 2)
    assert not Predicate.parse("diff:1").matches(2, 3)
    assert Predicate.parse("ratio:3/2").matches(3, 2)
    assert not Predicate.parse("ratio:2").matches(3, 2)
    assert Predicate.parse("ratio:5").matches(1, 0)
    for bad in ("", "lte", "diff", "ratio", "diff:x"):
        with pytest.raises(ValueError):
            Predicate.parse(bad)
    with pytest.raises(ValueError):
        Predicate("lt", dim_cap=-1)


def _sample_stream() -> list[str]:
    graphs = [
        make_complete(2),  # dim 1, edim 0: the lone edim < dim case
        make_path(3),
        make_cycle(4),
        make_complete(4),
        make_cycle(6),
        disjoint_union(make_path(2), make_path(2)),  # skipped: disconnected
    ]
    return [encode_graph6(g) for g in graphs]


def test_scan_counts_and_matches():
    lines = _sample_stream()
    report = scan(lines, Predicate.parse("lt"))
    assert report.total == 6
    assert report.decoded == 6
    assert report.connected == 5
    assert [m.line for m in report.matches] == [1]
    assert (report.matches[0].dim, report.matches[0].edim) == (1, 0)
    assert report.complete


def test_scan_matches_reverify():
    report = scan(_sample_stream(), Predicate.parse("eq"))
    assert report.matches
    for m in report.matches:
        g = decode_graph6(m.record)
        assert metric_dimension(g).dimension == m.dim
        assert edge_metric_dimension(g).dimension == m.edim


def test_scan_accepts_glued_header_record():
    # a header marker glued to the first record still counts as a record
    report = scan([">>graph6<<A_", "Bw"], Predicate.parse("lt"))
    assert report.total == 2
    assert report.decoded == 2
    assert [m.line for m in report.matches] == [1]


def test_scan_lenient_and_strict():
    lines = ["A_", "??bad??", "Bw"]
    report = scan(lines, Predicate.parse("lt"))
    assert report.total == 3
    assert report.decoded == 2
    assert report.error_total == 1
    assert report.errors[0][0] == 2
    from metricdim import Graph6Error

    with pytest.raises(Graph6Error):
        scan(lines, Predicate.parse("lt"), strict=True)


def test_scan_caps_retained_error_details():
    from metricdim.scan import MAX_ERROR_DETAILS

    lines = ["!"] * (MAX_ERROR_DETAILS + 50) + ["A_"]
    report = scan(lines, Predicate.parse("lt"))
    assert report.error_total == MAX_ERROR_DETAILS + 50
    assert len(report.errors) == MAX_ERROR_DETAILS
    assert report.decoded == 1


def test_scan_deterministic_across_jobs():
    rng = random.Random(79)
    lines = [
        encode_graph6(random_connected_graph(rng, rng.randrange(4, 9), extra=2))
        for _ in range(60)
    ]
    serial = scan(lines, Predicate.parse("eq"), batch_size=7)
    parallel = scan(lines, Predicate.parse("eq"), jobs=2, batch_size=7)
    assert serial.matches == parallel.matches
    assert (serial.total, serial.decoded, serial.connected) == (
        parallel.total,
        parallel.decoded,
        parallel.connected,
    )


def test_scan_caps_never_change_matches():
    rng = random.Random(83)
    lines = [
        encode_graph6(random_connected_graph(rng, rng.randrange(4, 10), extra=3))
        for _ in range(10_000)
    ]
    plain = scan(lines, Predicate.parse("lt"))
    capped = scan(lines, Predicate("lt", dim_cap=2, edim_cap=2))
    assert plain.matches == capped.matches
    assert (plain.total, plain.decoded, plain.connected) == (
        capped.total,
        capped.decoded,
        capped.connected,
    )
    for kind in ("eq", "gt"):
        sample = lines[:1000]
        assert (
            scan(sample, Predicate.parse(kind)).matches
            == scan(sample, Predicate(kind, dim_cap=2, edim_cap=2)).matches
        )


def test_scan_checkpoint_resume(tmp_path):
    lines = _sample_stream()
    ckpt = tmp_path / "scan.ckpt"
    partial = scan(lines[:3], Predicate.parse("lt"), checkpoint=str(ckpt), checkpoint_every=1)
    assert ckpt.exists()
    assert partial.total == 3
    resumed = scan(lines, Predicate.parse("lt"), checkpoint=str(ckpt), checkpoint_every=1)
    assert resumed.resumed_from == 3
    fresh = scan(lines, Predicate.parse("lt"))
    assert resumed.total == fresh.total
    assert resumed.decoded == fresh.decoded
    assert resumed.connected == fresh.connected
    assert resumed.matches == fresh.matches
    # resuming a finished scan re-reads nothing and keeps the report intact
    again = scan(lines, Predicate.parse("lt"), checkpoint=str(ckpt))
    assert again.resumed_from == len(lines)
    assert again.total == fresh.total
    assert again.matches == fresh.matches


def test_scan_parallel_checkpointing(tmp_path):
    rng = random.Random(89)
    lines = [
        encode_graph6(random_connected_graph(rng, rng.randrange(4, 8), extra=2))
        for _ in range(30)
    ]
    ckpt = tmp_path / "par.ckpt"
    first = scan(
        lines, Predicate.parse("eq"), jobs=2, batch_size=4,
        checkpoint=str(ckpt), checkpoint_every=8,
    )
    assert ckpt.exists()
    again = scan(lines, Predicate.parse("eq"), checkpoint=str(ckpt))
    assert again.resumed_from == 30
    assert again.matches == first.matches
    assert again.total == first.total == 30


def test_scan_handles_io_failure():
    def broken():
        yield "A_"
        raise OSError("disk gone")

    report = scan(broken(), Predicate.parse("lt"), batch_size=1)
    assert not report.complete
    assert report.total == 1


def test_scan_agrees_with_census_on_exhaustive_stream():
    # two independent pipelines over all labelled connected order-5 graphs:
    # the census histogram and a full scan must see the same world
    lines = [encode_graph6(g) for g in enumerate_labeled_connected(5)]
    report = scan(lines, Predicate.parse("lt"))
    census = verify_small_orders(5)
    assert report.connected == census.graphs_checked[5] == 728
    assert not report.matches
    assert census.violation_free
    eq_report = scan(lines, Predicate.parse("eq"))
    assert len(eq_report.matches) == census.histograms[5].get(0, 0)


def test_scan_isomorphism_free_atlas_stream():
    # the graph atlas is an external isomorphism-free census up to order 7,
    # the same shape of stream the big reproductions consume
    import networkx as nx

    from metricdim import Graph

    by_order = {n: 0 for n in range(3, 8)}
    lines = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n < 3 or not nx.is_connected(g):
            continue
        relabelled = nx.convert_node_labels_to_integers(g)
        lines.append(encode_graph6(Graph.from_edges(n, relabelled.edges())))
        by_order[n] += 1
    assert by_order == {3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
    report = scan(lines, Predicate.parse("lt"))
    assert report.connected == sum(by_order.values())
    assert not report.matches


def test_enumerate_counts_match_recurrence():
    assert [connected_labeled_count(n) for n in range(1, 5)] == [1, 1, 4, 38]
    for n in range(1, 6):
        graphs = list(enumerate_labeled_connected(n))
        assert len(graphs) == connected_labeled_count(n)
        assert len({g.adj for g in graphs}) == len(graphs)
    with pytest.raises(OrderTooLarge):
        next(enumerate_labeled_connected(8))


def test_verify_small_orders_basic():
    report = verify_small_orders(4)
    assert report.violation_free
    assert report.graphs_checked == {3: 4, 4: 38}
    for hist in report.histograms.values():
        assert all(gap <= 0 for gap in hist)
        assert sum(hist.values()) in (4, 38)
    with pytest.raises(OrderTooLarge):
        verify_small_orders(8)
    with pytest.raises(OrderTooLarge):
        verify_small_orders(2)


def test_verify_small_orders_jobs_agree():
    serial = verify_small_orders(4)
    parallel = verify_small_orders(4, jobs=2)
    assert serial.histograms == parallel.histograms
    assert serial.violations == parallel.violations


def test_ratio_witness_targets():
    w = ratio_witness(2)
    assert w.ell == 2
    assert (w.predicted_dim, w.predicted_edim) == (4, 2)
    assert (w.confirmed_dim, w.confirmed_edim) == (4, 2)
    assert w.graph.graph.n == chain_order(6, 1, 2, 2)

    w1 = ratio_witness(1)
    assert w1.ell == 1
    assert w1.predicted_ratio == Fraction(3, 2)

    w3 = ratio_witness(3)
    assert w3.ell == 4
    assert (w3.predicted_dim, w3.predicted_edim) == (6, 2)
    assert w3.confirmed_dim is None  # order 44 stays outside the solve budget

    with pytest.raises(ValueError):
        ratio_witness(Fraction(1, 2))


def test_chain_prediction_consistency():
    # the witness construction chains even-cycle gadgets; solver agrees for 2 copies
    chain = make_chain(6, 1, 2, 2).graph
    assert metric_dimension(chain).dimension == 4
    assert edge_metric_dimension(chain).dimension == 2
