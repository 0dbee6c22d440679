"""Trades de volumen 2, grafo de trades, ciclos y cotas certificadas."""

import random
from collections import Counter
from itertools import combinations, permutations

import networkx as nx
import pytest

from conftest import random_permutation, to_block
from dirdesign.config import get_settings
from dirdesign.infra.catalog import catalog_design, catalog_get
from dirdesign.models.errors import DesignError
from dirdesign.models.schemas import BoundCertificate, BoundMethod, BoundMode, TradeEdge, TradeGraph
from dirdesign.tools.blocks import pair_coverage, relabel
from dirdesign.tools.trades import (
    build_trade_graph,
    cycle_indices,
    cyclical_trade_components,
    exact_bound,
    format_certificate,
    is_directed_trade,
    lower_bound,
    maximum_matching,
    min_vertex_cover,
    recheck_certificate,
    structural_bound,
    volume2_witness,
)
from dirdesign.tools.verifier import is_super_simple, verify_directed_design


# ===========================================
# TRADES
# ===========================================

def test_worked_example_trade():
    positive = [to_block("0132"), to_block("4510")]
    negative = [to_block("1032"), to_block("4501")]
    assert is_directed_trade(positive, negative)


def test_trade_sides_must_be_disjoint_and_balanced():
    block = to_block("0132")
    assert not is_directed_trade([block], [block])
    assert not is_directed_trade([to_block("0132")], [to_block("1032")])
    assert not is_directed_trade([], [])


def test_witness_found_for_worked_example():
    witness = volume2_witness(to_block("0132"), to_block("4510"))
    assert witness is not None
    assert is_directed_trade([to_block("0132"), to_block("4510")], list(witness))


def test_blocks_sharing_one_point_have_no_witness():
    assert volume2_witness(to_block("0132"), to_block("0467")) is None


def _splitter(b1, b2):
    """Enumeración independiente de pares {c1, c2} con la cobertura de {b1, b2}."""
    coverage = pair_coverage([b1, b2])
    points = sorted(set(b1) | set(b2))
    fitting = [
        c for c in permutations(points, len(b1))
        if c not in (b1, b2) and not Counter(combinations(c, 2)) - coverage
    ]
    for i, c1 in enumerate(fitting):
        for c2 in fitting[i:]:
            if pair_coverage([c1, c2]) == coverage:
                return True
    return False


@pytest.mark.parametrize("seed", range(100))
def test_witness_agrees_with_independent_splitter(seed):
    rng = random.Random(seed)
    design = catalog_design("dd-10" if seed % 2 == 0 else "dd-16")
    b1, b2 = rng.sample(design.blocks, 2)
    assert (volume2_witness(b1, b2) is not None) == _splitter(b1, b2)


# ===========================================
# GRAFO DE TRADES
# ===========================================

def test_dd4_graph_is_a_single_edge(dd4):
    graph = build_trade_graph(dd4)
    assert graph.edge_pairs() == {(0, 1)}


def test_dd10_graph_contains_the_published_trades(dd10):
    pairs = build_trade_graph(dd10).edge_pairs()
    for column in range(6):
        assert (2 * column, 2 * column + 1) in pairs
    assert {(12, 13), (13, 14), (12, 14)} <= pairs


def test_dd10_cyclical_trade_is_listed(dd10):
    graph = build_trade_graph(dd10)
    cycles = cycle_indices(graph.to_networkx())
    assert (12, 13, 14) in cycles
    blocks = cyclical_trade_components(dd10, graph)
    assert [to_block("0132"), to_block("4510"), to_block("2354")] in blocks


@pytest.mark.parametrize("seed", range(200))
def test_every_edge_witness_is_a_trade(seed):
    name = ("dd-7", "dd-10", "dd-13")[seed % 3]
    design = relabel(catalog_design(name), random_permutation(catalog_design(name).v, seed))
    graph = build_trade_graph(design)
    for edge in graph.edges:
        positive = [design.blocks[edge.u], design.blocks[edge.v]]
        assert is_directed_trade(positive, list(edge.witness))
        assert verify_directed_design(design.model_copy(update={
            "blocks": tuple(b for i, b in enumerate(design.blocks) if i not in (edge.u, edge.v)) + edge.witness
        })).passed


@pytest.mark.parametrize("seed", range(200))
def test_relabel_keeps_verdicts_and_bounds(seed):
    name = ("dd-4", "dd-7", "dd-10")[seed % 3]
    design = catalog_design(name)
    moved = relabel(design, random_permutation(design.v, seed))
    assert verify_directed_design(moved).passed
    assert is_super_simple(moved).passed == is_super_simple(design).passed
    original_graph = build_trade_graph(design)
    moved_graph = build_trade_graph(moved)
    assert moved_graph.edge_pairs() == original_graph.edge_pairs()
    assert structural_bound(moved_graph).bound == structural_bound(original_graph).bound
    assert exact_bound(moved_graph).bound == exact_bound(original_graph).bound


# ===========================================
# COTAS
# ===========================================

def _graph(n: int, edges) -> TradeGraph:
    return TradeGraph(vertex_count=n, edges=tuple(TradeEdge(u=u, v=v, witness=((), ())) for u, v in edges))


def test_odd_cycle_contributes_its_ceiling():
    graph = _graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    certificate = structural_bound(graph)
    assert certificate.method == BoundMethod.CYCLE_COVER
    assert certificate.cycles == ((0, 1, 2, 3, 4),)
    assert certificate.bound == 3
    assert recheck_certificate(graph, certificate)


def test_triangle_with_pendant_prefers_cycle_plus_matching():
    graph = _graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    certificate = structural_bound(graph)
    assert certificate.bound == 3
    assert recheck_certificate(graph, certificate)
    assert exact_bound(graph).bound == 3


def test_min_vertex_cover_of_a_star_and_a_path():
    star = nx.star_graph(6)
    assert min_vertex_cover(star, node_budget=1000) == {0}
    path = nx.path_graph(7)
    assert len(min_vertex_cover(path, node_budget=1000)) == 3


def test_maximum_matching_is_sorted():
    matching = maximum_matching(nx.path_graph(4))
    assert matching == [(0, 1), (2, 3)]


def test_recheck_rejects_tampered_certificates():
    graph = _graph(4, [(0, 1), (2, 3)])
    fake_edge = BoundCertificate(method=BoundMethod.MATCHING, matching=((0, 2), (1, 3)), bound=2)
    assert not recheck_certificate(graph, fake_edge)
    overlapping = BoundCertificate(method=BoundMethod.MATCHING, matching=((0, 1), (0, 1)), bound=2)
    assert not recheck_certificate(graph, overlapping)
    short_cover = BoundCertificate(
        method=BoundMethod.EXACT_VERTEX_COVER, exact_cover_value=1, cover=(0,), bound=1
    )
    assert not recheck_certificate(graph, short_cover)


def test_certificate_bound_must_match_its_terms():
    with pytest.raises(ValueError):
        BoundCertificate(method=BoundMethod.MATCHING, matching=((0, 1),), bound=2)


def test_exact_falls_back_over_the_vertex_limit(monkeypatch, dd10):
    monkeypatch.setenv("EXACT_COVER_VERTEX_LIMIT", "3")
    get_settings.cache_clear()
    certificate = lower_bound(dd10, mode="exact")
    assert certificate.method != BoundMethod.EXACT_VERTEX_COVER
    assert certificate.notes


def test_dd10_bounds(dd10):
    graph = build_trade_graph(dd10)
    structural = structural_bound(graph)
    exact = exact_bound(graph)
    assert structural.bound == 8
    assert exact.bound == 8
    assert recheck_certificate(graph, structural)
    assert recheck_certificate(graph, exact)


def test_format_certificate_names_blocks(dd10):
    certificate = lower_bound(dd10)
    text = format_certificate(certificate, dd10)
    assert text.startswith("method: cycle-cover\nbound: 8")
    assert "cycle[3]: 0132 , 4510 , 2354" in text


@pytest.mark.parametrize("entry", ["dd-16", "dd-28"])
def test_disjoint_trades_give_a_perfect_matching(entry):
    design = catalog_design(entry)
    certificate = lower_bound(design)
    assert certificate.bound == design.block_count // 2
    assert recheck_certificate(build_trade_graph(design), certificate)


@pytest.mark.parametrize(
    "entry,bound",
    [("dgdd-3^4", 10), ("dgdd-3^5", 15), ("dgdd-3^6", 23), ("dgdd-2^4-b", 5), ("dd-19", 29), ("dd-22", 39), ("dd-31", 78)],
)
def test_structural_bound_reaches_recorded_value(entry, bound):
    design = catalog_design(entry)
    graph = build_trade_graph(design)
    certificate = lower_bound(design, graph=graph)
    assert certificate.bound == bound
    assert catalog_get(entry).expected.bound == bound
    assert recheck_certificate(graph, certificate)


def test_dd19_certificate_has_two_triangles_and_a_pentagon():
    certificate = lower_bound(catalog_design("dd-19"))
    assert [set(c) for c in certificate.cycles] == [{46, 47, 48}, {49, 50, 51}, {52, 53, 54, 55, 56}]
    assert len(certificate.matching) == 22


@pytest.mark.parametrize("entry,cycle,trades", [("dd-22", range(66, 77), 33), ("dd-31", range(62, 155), 31)])
def test_long_cycle_in_one_large_component(entry, cycle, trades):
    design = catalog_design(entry)
    graph = build_trade_graph(design)
    assert len(_components_of(graph)) == 1
    certificate = lower_bound(design, graph=graph)
    assert certificate.method == BoundMethod.CYCLE_COVER
    assert [set(c) for c in certificate.cycles] == [set(cycle)]
    assert len(certificate.matching) == trades
    found = cyclical_trade_components(design, graph)
    assert [len(c) for c in found] == [len(cycle)]
    assert {design.blocks.index(b) for b in found[0]} == set(cycle)


def _components_of(graph):
    return [c for c in nx.connected_components(graph.to_networkx()) if len(c) > 1]


def test_long_odd_cycle_beyond_the_enumeration_bound():
    # 15-ciclo con caminos de largo 2 colgando de siete vértices: 8 + 7
    cycle = [tuple(sorted((i, (i + 1) % 15))) for i in range(15)]
    tails = [e for j in range(7) for e in ((2 * j, 15 + 2 * j), (15 + 2 * j, 16 + 2 * j))]
    graph = _graph(29, cycle + tails)
    certificate = structural_bound(graph)
    assert certificate.cycles and len(certificate.cycles[0]) == 15
    assert certificate.bound == 15
    assert recheck_certificate(graph, certificate)


def test_unknown_bound_mode_is_rejected(dd10):
    with pytest.raises(DesignError):
        lower_bound(dd10, mode="approximate")
    assert lower_bound(dd10, mode=BoundMode.EXACT).bound == 8


@pytest.mark.parametrize("entry", ["dgdd-3^4", "dgdd-3^5", "dgdd-2^4-b", "dd-19"])
def test_exact_bound_is_at_least_the_recorded_value(entry):
    design = catalog_design(entry)
    graph = build_trade_graph(design)
    certificate = lower_bound(design, mode=BoundMode.EXACT, graph=graph)
    assert certificate.bound >= catalog_get(entry).expected.bound
    assert recheck_certificate(graph, certificate)


@pytest.mark.slow
@pytest.mark.parametrize("entry,bound", [("dd-22", 39), ("dd-31", 78)])
def test_exact_bound_on_large_cyclic_designs(entry, bound):
    design = catalog_design(entry)
    graph = build_trade_graph(design)
    certificate = lower_bound(design, mode=BoundMode.EXACT, graph=graph)
    assert certificate.bound == bound
    assert recheck_certificate(graph, certificate)
