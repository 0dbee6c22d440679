"""
trades.py
Trades dirigidos dentro de un diseño y su conversión en cotas inferiores
certificadas para el tamaño de un conjunto definidor.

Solo se enumeran trades de volumen 2; los trades mayores entran únicamente
como ciclos del grafo de trades (trades cíclicos).
"""

import logging
from collections import Counter
from collections.abc import Sequence
from itertools import combinations, permutations
from typing import Optional, Union

import networkx as nx

from dirdesign.config import get_settings
from dirdesign.models.errors import DesignError
from dirdesign.models.schemas import (
    AnyDesign,
    BoundCertificate,
    BoundMethod,
    BoundMode,
    OrderedBlock,
    TradeEdge,
    TradeGraph,
)
from dirdesign.tools.blocks import pair_coverage

logger = logging.getLogger(__name__)


# ===========================================
# TRADES
# ===========================================

def is_directed_trade(positive: Sequence[Sequence[int]], negative: Sequence[Sequence[int]]) -> bool:
    """T1 y T2 disjuntos, del mismo volumen y con igual cobertura de pares ordenados."""
    t1 = Counter(tuple(b) for b in positive)
    t2 = Counter(tuple(b) for b in negative)
    if len(positive) != len(negative) or not positive:
        return False
    if set(t1) & set(t2):
        return False
    return pair_coverage(positive) == pair_coverage(negative)


def _block_from_pairs(pairs: Counter, k: int) -> Optional[OrderedBlock]:
    """Reconstruye el único bloque cuyo conjunto de pares ordenados es `pairs`, si existe."""
    if any(count != 1 for count in pairs.values()):
        return None
    points = {x for pair in pairs for x in pair}
    if len(points) != k:
        return None
    out_degree = Counter(x for x, _ in pairs)
    block = tuple(sorted(points, key=lambda p: -out_degree[p]))
    if Counter(combinations(block, 2)) != pairs:
        return None
    return block


def volume2_witness(b1: Sequence[int], b2: Sequence[int]) -> Optional[tuple[OrderedBlock, OrderedBlock]]:
    """
    Busca T2 = {c1, c2} tal que {b1, b2} - {c1, c2} sea un trade dirigido.

    Recorre exhaustivamente los ordenamientos de puntos de la unión
    (T2 solo puede usar puntos de T1) y devuelve el primero encontrado.
    """
    b1, b2 = tuple(b1), tuple(b2)
    k = len(b1)
    coverage = pair_coverage([b1, b2])
    originals = {b1, b2}
    points = sorted(set(b1) | set(b2))
    for c1 in permutations(points, k):
        if c1 in originals:
            continue
        rest = coverage.copy()
        fits = True
        for pair in combinations(c1, 2):
            if rest[pair] == 0:
                fits = False
                break
            rest[pair] -= 1
        if not fits:
            continue
        c2 = _block_from_pairs(+rest, k)
        if c2 is None or c2 in originals:
            continue
        return c1, c2
    return None


# ===========================================
# GRAFO DE TRADES
# ===========================================

def _candidate_pairs(blocks: Sequence[OrderedBlock]) -> list[tuple[int, int]]:
    """
    Pares de bloques que comparten al menos 2 puntos.

    Si comparten a lo sumo uno, cualquier bloque sobre los pares de T1 es
    uno de los originales, así que no hay trade de volumen 2.
    """
    by_pair: dict[frozenset[int], list[int]] = {}
    for index, block in enumerate(blocks):
        for pair in combinations(block, 2):
            by_pair.setdefault(frozenset(pair), []).append(index)
    candidates: set[tuple[int, int]] = set()
    for indices in by_pair.values():
        for i, j in combinations(sorted(set(indices)), 2):
            candidates.add((i, j))
    return sorted(candidates)


def build_trade_graph(design: AnyDesign) -> TradeGraph:
    """Aristas = pares de bloques que admiten un trade de volumen 2 (con testigo)."""
    blocks = design.blocks
    edges = []
    for i, j in _candidate_pairs(blocks):
        witness = volume2_witness(blocks[i], blocks[j])
        if witness is not None:
            edges.append(TradeEdge(u=i, v=j, witness=witness))
    logger.info(f"Trade graph for {design.describe()}: {len(edges)} edges")
    return TradeGraph(vertex_count=len(blocks), edges=tuple(edges))


def maximum_matching(graph: nx.Graph) -> list[tuple[int, int]]:
    """Matching de cardinalidad máxima, aristas normalizadas y ordenadas."""
    matching = nx.max_weight_matching(graph, maxcardinality=True)
    return sorted(tuple(sorted(edge)) for edge in matching)


# ===========================================
# CICLOS
# ===========================================

def _walk_cycle(graph: nx.Graph, nodes) -> tuple[int, ...]:
    """Ordena un componente-ciclo empezando por su menor vértice."""
    start = min(nodes)
    cycle = [start]
    previous, current = start, min(graph.neighbors(start))
    while current != start:
        cycle.append(current)
        following = next(n for n in graph.neighbors(current) if n != previous)
        previous, current = current, following
    return tuple(cycle)


def _is_cycle_component(graph: nx.Graph, nodes) -> bool:
    return len(nodes) >= 3 and all(graph.degree(n) == 2 for n in nodes)


def _components(graph: nx.Graph) -> list[list[int]]:
    comps = [sorted(c) for c in nx.connected_components(graph) if len(c) > 1]
    return sorted(comps, key=lambda c: c[0])


def _normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rota al menor vértice y elige la dirección con menor segundo vértice."""
    i = cycle.index(min(cycle))
    rotated = list(cycle[i:]) + list(cycle[:i])
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[1:][::-1]
    return tuple(rotated)


def _is_chordless(graph: nx.Graph, nodes) -> bool:
    induced = graph.subgraph(nodes)
    return len(nodes) >= 3 and all(induced.degree(n) == 2 for n in nodes) and nx.is_connected(induced)


def _basis_cycles(sub: nx.Graph) -> list[tuple[int, ...]]:
    """Ciclos sin cuerdas de una base de ciclos, sin cota de largo."""
    found = []
    for cycle in nx.cycle_basis(sub):
        if _is_chordless(sub, cycle):
            found.append(_normalize_cycle(_walk_cycle(sub.subgraph(cycle), cycle)))
    return found


def _component_cycles(graph: nx.Graph, nodes: list[int]) -> list[tuple[int, ...]]:
    """
    Ciclos sin cuerdas de un componente, ordenados por (largo, vértices).

    En componentes chicos se enumeran hasta el largo acotado; en todos se
    agregan los ciclos sin cuerdas de una base de ciclos, de cualquier largo.
    """
    settings = get_settings()
    sub = graph.subgraph(nodes)
    cycles = set(_basis_cycles(sub))
    if len(nodes) <= settings.chordless_component_limit:
        found = nx.chordless_cycles(sub, length_bound=settings.chordless_cycle_length_bound)
        cycles.update(_normalize_cycle(c) for c in found if len(c) >= 3)
    return sorted(cycles, key=lambda c: (len(c), c))


def cycle_indices(graph: nx.Graph) -> list[tuple[int, ...]]:
    """
    Ciclos sin cuerdas del grafo de trades, como secuencias de índices.

    Componentes que son ciclos se devuelven completos.
    """
    cycles: list[tuple[int, ...]] = []
    for nodes in _components(graph):
        if _is_cycle_component(graph, nodes):
            cycles.append(_walk_cycle(graph, nodes))
        else:
            cycles.extend(sorted(_component_cycles(graph, nodes)))
    return cycles


def cyclical_trade_components(design: AnyDesign, graph: Optional[TradeGraph] = None) -> list[list[OrderedBlock]]:
    """Ciclos de bloques cuyos pares consecutivos son trades de volumen 2."""
    graph = graph or build_trade_graph(design)
    return [[design.blocks[i] for i in cycle] for cycle in cycle_indices(graph.to_networkx())]


# ===========================================
# COTAS INFERIORES
# ===========================================

def _with_cycles(sub: nx.Graph, nodes: list[int], chosen: list[tuple[int, ...]]) -> tuple[int, list, list]:
    used = {n for c in chosen for n in c}
    matching = maximum_matching(sub.subgraph([n for n in nodes if n not in used]))
    return len(matching) + sum((len(c) + 1) // 2 for c in chosen), matching, chosen


def _structural_component(graph: nx.Graph, nodes: list[int]) -> tuple[list[tuple[int, int]], list[tuple[int, ...]]]:
    """
    Mejor combinación de ciclos impares disjuntos + matching en un componente.

    Candidatos: matching solo, ciclos impares disjuntos elegidos de menor a
    mayor, y cada ciclo impar por separado. Gana el primero de mayor valor.
    """
    settings = get_settings()
    if _is_cycle_component(graph, nodes):
        return [], [_walk_cycle(graph, nodes)]

    sub = graph.subgraph(nodes)
    best_matching = maximum_matching(sub)
    best_value, best = len(best_matching), (best_matching, [])

    odd = [c for c in _component_cycles(graph, nodes) if len(c) % 2 == 1]
    if not odd:
        return best

    greedy: list[tuple[int, ...]] = []
    used: set[int] = set()
    for cycle in odd:
        if used.isdisjoint(cycle):
            greedy.append(cycle)
            used.update(cycle)
    options = [greedy] + [[c] for c in odd[: settings.structural_cycle_candidates]]
    for chosen in options:
        value, matching, cycles = _with_cycles(sub, nodes, chosen)
        if value > best_value:
            best_value, best = value, (matching, list(cycles))
    return best


def structural_bound(graph: TradeGraph) -> BoundCertificate:
    """Matching máximo más ciclos disjuntos, cada uno aportando ⌈s/2⌉."""
    g = graph.to_networkx()
    matching: list[tuple[int, int]] = []
    cycles: list[tuple[int, ...]] = []
    for nodes in _components(g):
        m, c = _structural_component(g, nodes)
        matching.extend(m)
        cycles.extend(c)
    bound = len(matching) + sum((len(c) + 1) // 2 for c in cycles)
    method = BoundMethod.CYCLE_COVER if cycles else BoundMethod.MATCHING
    return BoundCertificate(method=method, matching=tuple(sorted(matching)), cycles=tuple(cycles), bound=bound)


class _BudgetExhausted(Exception):
    pass


def min_vertex_cover(graph: nx.Graph, node_budget: int) -> set[int]:
    """
    Cubrimiento por vértices mínimo por branch-and-bound.

    Regla de grado 1, cota inferior por matching maximal greedy y
    ramificación en el vértice de mayor grado (u entra, o entran sus vecinos).
    """
    adjacency = {n: set(graph.neighbors(n)) for n in graph.nodes}
    best: list[set[int]] = [set(n for n in adjacency if adjacency[n])]
    nodes_seen = [0]

    def remove(adj: dict[int, set[int]], vertex: int) -> None:
        for n in adj.pop(vertex, set()):
            adj[n].discard(vertex)

    def greedy_matching_size(adj: dict[int, set[int]]) -> int:
        matched: set[int] = set()
        size = 0
        for u in sorted(adj):
            if u in matched:
                continue
            for w in sorted(adj[u]):
                if w not in matched:
                    matched.update((u, w))
                    size += 1
                    break
        return size

    def solve(adj: dict[int, set[int]], chosen: set[int]) -> None:
        nodes_seen[0] += 1
        if nodes_seen[0] > node_budget:
            raise _BudgetExhausted()
        adj = {u: set(ns) for u, ns in adj.items()}
        chosen = set(chosen)
        changed = True
        while changed:
            changed = False
            for u in sorted(adj):
                if u not in adj:
                    continue
                if not adj[u]:
                    del adj[u]
                    changed = True
                elif len(adj[u]) == 1:
                    (w,) = adj[u]
                    chosen.add(w)
                    remove(adj, w)
                    changed = True
        if not adj:
            if len(chosen) < len(best[0]):
                best[0] = chosen
            return
        if len(chosen) + greedy_matching_size(adj) >= len(best[0]):
            return
        u = max(sorted(adj), key=lambda n: len(adj[n]))
        with_u = {n: set(ns) for n, ns in adj.items()}
        remove(with_u, u)
        solve(with_u, chosen | {u})
        neighbours = set(adj[u])
        without_u = {n: set(ns) for n, ns in adj.items()}
        for w in neighbours:
            remove(without_u, w)
        solve(without_u, chosen | neighbours)

    solve(adjacency, set())
    return best[0]


def exact_bound(graph: TradeGraph) -> BoundCertificate:
    """
    Cubrimiento por vértices mínimo, descompuesto por componentes.

    Ciclos: ⌈s/2⌉ cerrado; aristas aisladas: 1; resto: branch-and-bound.
    Si el grafo excede el límite o el presupuesto, cae a la cota estructural.
    """
    settings = get_settings()
    if graph.vertex_count > settings.exact_cover_vertex_limit:
        logger.warning(
            f"Exact cover skipped: {graph.vertex_count} vertices > {settings.exact_cover_vertex_limit}"
        )
        structural = structural_bound(graph)
        return structural.model_copy(update={"notes": ("exact mode over size limit; structural fallback",)})

    g = graph.to_networkx()
    cover: set[int] = set()
    try:
        for nodes in _components(g):
            if _is_cycle_component(g, nodes):
                cycle = _walk_cycle(g, nodes)
                cover.update(cycle[0::2])
            else:
                cover.update(min_vertex_cover(g.subgraph(nodes), settings.exact_cover_node_budget))
    except _BudgetExhausted:
        logger.warning("Exact cover node budget exhausted; structural fallback")
        structural = structural_bound(graph)
        return structural.model_copy(update={"notes": ("exact node budget exhausted; structural fallback",)})

    return BoundCertificate(
        method=BoundMethod.EXACT_VERTEX_COVER,
        exact_cover_value=len(cover),
        cover=tuple(sorted(cover)),
        bound=len(cover),
    )


def lower_bound(
    design: AnyDesign,
    mode: Union[BoundMode, str] = BoundMode.STRUCTURAL,
    graph: Optional[TradeGraph] = None,
) -> BoundCertificate:
    """
    Cota inferior certificada para el tamaño de cualquier conjunto definidor.

    Raises:
        DesignError: si el modo no es structural ni exact
    """
    try:
        mode = BoundMode(mode)
    except ValueError:
        raise DesignError(f"unknown bound mode {mode!r}; use structural or exact")
    graph = graph or build_trade_graph(design)
    if mode == BoundMode.EXACT:
        certificate = exact_bound(graph)
    else:
        certificate = structural_bound(graph)
    logger.info(f"Lower bound ({certificate.method.value}) for {design.describe()}: {certificate.bound}")
    return certificate


def recheck_certificate(graph: TradeGraph, certificate: BoundCertificate) -> bool:
    """Re-verifica un certificado contra el grafo, independiente de cómo se obtuvo."""
    edges = graph.edge_pairs()

    def is_edge(a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in edges

    if certificate.method == BoundMethod.EXACT_VERTEX_COVER:
        cover = set(certificate.cover)
        if len(cover) != certificate.bound:
            return False
        return all(e.u in cover or e.v in cover for e in graph.edges)

    used: set[int] = set()
    for a, b in certificate.matching:
        if not is_edge(a, b) or a in used or b in used:
            return False
        used.update((a, b))
    for cycle in certificate.cycles:
        if len(cycle) < 3 or used & set(cycle) or len(set(cycle)) != len(cycle):
            return False
        if not all(is_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))):
            return False
        used.update(cycle)
    expected = len(certificate.matching) + sum((len(c) + 1) // 2 for c in certificate.cycles)
    return expected == certificate.bound


def format_certificate(certificate: BoundCertificate, design: Optional[AnyDesign] = None) -> str:
    """Exporta el certificado como texto estructurado."""

    def name(i: int) -> str:
        if design is None:
            return str(i)
        return "".join(str(x) for x in design.blocks[i]) if design.v <= 10 else " ".join(map(str, design.blocks[i]))

    lines = [f"method: {certificate.method.value}", f"bound: {certificate.bound}"]
    for a, b in certificate.matching:
        lines.append(f"edge: {name(a)} | {name(b)}")
    for cycle in certificate.cycles:
        lines.append(f"cycle[{len(cycle)}]: " + " , ".join(name(i) for i in cycle))
    if certificate.exact_cover_value is not None:
        lines.append("cover: " + " , ".join(name(i) for i in certificate.cover))
    for note in certificate.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)
