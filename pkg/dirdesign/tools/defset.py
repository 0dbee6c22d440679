"""
defset.py
Conjuntos definidores: conteo exacto de completaciones por backtracking
y búsqueda del conjunto definidor más chico con prueba de optimalidad.
"""

import logging
import time
from collections import Counter
from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

from dirdesign.config import get_settings
from dirdesign.models.errors import (
    DesignError,
    InconsistentPartialDesignError,
    NotASubsetError,
)
from dirdesign.models.schemas import (
    AnyDesign,
    CompletionResult,
    DesignParams,
    DirectedDesign,
    Exactness,
    FRatio,
    OrderedBlock,
    PartialDesign,
    SmallestDefiningSet,
)
from dirdesign.tools.blocks import pair_coverage
from dirdesign.tools.trades import build_trade_graph, exact_bound

logger = logging.getLogger(__name__)


# ===========================================
# COMPLETACIONES
# ===========================================

class _Search:
    """Estado del backtracking: pares ordenados aún no cubiertos."""

    def __init__(self, v: int, k: int, cap: Optional[int]):
        self.v = v
        self.k = k
        self.cap = cap
        self.uncovered = [[x != y for y in range(v)] for x in range(v)]
        self.remaining = v * (v - 1)
        self.count = 0
        self.completions: list[list[OrderedBlock]] = []
        self.stack: list[OrderedBlock] = []

    def cover(self, block: OrderedBlock) -> None:
        for x, y in combinations(block, 2):
            self.uncovered[x][y] = False
        self.remaining -= len(block) * (len(block) - 1) // 2

    def uncover(self, block: OrderedBlock) -> None:
        for x, y in combinations(block, 2):
            self.uncovered[x][y] = True
        self.remaining += len(block) * (len(block) - 1) // 2

    def least_uncovered(self) -> tuple[int, int]:
        for x in range(self.v):
            row = self.uncovered[x]
            for y in range(self.v):
                if row[y]:
                    return x, y
        raise AssertionError("no uncovered pair left")

    def candidates(self, x: int, y: int) -> list[OrderedBlock]:
        """Bloques con x antes que y cuyos pares están todos sin cubrir, en orden lexicográfico."""
        unc = self.uncovered
        others = [z for z in range(self.v) if z not in (x, y) and (unc[x][z] or unc[z][x]) and (unc[y][z] or unc[z][y])]
        found = []
        for extra in combinations(others, self.k - 2):
            for block in permutations((x, y) + extra):
                if block.index(x) > block.index(y):
                    continue
                if all(unc[a][b] for a, b in combinations(block, 2)):
                    found.append(block)
        found.sort()
        return found

    def run(self) -> None:
        if self.cap is not None and self.count >= self.cap:
            return
        if self.remaining == 0:
            self.count += 1
            if self.cap is None or len(self.completions) < self.cap:
                self.completions.append(list(self.stack))
            return
        x, y = self.least_uncovered()
        for block in self.candidates(x, y):
            self.cover(block)
            self.stack.append(block)
            self.run()
            self.stack.pop()
            self.uncover(block)
            if self.cap is not None and self.count >= self.cap:
                return


def count_completions(partial: PartialDesign, cap: Optional[int] = None) -> CompletionResult:
    """
    Cuenta (hasta `cap`) los diseños 2-(v,k,1) que contienen los bloques fijos.

    Elige siempre el par ordenado sin cubrir lexicográficamente menor y
    ramifica sobre todos los bloques admisibles que lo cubren.
    """
    params = partial.params
    if params.lambda_ != 1 or params.t != 2:
        raise DesignError("completion counting supports 2-(v,k,1) directed designs only")
    coverage = pair_coverage(partial.fixed_blocks)
    over = sorted(pair for pair, count in coverage.items() if count > 1)
    if over:
        raise InconsistentPartialDesignError(f"ordered pair {over[0]} covered more than once")

    search = _Search(params.v, params.k, cap)
    for block in partial.fixed_blocks:
        search.cover(block)
    search.run()

    fixed = tuple(partial.fixed_blocks)
    completions = [
        DirectedDesign(params=params, blocks=fixed + tuple(extra))
        for extra in search.completions
    ]
    saturated = cap is not None and search.count >= cap
    logger.debug(f"Completions of {len(fixed)} fixed blocks: {search.count}{'+' if saturated else ''}")
    return CompletionResult(count=search.count, saturated=saturated, completions=completions)


# ===========================================
# CONJUNTOS DEFINIDORES
# ===========================================

def _check_subset(design: DirectedDesign, subset: Sequence[Sequence[int]]) -> tuple[OrderedBlock, ...]:
    blocks = tuple(tuple(b) for b in subset)
    available = Counter(design.blocks)
    wanted = Counter(blocks)
    for block, count in wanted.items():
        if available[block] < count:
            raise NotASubsetError(f"block {block} is not a block of the design")
    return blocks


def is_defining_set(design: DirectedDesign, subset: Sequence[Sequence[int]]) -> bool:
    """True sii el único diseño que contiene el subconjunto es el propio diseño."""
    blocks = _check_subset(design, subset)
    cap = max(2, get_settings().completion_cap)
    result = count_completions(PartialDesign(params=design.params, fixed_blocks=blocks), cap=cap)
    return result.count == 1


def _greedy_defining_set(design: DirectedDesign, deadline: float) -> tuple[OrderedBlock, ...]:
    """Quita bloques mientras el conjunto siga siendo definidor (cota superior)."""
    current = list(design.blocks)
    for block in list(design.blocks):
        if time.monotonic() > deadline:
            break
        trial = [b for b in current if b != block]
        if is_defining_set(design, trial):
            current = trial
    return tuple(current)


def smallest_defining_set(
    design: DirectedDesign,
    budget_seconds: Optional[float] = None,
) -> SmallestDefiningSet:
    """
    Conjunto definidor de cardinalidad mínima.

    Búsqueda por tamaño ascendente, desde la cota de cubrimiento por vértices
    del grafo de trades; solo se prueban candidatos que cubren cada arista
    (todo conjunto definidor toca cada trade). Si se agota el presupuesto,
    devuelve el mejor encontrado con optimal=False.
    """
    settings = get_settings()
    budget = settings.smallest_defset_budget_seconds if budget_seconds is None else budget_seconds
    started = time.monotonic()
    deadline = started + budget

    graph = build_trade_graph(design)
    lower = exact_bound(graph).bound
    edges = [(e.u, e.v) for e in graph.edges]
    blocks = design.blocks
    checked = 0

    for size in range(lower, len(blocks) + 1):
        for chosen in combinations(range(len(blocks)), size):
            if time.monotonic() > deadline:
                logger.warning(f"Smallest defining set budget exhausted at size {size}")
                best = _greedy_defining_set(design, time.monotonic() + budget)
                return SmallestDefiningSet(
                    size=len(best),
                    witness=best,
                    optimal=False,
                    lower_bound=size,
                    candidates_checked=checked,
                    elapsed_seconds=time.monotonic() - started,
                )
            selected = set(chosen)
            if not all(u in selected or w in selected for u, w in edges):
                continue
            checked += 1
            subset = [blocks[i] for i in chosen]
            if is_defining_set(design, subset):
                elapsed = time.monotonic() - started
                logger.info(f"Smallest defining set of {design.describe()}: {size} ({checked} candidates)")
                return SmallestDefiningSet(
                    size=size,
                    witness=tuple(subset),
                    optimal=True,
                    lower_bound=lower,
                    candidates_checked=checked,
                    elapsed_seconds=elapsed,
                )
    raise AssertionError("the full block set is always defining")


def f_ratio(design: AnyDesign, size: int, exact: bool = False) -> FRatio:
    """f = tamaño del conjunto definidor (o cota) / número de bloques, exacto."""
    exactness = Exactness.EXACT if exact else Exactness.LOWER_BOUND
    return FRatio.of(Fraction(size, design.block_count), exactness)


def find_design(v: int, k: int = 4) -> Optional[DirectedDesign]:
    """Primer 2-(v,k,1)DD en orden de búsqueda, completando desde el conjunto vacío."""
    result = count_completions(PartialDesign(params=DesignParams(v=v, k=k)), cap=1)
    return result.completions[0] if result.completions else None
