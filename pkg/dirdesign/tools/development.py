"""
development.py
Desarrollo de bloques base bajo acciones cíclicas, incluyendo órbitas parciales,
y búsqueda de largos de órbita que reconcilien el conteo de bloques.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Optional, Union

from pydantic import BaseModel, Field

from dirdesign.config import get_settings
from dirdesign.models.errors import DevelopmentError
from dirdesign.models.schemas import (
    BaseBlock,
    BaseBlockSet,
    DesignKind,
    DesignParams,
    DevelopmentAction,
    DevelopmentRule,
    DirectedDesign,
    GroupedDesign,
    OrderedBlock,
)
from dirdesign.tools.verifier import verify_directed_design, verify_grouped

logger = logging.getLogger(__name__)


# ===========================================
# ÓRBITAS
# ===========================================

def canonical_point(point, rule: DevelopmentRule) -> int:
    """Par (c, j) -> c·n + j; los enteros se reducen mod n."""
    if rule.action == DevelopmentAction.FIX_FIRST:
        if not (isinstance(point, tuple) and len(point) == 2):
            raise DevelopmentError(f"coordinate action needs (c, j) points, got {point!r}")
        c, j = point
        return c * rule.modulus + j % rule.modulus
    if isinstance(point, tuple):
        raise DevelopmentError(f"add-step action needs integer points, got {point!r}")
    return point % rule.modulus


def orbit(
    points: tuple,
    rule: DevelopmentRule,
    length: Optional[int] = None,
) -> list[OrderedBlock]:
    """
    Trasladados i = 0..L-1 del bloque bajo la acción, en forma canónica.

    Cada trasladado suma i·step (mod n) a cada punto (o a cada segunda
    coordenada en la acción por coordenadas); el orden del bloque se preserva.
    """
    full = rule.full_length
    length = full if length is None else length
    if length > full:
        raise DevelopmentError(f"orbit length {length} exceeds the full period {full} ({rule.label()})")
    if full % length != 0:
        raise DevelopmentError(f"orbit length {length} does not divide the full period {full}")

    n = rule.modulus
    translates: list[OrderedBlock] = []
    for i in range(length):
        if rule.action == DevelopmentAction.FIX_FIRST:
            shifted = tuple((c, (j + i) % n) for c, j in (_as_pair(p) for p in points))
        else:
            shifted = tuple((_as_int(p) + i * rule.step) % n for p in points)
        translates.append(tuple(canonical_point(p, rule) for p in shifted))
    return translates


def _as_pair(point) -> tuple[int, int]:
    if not (isinstance(point, tuple) and len(point) == 2):
        raise DevelopmentError(f"coordinate action needs (c, j) points, got {point!r}")
    return point


def _as_int(point) -> int:
    if isinstance(point, tuple):
        raise DevelopmentError(f"add-step action needs integer points, got {point!r}")
    return point


def developed_blocks(base: BaseBlockSet) -> list[OrderedBlock]:
    blocks: list[OrderedBlock] = []
    for base_block in base.base_blocks:
        blocks.extend(orbit(base_block.points, base_block.rule, base_block.orbit_length))
    for block in blocks:
        if any(not 0 <= x < base.v for x in block):
            raise DevelopmentError(f"developed block {block} leaves the point set 0..{base.v - 1}")
    return blocks


def develop(base: BaseBlockSet) -> Union[DirectedDesign, GroupedDesign]:
    """Concatena todas las órbitas; adjunta los grupos si el destino es un DGDD."""
    blocks = tuple(developed_blocks(base))
    if base.groups is not None:
        return GroupedDesign(
            v=base.v,
            groups=base.groups,
            blocks=blocks,
            ordered=True,
            lambda_=base.lambda_,
            kind=DesignKind.DGDD,
        )
    names = None
    if any(b.rule.action == DevelopmentAction.FIX_FIRST for b in base.base_blocks):
        n = base.base_blocks[0].rule.modulus
        names = {c * n + j: f"({c},{j})" for c in range(base.v // n) for j in range(n)}
    params = DesignParams(v=base.v, k=base.k, lambda_=base.lambda_)
    return DirectedDesign(params=params, blocks=blocks, display_names=names)


def cyclic_invariance(design: DirectedDesign, modulus: int) -> bool:
    """develop + relabel por +1 (mod n) deja el multiconjunto de bloques fijo."""
    shifted = Counter(tuple((x + 1) % modulus for x in b) for b in design.blocks)
    return shifted == Counter(design.blocks)


# ===========================================
# RESOLUCIÓN DE LARGOS DE ÓRBITA
# ===========================================

class OrbitAttempt(BaseModel):
    """Una asignación de largos de órbita y lo que produjo."""
    lengths: tuple[int, ...]
    block_count: int
    verified: bool = False
    under_covered: int = 0
    over_covered: int = 0
    witnesses: list[str] = Field(default_factory=list)


class OrbitResolution(BaseModel):
    """Resultado de resolve_orbit_lengths: diseño resuelto o reporte de discrepancia."""
    target_blocks: int
    full_block_count: int
    resolved: Optional[BaseBlockSet] = None
    attempts: list[OrbitAttempt] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.resolved is not None

    def summary(self) -> str:
        if self.ok:
            lengths = tuple(b.effective_length for b in self.resolved.base_blocks)
            return f"resolved with orbit lengths {lengths} ({self.target_blocks} blocks)"
        return (
            f"discrepancy: full development gives {self.full_block_count} blocks, "
            f"required {self.target_blocks}; {len(self.attempts)} assignments tried, none verifies"
        )


def _candidates(block: BaseBlock) -> list[int]:
    full = block.rule.full_length
    return [full, full // 2] if full % 2 == 0 else [full]


def _try_assignment(base: BaseBlockSet, lengths: tuple[int, ...]) -> OrbitAttempt:
    candidate = base.with_orbit_lengths(lengths)
    design = develop(candidate)
    if isinstance(design, GroupedDesign):
        report = verify_grouped(design)
    else:
        report = verify_directed_design(design)
    under = sum(1 for v in report.violations if v.detail.startswith("under"))
    over = sum(1 for v in report.violations if v.detail.startswith("over"))
    witnesses = [f"{v.witness} {v.detail}" for v in report.violations[:5]]
    return OrbitAttempt(
        lengths=lengths,
        block_count=candidate.developed_count,
        verified=report.passed,
        under_covered=under,
        over_covered=over,
        witnesses=witnesses,
    )


def resolve_orbit_lengths(
    base: BaseBlockSet,
    target_params: DesignParams,
    workers: Optional[int] = None,
) -> OrbitResolution:
    """
    Busca largos de órbita en {full, full/2} por bloque base tales que el total
    coincida con 2·v(v-1)·lambda/(k(k-1)) y el diseño desarrollado verifique.

    Devuelve la primera asignación (orden lexicográfico, full antes que half)
    que verifica, o un reporte con los déficits/excesos de cada intento.
    """
    settings = get_settings()
    workers = workers or settings.orbit_search_workers
    count = target_params.expected_block_count
    if count.denominator != 1:
        raise DevelopmentError(f"{target_params.label()} has no integral block count ({count})")
    target = count.numerator
    full_count = sum(b.rule.full_length for b in base.base_blocks)
    resolution = OrbitResolution(target_blocks=target, full_block_count=full_count)

    assignments = [
        lengths
        for lengths in product(*(_candidates(b) for b in base.base_blocks))
        if sum(lengths) == target
    ]
    if not assignments:
        logger.warning(f"No orbit-length assignment reaches {target} blocks (full: {full_count})")
        full = tuple(b.rule.full_length for b in base.base_blocks)
        resolution.attempts.append(_try_assignment(base, full))
        return resolution

    logger.info(f"Trying {len(assignments)} orbit-length assignments for {target} blocks")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            attempts = list(pool.map(lambda a: _try_assignment(base, a), assignments))
    else:
        attempts = []
        for lengths in assignments:
            attempt = _try_assignment(base, lengths)
            attempts.append(attempt)
            if attempt.verified:
                break

    # pool.map conserva el orden: el primero que verifica es el lexicográficamente menor
    for attempt in attempts:
        if attempt.verified:
            lengths = tuple(
                None if length == block.rule.full_length else length
                for length, block in zip(attempt.lengths, base.base_blocks)
            )
            resolved = base.with_orbit_lengths(lengths).model_copy(update={"unverified": False})
            resolution.resolved = resolved
            resolution.attempts = attempts
            logger.info(f"Orbit lengths resolved: {attempt.lengths}")
            return resolution

    resolution.attempts = attempts
    logger.warning(resolution.summary())
    return resolution
