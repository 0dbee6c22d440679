"""
verifier.py
Verificación exhaustiva de las propiedades de diseños que usa el toolkit:
diseño dirigido, BIBD subyacente, simple / super-simple, GDD/DGDD y
clases paralelas. Las fallas son veredictos con testigos, no excepciones.
"""

import logging
from collections import Counter
from itertools import combinations
from typing import Optional, Union

import numpy as np

from dirdesign.models.errors import StructuralError
from dirdesign.models.schemas import (
    DesignKind,
    DirectedDesign,
    GroupedDesign,
    Violation,
    VerifyReport,
)
from dirdesign.tools.blocks import underlying_block

logger = logging.getLogger(__name__)


# ===========================================
# HELPERS
# ===========================================

def coverage_matrix(v: int, blocks, ordered: bool = True) -> np.ndarray:
    """
    Histograma de cobertura de pares como matriz v×v.

    Para bloques no ordenados se cuenta en (min, max).
    """
    matrix = np.zeros((v, v), dtype=np.int64)
    for block in blocks:
        for x, y in combinations(block, 2):
            if ordered:
                matrix[x, y] += 1
            else:
                matrix[min(x, y), max(x, y)] += 1
    return matrix


def _histogram(matrix: np.ndarray) -> dict[str, int]:
    rows, cols = np.nonzero(matrix)
    return {f"{x},{y}": int(matrix[x, y]) for x, y in zip(rows.tolist(), cols.tolist())}


def _pair_violations(
    matrix: np.ndarray,
    expected: np.ndarray,
    prop: str,
) -> list[Violation]:
    """Pares con multiplicidad distinta a la esperada, en orden lexicográfico."""
    rows, cols = np.nonzero(matrix != expected)
    violations = []
    for x, y in zip(rows.tolist(), cols.tolist()):
        got, want = int(matrix[x, y]), int(expected[x, y])
        kind = "under-covered" if got < want else "over-covered"
        violations.append(
            Violation(property=prop, witness=(x, y), detail=f"{kind}: {got} (expected {want})")
        )
    return violations


# ===========================================
# DISEÑOS DIRIGIDOS
# ===========================================

def verify_directed_design(design: DirectedDesign, keep_coverage: bool = False) -> VerifyReport:
    """
    Pasa sii cada par ordenado (x, y), x != y, aparece en exactamente lambda bloques.
    """
    v, lam = design.v, design.params.lambda_
    matrix = coverage_matrix(v, design.blocks, ordered=True)
    expected = np.full((v, v), lam, dtype=np.int64)
    np.fill_diagonal(expected, 0)
    violations = _pair_violations(matrix, expected, "ordered-pair-coverage")
    report = VerifyReport.from_violations(
        design.describe(),
        violations,
        coverage=_histogram(matrix) if keep_coverage else None,
    )
    logger.debug(f"verify {design.describe()}: {report.verdict.value} ({len(violations)} violations)")
    return report


def underlying_bibd(design: DirectedDesign) -> tuple[list[frozenset[int]], VerifyReport]:
    """Olvida el orden y verifica cada par no ordenado cubierto 2·lambda veces."""
    v, lam = design.v, design.params.lambda_
    unordered = [underlying_block(b) for b in design.blocks]
    matrix = coverage_matrix(v, design.blocks, ordered=False)
    expected = np.triu(np.full((v, v), 2 * lam, dtype=np.int64), k=1)
    violations = _pair_violations(matrix, expected, "unordered-pair-coverage")
    subject = f"2-({v},{design.params.k},{2 * lam}) BIBD, {len(unordered)} blocks"
    return unordered, VerifyReport.from_violations(subject, violations)


def is_simple(design: Union[DirectedDesign, GroupedDesign]) -> bool:
    """True sii el multiconjunto de bloques subyacentes no tiene repetidos."""
    sets = Counter(frozenset(b) for b in design.blocks)
    return all(count == 1 for count in sets.values())


def is_super_simple(design: Union[DirectedDesign, GroupedDesign]) -> VerifyReport:
    """Pasa sii dos bloques distintos del BIBD subyacente comparten a lo sumo 2 puntos."""
    blocks = [frozenset(b) for b in design.blocks]
    # Dos bloques que comparten 3 puntos comparten una terna: basta indexar ternas.
    seen: dict[frozenset[int], int] = {}
    violations: list[Violation] = []
    for index, block in enumerate(blocks):
        for triple in combinations(sorted(block), 3):
            key = frozenset(triple)
            if key in seen:
                first = seen[key]
                shared = tuple(sorted(blocks[first] & block))
                violations.append(
                    Violation(
                        property="super-simple",
                        witness=(design.blocks[first], design.blocks[index]),
                        detail=f"blocks {first} and {index} share {shared}",
                    )
                )
                break
            seen[key] = index
        if violations:
            break
    subject = "super-simple" if not violations else "not super-simple"
    return VerifyReport.from_violations(subject, violations)


# ===========================================
# DISEÑOS CON GRUPOS
# ===========================================

def check_partition(design: GroupedDesign) -> None:
    """Los grupos deben ser disjuntos y cubrir {0..v-1}."""
    seen: set[int] = set()
    for group in design.groups:
        overlap = seen & set(group)
        if overlap:
            raise StructuralError(f"groups overlap in points {sorted(overlap)}")
        seen |= set(group)
    missing = set(range(design.v)) - seen
    if missing:
        raise StructuralError(f"groups miss points {sorted(missing)}")


def verify_grouped(design: GroupedDesign, check_super_simple: bool = False) -> VerifyReport:
    """
    Verifica un GDD/DGDD/ingrediente de PBD.

    (a) ningún bloque toca un grupo dos veces; (b) pares entre grupos
    cubiertos exactamente lambda veces (ordenados para DGDD, no ordenados
    en otro caso); (c) pares dentro de un grupo, cero veces.
    """
    check_partition(design)
    group_of = design.group_of()
    violations: list[Violation] = []

    for index, block in enumerate(design.blocks):
        groups_hit = [group_of[x] for x in block]
        if len(set(groups_hit)) != len(groups_hit):
            violations.append(
                Violation(
                    property="block-meets-group-twice",
                    witness=tuple(block),
                    detail=f"block {index} meets a group twice",
                )
            )

    ordered = design.ordered and design.kind == DesignKind.DGDD
    v = design.v
    matrix = coverage_matrix(v, design.blocks, ordered=ordered)
    labels = np.array([group_of[x] for x in range(v)])
    same_group = labels[:, None] == labels[None, :]
    expected = np.where(same_group, 0, design.lambda_).astype(np.int64)
    if not ordered:
        expected = np.triu(expected, k=1)
    violations.extend(_pair_violations(matrix, expected, "cross-group-coverage"))

    if check_super_simple:
        violations.extend(is_super_simple(design).violations)

    return VerifyReport.from_violations(design.describe(), violations)


# ===========================================
# CLASES PARALELAS
# ===========================================

def find_parallel_classes(
    blocks: list[frozenset[int]],
    v: int,
) -> Optional[list[list[frozenset[int]]]]:
    """
    Particiona los bloques en clases paralelas por backtracking exacto.

    Devuelve None si no existe una resolución.
    """
    if not blocks:
        return []
    k = len(next(iter(blocks)))
    if v % k != 0 or len(blocks) % (v // k) != 0:
        return None
    per_class = v // k
    class_count = len(blocks) // per_class
    order = sorted(range(len(blocks)), key=lambda i: sorted(blocks[i]))
    assignment: list[Optional[int]] = [None] * len(blocks)
    class_points: list[set[int]] = [set() for _ in range(class_count)]

    def place(position: int) -> bool:
        if position == len(order):
            return True
        index = order[position]
        block = blocks[index]
        opened_empty = False
        for c in range(class_count):
            if class_points[c] & block:
                continue
            # Las clases vacías son intercambiables: probar solo la primera.
            if not class_points[c]:
                if opened_empty:
                    continue
                opened_empty = True
            class_points[c] |= block
            assignment[index] = c
            if place(position + 1):
                return True
            class_points[c] -= block
            assignment[index] = None
        return False

    if not place(0):
        logger.info(f"No resolution found for {len(blocks)} blocks on {v} points")
        return None

    classes: list[list[frozenset[int]]] = [[] for _ in range(class_count)]
    for index in order:
        classes[assignment[index]].append(blocks[index])
    classes.sort(key=lambda cls: min(sorted(b) for b in cls))
    return classes
