"""
blocks.py
Combinatoria elemental de bloques ordenados: pares ordenados,
bloque subyacente y reetiquetado de diseños.
"""

import logging
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from itertools import combinations

from dirdesign.models.errors import MalformedBlockError, RelabelError
from dirdesign.models.schemas import DirectedDesign, GroupedDesign, OrderedBlock

logger = logging.getLogger(__name__)


def ordered_pairs_of_block(block: Sequence[int]) -> list[tuple[int, int]]:
    """
    Pares ordenados (x, y) con x antes que y en el bloque.

    (0,1,3,2) -> (0,1),(0,3),(0,2),(1,3),(1,2),(3,2)
    """
    if len(set(block)) != len(block):
        raise MalformedBlockError(f"block {tuple(block)} repeats a point")
    return list(combinations(block, 2))


def underlying_block(block: Sequence[int]) -> frozenset[int]:
    """El conjunto de puntos del bloque, olvidando el orden."""
    if len(set(block)) != len(block):
        raise MalformedBlockError(f"block {tuple(block)} repeats a point")
    return frozenset(block)


def pair_coverage(blocks: Iterable[Sequence[int]]) -> Counter:
    """Multiconjunto de pares ordenados cubiertos por una colección de bloques."""
    coverage: Counter = Counter()
    for block in blocks:
        coverage.update(combinations(block, 2))
    return coverage


def _check_permutation(mapping: Mapping[int, int], v: int) -> None:
    domain = set(range(v))
    if set(mapping) != domain or set(mapping.values()) != domain:
        raise RelabelError(f"map is not a bijection on 0..{v - 1}")


def relabel_block(block: Sequence[int], mapping: Mapping[int, int]) -> OrderedBlock:
    return tuple(mapping[x] for x in block)


def relabel(design: DirectedDesign, permutation: Mapping[int, int]) -> DirectedDesign:
    """Reemplaza cada punto por su imagen; el orden dentro de cada bloque se preserva."""
    _check_permutation(permutation, design.v)
    blocks = tuple(relabel_block(b, permutation) for b in design.blocks)
    names = None
    if design.display_names:
        names = {permutation[x]: name for x, name in design.display_names.items()}
    return DirectedDesign(params=design.params, blocks=blocks, display_names=names)


def relabel_grouped(design: GroupedDesign, permutation: Mapping[int, int]) -> GroupedDesign:
    _check_permutation(permutation, design.v)
    return design.model_copy(
        update={
            "groups": tuple(tuple(sorted(permutation[x] for x in g)) for g in design.groups),
            "blocks": tuple(relabel_block(b, permutation) for b in design.blocks),
        }
    )


def reverse_pair_design(block: Sequence[int]) -> list[OrderedBlock]:
    """Un bloque y su reverso: cubren cada par ordenado del bloque una vez."""
    block = tuple(block)
    return [block, tuple(reversed(block))]
