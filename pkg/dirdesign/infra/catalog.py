"""
catalog.py
Catálogo embebido de diseños: archivos dorados en dirdesign/catalog/
más las propiedades esperadas de cada entrada.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

from dirdesign.config import get_settings
from dirdesign.models.errors import CatalogError, DesignFormatError, IngredientError
from dirdesign.models.schemas import (
    AnyDesign,
    BaseBlockSet,
    CatalogEntry,
    DesignParams,
    Exactness,
    ExpectedProperties,
)
from dirdesign.infra.design_io import parse_design
from dirdesign.tools.development import develop, resolve_orbit_lengths

logger = logging.getLogger(__name__)

CATALOG_DIR = Path(__file__).resolve().parent.parent / "catalog"


# ===========================================
# PROPIEDADES ESPERADAS
# ===========================================

def _expected(blocks: int, bound: Optional[int], exact: bool = False, super_simple: bool = True, certified: bool = True):
    f = (bound, blocks) if bound is not None else (None, None)
    return ExpectedProperties(
        valid=True,
        super_simple=super_simple,
        block_count=blocks,
        bound=bound,
        bound_certified=certified,
        f_numerator=f[0],
        f_denominator=f[1],
        f_exactness=Exactness.EXACT if exact else Exactness.LOWER_BOUND,
    )


# id -> (propiedades esperadas, procedencia)
_REGISTRY: dict[str, tuple[ExpectedProperties, str]] = {
    "dd-4": (_expected(2, 1, exact=True, super_simple=False), "a block and its reversal"),
    "dd-7": (_expected(7, 2, exact=True), "completion search from the empty set, frozen"),
    "dd-10": (_expected(15, 8, exact=True), "explicit 2-(10,4,1)DD; defining set of size 8"),
    "dd-13": (_expected(26, 13, certified=False), "base blocks +1 mod 13; f >= 1/2 claimed"),
    "dd-16": (_expected(40, 20), "explicit 2-(16,4,1)DD; 20 disjoint trades"),
    "dd-19": (_expected(57, 29), "explicit 2-(19,4,1)DD; 22 trades and cyclical trades 3, 3, 5"),
    "dd-22": (_expected(77, 39), "base blocks by (-,+1 mod 11); 33 trades and a cyclical trade of 11"),
    "dd-28": (_expected(126, 63), "explicit 2-(28,4,1)DD; 63 disjoint trades"),
    "dd-31": (_expected(155, 78), "base blocks +1 mod 31; 31 trades and a cyclical trade of 93"),
    "dd-34": (_expected(187, None, certified=False), "base blocks +1 mod 34; block count discrepancy"),
    "dd-52": (_expected(442, None, certified=False), "base blocks +1/+2 mod 52; block count discrepancy"),
    "dgdd-3^4": (_expected(18, 10), "explicit DGDD(3^4); f >= 5/9"),
    "dgdd-3^5": (_expected(30, 15), "DGDD(3^5) by +1 mod 15; 15 trades"),
    "dgdd-3^6": (_expected(45, 23), "DGDD(3^6) by +2 mod 18; 18 trades and a cyclical trade of 9"),
    "dgdd-2^4-a": (_expected(8, 4, certified=False), "super-simple DGDD(2^4); f >= 1/2 claimed"),
    "dgdd-2^4-b": (_expected(8, 5, super_simple=False), "DGDD(2^4); f >= 5/8"),
}


# ===========================================
# ACCESO
# ===========================================

def catalog_list() -> list[str]:
    """Ids del catálogo, ordenados."""
    return sorted(_REGISTRY, key=lambda name: (name.split("-")[0], _sort_key(name)))


def _sort_key(name: str) -> tuple:
    parts = name.split("-", 1)[1]
    head = parts.split("^")[0]
    return (int(head) if head.isdigit() else 0, parts)


@lru_cache(maxsize=None)
def catalog_get(entry_id: str) -> CatalogEntry:
    """
    Devuelve la entrada del catálogo.

    Raises:
        CatalogError si el id no existe
    """
    if entry_id not in _REGISTRY:
        raise CatalogError(f"unknown catalog id {entry_id!r}; known: {', '.join(catalog_list())}")
    expected, provenance = _REGISTRY[entry_id]
    path = CATALOG_DIR / f"{entry_id}.txt"
    try:
        payload = parse_design(path.read_text(encoding="utf-8"))
    except DesignFormatError as e:
        raise CatalogError(f"golden file {path.name} is corrupt: {e}")
    return CatalogEntry(id=entry_id, payload=payload, expected=expected, provenance=provenance)


def catalog_design(entry_id: str, resolve: bool = True) -> AnyDesign:
    """
    Diseño materializado: desarrolla los archivos de bloques base.

    Las entradas marcadas unverified pasan por resolve_orbit_lengths;
    si no se resuelven, es un error (nunca se entrega como válido).
    """
    entry = catalog_get(entry_id)
    payload = entry.payload
    if not isinstance(payload, BaseBlockSet):
        return payload
    if payload.unverified:
        if not resolve:
            raise CatalogError(f"{entry_id} is unverified (block-count discrepancy); resolve orbits first")
        params = DesignParams(v=payload.v, k=payload.k, lambda_=payload.lambda_)
        resolution = resolve_orbit_lengths(payload, params)
        if not resolution.ok:
            raise CatalogError(f"{entry_id}: {resolution.summary()}")
        payload = resolution.resolved
    return develop(payload)


def resolve_ingredient(name: str, ingredients_dir: Optional[str] = None):
    """
    Busca un ingrediente: primero el catálogo, después <dir>/<name>.txt.

    Args:
        name: id del ingrediente ("dd-13", "gdd-2^7", "pbd-22", ...)
        ingredients_dir: directorio; por defecto settings.ingredients_dir

    Returns:
        El diseño parseado (los archivos de bloques base se desarrollan)
    """
    if name in _REGISTRY:
        return catalog_design(name)
    directory = ingredients_dir or get_settings().ingredients_dir
    if not directory:
        raise IngredientError(f"ingredient {name} is not in the catalog and no ingredients directory is set")
    path = os.path.join(directory, f"{name}.txt")
    if not os.path.exists(path):
        raise IngredientError(f"ingredient {name} not found; expected file {path}")
    with open(path, encoding="utf-8") as f:
        payload = parse_design(f.read())
    logger.info(f"Loaded ingredient {name} from {path}")
    if isinstance(payload, BaseBlockSet):
        return develop(payload)
    return payload
