"""
constructions.py
Construcciones recursivas de diseños dirigidos: reemplazo en un PBD,
pesos de Wilson con relleno de huecos, ingredientes (TD por MOLS, plano
afín AG(2,4), búsqueda de GDD) y las recetas con su aritmética de cotas.
"""

import logging
from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from dirdesign.config import get_settings
from dirdesign.infra.catalog import catalog_design, catalog_get, resolve_ingredient
from dirdesign.models.errors import IngredientError, RecipeError
from dirdesign.models.schemas import (
    BoundComposition,
    BoundTerm,
    Construction,
    DesignKind,
    DesignParams,
    DirectedDesign,
    Exactness,
    FRatio,
    GroupedDesign,
    InfinityMode,
    OrderedBlock,
    WeightingPlan,
)
from dirdesign.tools.verifier import (
    find_parallel_classes,
    verify_directed_design,
    verify_grouped,
)

logger = logging.getLogger(__name__)


# ===========================================
# REEMPLAZO EN UN PBD
# ===========================================

def _copy_on(ingredient_blocks, targets: dict[int, int]) -> list[OrderedBlock]:
    return [tuple(targets[x] for x in block) for block in ingredient_blocks]


def replace_pbd(master: GroupedDesign, ingredients: dict[int, DirectedDesign]) -> DirectedDesign:
    """
    Reemplaza cada bloque del PBD maestro por una copia del DD de su tamaño.

    El punto i del ingrediente va al i-ésimo punto del bloque maestro.
    """
    blocks: list[OrderedBlock] = []
    for index, block in enumerate(master.blocks):
        ingredient = ingredients.get(len(block))
        if ingredient is None:
            raise RecipeError(f"no ingredient for master block size {len(block)} (block {index})")
        if ingredient.v != len(block):
            raise IngredientError(f"ingredient for size {len(block)} has v={ingredient.v}")
        targets = dict(enumerate(block))
        blocks.extend(_copy_on(ingredient.blocks, targets))
    k = next(iter(ingredients.values())).params.k
    params = DesignParams(v=master.v, k=k)
    return DirectedDesign(params=params, blocks=tuple(blocks))


# ===========================================
# PESOS DE WILSON
# ===========================================

def _check_ingredients(plan: WeightingPlan) -> None:
    report = verify_grouped(plan.master)
    if not report.passed:
        first = report.violations[0]
        raise RecipeError(f"master {plan.master.describe()} fails: {first.property} {first.witness}")
    for size, ingredient in plan.ingredients.items():
        name = f"DGDD({plan.weight}^{size})"
        if ingredient.group_type() != {plan.weight: size}:
            raise IngredientError(f"ingredient {name} has type {ingredient.type_label()}")
        report = verify_grouped(ingredient)
        if not report.passed:
            raise IngredientError(f"ingredient {name} fails verification at {report.violations[0].witness}")
    extra = 1 if plan.infinity == InfinityMode.SHARED_POINT else 0
    for size, fill in plan.fills.items():
        name = f"DD({fill.v}) for groups of size {size}"
        if fill.v != plan.weight * size + extra:
            raise IngredientError(f"fill {name} needs v={plan.weight * size + extra}")
        if not verify_directed_design(fill).passed:
            raise IngredientError(f"fill {name} fails verification")


def _expand(point: int, weight: int) -> list[int]:
    return [point * weight + r for r in range(weight)]


def _weight(plan: WeightingPlan) -> tuple[list[OrderedBlock], list[tuple[str, int, int]]]:
    """Bloques y procedencia (origen, índice maestro, índice en el ingrediente)."""
    alpha = plan.weight
    blocks: list[OrderedBlock] = []
    provenance: list[tuple[str, int, int]] = []

    for index, master_block in enumerate(plan.master.blocks):
        ingredient = plan.ingredients[len(master_block)]
        targets: dict[int, int] = {}
        for group, master_point in zip(ingredient.groups, master_block):
            for r, x in enumerate(sorted(group)):
                targets[x] = master_point * alpha + r
        for j, block in enumerate(_copy_on(ingredient.blocks, targets)):
            blocks.append(block)
            provenance.append(("block", index, j))

    if plan.fills:
        infinity = alpha * plan.master.v
        for index, group in enumerate(plan.master.groups):
            fill = plan.fills[len(group)]
            hole = sorted(p for x in group for p in _expand(x, alpha))
            targets = dict(enumerate(hole))
            if plan.infinity == InfinityMode.SHARED_POINT:
                targets[len(hole)] = infinity
            for j, block in enumerate(_copy_on(fill.blocks, targets)):
                blocks.append(block)
                provenance.append(("fill", index, j))
    return blocks, provenance


def wilson_weighting(plan: WeightingPlan):
    """
    Construcción fundamental con pesos.

    Sin rellenos devuelve el DGDD de tipo (α·g1)^u1...; con rellenos, el DD
    completo sobre α·N puntos (+1 con punto compartido ∞ = α·N).
    """
    _check_ingredients(plan)
    blocks, _ = _weight(plan)
    alpha, master = plan.weight, plan.master
    if not plan.fills:
        groups = tuple(tuple(p for x in sorted(g) for p in _expand(x, alpha)) for g in master.groups)
        return GroupedDesign(v=alpha * master.v, groups=groups, blocks=tuple(blocks), kind=DesignKind.DGDD)
    extra = 1 if plan.infinity == InfinityMode.SHARED_POINT else 0
    params = DesignParams(v=alpha * master.v + extra, k=4)
    return DirectedDesign(params=params, blocks=tuple(blocks))


def weighting_composition(
    plan: WeightingPlan,
    ingredient_bounds: dict[int, int],
    fill_bounds: dict[int, int],
) -> BoundComposition:
    """Una entrada por tamaño de bloque y por tamaño de grupo, con su cota por copia."""
    terms: list[BoundTerm] = []
    block_sizes = Counter(len(b) for b in plan.master.blocks)
    for size, count in sorted(block_sizes.items()):
        ingredient = plan.ingredients[size]
        terms.append(
            BoundTerm(
                count=count,
                bound=Fraction(ingredient_bounds[size]),
                blocks=ingredient.block_count,
                label=f"DGDD({plan.weight}^{size})",
            )
        )
    for size, count in sorted(plan.master.group_type().items()):
        fill = plan.fills[size]
        terms.append(
            BoundTerm(count=count, bound=Fraction(fill_bounds[size]), blocks=fill.block_count, label=f"DD({fill.v})")
        )
    return BoundComposition(terms=tuple(terms))


def build_weighted(
    plan: WeightingPlan,
    recipe: str,
    ingredient_bounds: Optional[dict[int, int]] = None,
    fill_bounds: Optional[dict[int, int]] = None,
) -> Construction:
    """wilson_weighting más procedencia por bloque y composición de la cota."""
    design = wilson_weighting(plan)
    if not isinstance(design, DirectedDesign):
        raise RecipeError(f"recipe {recipe} needs fills to produce a directed design")
    _, provenance = _weight(plan)
    composition = None
    if ingredient_bounds is not None and fill_bounds is not None:
        composition = weighting_composition(plan, ingredient_bounds, fill_bounds)
    logger.info(f"Built {recipe}: {design.describe()}")
    return Construction(design=design, recipe=recipe, composition=composition, provenance=tuple(provenance))


# ===========================================
# ARITMÉTICA DE COTAS
# ===========================================

def compose_f_bound(parts: BoundComposition) -> FRatio:
    """Σ(count·bound) / Σ(count·blocks), exacto."""
    if parts.total_blocks <= 0:
        raise RecipeError("composition has no blocks")
    return FRatio.of(parts.total_bound / parts.total_blocks, Exactness.LOWER_BOUND)


# familia -> (tipo del GDD maestro en función de k, rellenos {tamaño de grupo: id}, modo ∞)
LEMMA_FAMILIES: dict[str, dict] = {
    "L3.1": {"type": lambda k: {6: k}, "fills": {6: "dd-13"}, "infinity": InfinityMode.SHARED_POINT},
    "L3.2": {"type": lambda k: {2: 3 * k + 1}, "fills": {2: "dd-4"}, "infinity": InfinityMode.NONE},
    "L3.3": {"type": lambda k: {6: k, 9: 1}, "fills": {6: "dd-13", 9: "dd-19"}, "infinity": InfinityMode.SHARED_POINT},
    "L3.4": {"type": lambda k: {2: 3 * k, 5: 1}, "fills": {2: "dd-4", 5: "dd-10"}, "infinity": InfinityMode.NONE},
}


def _family(name: str) -> dict:
    if name not in LEMMA_FAMILIES:
        raise RecipeError(f"unknown lemma family {name!r}; expected one of {sorted(LEMMA_FAMILIES)}")
    return LEMMA_FAMILIES[name]


def _master_block_count(group_type: dict[int, int], k: int = 4) -> int:
    points = sum(g * u for g, u in group_type.items())
    cross = (points * points - sum(g * g * u for g, u in group_type.items())) // 2
    return cross // (k * (k - 1) // 2)


def lemma_v(family: str, k: int) -> int:
    family_def = _family(family)
    extra = 1 if family_def["infinity"] == InfinityMode.SHARED_POINT else 0
    return 2 * sum(g * u for g, u in family_def["type"](k).items()) + extra


def _copy_term(name: str, count: int) -> BoundTerm:
    blocks = catalog_get(name).expected.block_count
    return BoundTerm(count=count, bound=Fraction(_bound(name)), blocks=blocks, label=name)


def lemma_composition(family: str, k: int) -> BoundComposition:
    """Composición de la familia: DGDD(2^4) con f ≥ 5/8 en cada bloque y rellenos por grupo."""
    family_def = _family(family)
    group_type = family_def["type"](k)
    terms = [_copy_term("dgdd-2^4-b", _master_block_count(group_type))]
    for size, count in sorted(group_type.items()):
        terms.append(_copy_term(family_def["fills"][size], count))
    return BoundComposition(terms=tuple(terms))


def lemma_closed_form(family: str, k: int) -> Fraction:
    """Forma cerrada de la cota de cada familia, escrita como polinomios en k."""
    if family == "L3.1":
        return Fraction(15 * k * (k - 1) + 13 * k, 2 * k * (12 * k + 1))
    if family == "L3.2":
        return Fraction(5 * k * (3 * k + 1) + (3 * k + 1), (12 * k + 4) * (12 * k + 3) // 6)
    if family == "L3.3":
        return Fraction(15 * k * (k + 2) + 13 * k + 29, (12 * k + 19) * (12 * k + 18) // 6)
    if family == "L3.4":
        return Fraction(5 * k * (3 * k + 4) + 3 * k + 8, (12 * k + 10) * (12 * k + 9) // 6)
    raise RecipeError(f"unknown lemma family {family!r}")


def simplified_bound(family: str, k: int) -> Fraction:
    """Forma simplificada fina: 5/8 menos términos en v."""
    v = lemma_v(family, k)
    base = Fraction(5, 8)
    if family == "L3.1":
        return base - Fraction(13, 8 * v)
    if family == "L3.2":
        return base - Fraction(1, 8 * (4 * k + 1))
    if family == "L3.3":
        return base - Fraction(13, 8 * v) - Fraction(21, 2 * v * (v - 1))
    return base - Fraction(1, 4 * v) - Fraction(k + 4, 2 * v * (4 * k + 3))


def coarse_bound(family: str, k: int) -> Fraction:
    """Forma gruesa usada en los enunciados."""
    v = lemma_v(family, k)
    base = Fraction(5, 8)
    if family == "L3.2":
        return base - Fraction(1, 2 * v)
    if family == "L3.4":
        return base - Fraction(1, 4 * v) - Fraction(1, 2 * v)
    return simplified_bound(family, k)


class ConstantRow(BaseModel):
    k: int
    v: int
    f: Fraction
    target: Fraction
    holds: bool

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class ConstantCheck(BaseModel):
    """Instancias finitas de f ≥ 5/8 − c/v con c = 13/8 + ε."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    family: str
    epsilon: Fraction
    rows: tuple[ConstantRow, ...] = Field(default_factory=tuple)
    holds_from_k: Optional[int] = None


def theorem_constant_check(family: str, epsilon: Fraction, k_start: int = 5, span: int = 50) -> ConstantCheck:
    """Para k en [k_start, k_start + span) compara la cota exacta con 5/8 − (13/8 + ε)/v."""
    if epsilon <= 0:
        raise RecipeError("epsilon must be positive")
    c = Fraction(13, 8) + Fraction(epsilon)
    rows = []
    for k in range(k_start, k_start + span):
        v = lemma_v(family, k)
        f = compose_f_bound(lemma_composition(family, k)).as_fraction()
        target = Fraction(5, 8) - c / v
        rows.append(ConstantRow(k=k, v=v, f=f, target=target, holds=f >= target))
    holds_from = None
    for row in reversed(rows):
        if not row.holds:
            break
        holds_from = row.k
    return ConstantCheck(family=family, epsilon=Fraction(epsilon), rows=tuple(rows), holds_from_k=holds_from)


# ===========================================
# INGREDIENTES
# ===========================================

def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def td_from_mols(n: int) -> GroupedDesign:
    """TD(4,n) = 4-GDD(n^4): bloques {(0,x),(1,y),(2,x+y),(3,x+2y)}, punto (c,j) -> c·n + j."""
    if not _is_prime(n) or n < 3:
        raise RecipeError(f"td_from_mols needs a prime n >= 3, got {n}")
    blocks = tuple(
        (x, n + y, 2 * n + (x + y) % n, 3 * n + (x + 2 * y) % n)
        for x in range(n)
        for y in range(n)
    )
    groups = tuple(tuple(c * n + j for j in range(n)) for c in range(4))
    return GroupedDesign(v=4 * n, groups=groups, blocks=blocks, ordered=False, kind=DesignKind.GDD)


class _SearchExhausted(Exception):
    pass


class GddSearchResult(BaseModel):
    found: Optional[GroupedDesign] = None
    exhausted: bool = False
    nodes: int = 0


def _gdd_admissible(group_sizes: list[int], block_sizes: set[int]) -> None:
    if not group_sizes or not block_sizes:
        raise RecipeError("empty group type or block size set")
    if len(group_sizes) < min(block_sizes):
        raise RecipeError(f"{len(group_sizes)} groups cannot hold a block of size {min(block_sizes)}")
    n = sum(group_sizes)
    cross = (n * n - sum(g * g for g in group_sizes)) // 2
    if len(block_sizes) == 1:
        k = next(iter(block_sizes))
        if cross % (k * (k - 1) // 2):
            raise RecipeError(f"{cross} cross pairs not divisible by {k * (k - 1) // 2}")
        for g in sorted(set(group_sizes)):
            if (n - g) % (k - 1):
                raise RecipeError(f"a point in a group of size {g} meets {n - g} others, not divisible by {k - 1}")


def gdd_backtrack(
    group_sizes: list[int],
    block_sizes: set[int],
    node_budget: Optional[int] = None,
) -> GddSearchResult:
    """
    Búsqueda exacta de un K-GDD del tipo dado.

    Cubre siempre el par entre grupos sin cubrir lexicográficamente menor,
    probando bloques (como conjuntos ordenados) en orden lexicográfico.
    """
    _gdd_admissible(group_sizes, block_sizes)
    budget = node_budget or get_settings().gdd_search_node_budget
    groups: list[tuple[int, ...]] = []
    start = 0
    for size in group_sizes:
        groups.append(tuple(range(start, start + size)))
        start += size
    v = start
    group_of = {x: i for i, g in enumerate(groups) for x in g}
    uncovered = [[group_of[x] != group_of[y] for y in range(v)] for x in range(v)]
    degree = [sum(row) for row in uncovered]
    chosen: list[tuple[int, ...]] = []
    nodes = [0]

    def toggle(block: tuple[int, ...], value: bool) -> None:
        for x, y in combinations(block, 2):
            uncovered[x][y] = uncovered[y][x] = value
        delta = len(block) - 1 if value else -(len(block) - 1)
        for x in block:
            degree[x] += delta

    def least_pair() -> Optional[tuple[int, int]]:
        for x in range(v):
            if degree[x]:
                for y in range(x + 1, v):
                    if uncovered[x][y]:
                        return x, y
        return None

    def candidates(x: int, y: int) -> list[tuple[int, ...]]:
        pool = [z for z in range(v) if z not in (x, y) and uncovered[x][z] and uncovered[y][z]]
        found = []
        for size in sorted(block_sizes):
            for extra in combinations(pool, size - 2):
                if all(uncovered[a][b] for a, b in combinations(extra, 2)):
                    found.append(tuple(sorted((x, y) + extra)))
        return sorted(found)

    def solve() -> bool:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _SearchExhausted()
        pair = least_pair()
        if pair is None:
            return True
        for block in candidates(*pair):
            toggle(block, False)
            chosen.append(block)
            if solve():
                return True
            chosen.pop()
            toggle(block, True)
        return False

    try:
        ok = solve()
    except _SearchExhausted:
        logger.warning(f"GDD search budget exhausted after {budget} nodes")
        return GddSearchResult(exhausted=True, nodes=nodes[0])
    if not ok:
        logger.info(f"No {sorted(block_sizes)}-GDD of type {group_sizes} exists (exhaustive)")
        return GddSearchResult(nodes=nodes[0])
    design = GroupedDesign(v=v, groups=tuple(groups), blocks=tuple(chosen), ordered=False, kind=DesignKind.GDD)
    return GddSearchResult(found=design, nodes=nodes[0])


def _gf4_mul(a: int, b: int) -> int:
    """Producto en GF(4) = GF(2)[w]/(w^2 + w + 1), elementos codificados en 2 bits."""
    result = 0
    for shift in range(2):
        if b >> shift & 1:
            result ^= a << shift
    if result & 0b100:
        result ^= 0b111
    return result


def rbibd_ag24() -> tuple[list[frozenset[int]], list[list[frozenset[int]]]]:
    """Plano afín de orden 4: 20 rectas sobre 16 puntos (x, y) -> 4x + y, y sus 5 clases paralelas."""
    lines: list[frozenset[int]] = []
    for m in range(4):
        for b in range(4):
            lines.append(frozenset(4 * x + (_gf4_mul(m, x) ^ b) for x in range(4)))
    for c in range(4):
        lines.append(frozenset(4 * c + y for y in range(4)))
    classes = find_parallel_classes(lines, 16)
    if classes is None or len(classes) != 5:
        raise RecipeError("AG(2,4) lines do not resolve into 5 parallel classes")
    return sorted(lines, key=sorted), classes


def derived_gdd_4_4_2_1(extend: tuple[int, int] = (0, 1), delete: int = 2) -> GroupedDesign:
    """
    {4,5}-GDD de tipo 4^4 2^1 sobre 18 puntos.

    Se agrega u1 = 16 a los bloques de una clase y u2 = 17 a los de otra;
    los bloques de la clase borrada, más {u1, u2}, pasan a ser los grupos.
    """
    if len({*extend, delete}) != 3:
        raise RecipeError("extended and deleted classes must be distinct")
    _, classes = rbibd_ag24()
    blocks: list[tuple[int, ...]] = []
    for index, cls in enumerate(classes):
        if index == delete:
            continue
        for line in cls:
            points = sorted(line)
            if index == extend[0]:
                points.append(16)
            elif index == extend[1]:
                points.append(17)
            blocks.append(tuple(points))
    groups = tuple(tuple(sorted(line)) for line in classes[delete]) + ((16, 17),)
    return GroupedDesign(
        v=18,
        groups=groups,
        blocks=tuple(sorted(blocks)),
        ordered=False,
        kind=DesignKind.GDD,
    )


def direct_by_orders(k: int, points: Optional[tuple[int, ...]] = None) -> DirectedDesign:
    """2-(4,4,1)DD: un bloque y su reverso."""
    if k != 4:
        raise RecipeError(f"direct construction only for k = 4, got {k}")
    if points is None:
        points = (0, 1, 2, 3)
    if len(set(points)) != 4:
        raise RecipeError(f"need 4 distinct points, got {points}")
    v = max(points) + 1
    block = tuple(points)
    return DirectedDesign(params=DesignParams(v=v, k=4), blocks=(block, block[::-1]))


def projective_plane_3() -> GroupedDesign:
    """PG(2,3) como PBD(13,{4}): {0,1,3,9} desarrollado mod 13."""
    blocks = tuple(tuple(sorted((x + i) % 13 for x in (0, 1, 3, 9))) for i in range(13))
    groups = tuple((x,) for x in range(13))
    return GroupedDesign(v=13, groups=groups, blocks=blocks, ordered=False, kind=DesignKind.PBD)


def affine_plane_4() -> GroupedDesign:
    """AG(2,4) como PBD(16,{4})."""
    lines, _ = rbibd_ag24()
    groups = tuple((x,) for x in range(16))
    return GroupedDesign(
        v=16,
        groups=groups,
        blocks=tuple(tuple(sorted(line)) for line in lines),
        ordered=False,
        kind=DesignKind.PBD,
    )


def pbd_minus_point(pbd: GroupedDesign, point: Optional[int] = None) -> GroupedDesign:
    """
    Borra un punto (por defecto el último) de un PBD: los bloques que lo
    contenían, sin él, son los grupos; el resto son los bloques del GDD.
    """
    point = pbd.v - 1 if point is None else point
    relabel = {x: (x if x < point else x - 1) for x in range(pbd.v) if x != point}
    groups, blocks = [], []
    for block in pbd.blocks:
        if point in block:
            groups.append(tuple(sorted(relabel[x] for x in block if x != point)))
        else:
            blocks.append(tuple(relabel[x] for x in block))
    return GroupedDesign(
        v=pbd.v - 1,
        groups=tuple(sorted(groups)),
        blocks=tuple(blocks),
        ordered=False,
        kind=DesignKind.GDD,
    )


# ===========================================
# RECETAS
# ===========================================

CATALOG_VALUES = (4, 10, 13, 16, 19, 22, 28, 31, 34, 52)


def _ingredient(name: str, ingredients_dir: Optional[str] = None):
    return resolve_ingredient(name, ingredients_dir)


def _bound(name: str) -> int:
    bound = catalog_get(name).expected.bound
    if bound is None:
        raise IngredientError(f"catalog entry {name} has no recorded bound")
    return bound


def _weighted_recipe(
    recipe: str,
    master: GroupedDesign,
    weight: int,
    ingredient_ids: dict[int, str],
    fill_ids: dict[int, str],
    infinity: InfinityMode,
    ingredients_dir: Optional[str] = None,
) -> Construction:
    plan = WeightingPlan(
        master=master,
        weight=weight,
        ingredients={size: _ingredient(name, ingredients_dir) for size, name in ingredient_ids.items()},
        fills={size: _ingredient(name, ingredients_dir) for size, name in fill_ids.items()},
        infinity=infinity,
    )
    return build_weighted(
        plan,
        recipe,
        ingredient_bounds={size: _bound(name) for size, name in ingredient_ids.items()},
        fill_bounds={size: _bound(name) for size, name in fill_ids.items()},
    )


def _master_gdd(name: str, group_sizes: list[int], ingredients_dir: Optional[str]) -> GroupedDesign:
    """Un GDD maestro: archivo de ingredientes si existe, si no búsqueda acotada."""
    try:
        master = _ingredient(name, ingredients_dir)
        if isinstance(master, GroupedDesign):
            return master
    except IngredientError:
        logger.info(f"{name} not supplied; searching")
    result = gdd_backtrack(group_sizes, {4})
    if result.found is None:
        reason = "budget exhausted" if result.exhausted else "search failed"
        raise RecipeError(f"{name} unavailable ({reason}); supply {name}.txt in the ingredients directory")
    return result.found


def recipe_40(ingredients_dir: Optional[str] = None) -> Construction:
    return _weighted_recipe("v=40", td_from_mols(5), 2, {4: "dgdd-2^4-a"}, {5: "dd-10"}, InfinityMode.NONE, ingredients_dir)


def recipe_43(ingredients_dir: Optional[str] = None) -> Construction:
    master = _master_gdd("gdd-2^7", [2] * 7, ingredients_dir)
    return _weighted_recipe("v=43", master, 3, {4: "dgdd-3^4"}, {2: "dd-7"}, InfinityMode.SHARED_POINT, ingredients_dir)


def recipe_55(ingredients_dir: Optional[str] = None) -> Construction:
    return _weighted_recipe(
        "v=55",
        derived_gdd_4_4_2_1(),
        3,
        {4: "dgdd-3^4", 5: "dgdd-3^5"},
        {4: "dd-13", 2: "dd-7"},
        InfinityMode.SHARED_POINT,
        ingredients_dir,
    )


def recipe_67(ingredients_dir: Optional[str] = None) -> Construction:
    master = _master_gdd("gdd-6^4-9^1", [6, 6, 6, 6, 9], ingredients_dir)
    return _weighted_recipe(
        "v=67",
        master,
        2,
        {4: "dgdd-2^4-a"},
        {6: "dd-13", 9: "dd-19"},
        InfinityMode.SHARED_POINT,
        ingredients_dir,
    )


SPECIAL_RECIPES = {40: recipe_40, 43: recipe_43, 55: recipe_55, 67: recipe_67}

# tamaño de grupo del GDD derivado del PBD -> relleno DD(3g + 1)
_GENERAL_FILLS = {3: "dd-10", 4: "dd-13", 5: "dd-16"}
_GENERAL_INGREDIENTS = {4: "dgdd-3^4", 5: "dgdd-3^5", 6: "dgdd-3^6"}


def general_recipe(v: int, pbd: GroupedDesign, ingredients_dir: Optional[str] = None) -> Construction:
    """PBD(n,{4,5,6}) menos un punto, peso 3, DGDD(3^k) y rellenos DD(3g+1) con ∞ compartido."""
    n = (v - 1) // 3 + 1
    if pbd.v != n:
        raise RecipeError(f"v={v} needs a PBD on {n} points, got {pbd.v}")
    if not pbd.block_sizes <= {4, 5, 6}:
        raise RecipeError(f"PBD block sizes {sorted(pbd.block_sizes)} outside {{4,5,6}}")
    master = pbd_minus_point(pbd)
    report = verify_grouped(master)
    if not report.passed:
        raise IngredientError(f"PBD({n}) minus a point is not a GDD: {report.violations[0].witness}")
    ingredients = {size: _GENERAL_INGREDIENTS[size] for size in master.block_sizes}
    fills = {size: _GENERAL_FILLS[size] for size in master.group_type()}
    return _weighted_recipe(f"v={v}", master, 3, ingredients, fills, InfinityMode.SHARED_POINT, ingredients_dir)


def _builtin_pbd(n: int) -> Optional[GroupedDesign]:
    if n == 13:
        return projective_plane_3()
    if n == 16:
        return affine_plane_4()
    return None


def theorem23_recipe(
    v: int,
    pbd: Optional[GroupedDesign] = None,
    ingredients_dir: Optional[str] = None,
) -> Construction:
    """
    Un 2-(v,4,1)DD super-simple para v ≡ 1 (mod 3), v != 7.

    Catálogo, recetas especiales, dd-25 de archivo, o el caso general por PBD.
    """
    if v == 7:
        raise RecipeError("v = 7 is the exception value: every 2-(7,4,1)DD has f = 2/7")
    if v < 4 or v % 3 != 1:
        raise RecipeError(f"v = {v} is not admissible (need v ≡ 1 mod 3)")

    if v in CATALOG_VALUES:
        design = catalog_design(f"dd-{v}")
        return Construction(design=design, recipe=f"catalog dd-{v}")
    if v in SPECIAL_RECIPES:
        return SPECIAL_RECIPES[v](ingredients_dir)
    if v == 25:
        design = _ingredient("dd-25", ingredients_dir)
        if not isinstance(design, DirectedDesign) or not verify_directed_design(design).passed:
            raise IngredientError("dd-25 file does not hold a valid 2-(25,4,1)DD")
        return Construction(design=design, recipe="file dd-25")

    n = (v - 1) // 3 + 1
    pbd = pbd or _builtin_pbd(n)
    if pbd is None:
        pbd = _ingredient(f"pbd-{n}", ingredients_dir)
    return general_recipe(v, pbd, ingredients_dir)


def asymptotic_recipe(
    family: str,
    k: int,
    master: GroupedDesign,
    ingredients_dir: Optional[str] = None,
) -> Construction:
    """Familias con peso 2, DGDD(2^4) con f ≥ 5/8 en cada bloque y rellenos según la familia."""
    family_def = _family(family)
    if k <= 4:
        raise RecipeError(f"lemma families need k > 4, got {k}")
    expected = family_def["type"](k)
    if master.group_type() != expected:
        wanted = " ".join(f"{g}^{u}" for g, u in sorted(expected.items()))
        raise RecipeError(f"{family} with k={k} needs a 4-GDD of type {wanted}, got {master.type_label()}")
    if master.block_sizes != {4}:
        raise RecipeError(f"{family} master must have blocks of size 4")
    report = verify_grouped(master)
    if not report.passed:
        raise RecipeError(f"{family} master fails verification at {report.violations[0].witness}")
    return _weighted_recipe(
        f"{family} k={k}",
        master,
        2,
        {4: "dgdd-2^4-b"},
        dict(family_def["fills"]),
        family_def["infinity"],
        ingredients_dir,
    )
