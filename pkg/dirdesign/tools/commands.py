"""
commands.py
Handlers de los subcomandos del CLI.
Cada handler devuelve un dict con status 'pass' | 'fail' | 'error',
un mensaje legible y los datos estructurados del reporte.
"""

import json
import logging
import os
from typing import Any, Optional

from pydantic import BaseModel, Field

from dirdesign.infra.catalog import catalog_get, catalog_list
from dirdesign.infra.design_io import read_design_file, serialize_design
from dirdesign.models.errors import DesignError
from dirdesign.models.schemas import (
    BaseBlockSet,
    BoundMode,
    DesignParams,
    DirectedDesign,
    FRatio,
    GroupedDesign,
)
from dirdesign.tools.constructions import (
    LEMMA_FAMILIES,
    asymptotic_recipe,
    compose_f_bound,
    gdd_backtrack,
    theorem23_recipe,
)
from dirdesign.tools.defset import f_ratio, is_defining_set, smallest_defining_set
from dirdesign.tools.development import develop, resolve_orbit_lengths
from dirdesign.tools.trades import (
    build_trade_graph,
    cycle_indices,
    format_certificate,
    lower_bound,
    recheck_certificate,
)
from dirdesign.tools.verifier import is_super_simple, verify_directed_design, verify_grouped

logger = logging.getLogger(__name__)


class CommandReport(BaseModel):
    """Reporte estructurado que emite --json."""
    command: str
    status: str
    message: str
    data: dict[str, Any] = Field(default_factory=dict)


# ===========================================
# HELPERS
# ===========================================

def load_source(source: str):
    """Id de catálogo, ruta a archivo o '-' (stdin); sin desarrollar."""
    if source in catalog_list():
        return catalog_get(source).payload
    if source != "-" and not os.path.exists(source):
        raise DesignError(f"{source!r} is neither a catalog id nor a readable file")
    return read_design_file(source)


def load_design(source: str):
    """Como load_source, pero desarrolla los archivos de bloques base tal como están."""
    payload = load_source(source)
    if isinstance(payload, BaseBlockSet):
        return develop(payload)
    return payload


def _error(command: str, error: Exception) -> dict:
    logger.error(f"{command} failed: {error}")
    return {"command": command, "status": "error", "message": str(error), "data": {}}


def _block_text(block) -> str:
    return " ".join(map(str, block))


# ===========================================
# HANDLERS
# ===========================================

def verify_command(source: str, super_simple: bool = False) -> dict:
    """
    Verifica un diseño (DD o GDD/DGDD).

    Returns:
        dict con status 'pass' | 'fail' | 'error', message y data.report
    """
    try:
        design = load_design(source)
        if isinstance(design, GroupedDesign):
            report = verify_grouped(design, check_super_simple=super_simple)
        else:
            report = verify_directed_design(design)
            if super_simple and report.passed:
                simple = is_super_simple(design)
                if not simple.passed:
                    report = simple.model_copy(update={"subject": design.describe()})

        if report.passed:
            prefix = "valid super-simple" if super_simple else "valid"
            message = f"{prefix} {report.subject}"
        else:
            first = report.violations[0]
            message = (
                f"invalid {report.subject}: {len(report.violations)} violation(s); "
                f"first {first.property} at {first.witness} {first.detail}".rstrip()
            )
        return {
            "command": "verify",
            "status": "pass" if report.passed else "fail",
            "message": message,
            "data": {"report": report.model_dump(mode="json")},
        }
    except DesignError as e:
        return _error("verify", e)
    except OSError as e:
        return _error("verify", e)


def gen_command(source: str, resolve_orbits: bool = False, workers: Optional[int] = None) -> dict:
    """
    Desarrolla un archivo de bloques base y devuelve el diseño serializado.
    workers (--threads) acota los hilos de la resolución de órbitas en esta invocación.
    """
    try:
        payload = load_source(source)
        if not isinstance(payload, BaseBlockSet):
            return {"command": "gen", "status": "pass", "message": "explicit design", "data": {"text": serialize_design(payload)}}
        if payload.unverified and not resolve_orbits:
            return {
                "command": "gen",
                "status": "fail",
                "message": "base blocks flagged unverified; rerun with --resolve-orbits",
                "data": {},
            }
        if resolve_orbits:
            params = DesignParams(v=payload.v, k=payload.k, lambda_=payload.lambda_)
            resolution = resolve_orbit_lengths(payload, params, workers=max(1, workers) if workers else None)
            if not resolution.ok:
                return {
                    "command": "gen",
                    "status": "fail",
                    "message": resolution.summary(),
                    "data": {"resolution": resolution.model_dump(mode="json", exclude={"resolved"})},
                }
            payload = resolution.resolved
        design = develop(payload)
        return {
            "command": "gen",
            "status": "pass",
            "message": design.describe(),
            "data": {"text": serialize_design(design)},
        }
    except (DesignError, OSError) as e:
        return _error("gen", e)


def trades_command(source: str, cycles: bool = False) -> dict:
    """Lista las aristas del grafo de trades (y sus ciclos sin cuerdas)."""
    try:
        design = load_design(source)
        graph = build_trade_graph(design)
        edges = [
            {"u": e.u, "v": e.v, "blocks": [_block_text(design.blocks[e.u]), _block_text(design.blocks[e.v])],
             "replacement": [_block_text(b) for b in e.witness]}
            for e in graph.edges
        ]
        data: dict[str, Any] = {"edges": edges}
        lines = [f"edge {e['u']}-{e['v']}: {e['blocks'][0]} | {e['blocks'][1]}" for e in edges]
        if cycles:
            found = cycle_indices(graph.to_networkx())
            data["cycles"] = [list(c) for c in found]
            lines += [f"cycle[{len(c)}]: " + " , ".join(_block_text(design.blocks[i]) for i in c) for c in found]
        data["text"] = "\n".join(lines)
        return {"command": "trades", "status": "pass", "message": f"{len(edges)} trade edges", "data": data}
    except (DesignError, OSError) as e:
        return _error("trades", e)


def bound_command(source: str, exact: bool = False) -> dict:
    """Cota inferior certificada y la razón f correspondiente."""
    try:
        design = load_design(source)
        graph = build_trade_graph(design)
        certificate = lower_bound(design, mode=BoundMode.EXACT if exact else BoundMode.STRUCTURAL, graph=graph)
        if not recheck_certificate(graph, certificate):
            return {"command": "bound", "status": "fail", "message": "certificate failed the recheck", "data": {}}
        ratio_text = f_ratio(design, certificate.bound).format()
        message = f"bound {certificate.bound}, f {ratio_text}"
        return {
            "command": "bound",
            "status": "pass",
            "message": message,
            "data": {
                "certificate": certificate.model_dump(mode="json"),
                "f": ratio_text,
                "text": format_certificate(certificate, design),
            },
        }
    except (DesignError, OSError) as e:
        return _error("bound", e)


def defset_command(
    source: str,
    check: Optional[str] = None,
    smallest: bool = False,
    budget: Optional[float] = None,
) -> dict:
    """
    Conjuntos definidores: --check decide un subconjunto dado,
    --smallest busca uno de cardinalidad mínima.
    """
    try:
        design = load_design(source)
        if not isinstance(design, DirectedDesign):
            raise DesignError("defining sets are computed for directed designs only")
        if check is not None:
            subset = read_design_file(check)
            blocks = subset.blocks if not isinstance(subset, BaseBlockSet) else develop(subset).blocks
            defining = is_defining_set(design, blocks)
            return {
                "command": "defset",
                "status": "pass" if defining else "fail",
                "message": f"{len(blocks)} blocks {'are' if defining else 'are not'} a defining set",
                "data": {"defining": defining, "size": len(blocks)},
            }
        if not smallest:
            raise DesignError("defset needs --check SUBSET_FILE or --smallest")
        result = smallest_defining_set(design, budget_seconds=budget)
        ratio = f_ratio(design, result.size, exact=result.optimal)
        qualifier = "optimal" if result.optimal else f"best found, lower bound {result.lower_bound}"
        return {
            "command": "defset",
            "status": "pass",
            "message": f"size {result.size} ({qualifier}), f {ratio.format()}",
            "data": {
                "size": result.size,
                "optimal": result.optimal,
                "lower_bound": result.lower_bound,
                "witness": [_block_text(b) for b in result.witness],
                "f": ratio.format(),
            },
        }
    except (DesignError, OSError) as e:
        return _error("defset", e)


def build_command(
    recipe: str,
    ingredients_dir: Optional[str] = None,
    k: Optional[int] = None,
    master: Optional[str] = None,
) -> dict:
    """Construye por receta: un valor de v, o una familia L3.x con --k y --master."""
    try:
        if recipe in LEMMA_FAMILIES:
            if k is None or master is None:
                raise DesignError(f"{recipe} needs --k and --master")
            master_design = read_design_file(master)
            if not isinstance(master_design, GroupedDesign):
                raise DesignError("master file must hold a GDD")
            construction = asymptotic_recipe(recipe, k, master_design, ingredients_dir)
        else:
            try:
                v = int(recipe.removeprefix("v="))
            except ValueError:
                raise DesignError(f"unknown recipe {recipe!r}")
            construction = theorem23_recipe(v, ingredients_dir=ingredients_dir)

        design = construction.design
        report = verify_directed_design(design)
        simple = is_super_simple(design)
        data: dict[str, Any] = {
            "recipe": construction.recipe,
            "blocks": design.block_count,
            "super_simple": simple.passed,
            "text": serialize_design(design),
        }
        message = f"{'valid' if report.passed else 'invalid'} {design.describe()}"
        if construction.composition is not None:
            ratio = compose_f_bound(construction.composition)
            data["bound"] = str(construction.composition.total_bound)
            data["f"] = ratio.format()
            message += f", f {ratio.format()}"
        return {"command": "build", "status": "pass" if report.passed else "fail", "message": message, "data": data}
    except (DesignError, OSError) as e:
        return _error("build", e)


def _parse_type(spec: str) -> list[int]:
    """'6^4 9^1' o '2^7' -> lista de tamaños de grupo."""
    sizes: list[int] = []
    for part in spec.replace(",", " ").split():
        size, _, count = part.partition("^")
        sizes += [int(size)] * int(count or 1)
    return sizes


def search_command(kind: str, type_spec: str, block_sizes: str = "4", budget: Optional[int] = None) -> dict:
    """Busca un GDD del tipo pedido por backtracking acotado."""
    try:
        if kind != "gdd":
            raise DesignError(f"unknown search kind {kind!r}")
        try:
            groups = _parse_type(type_spec)
            sizes = {int(x) for x in block_sizes.split(",")}
        except ValueError:
            raise DesignError(f"bad type {type_spec!r} or block sizes {block_sizes!r}")
        result = gdd_backtrack(groups, sizes, node_budget=budget)
        if result.found is None:
            reason = "budget exhausted" if result.exhausted else "no such GDD"
            return {"command": "search", "status": "fail", "message": f"{reason} after {result.nodes} nodes", "data": {}}
        return {
            "command": "search",
            "status": "pass",
            "message": f"found {result.found.describe()} after {result.nodes} nodes",
            "data": {"text": serialize_design(result.found)},
        }
    except DesignError as e:
        return _error("search", e)


def catalog_command(action: str = "list", entry_id: Optional[str] = None) -> dict:
    try:
        if action == "list":
            rows = []
            for name in catalog_list():
                entry = catalog_get(name)
                rows.append(f"{name}\t{entry.expected.block_count} blocks\t{entry.provenance}")
            return {"command": "catalog", "status": "pass", "message": f"{len(rows)} entries", "data": {"text": "\n".join(rows)}}
        if entry_id is None:
            raise DesignError("catalog show needs an id")
        entry = catalog_get(entry_id)
        expected = entry.expected
        f_text = None
        if expected.f_numerator is not None:
            ratio = FRatio(
                numerator=expected.f_numerator,
                denominator=expected.f_denominator,
                exactness=expected.f_exactness,
            )
            f_text = ratio.format()
        return {
            "command": "catalog",
            "status": "pass",
            "message": f"{entry.id}: {entry.provenance}",
            "data": {"expected": expected.model_dump(mode="json"), "f": f_text, "text": serialize_design(entry.payload)},
        }
    except DesignError as e:
        return _error("catalog", e)


def schema_command() -> dict:
    schema = CommandReport.model_json_schema()
    return {"command": "schema", "status": "pass", "message": "report schema", "data": {"text": json.dumps(schema, indent=2)}}
