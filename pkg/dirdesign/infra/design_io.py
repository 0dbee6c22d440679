"""
design_io.py
Formato de archivo de diseños (texto, UTF-8, orientado a líneas).

    # comentario
    kind: DD | DGDD | GDD | PBD
    v: 18
    k: 4
    lambda: 1
    groups: 0 6 12; 1 7 13; ...          (opcional)
    action: +2 mod 18                    (opcional: archivo de bloques base)
    unverified: true                     (opcional)
    names: 0=(0,0); 1=(0,1)              (opcional)
    blocks:
    5 10 2 0
    0 1 3 2 | orbit: 9
    27 1 0 26 | action: +2 mod 52
"""

import logging
import re
import sys
from typing import Optional, Union

from pydantic import ValidationError

from dirdesign.models.errors import DesignFormatError
from dirdesign.models.schemas import (
    BaseBlock,
    BaseBlockSet,
    DesignKind,
    DesignParams,
    DevelopmentAction,
    DevelopmentRule,
    DirectedDesign,
    GroupedDesign,
)

logger = logging.getLogger(__name__)

Parsed = Union[DirectedDesign, GroupedDesign, BaseBlockSet]

_HEADER_KEYS = ("kind", "v", "k", "lambda", "groups", "action", "unverified", "names")
_TOKEN = re.compile(r"\(\s*-?\d+\s*,\s*-?\d+\s*\)|\S+")
_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_ADD_STEP = re.compile(r"^\+(\d+)\s+mod\s+(\d+)$")
_FIX_FIRST = re.compile(r"^-\s*,\s*\+1\s+mod\s+(\d+)$")


# ===========================================
# HELPERS
# ===========================================

def parse_action(text: str, line: Optional[int] = None) -> DevelopmentRule:
    """'+2 mod 18' -> add-step; '-,+1 mod 11' -> coordenada fija."""
    text = text.strip()
    try:
        match = _ADD_STEP.match(text)
        if match:
            return DevelopmentRule(step=int(match.group(1)), modulus=int(match.group(2)))
        match = _FIX_FIRST.match(text)
        if match:
            return DevelopmentRule(action=DevelopmentAction.FIX_FIRST, modulus=int(match.group(1)))
    except ValidationError as e:
        raise DesignFormatError(f"invalid action {text!r}: {e.errors()[0]['msg']}", line)
    raise DesignFormatError(f"unrecognized action {text!r}", line)


def _parse_point(token: str, line: int):
    match = _PAIR.fullmatch(token)
    if match:
        return int(match.group(1)), int(match.group(2))
    try:
        return int(token)
    except ValueError:
        raise DesignFormatError(f"bad point {token!r}", line)


def _parse_int(value: str, key: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise DesignFormatError(f"{key} must be an integer, got {value!r}", line)


def _parse_groups(value: str, line: int) -> tuple[tuple[int, ...], ...]:
    groups = []
    for chunk in value.split(";"):
        if chunk.strip():
            groups.append(tuple(_parse_int(t, "group point", line) for t in chunk.split()))
    return tuple(groups)


def _parse_names(value: str, line: int) -> dict[int, str]:
    names = {}
    for chunk in value.split(";"):
        if not chunk.strip():
            continue
        label, _, name = chunk.partition("=")
        if not name:
            raise DesignFormatError(f"bad name entry {chunk.strip()!r}", line)
        names[_parse_int(label.strip(), "name label", line)] = name.strip()
    return names


_LOC_HEADERS = {"lambda_": "lambda", "lambda": "lambda", "v": "v", "k": "k", "groups": "groups",
                "rule": "action", "step": "action", "modulus": "action"}


def _validated(factory, header: dict[str, tuple[str, int]], fallback_line: Optional[int]):
    """Construye un modelo; un ValidationError pasa a DesignFormatError con la línea del encabezado."""
    try:
        return factory()
    except ValidationError as e:
        error = e.errors()[0]
        line = fallback_line
        for part in reversed(error["loc"]):
            key = _LOC_HEADERS.get(str(part))
            if key in header:
                line = header[key][1]
                break
        raise DesignFormatError(f"invalid header values: {error['msg']}", line)


def _format_point(point) -> str:
    if isinstance(point, tuple):
        return f"({point[0]},{point[1]})"
    return str(point)


# ===========================================
# PARSE
# ===========================================

def parse_design(text: str) -> Parsed:
    """
    Parsea un archivo de diseño.

    Args:
        text: contenido del archivo

    Returns:
        DirectedDesign, GroupedDesign o BaseBlockSet según el encabezado

    Raises:
        DesignFormatError con el número de línea (1-based)
    """
    header: dict[str, tuple[str, int]] = {}
    block_lines: list[tuple[str, int]] = []
    in_blocks = False

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_blocks:
            block_lines.append((line, number))
            continue
        if line == "blocks:":
            in_blocks = True
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in _HEADER_KEYS:
            raise DesignFormatError(f"expected a header line, got {line!r}", number)
        if key in header:
            raise DesignFormatError(f"duplicate header {key!r}", number)
        header[key] = (value.strip(), number)

    if not in_blocks:
        raise DesignFormatError("missing 'blocks:' line", None)
    for required in ("kind", "v"):
        if required not in header:
            raise DesignFormatError(f"missing header {required!r}", 1)

    kind_text, kind_line = header["kind"]
    try:
        kind = DesignKind(kind_text.upper())
    except ValueError:
        raise DesignFormatError(f"unknown kind {kind_text!r}", kind_line)
    v = _parse_int(header["v"][0], "v", header["v"][1])
    k = _parse_int(header["k"][0], "k", header["k"][1]) if "k" in header else 4
    lam = _parse_int(header["lambda"][0], "lambda", header["lambda"][1]) if "lambda" in header else 1
    groups = _parse_groups(*header["groups"]) if "groups" in header else None
    rule = parse_action(*header["action"]) if "action" in header else None
    names = _parse_names(*header["names"]) if "names" in header else None

    is_base = rule is not None or any("| action:" in text_ for text_, _ in block_lines)
    params_line = header.get("k", header["v"])[1]
    if is_base or kind in (DesignKind.DD, DesignKind.DGDD):
        params = _validated(lambda: DesignParams(v=v, k=k, lambda_=lam), header, params_line)
    if is_base:
        unverified = header.get("unverified", ("false", 0))[0].lower() == "true"
        return _parse_base(block_lines, header, v, k, lam, groups, rule, unverified)

    blocks = []
    for content, number in block_lines:
        if "|" in content:
            raise DesignFormatError("orbit suffix outside a base-block file", number)
        block = tuple(_parse_point(t, number) for t in _TOKEN.findall(content))
        if any(isinstance(p, tuple) for p in block):
            raise DesignFormatError("coordinate points need an action header", number)
        _check_block(block, v, k if kind == DesignKind.DD or kind == DesignKind.DGDD else None, number)
        blocks.append(block)

    if kind == DesignKind.DD:
        return _validated(
            lambda: DirectedDesign(params=params, blocks=tuple(blocks), display_names=names), header, kind_line
        )
    if groups is None:
        if kind != DesignKind.PBD:
            raise DesignFormatError(f"{kind.value} file needs a 'groups:' header", kind_line)
        groups = tuple((x,) for x in range(v))
    return _validated(
        lambda: GroupedDesign(
            v=v,
            groups=groups,
            blocks=tuple(blocks),
            ordered=kind == DesignKind.DGDD,
            lambda_=lam,
            kind=kind,
            display_names=names,
        ),
        header,
        header.get("groups", (None, kind_line))[1],
    )


def _check_block(block: tuple, v: int, k: Optional[int], line: int) -> None:
    if k is not None and len(block) != k:
        raise DesignFormatError(f"block has {len(block)} points, expected {k}", line)
    if len(set(block)) != len(block):
        raise DesignFormatError(f"duplicate point in block {block}", line)
    for x in block:
        if not 0 <= x < v:
            raise DesignFormatError(f"point {x} out of range 0..{v - 1}", line)


def _parse_base(block_lines, header, v, k, lam, groups, rule, unverified) -> BaseBlockSet:
    base_blocks = []
    for content, number in block_lines:
        points_text, *suffixes = content.split("|")
        block_rule, length = rule, None
        for suffix in suffixes:
            key, _, value = suffix.partition(":")
            key = key.strip()
            if key == "orbit":
                length = _parse_int(value.strip(), "orbit", number)
            elif key == "action":
                block_rule = parse_action(value, number)
            else:
                raise DesignFormatError(f"unknown block suffix {key!r}", number)
        if block_rule is None:
            raise DesignFormatError("base block without an action", number)
        points = tuple(_parse_point(t, number) for t in _TOKEN.findall(points_text))
        if len(points) != k:
            raise DesignFormatError(f"base block has {len(points)} points, expected {k}", number)
        if len(set(points)) != len(points):
            raise DesignFormatError(f"duplicate point in base block {points}", number)
        base_blocks.append(
            _validated(lambda: BaseBlock(points=points, rule=block_rule, orbit_length=length), {}, number)
        )
    return _validated(
        lambda: BaseBlockSet(
            v=v,
            k=k,
            lambda_=lam,
            base_blocks=tuple(base_blocks),
            groups=groups,
            unverified=unverified,
        ),
        header,
        header["v"][1],
    )


# ===========================================
# SERIALIZE
# ===========================================

def serialize_design(obj: Parsed) -> str:
    """Inverso de parse_design: parse_design(serialize_design(x)) == x."""
    lines: list[str] = []
    if isinstance(obj, DirectedDesign):
        lines += ["kind: DD", f"v: {obj.v}", f"k: {obj.params.k}", f"lambda: {obj.params.lambda_}"]
        if obj.display_names:
            lines.append("names: " + "; ".join(f"{x}={n}" for x, n in sorted(obj.display_names.items())))
        lines.append("blocks:")
        lines += [" ".join(map(str, b)) for b in obj.blocks]
    elif isinstance(obj, GroupedDesign):
        k = max(obj.block_sizes) if obj.blocks else 4
        lines += [f"kind: {obj.kind.value}", f"v: {obj.v}", f"k: {k}", f"lambda: {obj.lambda_}"]
        lines.append("groups: " + "; ".join(" ".join(map(str, g)) for g in obj.groups))
        if obj.display_names:
            lines.append("names: " + "; ".join(f"{x}={n}" for x, n in sorted(obj.display_names.items())))
        lines.append("blocks:")
        lines += [" ".join(map(str, b)) for b in obj.blocks]
    else:
        lines += _serialize_base(obj)
    return "\n".join(lines) + "\n"


def _serialize_base(base: BaseBlockSet) -> list[str]:
    kind = "DGDD" if base.groups is not None else "DD"
    lines = [f"kind: {kind}", f"v: {base.v}", f"k: {base.k}", f"lambda: {base.lambda_}"]
    if base.groups is not None:
        lines.append("groups: " + "; ".join(" ".join(map(str, g)) for g in base.groups))
    rules = [b.rule for b in base.base_blocks]
    common = rules[0] if rules and all(r == rules[0] for r in rules) else None
    if common is not None:
        lines.append(f"action: {common.label()}")
    if base.unverified:
        lines.append("unverified: true")
    lines.append("blocks:")
    for block in base.base_blocks:
        text = " ".join(_format_point(p) for p in block.points)
        if common is None:
            text += f" | action: {block.rule.label()}"
        if block.orbit_length is not None:
            text += f" | orbit: {block.orbit_length}"
        lines.append(text)
    return lines


def read_design_file(path: str) -> Parsed:
    """Lee y parsea un archivo; '-' lee de stdin."""
    if path == "-":
        return parse_design(sys.stdin.read())
    with open(path, encoding="utf-8") as f:
        return parse_design(f.read())
