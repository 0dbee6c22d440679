"""
schemas.py
Modelos Pydantic para dirdesign.
Todos los tipos de datos compartidos por los módulos: diseños dirigidos,
diseños con grupos, reglas de desarrollo, reportes, trades y cotas.
"""

from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# Un bloque es una tupla de etiquetas enteras; el orden es semántico.
OrderedBlock = tuple[int, ...]
# Punto de un bloque base: entero mod n o par de coordenadas (c, j).
BasePoint = Union[int, tuple[int, int]]


# ===========================================
# ENUMS
# ===========================================

class DesignKind(str, Enum):
    """Tipo de diseño almacenado."""
    DD = "DD"
    DGDD = "DGDD"
    GDD = "GDD"
    PBD = "PBD"


class Exactness(str, Enum):
    """Si una razón f es exacta o solo una cota inferior."""
    EXACT = "exact"
    LOWER_BOUND = "lower-bound"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class DevelopmentAction(str, Enum):
    """Familias de acción de grupo usadas para desarrollar bloques base."""
    ADD_STEP = "add-step"                      # x -> x + i*s (mod n)
    FIX_FIRST = "fix-first-coordinate"         # (c, j) -> (c, j + i mod n)


class BoundMode(str, Enum):
    """Modo pedido a lower_bound."""
    STRUCTURAL = "structural"
    EXACT = "exact"


class BoundMethod(str, Enum):
    MATCHING = "matching"
    CYCLE_COVER = "cycle-cover"
    EXACT_VERTEX_COVER = "exact-vertex-cover"


class InfinityMode(str, Enum):
    """Relleno de huecos con un punto adjunto compartido o sin él."""
    SHARED_POINT = "shared-point"
    NONE = "none"


# ===========================================
# PUNTOS Y PARÁMETROS
# ===========================================

class Point(BaseModel):
    """Punto canónico con nombre opcional para mostrar ("(1,7)", "∞")."""
    model_config = ConfigDict(frozen=True)

    label: int = Field(ge=0)
    display: Optional[str] = None

    def __str__(self) -> str:
        return self.display or str(self.label)


class DesignParams(BaseModel):
    """Parámetros t-(v,k,lambda) de un diseño dirigido."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    t: int = 2
    v: int = Field(ge=1)
    k: int = Field(ge=2)
    lambda_: int = Field(default=1, ge=1, alias="lambda")

    @model_validator(mode="after")
    def check_ranges(self) -> "DesignParams":
        if not (self.t <= self.k <= self.v):
            raise ValueError(f"need t <= k <= v, got t={self.t} k={self.k} v={self.v}")
        return self

    @property
    def ordered_pairs_per_block(self) -> int:
        return self.k * (self.k - 1) // 2

    @property
    def expected_block_count(self) -> Fraction:
        """
        2·v(v-1)·lambda / (k(k-1)): cada bloque cubre k(k-1)/2 pares ordenados
        de los v(v-1)·lambda. Entero cuando los parámetros son admisibles.
        """
        return Fraction(2 * self.v * (self.v - 1) * self.lambda_, self.k * (self.k - 1))

    def is_admissible(self) -> bool:
        """Condiciones necesarias de conteo (v ≡ 1 mod 3 para (2,4,1))."""
        if self.t != 2:
            return False
        replication = Fraction(2 * self.lambda_ * (self.v - 1), self.k - 1)
        return self.expected_block_count.denominator == 1 and replication.denominator == 1

    def label(self) -> str:
        return f"{self.t}-({self.v},{self.k},{self.lambda_})"


def _check_block(block: tuple[int, ...], v: int, k: Optional[int] = None) -> None:
    if k is not None and len(block) != k:
        raise ValueError(f"block {block} has {len(block)} points, expected {k}")
    if len(set(block)) != len(block):
        raise ValueError(f"block {block} repeats a point")
    for x in block:
        if not 0 <= x < v:
            raise ValueError(f"point {x} of block {block} outside 0..{v - 1}")


# ===========================================
# DISEÑOS
# ===========================================

class DirectedDesign(BaseModel):
    """Diseño dirigido: parámetros más lista de bloques ordenados."""
    model_config = ConfigDict(frozen=True)

    params: DesignParams
    blocks: tuple[OrderedBlock, ...]
    display_names: Optional[dict[int, str]] = None

    @model_validator(mode="after")
    def check_blocks(self) -> "DirectedDesign":
        for block in self.blocks:
            _check_block(block, self.params.v, self.params.k)
        return self

    @property
    def v(self) -> int:
        return self.params.v

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def describe(self) -> str:
        return f"{self.params.label()}DD, {self.block_count} blocks"


class GroupedDesign(BaseModel):
    """
    Diseño con grupos: GDD, DGDD o ingrediente derivado de un PBD.

    La partición y el "un punto por grupo" se verifican en verify_grouped,
    no al construir: un archivo corrupto debe poder cargarse y reportarse.
    """
    model_config = ConfigDict(frozen=True)

    v: int = Field(ge=1)
    groups: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]
    ordered: bool = True
    lambda_: int = Field(default=1, ge=1)
    kind: DesignKind = DesignKind.DGDD
    display_names: Optional[dict[int, str]] = None

    @model_validator(mode="after")
    def check_points(self) -> "GroupedDesign":
        for block in self.blocks:
            _check_block(block, self.v)
        for group in self.groups:
            if not group:
                raise ValueError("empty group")
            for x in group:
                if not 0 <= x < self.v:
                    raise ValueError(f"group point {x} outside 0..{self.v - 1}")
        return self

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> set[int]:
        return {len(b) for b in self.blocks}

    def group_type(self) -> dict[int, int]:
        """Tipo g1^u1 g2^u2 ... como {tamaño: multiplicidad}."""
        counts: dict[int, int] = {}
        for group in self.groups:
            counts[len(group)] = counts.get(len(group), 0) + 1
        return dict(sorted(counts.items()))

    def type_label(self) -> str:
        return " ".join(f"{g}^{u}" for g, u in self.group_type().items())

    def describe(self) -> str:
        return f"{self.kind.value} of type {self.type_label()}, {self.block_count} blocks"

    def group_of(self) -> dict[int, int]:
        """Punto -> índice de grupo."""
        return {x: i for i, group in enumerate(self.groups) for x in group}


# Cualquier diseño con bloques: los trades y cotas aplican a ambos.
AnyDesign = Union[DirectedDesign, GroupedDesign]


# ===========================================
# RAZÓN f
# ===========================================

class FRatio(BaseModel):
    """Fracción exacta en términos mínimos, con marca de exactitud."""
    model_config = ConfigDict(frozen=True)

    numerator: int = Field(ge=0)
    denominator: int = Field(gt=0)
    exactness: Exactness = Exactness.LOWER_BOUND

    @model_validator(mode="before")
    @classmethod
    def reduce(cls, data):
        if isinstance(data, dict) and "numerator" in data and "denominator" in data:
            num, den = int(data["numerator"]), int(data["denominator"])
            if den > 0:
                g = gcd(num, den) or 1
                data = {**data, "numerator": num // g, "denominator": den // g}
        return data

    @classmethod
    def of(cls, value: Fraction, exactness: Exactness = Exactness.LOWER_BOUND) -> "FRatio":
        return cls(numerator=value.numerator, denominator=value.denominator, exactness=exactness)

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def format(self) -> str:
        """'8/15 ≈ 0.5333' (con '≥' delante si es cota)."""
        prefix = "" if self.exactness == Exactness.EXACT else "≥ "
        return f"{prefix}{self.numerator}/{self.denominator} ≈ {self.numerator / self.denominator:.4f}"


# ===========================================
# DESARROLLO
# ===========================================

class DevelopmentRule(BaseModel):
    """Acción cíclica: +step mod n, o coordenada fija con la segunda +1 mod n."""
    model_config = ConfigDict(frozen=True)

    action: DevelopmentAction = DevelopmentAction.ADD_STEP
    step: int = Field(default=1, ge=1)
    modulus: int = Field(ge=1)

    @property
    def full_length(self) -> int:
        if self.action == DevelopmentAction.FIX_FIRST:
            return self.modulus
        return self.modulus // gcd(self.step, self.modulus)

    def label(self) -> str:
        if self.action == DevelopmentAction.FIX_FIRST:
            return f"-,+1 mod {self.modulus}"
        return f"+{self.step} mod {self.modulus}"


class BaseBlock(BaseModel):
    """Bloque base con su regla y largo de órbita (None = órbita completa)."""
    model_config = ConfigDict(frozen=True)

    points: tuple[BasePoint, ...]
    rule: DevelopmentRule
    orbit_length: Optional[int] = Field(default=None, ge=1)

    @property
    def effective_length(self) -> int:
        return self.orbit_length or self.rule.full_length


class BaseBlockSet(BaseModel):
    """Bloques base más lo necesario para armar el diseño desarrollado."""
    model_config = ConfigDict(frozen=True)

    v: int = Field(ge=1)
    k: int = 4
    lambda_: int = 1
    base_blocks: tuple[BaseBlock, ...]
    groups: Optional[tuple[tuple[int, ...], ...]] = None  # presente si el destino es DGDD
    unverified: bool = False  # p.ej. discrepancia de conteo de bloques

    @property
    def developed_count(self) -> int:
        return sum(b.effective_length for b in self.base_blocks)

    def with_orbit_lengths(self, lengths: tuple[Optional[int], ...]) -> "BaseBlockSet":
        blocks = tuple(
            b.model_copy(update={"orbit_length": length})
            for b, length in zip(self.base_blocks, lengths)
        )
        return self.model_copy(update={"base_blocks": blocks})


# ===========================================
# VERIFICACIÓN
# ===========================================

class Violation(BaseModel):
    """Propiedad violada con un testigo concreto (par o bloques)."""
    model_config = ConfigDict(frozen=True)

    property: str
    witness: tuple
    detail: str = ""


class VerifyReport(BaseModel):
    """Resultado de verificar una propiedad; pass sii no hay violaciones."""
    verdict: Verdict
    subject: str = ""
    violations: list[Violation] = Field(default_factory=list)
    coverage: Optional[dict[str, int]] = None

    @model_validator(mode="after")
    def check_consistency(self) -> "VerifyReport":
        if (self.verdict == Verdict.PASS) != (not self.violations):
            raise ValueError("verdict must be pass iff there are no violations")
        return self

    @classmethod
    def from_violations(cls, subject: str, violations: list[Violation], coverage=None) -> "VerifyReport":
        verdict = Verdict.FAIL if violations else Verdict.PASS
        return cls(verdict=verdict, subject=subject, violations=violations, coverage=coverage)

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS


# ===========================================
# TRADES Y COTAS
# ===========================================

class DirectedTrade(BaseModel):
    """T1 - T2: colecciones disjuntas con la misma cobertura de pares ordenados."""
    model_config = ConfigDict(frozen=True)

    positive: tuple[OrderedBlock, ...]
    negative: tuple[OrderedBlock, ...]

    @property
    def volume(self) -> int:
        return len(self.positive)


class TradeEdge(BaseModel):
    model_config = ConfigDict(frozen=True)

    u: int
    v: int
    witness: tuple[OrderedBlock, OrderedBlock]


class TradeGraph(BaseModel):
    """Vértices = índices de bloques; aristas = trades de volumen 2."""
    model_config = ConfigDict(frozen=True)

    vertex_count: int
    edges: tuple[TradeEdge, ...]

    def to_networkx(self):
        import networkx as nx

        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from((e.u, e.v) for e in self.edges)
        return graph

    def edge_pairs(self) -> set[tuple[int, int]]:
        return {(e.u, e.v) for e in self.edges}


class BoundCertificate(BaseModel):
    """Evidencia re-verificable de una cota inferior para conjuntos definidores."""
    model_config = ConfigDict(frozen=True)

    method: BoundMethod
    matching: tuple[tuple[int, int], ...] = ()
    cycles: tuple[tuple[int, ...], ...] = ()
    exact_cover_value: Optional[int] = None
    cover: tuple[int, ...] = ()
    bound: int
    notes: tuple[str, ...] = ()

    @model_validator(mode="after")
    def check_bound(self) -> "BoundCertificate":
        if self.method == BoundMethod.EXACT_VERTEX_COVER:
            if self.exact_cover_value != self.bound:
                raise ValueError("exact certificate bound must equal the cover value")
        else:
            expected = len(self.matching) + sum((len(c) + 1) // 2 for c in self.cycles)
            if expected != self.bound:
                raise ValueError(f"bound {self.bound} != matching + cycle terms {expected}")
        return self


# ===========================================
# CONJUNTOS DEFINIDORES
# ===========================================

class PartialDesign(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: DesignParams
    fixed_blocks: tuple[OrderedBlock, ...] = ()

    @model_validator(mode="after")
    def check_blocks(self) -> "PartialDesign":
        for block in self.fixed_blocks:
            _check_block(block, self.params.v, self.params.k)
        return self


class CompletionResult(BaseModel):
    count: int
    saturated: bool = False  # True si se alcanzó el tope
    completions: list[DirectedDesign] = Field(default_factory=list)


class SmallestDefiningSet(BaseModel):
    size: int
    witness: tuple[OrderedBlock, ...]
    optimal: bool
    lower_bound: int
    candidates_checked: int = 0
    elapsed_seconds: float = 0.0


# ===========================================
# CONSTRUCCIONES
# ===========================================

class WeightingPlan(BaseModel):
    """Plan de la construcción por pesos (Wilson)."""
    model_config = ConfigDict(frozen=True)

    master: GroupedDesign
    weight: int = Field(ge=1)
    ingredients: dict[int, GroupedDesign]          # tamaño de bloque -> DGDD de tipo weight^k
    fills: dict[int, DirectedDesign] = Field(default_factory=dict)  # tamaño de grupo -> DD
    infinity: InfinityMode = InfinityMode.NONE

    @model_validator(mode="after")
    def check_coverage(self) -> "WeightingPlan":
        missing = self.master.block_sizes - set(self.ingredients)
        if missing:
            raise ValueError(f"no ingredient for block sizes {sorted(missing)}")
        if self.fills:
            missing_fill = set(self.master.group_type()) - set(self.fills)
            if missing_fill:
                raise ValueError(f"no fill for group sizes {sorted(missing_fill)}")
        return self


class BoundTerm(BaseModel):
    """Término de una composición: count copias con cota y bloques por copia."""

    count: int = Field(ge=0)
    bound: Fraction
    blocks: int = Field(gt=0)
    label: str = ""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class BoundComposition(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    terms: tuple[BoundTerm, ...]

    @property
    def total_bound(self) -> Fraction:
        return sum((t.count * t.bound for t in self.terms), Fraction(0))

    @property
    def total_blocks(self) -> int:
        return sum(t.count * t.blocks for t in self.terms)


class Construction(BaseModel):
    """Diseño construido más su procedencia y la composición de la cota."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    design: DirectedDesign
    recipe: str
    composition: Optional[BoundComposition] = None
    provenance: tuple[tuple[str, int, int], ...] = ()  # (origen, índice maestro, índice ingrediente)


# ===========================================
# CATÁLOGO
# ===========================================

class ExpectedProperties(BaseModel):
    """Propiedades esperadas; la suite de regresión las re-deriva."""
    model_config = ConfigDict(frozen=True)

    valid: bool = True
    super_simple: bool = True
    block_count: Optional[int] = None
    bound: Optional[int] = None
    bound_certified: bool = True  # False: cota declarada, sin estructura de trades publicada
    f_numerator: Optional[int] = None
    f_denominator: Optional[int] = None
    f_exactness: Exactness = Exactness.LOWER_BOUND


class CatalogEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    payload: Union[DirectedDesign, GroupedDesign, BaseBlockSet]
    expected: ExpectedProperties
    provenance: str = ""

    @field_validator("id")
    @classmethod
    def validate_id(cls, v: str) -> str:
        if not v or " " in v:
            raise ValueError(f"invalid catalog id: {v!r}")
        return v
