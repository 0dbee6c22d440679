# Models module
from .errors import (
    DesignError,
    MalformedBlockError,
    RelabelError,
    DevelopmentError,
    StructuralError,
    InconsistentPartialDesignError,
    NotASubsetError,
    RecipeError,
    IngredientError,
    CatalogError,
    DesignFormatError,
)
from .schemas import (
    OrderedBlock,
    Point,
    DesignParams,
    AnyDesign,
    DirectedDesign,
    GroupedDesign,
    DesignKind,
    FRatio,
    Exactness,
    DevelopmentAction,
    DevelopmentRule,
    BaseBlock,
    BaseBlockSet,
    Verdict,
    Violation,
    VerifyReport,
    DirectedTrade,
    TradeEdge,
    TradeGraph,
    BoundMode,
    BoundMethod,
    BoundCertificate,
    PartialDesign,
    CompletionResult,
    SmallestDefiningSet,
    InfinityMode,
    WeightingPlan,
    BoundTerm,
    BoundComposition,
    Construction,
    ExpectedProperties,
    CatalogEntry,
)

__all__ = [
    # Errors
    "DesignError",
    "MalformedBlockError",
    "RelabelError",
    "DevelopmentError",
    "StructuralError",
    "InconsistentPartialDesignError",
    "NotASubsetError",
    "RecipeError",
    "IngredientError",
    "CatalogError",
    "DesignFormatError",
    # Designs
    "OrderedBlock",
    "Point",
    "DesignParams",
    "AnyDesign",
    "DirectedDesign",
    "GroupedDesign",
    "DesignKind",
    "FRatio",
    "Exactness",
    # Development
    "DevelopmentAction",
    "DevelopmentRule",
    "BaseBlock",
    "BaseBlockSet",
    # Verification
    "Verdict",
    "Violation",
    "VerifyReport",
    # Trades
    "DirectedTrade",
    "TradeEdge",
    "TradeGraph",
    "BoundMode",
    "BoundMethod",
    "BoundCertificate",
    # Defining sets
    "PartialDesign",
    "CompletionResult",
    "SmallestDefiningSet",
    # Constructions
    "InfinityMode",
    "WeightingPlan",
    "BoundTerm",
    "BoundComposition",
    "Construction",
    # Catalog
    "ExpectedProperties",
    "CatalogEntry",
]
