"""
errors.py
Excepciones del toolkit.
Las fallas de verificación NO son excepciones: se reportan como VerifyReport.
"""

from typing import Optional


class DesignError(ValueError):
    """Error base de dirdesign."""


class MalformedBlockError(DesignError):
    """Bloque con puntos repetidos, fuera de rango o de tamaño incorrecto."""


class RelabelError(DesignError):
    """El mapeo de reetiquetado no es una biyección sobre {0..v-1}."""


class DevelopmentError(DesignError):
    """Desarrollo de bloques base inválido (órbita demasiado larga, coordenadas)."""


class StructuralError(DesignError):
    """Los grupos no forman una partición de los puntos."""


class InconsistentPartialDesignError(DesignError):
    """Un diseño parcial cubre algún par ordenado más de lambda veces."""


class NotASubsetError(DesignError):
    """El conjunto propuesto no es un subconjunto de los bloques del diseño."""


class RecipeError(DesignError):
    """Una receta de construcción no aplica al valor pedido."""


class IngredientError(DesignError):
    """Un ingrediente (GDD, DGDD, DD, PBD) falta o no verifica."""


class CatalogError(DesignError):
    """Id de catálogo desconocido."""


class DesignFormatError(DesignError):
    """Error de sintaxis en un archivo de diseño."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
