"""
config.py
Configuración centralizada usando Pydantic Settings.
Lee variables de entorno y provee defaults seguros para las búsquedas.
"""

from functools import lru_cache
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Configuración del toolkit."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ===========================================
    # Environment
    # ===========================================
    env: str = "development"
    debug: bool = False
    log_level: str = "INFO"

    # ===========================================
    # Conjuntos definidores
    # ===========================================
    completion_cap: int = 2  # solo importa 1 vs >= 2
    smallest_defset_budget_seconds: float = 60.0

    # ===========================================
    # Trades y cotas
    # ===========================================
    exact_cover_vertex_limit: int = 200
    exact_cover_node_budget: int = 2_000_000
    chordless_cycle_length_bound: int = 12
    chordless_component_limit: int = 40  # componentes más grandes: solo ciclos de una base
    structural_cycle_candidates: int = 64

    # ===========================================
    # Búsquedas combinatorias
    # ===========================================
    gdd_search_node_budget: int = 5_000_000
    orbit_search_workers: int = 1

    # ===========================================
    # Ingredientes externos (PBD, GDD, dd-25)
    # ===========================================
    ingredients_dir: Optional[str] = None

    def has_ingredients_dir(self) -> bool:
        """Verifica si hay un directorio de ingredientes configurado."""
        return bool(self.ingredients_dir)


@lru_cache
def get_settings() -> Settings:
    """Singleton para configuración."""
    return Settings()
