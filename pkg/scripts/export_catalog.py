"""
export_catalog.py
Script para re-serializar todas las entradas del catálogo en un directorio,
con el diseño desarrollado y un resumen de propiedades por entrada.
"""

import sys
from pathlib import Path

# Agregar el directorio raíz al path
sys.path.insert(0, str(Path(__file__).parent.parent))

from dirdesign.infra.catalog import catalog_design, catalog_get, catalog_list
from dirdesign.infra.design_io import serialize_design
from dirdesign.models.errors import CatalogError


def export_catalog(target: str = "catalog_export"):
    """Escribe <id>.txt (tal como está) y <id>.developed.txt (desarrollado y verificado)."""
    out = Path(target)
    out.mkdir(parents=True, exist_ok=True)
    print(f"Exportando catálogo a {out.resolve()}...")

    for entry_id in catalog_list():
        entry = catalog_get(entry_id)
        (out / f"{entry_id}.txt").write_text(serialize_design(entry.payload), encoding="utf-8")
        try:
            design = catalog_design(entry_id)
        except CatalogError as e:
            print(f"  - {entry_id}: sin desarrollar ({e})")
            continue
        (out / f"{entry_id}.developed.txt").write_text(serialize_design(design), encoding="utf-8")
        print(f"  - {entry_id}: {design.describe()}")

    print("\n¡Export completado!")


if __name__ == "__main__":
    export_catalog(sys.argv[1] if len(sys.argv) > 1 else "catalog_export")
