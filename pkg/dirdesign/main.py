"""
main.py
CLI de dirdesign: verificar, desarrollar, acotar y construir diseños dirigidos.
"""

import argparse
import logging
import sys
from typing import Optional

from dirdesign.config import get_settings
from dirdesign.tools.commands import (
    CommandReport,
    bound_command,
    build_command,
    catalog_command,
    defset_command,
    gen_command,
    schema_command,
    search_command,
    trades_command,
    verify_command,
)

# Configurar logging (stderr; stdout queda para los reportes)
logging.basicConfig(
    level=get_settings().log_level.upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

EXIT_CODES = {"pass": 0, "fail": 1, "error": 2}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dirdesign", description="Directed block designs toolkit")
    parser.add_argument("--json", action="store_true", help="emit the structured report")
    parser.add_argument("--threads", type=int, default=None, help="cap internal workers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a design file or catalog id")
    p.add_argument("source")
    p.add_argument("--super-simple", action="store_true")

    p = sub.add_parser("gen", help="develop base blocks into a design file")
    p.add_argument("source")
    p.add_argument("--resolve-orbits", action="store_true")

    p = sub.add_parser("trades", help="list volume-2 trades")
    p.add_argument("source")
    p.add_argument("--cycles", action="store_true")

    p = sub.add_parser("bound", help="certified defining-set lower bound")
    p.add_argument("source")
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("defset", help="defining sets")
    p.add_argument("source")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--check", metavar="SUBSET_FILE")
    mode.add_argument("--smallest", action="store_true")
    p.add_argument("--budget", type=float, default=None, metavar="SECONDS")

    p = sub.add_parser("build", help="build a design by recipe (v or L3.1..L3.4)")
    p.add_argument("recipe")
    p.add_argument("--ingredients", metavar="DIR")
    p.add_argument("--k", type=int)
    p.add_argument("--master", metavar="GDD_FILE")

    p = sub.add_parser("search", help="search for an ingredient")
    p.add_argument("kind", choices=["gdd"])
    p.add_argument("--type", required=True, dest="type_spec", help="group type, e.g. '2^7' or '6^4 9^1'")
    p.add_argument("--k", default="4", dest="block_sizes", help="block sizes, e.g. '4' or '4,5'")
    p.add_argument("--budget", type=int, default=None, metavar="NODES")

    p = sub.add_parser("catalog", help="list or show catalog entries")
    p.add_argument("action", choices=["list", "show"], nargs="?", default="list")
    p.add_argument("id", nargs="?")

    sub.add_parser("schema", help="print the JSON schema of --json reports")
    return parser


def dispatch(args: argparse.Namespace) -> dict:
    if args.command == "verify":
        return verify_command(args.source, super_simple=args.super_simple)
    if args.command == "gen":
        return gen_command(args.source, resolve_orbits=args.resolve_orbits, workers=args.threads)
    if args.command == "trades":
        return trades_command(args.source, cycles=args.cycles)
    if args.command == "bound":
        return bound_command(args.source, exact=args.exact)
    if args.command == "defset":
        return defset_command(args.source, check=args.check, smallest=args.smallest, budget=args.budget)
    if args.command == "build":
        return build_command(args.recipe, ingredients_dir=args.ingredients, k=args.k, master=args.master)
    if args.command == "search":
        return search_command(args.kind, args.type_spec, block_sizes=args.block_sizes, budget=args.budget)
    if args.command == "catalog":
        return catalog_command(args.action, args.id)
    return schema_command()


def run(argv: Optional[list[str]] = None) -> int:
    """Ejecuta una invocación; devuelve el exit code (0 pass, 1 fail, 2 error de uso o entrada)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    result = dispatch(args)
    report = CommandReport(**result)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(report.message)
        text = report.data.get("text")
        if text:
            print(text.rstrip("\n"))
    return EXIT_CODES.get(report.status, 2)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
