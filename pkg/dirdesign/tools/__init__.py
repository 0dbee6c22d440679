# Tools module - operaciones sobre diseños
# constructions y commands dependen de infra.catalog: se importan directo
from .blocks import ordered_pairs_of_block, underlying_block, relabel, reverse_pair_design
from .verifier import (
    verify_directed_design,
    underlying_bibd,
    is_simple,
    is_super_simple,
    verify_grouped,
    find_parallel_classes,
)
from .development import orbit, develop, cyclic_invariance, resolve_orbit_lengths
from .trades import (
    is_directed_trade,
    volume2_witness,
    build_trade_graph,
    cyclical_trade_components,
    lower_bound,
    recheck_certificate,
)
from .defset import count_completions, is_defining_set, smallest_defining_set, f_ratio, find_design

__all__ = [
    # Blocks
    "ordered_pairs_of_block",
    "underlying_block",
    "relabel",
    "reverse_pair_design",
    # Verifier
    "verify_directed_design",
    "underlying_bibd",
    "is_simple",
    "is_super_simple",
    "verify_grouped",
    "find_parallel_classes",
    # Development
    "orbit",
    "develop",
    "cyclic_invariance",
    "resolve_orbit_lengths",
    # Trades
    "is_directed_trade",
    "volume2_witness",
    "build_trade_graph",
    "cyclical_trade_components",
    "lower_bound",
    "recheck_certificate",
    # Defining sets
    "count_completions",
    "is_defining_set",
    "smallest_defining_set",
    "f_ratio",
    "find_design",
]
