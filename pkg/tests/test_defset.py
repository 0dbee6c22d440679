"""Conteo de completaciones, conjuntos definidores y razón f."""

from fractions import Fraction
from itertools import permutations

import pytest

from conftest import to_block
from dirdesign.models.errors import DesignError, InconsistentPartialDesignError, NotASubsetError
from dirdesign.models.schemas import DesignParams, Exactness, PartialDesign
from dirdesign.tools.defset import (
    count_completions,
    f_ratio,
    find_design,
    is_defining_set,
    smallest_defining_set,
)
from dirdesign.tools.trades import build_trade_graph, exact_bound, structural_bound
from dirdesign.tools.verifier import verify_directed_design

S = [to_block(b) for b in ("0132", "2354", "9653", "8752", "2791", "2680", "1498", "1576")]
R = [to_block(b) for b in ("0132", "2354", "9653", "8752", "2791", "2680", "1498", "0467")]


def _partial(design, blocks) -> PartialDesign:
    return PartialDesign(params=design.params, fixed_blocks=tuple(blocks))


# ===========================================
# COMPLETACIONES
# ===========================================

def test_empty_v4_has_twelve_completions():
    oracle = {frozenset({p, p[::-1]}) for p in permutations(range(4))}
    result = count_completions(PartialDesign(params=DesignParams(v=4, k=4)))
    assert result.count == len(oracle) == 12
    assert {frozenset(d.blocks) for d in result.completions} == oracle


def test_cap_saturates():
    result = count_completions(PartialDesign(params=DesignParams(v=4, k=4)), cap=2)
    assert result.count == 2
    assert result.saturated


def test_s_completes_uniquely(dd10):
    result = count_completions(_partial(dd10, S))
    assert result.count == 1
    assert set(result.completions[0].blocks) == set(dd10.blocks)


def test_r_completes_in_four_ways(dd10):
    result = count_completions(_partial(dd10, R), cap=10)
    assert result.count == 4
    assert not result.saturated
    completions = [set(d.blocks) for d in result.completions]
    assert len({frozenset(c) for c in completions}) == 4
    original = set(dd10.blocks)
    traded = (original - {to_block("4510"), to_block("1576")}) | {to_block("4150"), to_block("5176")}
    assert original in completions
    assert traded in completions
    assert original ^ traded == {to_block(b) for b in ("4510", "1576", "4150", "5176")}
    for completion in result.completions:
        assert set(R) <= set(completion.blocks)
        assert verify_directed_design(completion).passed


def test_over_covered_partial_is_rejected():
    params = DesignParams(v=7, k=4)
    with pytest.raises(InconsistentPartialDesignError):
        count_completions(PartialDesign(params=params, fixed_blocks=((0, 1, 2, 3), (0, 1, 4, 5))))


def test_only_lambda_one_is_supported():
    with pytest.raises(DesignError):
        count_completions(PartialDesign(params=DesignParams(v=4, k=4, lambda_=2)))


def test_find_design_v7():
    design = find_design(7)
    assert design is not None
    assert design.block_count == 7
    assert verify_directed_design(design).passed


# ===========================================
# CONJUNTOS DEFINIDORES
# ===========================================

def test_is_defining_set(dd10):
    assert is_defining_set(dd10, S)
    assert not is_defining_set(dd10, R)
    assert is_defining_set(dd10, dd10.blocks)
    assert not is_defining_set(dd10, [])


def test_subset_must_come_from_the_design(dd10):
    with pytest.raises(NotASubsetError):
        is_defining_set(dd10, [to_block("1032")])


def test_smallest_dd4(dd4):
    result = smallest_defining_set(dd4)
    assert result.size == 1
    assert result.optimal
    assert f_ratio(dd4, result.size, exact=True).format() == "1/2 ≈ 0.5000"


def test_smallest_dd7(dd7):
    result = smallest_defining_set(dd7)
    assert result.size == 2
    assert result.optimal
    assert f_ratio(dd7, result.size, exact=True).as_fraction() == Fraction(2, 7)


def test_smallest_dd10(dd10):
    result = smallest_defining_set(dd10)
    assert result.size == 8
    assert result.optimal
    assert result.lower_bound == 8
    assert is_defining_set(dd10, result.witness)
    assert f_ratio(dd10, 8, exact=True).format() == "8/15 ≈ 0.5333"


def test_zero_budget_returns_greedy_upper_bound(dd10):
    result = smallest_defining_set(dd10, budget_seconds=0)
    assert not result.optimal
    assert result.size >= 8
    assert is_defining_set(dd10, result.witness)


@pytest.mark.parametrize("name", ["dd4", "dd7", "dd10"])
def test_bound_chain(name, request):
    design = request.getfixturevalue(name)
    graph = build_trade_graph(design)
    structural = structural_bound(graph).bound
    exact = exact_bound(graph).bound
    smallest = smallest_defining_set(design).size
    assert structural <= exact <= smallest


def test_f_ratio_is_reduced(dd10):
    ratio = f_ratio(dd10, 10)
    assert (ratio.numerator, ratio.denominator) == (2, 3)
    assert ratio.exactness == Exactness.LOWER_BOUND
    assert ratio.format().startswith("≥ 2/3")
