"""Desarrollo de bloques base y resolución de largos de órbita."""

import pytest

from dirdesign.infra.catalog import catalog_get
from dirdesign.models.errors import DevelopmentError
from dirdesign.models.schemas import (
    BaseBlock,
    BaseBlockSet,
    DesignParams,
    DevelopmentAction,
    DevelopmentRule,
    DirectedDesign,
    GroupedDesign,
)
from dirdesign.tools.development import (
    canonical_point,
    cyclic_invariance,
    develop,
    orbit,
    resolve_orbit_lengths,
)
from dirdesign.tools.verifier import verify_directed_design, verify_grouped


def test_orbit_adds_the_step_and_keeps_order():
    rule = DevelopmentRule(step=1, modulus=7)
    assert orbit((2, 0, 1, 4), rule)[:3] == [(2, 0, 1, 4), (3, 1, 2, 5), (4, 2, 3, 6)]
    assert len(orbit((2, 0, 1, 4), rule)) == 7


def test_step_two_has_half_period():
    rule = DevelopmentRule(step=2, modulus=18)
    assert rule.full_length == 9
    assert len(orbit((0, 1, 2, 3), rule)) == 9


def test_orbit_length_beyond_period_is_rejected():
    rule = DevelopmentRule(step=2, modulus=18)
    with pytest.raises(DevelopmentError):
        orbit((0, 1, 2, 3), rule, length=18)
    with pytest.raises(DevelopmentError):
        orbit((0, 1, 2, 3), rule, length=4)


def test_coordinate_action_fixes_the_first_coordinate():
    rule = DevelopmentRule(action=DevelopmentAction.FIX_FIRST, modulus=11)
    translates = orbit(((0, 0), (1, 4), (0, 9), (1, 10)), rule)
    assert translates[1] == (1, 16, 10, 11)
    assert canonical_point((1, 10), rule) == 21
    with pytest.raises(DevelopmentError):
        canonical_point(3, rule)


def test_develop_dd7_is_cyclic():
    base = catalog_get("dd-7").payload
    design = develop(base)
    assert isinstance(design, DirectedDesign)
    assert design.block_count == 7
    assert verify_directed_design(design).passed
    assert cyclic_invariance(design, 7)


def test_develop_coordinate_design_carries_display_names():
    design = develop(catalog_get("dd-22").payload)
    assert design.block_count == 77
    assert design.display_names[12] == "(1,1)"
    assert verify_directed_design(design).passed


def test_develop_with_groups_gives_dgdd():
    design = develop(catalog_get("dgdd-3^6").payload)
    assert isinstance(design, GroupedDesign)
    assert design.block_count == 45
    assert verify_grouped(design).passed


def test_developed_point_outside_range_is_rejected():
    base = BaseBlockSet(
        v=7,
        base_blocks=(BaseBlock(points=(0, 1, 2, 3), rule=DevelopmentRule(step=1, modulus=9)),),
    )
    with pytest.raises(DevelopmentError):
        develop(base)


def test_resolve_keeps_a_design_that_already_verifies():
    base = catalog_get("dd-13").payload
    resolution = resolve_orbit_lengths(base, DesignParams(v=13, k=4))
    assert resolution.ok
    assert resolution.resolved.developed_count == 26


def test_resolve_rejects_a_non_integral_block_count():
    base = catalog_get("dd-13").payload
    with pytest.raises(DevelopmentError):
        resolve_orbit_lengths(base, DesignParams(v=8, k=4))


def test_resolve_unreachable_count_reports_discrepancy():
    base = catalog_get("dd-7").payload
    resolution = resolve_orbit_lengths(base, DesignParams(v=10, k=4))
    assert not resolution.ok
    assert "discrepancy" in resolution.summary()
    assert len(resolution.attempts) == 1


@pytest.mark.parametrize("entry,v,full,target", [("dd-34", 34, 204, 187), ("dd-52", 52, 468, 442)])
def test_count_discrepancy_is_resolved_or_reported(entry, v, full, target):
    base = catalog_get(entry).payload
    assert base.unverified
    assert sum(b.rule.full_length for b in base.base_blocks) == full
    resolution = resolve_orbit_lengths(base, DesignParams(v=v, k=4))
    assert resolution.target_blocks == target
    assert resolution.full_block_count == full
    if resolution.ok:
        design = develop(resolution.resolved)
        assert design.block_count == target
        assert verify_directed_design(design).passed
        assert not resolution.resolved.unverified
    else:
        assert resolution.attempts
        assert all(not a.verified for a in resolution.attempts)
        assert any(a.over_covered or a.under_covered for a in resolution.attempts)


def test_parallel_workers_give_the_same_resolution():
    base = catalog_get("dd-34").payload
    params = DesignParams(v=34, k=4)
    serial = resolve_orbit_lengths(base, params, workers=1)
    threaded = resolve_orbit_lengths(base, params, workers=4)
    assert serial.ok == threaded.ok
    assert serial.summary() == threaded.summary()
