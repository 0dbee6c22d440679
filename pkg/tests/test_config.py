from dirdesign.config import Settings, get_settings


def test_defaults():
    settings = Settings(_env_file=None)
    assert settings.completion_cap == 2
    assert settings.exact_cover_vertex_limit == 200
    assert settings.chordless_cycle_length_bound == 12
    assert settings.chordless_component_limit == 40
    assert settings.structural_cycle_candidates == 64
    assert settings.orbit_search_workers == 1
    assert not settings.has_ingredients_dir()


def test_environment_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("INGREDIENTS_DIR", str(tmp_path))
    monkeypatch.setenv("SMALLEST_DEFSET_BUDGET_SECONDS", "5")
    get_settings.cache_clear()
    settings = get_settings()
    assert settings.has_ingredients_dir()
    assert settings.smallest_defset_budget_seconds == 5.0


def test_settings_are_cached():
    assert get_settings() is get_settings()
