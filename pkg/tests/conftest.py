import pytest

from landspec import ScenarioParams

from scenarios import P2_KEYS, P3_KEYS


@pytest.fixture
def p2() -> ScenarioParams:
    """Open-economy baseline used throughout the tests."""
    return ScenarioParams(**P2_KEYS)


@pytest.fixture
def p3() -> ScenarioParams:
    """Monetary-economy baseline used throughout the tests."""
    return ScenarioParams(**P3_KEYS)


@pytest.fixture
def write_scenario(tmp_path):
    """Factory writing a scenario file and returning its path."""

    def _write(name: str, **values) -> str:
        lines = [f"{key} = {value}" for key, value in values.items()]
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n")
        return str(path)

    return _write
