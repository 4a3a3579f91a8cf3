from __future__ import annotations

import pytest

from rcfkit.regions import default_config

from _synth import SeasonalFixture, write_seasonal_fixture


@pytest.fixture(scope="session")
def cfg():
    return default_config()


@pytest.fixture(scope="session")
def seasonal_fixture(tmp_path_factory) -> SeasonalFixture:
    return write_seasonal_fixture(tmp_path_factory.mktemp("seasonal"))


@pytest.fixture(scope="session")
def warned_fixture(tmp_path_factory) -> SeasonalFixture:
    return write_seasonal_fixture(
        tmp_path_factory.mktemp("seasonal_warned"), malformed_generation_rows=1
    )
