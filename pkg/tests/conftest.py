from __future__ import annotations

import pytest

from lorentzqrf.states import RapidityGrid


@pytest.fixture(scope="session")
def grid() -> RapidityGrid:
    return RapidityGrid.default()
