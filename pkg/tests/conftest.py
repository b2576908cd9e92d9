"""Shared test configuration.

The regulated-quadrature engine caches its per-regulator passes inside the
process, so the first test that touches it pays ~15 s and everything after is
effectively free.  The acceptance suite clears those caches where a criterion
includes its own runtime budget, so it always measures cold-cache cost.
"""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
