import math

import numpy as np
import pytest

from vpkernels import make_params

# Reference constants for the two explicitly known norms.
L1_CONSTANT = 1.0 / 3.0 + 2.0 * math.sqrt(3.0) / math.pi
L2_CONSTANT = 0.2 + math.sqrt(10.0 - 2.0 * math.sqrt(5.0)) * (1.0 + 3.0 * math.sqrt(5.0)) / (4.0 * math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(714025)


def random_valid_params(rng, max_sN, max_s=20):
    """Random validated (r, s, N) with sN bounded."""
    while True:
        s = int(rng.integers(1, max_s + 1))
        if s > max_sN:
            continue
        choices = [r for r in range(s) if math.gcd(r, s) == 1 and (r > 0 or s == 1)]
        r = int(rng.choice(choices))
        N = int(rng.integers(1, max_sN // s + 1))
        return make_params(r, s, N)


@pytest.fixture
def params_factory():
    return random_valid_params
