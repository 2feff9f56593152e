import numpy as np
import pytest

import faberbohr as fb


@pytest.fixture
def seg():
    return fb.segment(-1.0, 1.0)


@pytest.fixture
def udisc():
    return fb.disc(0j, 1.0)


@pytest.fixture
def custom_spec():
    # exterior map 2z + 0.1 + 0.5/z + 0.125/z^3, a small asymmetric example
    tail = fb.LaurentTail.build(2.0, 0.1, (0.5, 0.0, 0.125))
    return fb.custom(tail)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
