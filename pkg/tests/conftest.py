import numpy as np
import pytest

import gcis
from gcis import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile every jit kernel up front so timed tests see steady state."""
    _kernels.warmup()
    g = gcis.compress(b"warm up the whole pipeline " * 40)
    blob = gcis.serialize(g, "ef")
    g2, index = gcis.deserialize(blob)
    assert gcis.extract(index, g2, 3, 9) == b"rm up t"
    text, sa, lcp = gcis.decompress_with_sa_lcp(g)
    assert len(sa) == len(text) + 1 and len(lcp) == len(sa)


@pytest.fixture()
def rng():
    return np.random.default_rng(0xC0FFEE)
