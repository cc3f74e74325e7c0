import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "deterministic",
    settings(derandomize=True, max_examples=40, deadline=None,
             suppress_health_check=[HealthCheck.too_slow]),
)
settings.load_profile("deterministic")

CORPUS_SPECS = (
    ["zmod:%d" % n for n in range(1, 9)]
    + ["gauss:2", "gauss:3",
       "mat:2:zmod:2", "mat:2:zmod:3", "mat:2:zmod:4",
       "mat:2:gauss:2", "mat:2:gauss:3"]
)


@pytest.fixture(scope="session")
def corpus():
    """All corpus rings keyed by spec, with the total build duration."""
    from matsemi.rings import parse_ring_spec

    t0 = time.monotonic()
    rings = {spec: parse_ring_spec(spec) for spec in CORPUS_SPECS}
    return {"rings": rings, "build_seconds": time.monotonic() - t0}


@pytest.fixture(scope="session")
def small_rings():
    from matsemi.rings import make_gaussian, make_zmod

    return {
        "z1": make_zmod(1), "z2": make_zmod(2), "z3": make_zmod(3),
        "z4": make_zmod(4), "z5": make_zmod(5), "z6": make_zmod(6),
        "g2": make_gaussian(2), "g3": make_gaussian(3),
    }
