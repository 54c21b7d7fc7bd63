from __future__ import annotations

import os
from functools import lru_cache

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orthorook.placement import enumerate_placements
from orthorook.roots import Family, build_root_system

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@lru_cache(maxsize=None)
def system(family: str, n: int):
    return build_root_system(Family(family), n)


@lru_cache(maxsize=None)
def placements(family: str, n: int):
    return tuple(enumerate_placements(system(family, n)))


def systems(max_rank: int = 6):
    return st.builds(system, st.sampled_from(["B", "D"]), st.integers(2, max_rank))


@st.composite
def placement_in(draw, max_rank: int = 5):
    fam = draw(st.sampled_from(["B", "D"]))
    n = draw(st.integers(2, max_rank))
    return draw(st.sampled_from(placements(fam, n)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
