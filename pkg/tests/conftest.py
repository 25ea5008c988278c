import itertools

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gentle_kit import catalog
from gentle_kit.core import BoundQuiver
from gentle_kit.generator import GenConfig, generate

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BUILTIN_NAMES = ["E1", "E2", "E3", "kronecker", "C3", "point", "T1", "T4"]


@pytest.fixture(params=BUILTIN_NAMES)
def builtin_algebra(request):
    return catalog.builtin(request.param)


gen_configs = st.builds(
    GenConfig,
    seed=st.integers(0, 10**6),
    max_chains=st.integers(1, 4),
    max_chain_len=st.integers(1, 5),
    pairing_density=st.floats(0.0, 1.0),
)


@st.composite
def gentle_algebras(draw, configs=gen_configs):
    return generate(draw(configs))


@st.composite
def quadratic_quivers(draw, max_vertices=4, max_arrows=6):
    """Arbitrary small quivers with arbitrary length-two relations; usually not gentle."""
    n = draw(st.integers(1, max_vertices))
    vs = [str(i) for i in range(1, n + 1)]
    k = draw(st.integers(0, max_arrows))
    arrows = [(f"x{i}", draw(st.sampled_from(vs)), draw(st.sampled_from(vs))) for i in range(k)]
    composable = [(a[0], b[0]) for a, b in itertools.product(arrows, arrows) if a[2] == b[1]]
    rels = draw(st.lists(st.sampled_from(composable), unique=True)) if composable else []
    return BoundQuiver.build(vs, arrows, rels)
