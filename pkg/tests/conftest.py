import pytest
from hypothesis import HealthCheck, settings

from forge.cayley import ball, bfs_closure
from forge.ff import field_ctx
from forge.psi import parse_modulus

settings.register_profile(
    "default", settings(suppress_health_check=[HealthCheck.too_slow], max_examples=60, deadline=None)
)
settings.load_profile("default")

PGL_F = "1*t^2+1"
PSL_F = "1*t^2+1*t^1+2"


@pytest.fixture(scope="session")
def ctx32():
    return field_ctx(3, 1, 2)


@pytest.fixture(scope="session")
def ctx33():
    return field_ctx(3, 1, 3)


@pytest.fixture(scope="session")
def m_pgl():
    return parse_modulus(3, 1, 2, PGL_F)


@pytest.fixture(scope="session")
def m_psl():
    return parse_modulus(3, 1, 2, PSL_F)


@pytest.fixture(scope="session")
def m33():
    return parse_modulus(3, 1, 3, "auto:1")


@pytest.fixture(scope="session")
def pgl_graph(m_pgl):
    return bfs_closure(m_pgl)


@pytest.fixture(scope="session")
def psl_graph(m_psl):
    return bfs_closure(m_psl)


@pytest.fixture(scope="session")
def ball33(m33):
    return ball(m33, 2)
