import pytest
from hypothesis import HealthCheck, settings

from infosys.config import FIXTURES_DIR
from infosys.constructions import terminal_system
from infosys.formats import parse

settings.register_profile(
    "workbench",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("workbench")

GOLDEN_DIR = FIXTURES_DIR.parent / "tests" / "golden"


def load(name: str):
    return parse(FIXTURES_DIR / name).body


@pytest.fixture(scope="session")
def T():
    return terminal_system()


@pytest.fixture(scope="session")
def C2():
    return load("C2.poset")


@pytest.fixture(scope="session")
def M():
    return load("M.poset")


@pytest.fixture(scope="session")
def FLAT2():
    return load("FLAT2.poset")


@pytest.fixture(scope="session")
def IC2():
    return load("IC2.isw")


@pytest.fixture(scope="session")
def IM():
    return load("IM.isw")


@pytest.fixture(scope="session")
def IFLAT2(FLAT2):
    from infosys.domconv import isw_from_poset

    return isw_from_poset(FLAT2)


@pytest.fixture(scope="session")
def CIS1():
    return load("CIS1.cis")


@pytest.fixture(scope="session")
def AIS1():
    return load("AIS1.ais")


@pytest.fixture(scope="session")
def AIS2():
    return load("AIS2.ais")


@pytest.fixture(scope="session")
def fixture_systems(T, IC2, IM, IFLAT2):
    return {"T": T, "IC2": IC2, "IM": IM, "IFLAT2": IFLAT2}
