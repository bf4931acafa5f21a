import pytest
from hypothesis import settings

from culab import EkModel, FiniteModel, NbarModel, discrete_space, lsc_model, product, sierpinski, trivial_model
from culab.search import enumerate_models

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def zero_inf():
    return FiniteModel([[1, 1], [0, 1]], [[0, 1], [1, 1]], ["0", "inf"])


def join_square():
    """Subsets of a 2-point set with union as addition."""
    le = [[(i & j) == i for j in range(4)] for i in range(4)]
    add = [[i | j for j in range(4)] for i in range(4)]
    return FiniteModel(le, add, ["0", "a", "b", "top"])


def corpus():
    """Shipped models: E_1..E_4, {0,inf}, nbar, lsc over 1- and 2-point spaces, two products."""
    return {
        "E1": EkModel(1),
        "E2": EkModel(2),
        "E3": EkModel(3),
        "E4": EkModel(4),
        "zero_inf": zero_inf(),
        "trivial": trivial_model(),
        "join_square": join_square(),
        "nbar": NbarModel(),
        "lsc_point": lsc_model(["p"], [[1]]),
        "sierpinski": sierpinski(),
        "discrete2": discrete_space(2),
        "nbar_x_E1": product(NbarModel(), EkModel(1)),
        "E2_x_zero_inf": product(EkModel(2), zero_inf()),
    }


def small_models(max_size=4):
    return [m for n in range(1, max_size + 1) for m in enumerate_models(n)]


@pytest.fixture
def e2():
    return EkModel(2)


@pytest.fixture
def zi():
    return zero_inf()


@pytest.fixture
def nbar():
    return NbarModel()


# acceptance criterion -> (passed, detail), filled by test_acceptance.py
RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
