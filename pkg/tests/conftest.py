import pytest

from cubicat.models import base_category, cube_nerve, terminal


@pytest.fixture(scope="session")
def groupoid2():
    return cube_nerve(base_category("pair_groupoid", 2), 2)


@pytest.fixture(scope="session")
def groupoid3():
    return cube_nerve(base_category("pair_groupoid", 2), 3)


@pytest.fixture(scope="session")
def chain2():
    return cube_nerve(base_category("chain_poset", 2), 2)


@pytest.fixture(scope="session")
def discrete2():
    return cube_nerve(base_category("discrete", 2), 2)


@pytest.fixture(scope="session")
def terminal2():
    return terminal(2)


@pytest.fixture(scope="session")
def small_fixtures(groupoid2, chain2, discrete2, terminal2):
    return {"groupoid2": groupoid2, "chain2": chain2, "discrete2": discrete2, "terminal2": terminal2}


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for text in sorted(test_acceptance.RESULTS, key=lambda t: int(t.split()[1])):
            terminalreporter.write_line(text)
