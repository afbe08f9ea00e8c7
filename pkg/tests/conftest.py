import pytest

from dnsurf import generators as gen

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def bd4():
    return gen.simplex_boundary(3)


@pytest.fixture(scope="session")
def two_sphere():
    return gen.two_tetrahedron_sphere()


@pytest.fixture(scope="session")
def lens21():
    return gen.lens_standard((2, 1))


@pytest.fixture(scope="session")
def cyclic11():
    return gen.cyclic_polytope_boundary(11)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
