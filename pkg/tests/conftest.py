import numpy as np
import pytest

from rigidity_lab import EXACT, build_polytope, generate

# name -> "PASS"/"FAIL: ..." filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{key} {ACCEPTANCE[key]}")


OCTA = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]])
OCTA_FACES = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
              (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]])
TETRA_FACES = [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)]


@pytest.fixture(scope="session")
def octahedron():
    return generate("octahedron")


@pytest.fixture(scope="session")
def tetrahedron():
    return generate("tetrahedron")


@pytest.fixture(scope="session")
def icosahedron():
    return generate("icosahedron")


@pytest.fixture(scope="session")
def flat_octahedron():
    return generate("flat_vertex", "octahedron", 0)


@pytest.fixture(scope="session")
def int_octahedron():
    return build_polytope(OCTA, OCTA_FACES, config=EXACT)


@pytest.fixture(scope="session")
def int_tetrahedron():
    return build_polytope(TETRA, TETRA_FACES, config=EXACT)
