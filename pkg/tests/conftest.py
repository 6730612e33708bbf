import numpy as np
import pytest

from lattisym import catalog
from lattisym.algebra import EXACT, NUMERIC, FieldElement, Matrix
from lattisym.lattice import Isometry
from lattisym.symmetry import axis_rotation, rotation_about

DATA = __import__("pathlib").Path(__file__).parent / "data"

H = FieldElement(0, "1/2")  # sqrt2 / 2
C12 = FieldElement(0, "1/4", 0, "1/4")  # cos(pi/12)
S12 = FieldElement(0, "-1/4", 0, "1/4")  # sin(pi/12)


def exact_pool() -> list[Isometry]:
    """Field-representable isometries whose products stay in the field."""
    pool = [catalog.isometry(n) for n in ("R1", "R2", "Q_sum", "Q_cyc", "Q_pi3", "Q_pi2", "-I")]
    for k in (1, 2, 3):
        pool.append(axis_rotation(k, 4))
        pool.append(axis_rotation(k, 6))
        pool.append(rotation_about(k, H, H, FieldElement(1), FieldElement(0), mode=EXACT))
        pool.append(rotation_about(k, C12, S12, FieldElement(1), FieldElement(0), mode=EXACT))
    return pool


POOL = exact_pool()


def random_exact_isometry(rng: np.random.Generator, depth: int = 3) -> Isometry:
    m = Matrix.identity(3)
    for _ in range(int(rng.integers(1, depth + 1))):
        m = m @ POOL[int(rng.integers(len(POOL)))].matrix
    return Isometry(m)


def random_rotation(rng: np.random.Generator) -> Isometry:
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return Isometry(Matrix(q.tolist(), NUMERIC))


def random_reflection(rng: np.random.Generator) -> Isometry:
    return -random_rotation(rng)


def random_exact_matrix(rng: np.random.Generator, n: int = 6, m: int = 6, den: int = 5) -> Matrix:
    from fractions import Fraction

    return Matrix([[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, den + 1))) for _ in range(m)] for _ in range(n)], EXACT)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def data_dir():
    return DATA


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
