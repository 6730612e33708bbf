from fractions import Fraction

import numpy as np
import pytest

from conftest import random_exact_isometry, random_reflection, random_rotation
from lattisym import catalog
from lattisym.algebra import EXACT, NUMERIC, FieldElement, Matrix, det
from lattisym.errors import AsymmetricInput, NonOrthonormalDirectors, NotOrthogonal
from lattisym.lattice import Isometry
from lattisym.voigt import (
    ElasticityMatrix,
    apply_c,
    build_basis,
    contract,
    ddot,
    from_fourth_order,
    from_standard_voigt,
    from_voigt,
    induced_transform,
    lab_matrix,
    random_symmetric,
    standard_basis,
    to_fourth_order,
    to_standard_voigt,
    to_voigt,
)

HALF_SQRT2 = FieldElement(0, Fraction(1, 2))
Z = standard_basis(EXACT)
ZN = standard_basis(NUMERIC)


def oracle_hat(s: Isometry) -> Matrix:
    """Components of S Z_k S^T on the basis, straight from the definition."""
    basis = Z if s.mode == EXACT else ZN
    images = [s.matrix @ z @ s.matrix.T for z in basis]
    return Matrix([[ddot(zj, img) for img in images] for zj in basis], s.mode)


def test_basis_definition():
    assert Z[0] == Matrix.diag([1, 0, 0])
    z4 = Z[3]
    assert z4[1, 2] == HALF_SQRT2 and z4[2, 1] == HALF_SQRT2
    assert sum(1 for x in z4.entries() if not x.is_zero()) == 2
    assert Z[4][0, 2] == HALF_SQRT2 and Z[5][0, 1] == HALF_SQRT2
    assert Z.gram() == Matrix.identity(6)


def test_basis_on_rotated_directors(rng):
    for _ in range(10):
        d = random_exact_isometry(rng).matrix
        assert build_basis(d).gram() == Matrix.identity(6)


def test_nonorthonormal_directors():
    with pytest.raises(NonOrthonormalDirectors):
        build_basis(Matrix([[1, 0, 0], [1, 1, 0], [0, 0, 1]]))


def test_to_voigt_examples():
    assert to_voigt(Matrix.identity(3), Z).entries() == [1, 1, 1, 0, 0, 0]
    shear = Matrix([[0, Fraction(1, 2), 0], [Fraction(1, 2), 0, 0], [0, 0, 0]])
    assert to_voigt(shear, Z).entries() == [0, 0, 0, 0, 0, HALF_SQRT2]
    assert to_voigt(Z[4], Z).entries() == [0, 0, 0, 0, 1, 0]
    with pytest.raises(AsymmetricInput):
        to_voigt(Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]]), Z)


def test_voigt_round_trip(rng):
    for _ in range(50):
        t = random_symmetric(rng, EXACT)
        assert from_voigt(to_voigt(t, Z), Z) == t


def test_hat_examples():
    assert induced_transform(Isometry(Matrix.identity(3))) == Matrix.identity(6)
    assert induced_transform(catalog.isometry("Q_pi")) == Matrix.diag([1, 1, 1, -1, -1, 1])
    q3 = induced_transform(catalog.isometry("Q_pi3"))
    assert q3.rows[0] == tuple(FieldElement.parse(x) for x in ("1/4", "3/4", "0", "0", "0", "-1/4*sqrt6"))
    for name in catalog.REFERENCE_TRANSFORMS:
        assert induced_transform(catalog.isometry(name)) == catalog.reference_transform(name)


def test_hat_rejects_non_orthogonal():
    with pytest.raises(NotOrthogonal):
        induced_transform(Isometry(Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])))


def test_hat_matches_oracle_exact(rng):
    for _ in range(100):
        s = random_exact_isometry(rng)
        assert induced_transform(s) == oracle_hat(s)


def test_hat_matches_oracle_numeric(rng):
    for _ in range(100):
        s = random_rotation(rng) if rng.random() < 0.5 else random_reflection(rng)
        assert np.allclose(induced_transform(s).to_numpy(), oracle_hat(s).to_numpy(), atol=1e-13)


def test_hat_algebra_exact(rng):
    eye6 = Matrix.identity(6)
    for _ in range(100):
        s1, s2 = random_exact_isometry(rng), random_exact_isometry(rng)
        h1, h2 = induced_transform(s1), induced_transform(s2)
        assert induced_transform(s1.compose(s2)) == h1 @ h2
        assert induced_transform(-s1) == h1
        assert induced_transform(s1.inverse()) == h1.T
        assert h1.T @ h1 == eye6
        assert det(h1) == 1


def test_hat_algebra_numeric(rng):
    for _ in range(100):
        s1, s2 = random_rotation(rng), random_reflection(rng)
        h1, h2 = induced_transform(s1).to_numpy(), induced_transform(s2).to_numpy()
        assert np.allclose(induced_transform(s1.compose(s2)).to_numpy(), h1 @ h2, atol=1e-12)
        assert np.allclose(h2.T @ h2, np.eye(6), atol=1e-12)
        assert abs(np.linalg.det(h2) - 1) < 1e-12


def test_equivariance(rng):
    for _ in range(100):
        s = random_exact_isometry(rng)
        t = random_symmetric(rng, EXACT)
        lhs = to_voigt(s.matrix @ t @ s.matrix.T, Z)
        assert lhs == induced_transform(s) @ to_voigt(t, Z)


def test_lab_matrix_on_rotated_frame(rng):
    """With directors D, the lab-frame matrix of S is D^T S D and the basis route agrees."""
    for _ in range(20):
        d = random_exact_isometry(rng).matrix
        if det(d) != 1:
            d = -d
        basis = build_basis(d)
        s = random_exact_isometry(rng)
        slab = lab_matrix(s, d)
        images = [slab @ z @ slab.T for z in basis]
        hat = Matrix([[ddot(zj, img) for img in images] for zj in basis])
        assert hat == induced_transform(s)


def test_fourth_order_identity():
    t = to_fourth_order(Matrix.identity(6), Z)
    half = Fraction(1, 2)
    for a in range(3):
        for b in range(3):
            for g in range(3):
                for d in range(3):
                    expected = half * ((a == g) * (b == d) + (a == d) * (b == g))
                    assert t[a, b, g, d] == expected


def test_isotropic_apply():
    lam, mu = 3, 2
    a, b = lam + 2 * mu, 2 * mu
    rows = [[a if i == k else (a - b if i < 3 and k < 3 else 0) for k in range(6)] for i in range(6)]
    for i in range(3, 6):
        rows[i][i] = b
    c = Matrix(rows)
    e = Matrix([[1, 2, 3], [2, -1, 4], [3, 4, 5]])
    expected = Matrix.identity(3).scale(FieldElement(lam * 5)) + e.scale(FieldElement(2 * mu))
    assert apply_c(c, e, Z) == expected
    assert contract(to_fourth_order(c, Z), e) == expected


def test_fourth_order_round_trip_and_paths(rng):
    from conftest import random_exact_matrix

    for _ in range(20):
        c = random_exact_matrix(rng)
        t = to_fourth_order(c, Z)
        assert from_fourth_order(t, Z) == c
        e = random_symmetric(rng, EXACT)
        assert apply_c(c, e, Z) == contract(t, e)
        assert t[0, 1, 2, 0] == t[1, 0, 2, 0] == t[0, 1, 0, 2]


def test_standard_voigt_conversion():
    c = Matrix(catalog.pattern_space("C_cubic").basis[2].rows)
    std = to_standard_voigt(c)
    assert from_standard_voigt(std) == c
    assert std[3, 3] == Fraction(1, 2)


def test_elasticity_matrix_validation():
    with pytest.raises(AsymmetricInput):
        ElasticityMatrix(Matrix([[1 if k >= i else 0 for k in range(6)] for i in range(6)]), symmetric=True)
    with pytest.raises(ValueError):
        ElasticityMatrix(Matrix.identity(3))
    assert ElasticityMatrix(Matrix.identity(6), True).mode == EXACT
