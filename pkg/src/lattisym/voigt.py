"""Normalized Voigt representation on a director-adapted tensor basis.

The basis tensors are

    Z1 = l1 x l1,  Z2 = l2 x l2,  Z3 = l3 x l3,
    Z4 = (l2 x l3 + l3 x l2)/sqrt2,
    Z5 = (l3 x l1 + l1 x l3)/sqrt2,
    Z6 = (l1 x l2 + l2 x l1)/sqrt2,

orthonormal under A:B = tr(A^T B).  The induced transform ``hat(S)`` maps
components on the rotated basis S Z_k S^T to components on Z; its inverse is
its transpose.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .algebra import EXACT, NUMERIC, NUMERIC_EPS, SQRT2, FieldElement, Matrix
from .errors import AsymmetricInput, NonOrthonormalDirectors
from .lattice import Isometry

# director index pair for Z4, Z5, Z6 (0-based)
SHEAR_PAIRS = ((1, 2), (2, 0), (0, 1))


def _half_sqrt2(mode: str):
    return SQRT2 / 2 if mode == EXACT else np.sqrt(0.5)


def _sqrt2(mode: str):
    return SQRT2 if mode == EXACT else float(np.sqrt(2.0))


def ddot(a: Matrix, b: Matrix):
    acc = a.zero
    for x, y in zip(a.entries(), b.entries()):
        acc = acc + x * y
    return acc


@dataclass(frozen=True)
class TensorBasis:
    tensors: tuple[Matrix, ...]
    directors: Matrix

    @property
    def mode(self) -> str:
        return self.directors.mode

    def __getitem__(self, k: int) -> Matrix:
        return self.tensors[k]

    def __iter__(self):
        return iter(self.tensors)

    def gram(self) -> Matrix:
        return Matrix([[ddot(a, b) for b in self.tensors] for a in self.tensors], self.mode)


def _dyad(u: Sequence, v: Sequence, mode: str) -> Matrix:
    return Matrix([[a * b for b in v] for a in u], mode)


def build_basis(directors: Matrix) -> TensorBasis:
    """Six orthonormal symmetric tensors built from the rows of ``directors``."""
    mode = directors.mode
    gram = directors @ directors.T
    if mode == EXACT:
        ok = gram == Matrix.identity(3)
    else:
        ok = np.abs(gram.to_numpy() - np.eye(3)).max() <= NUMERIC_EPS
    if not ok:
        raise NonOrthonormalDirectors("directors are not orthonormal")
    l = directors.rows
    tensors = [_dyad(l[k], l[k], mode) for k in range(3)]
    c = _half_sqrt2(mode)
    for p, q in SHEAR_PAIRS:
        tensors.append((_dyad(l[p], l[q], mode) + _dyad(l[q], l[p], mode)).scale(c))
    return TensorBasis(tuple(tensors), directors)


def standard_basis(mode: str = EXACT) -> TensorBasis:
    return build_basis(Matrix.identity(3, mode))


def _require_symmetric(t: Matrix) -> None:
    if t.shape != (3, 3) or not t.is_symmetric():
        raise AsymmetricInput("expected a symmetric 3x3 tensor")


def to_voigt(t: Matrix, basis: TensorBasis) -> Matrix:
    """Column of the six components ``t : Z_k``."""
    _require_symmetric(t)
    return Matrix.column([ddot(t, z) for z in basis], t.mode)


def from_voigt(v: Matrix, basis: TensorBasis) -> Matrix:
    out = Matrix.zeros(3, 3, v.mode)
    for (x,), z in zip(v.rows, basis):
        out = out + z.scale(x)
    return out


def induced_transform(s: Isometry) -> Matrix:
    """6x6 matrix induced by ``s`` (components on the director basis)."""
    s.require_orthogonal()
    m = s.matrix
    r2 = _sqrt2(m.mode)
    out = [[m.zero] * 6 for _ in range(6)]
    for j in range(3):
        for k in range(3):
            out[j][k] = m[j, k] * m[j, k]
        for k, (p, q) in enumerate(SHEAR_PAIRS, start=3):
            out[j][k] = r2 * m[j, p] * m[j, q]
    for j, (p, q) in enumerate(SHEAR_PAIRS, start=3):
        for k in range(3):
            out[j][k] = r2 * m[p, k] * m[q, k]
        for k, (u, v) in enumerate(SHEAR_PAIRS, start=3):
            out[j][k] = m[p, u] * m[q, v] + m[p, v] * m[q, u]
    return Matrix._wrap(out, m.mode)


def lab_matrix(s: Isometry, directors: Matrix) -> Matrix:
    """Lab-frame components of an isometry given on the director basis."""
    return directors.T @ s.matrix @ directors


@dataclass(frozen=True)
class ElasticityMatrix:
    """6x6 normalized Voigt stiffness; ``symmetric`` restricts to the 21-parameter case."""

    matrix: Matrix
    symmetric: bool = False

    def __post_init__(self):
        if self.matrix.shape != (6, 6):
            raise ValueError("elasticity matrix must be 6x6")
        if self.symmetric and not self.matrix.is_symmetric():
            raise AsymmetricInput("symmetric elasticity matrix expected")

    @property
    def mode(self) -> str:
        return self.matrix.mode

    def __getitem__(self, idx):
        return self.matrix[idx]


@dataclass(frozen=True)
class FourthOrderTensor:
    components: tuple  # flat, index ((a*3 + b)*3 + c)*3 + d
    mode: str

    def __getitem__(self, idx):
        a, b, c, d = idx
        return self.components[((a * 3 + b) * 3 + c) * 3 + d]

    def to_numpy(self) -> np.ndarray:
        return np.array([float(x) for x in self.components]).reshape(3, 3, 3, 3)


def to_fourth_order(c: ElasticityMatrix | Matrix, basis: TensorBasis) -> FourthOrderTensor:
    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    zs = [z.rows for z in basis]
    comps = []
    for a, b, g, d in product(range(3), repeat=4):
        acc = mat.zero
        for i in range(6):
            zi = zs[i][a][b]
            if mode_is_zero(zi):
                continue
            for k in range(6):
                cik = mat[i, k]
                zk = zs[k][g][d]
                if mode_is_zero(cik) or mode_is_zero(zk):
                    continue
                acc = acc + cik * zi * zk
        comps.append(acc)
    return FourthOrderTensor(tuple(comps), mat.mode)


def mode_is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, FieldElement) else x == 0.0


def contract(tensor: FourthOrderTensor, e: Matrix) -> Matrix:
    """``C : E`` computed componentwise from the 81 components."""
    rows = []
    for a in range(3):
        row = []
        for b in range(3):
            acc = e.zero
            for g in range(3):
                for d in range(3):
                    acc = acc + tensor[a, b, g, d] * e[g, d]
            row.append(acc)
        rows.append(row)
    return Matrix._wrap(rows, e.mode)


def from_fourth_order(tensor: FourthOrderTensor, basis: TensorBasis) -> Matrix:
    """Recover C_ik = Z_i : (C : Z_k)."""
    images = [contract(tensor, z) for z in basis]
    return Matrix([[ddot(zi, img) for img in images] for zi in basis], tensor.mode)


def apply_c(c: ElasticityMatrix | Matrix, e: Matrix, basis: TensorBasis) -> Matrix:
    """Stress tensor for strain ``e`` through the 6x6 representation."""
    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    return from_voigt(mat @ to_voigt(e, basis), basis)


def _voigt_weights(mode: str, inverse: bool = False) -> Matrix:
    one = FieldElement(1) if mode == EXACT else 1.0
    w = _half_sqrt2(mode) if inverse else _sqrt2(mode)
    return Matrix.diag([one, one, one, w, w, w], mode)


def to_standard_voigt(c: Matrix) -> Matrix:
    """Classical Voigt stiffness (engineering shear strains, order 11,22,33,23,13,12).

    Valid only when the directors coincide with the lab axes.
    """
    inv = _voigt_weights(c.mode, inverse=True)
    return inv @ c @ inv


def from_standard_voigt(c: Matrix) -> Matrix:
    w = _voigt_weights(c.mode)
    return w @ c @ w


def random_symmetric(rng: np.random.Generator, mode: str = NUMERIC, max_den: int = 7) -> Matrix:
    """Random symmetric 3x3 tensor; small rationals in exact mode."""
    if mode == NUMERIC:
        a = rng.standard_normal((3, 3))
        return Matrix.from_numpy((a + a.T) / 2)
    from fractions import Fraction

    vals = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i, 3):
            x = Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, max_den + 1)))
            vals[i][j] = vals[j][i] = x
    return Matrix(vals, EXACT)
