"""Inclusion lattices, their directors, and their point groups.

Isometries are stored on the director basis (l1, l2, l3), never in the lab
frame.  Point-group elements additionally carry their integer matrix in the
generator basis, which is exact in both modes and serves as a hashable key.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import EXACT, NUMERIC_EPS, ZERO, FieldElement, Matrix, det, inverse
from .errors import DegenerateGenerators, NotOrthogonal

# over-cover factor on the numeric radius bound before exact verification
RADIUS_SAFETY = 1.01


def _dot(u: Sequence, v: Sequence):
    acc = ZERO if isinstance(u[0], FieldElement) else 0.0
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _sqrt(x):
    return x.sqrt() if isinstance(x, FieldElement) else math.sqrt(x)


def _negligible(x, scale: float) -> bool:
    if isinstance(x, FieldElement):
        return x.is_zero()
    return abs(x) <= NUMERIC_EPS * scale


def compute_directors(generators: Matrix) -> Matrix:
    """Orthonormalize the generators (rows of ``generators``) into directors.

    l1 is parallel to a1, l2 lies in span(a1, a2) and l3 completes a
    right-handed frame.  In exact mode NormOutsideField propagates when a norm
    is not in Q(sqrt2, sqrt3).
    """
    if generators.shape != (3, 3):
        raise ValueError("expected three 3-vectors")
    check_independent(generators)
    a = generators.rows
    l1 = [x / _sqrt(_dot(a[0], a[0])) for x in a[0]]
    w2 = [x - _dot(a[1], l1) * y for x, y in zip(a[1], l1)]
    l2 = [x / _sqrt(_dot(w2, w2)) for x in w2]
    w3 = [x - _dot(a[2], l1) * y - _dot(a[2], l2) * z for x, y, z in zip(a[2], l1, l2)]
    l3 = [x / _sqrt(_dot(w3, w3)) for x in w3]
    frame = Matrix([l1, l2, l3], generators.mode)
    orientation = det(frame)
    if (orientation.sign() if isinstance(orientation, FieldElement) else np.sign(orientation)) < 0:
        frame = Matrix([l1, l2, [-x for x in l3]], generators.mode)
    return frame


def check_independent(generators: Matrix) -> None:
    d = det(generators)
    if generators.mode == EXACT:
        if d.is_zero():
            raise DegenerateGenerators("generators are linearly dependent")
        return
    norms = np.prod(np.linalg.norm(generators.to_numpy(), axis=1))
    if abs(d) <= NUMERIC_EPS * norms:
        raise DegenerateGenerators("generators are linearly dependent")


@dataclass(frozen=True)
class Isometry:
    """Orthogonal 3x3 matrix on the director basis."""

    matrix: Matrix
    name: str = ""

    def __post_init__(self):
        if self.matrix.shape != (3, 3):
            raise ValueError("isometry must be 3x3")

    @property
    def mode(self) -> str:
        return self.matrix.mode

    @property
    def determinant(self):
        return det(self.matrix)

    @property
    def kind(self) -> str:
        d = self.determinant
        positive = d.sign() > 0 if isinstance(d, FieldElement) else d > 0
        return "rotation" if positive else "reflection"

    def is_orthogonal(self, tol: float = NUMERIC_EPS) -> bool:
        gram = self.matrix.T @ self.matrix
        if self.mode == EXACT:
            return gram == Matrix.identity(3)
        return bool(np.abs(gram.to_numpy() - np.eye(3)).max() <= tol)

    def require_orthogonal(self) -> Isometry:
        if not self.is_orthogonal():
            raise NotOrthogonal(f"isometry {self.name or self.matrix!r} is not orthogonal")
        return self

    def compose(self, other: Isometry) -> Isometry:
        return Isometry(self.matrix @ other.matrix)

    def inverse(self) -> Isometry:
        return Isometry(self.matrix.T, f"{self.name}^T" if self.name else "")

    def __neg__(self) -> Isometry:
        return Isometry(-self.matrix, f"-{self.name}" if self.name else "")

    def to_numeric(self) -> Isometry:
        return Isometry(self.matrix.to_numeric(), self.name)

    def apply(self, vector: Sequence) -> list:
        return [x for (x,) in (self.matrix @ Matrix.column(vector, self.mode)).rows]


@dataclass(frozen=True)
class Lattice:
    """Lattice spanned over the integers by three generators (rows, lab frame)."""

    generators: Matrix
    directors: Matrix = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "directors", compute_directors(self.generators))

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], mode: str = EXACT) -> Lattice:
        return cls(Matrix(vectors, mode))

    @property
    def mode(self) -> str:
        return self.generators.mode

    @cached_property
    def gram(self) -> Matrix:
        return self.generators @ self.generators.T

    @cached_property
    def frame_generators(self) -> Matrix:
        """Generators on the director basis, as the columns of a 3x3 matrix."""
        return self.directors @ self.generators.T

    @cached_property
    def _frame_inverse(self) -> Matrix:
        return inverse(self.frame_generators)

    def isometry_from_integer(self, m: Matrix, name: str = "") -> Isometry:
        """Orthogonal map sending a_i to sum_k m[k, i] a_k, on the director basis."""
        mm = Matrix(m.rows, self.mode) if m.mode != self.mode else m
        return Isometry(self.frame_generators @ mm @ self._frame_inverse, name)

    def integer_coordinates(self, s: Isometry) -> Matrix:
        """Matrix of ``s`` in the generator basis (integer iff a lattice symmetry)."""
        mat = s.matrix if s.mode == self.mode else s.matrix.to_numeric()
        if mat.mode != self.mode:
            return inverse(self.frame_generators.to_numeric()) @ mat @ self.frame_generators.to_numeric()
        return self._frame_inverse @ mat @ self.frame_generators

    def to_numeric(self) -> Lattice:
        return Lattice(self.generators.to_numeric())


def _is_integral(x, tol: float = 1e-9) -> bool:
    if isinstance(x, FieldElement):
        return x.is_integer()
    return abs(x - round(x)) <= tol


def is_lattice_symmetry(lat: Lattice, s: Isometry) -> bool:
    """True iff ``s`` maps every generator onto a lattice vector."""
    s.require_orthogonal()
    coords = lat.integer_coordinates(s)
    return all(_is_integral(x) for x in coords.entries())


@dataclass(frozen=True)
class PointGroup:
    """Orthogonal maps fixing the origin that send the lattice onto itself."""

    lattice: Lattice
    integer_matrices: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def order(self) -> int:
        return len(self.integer_matrices)

    @cached_property
    def elements(self) -> list[Isometry]:
        return [self.lattice.isometry_from_integer(Matrix(m, self.lattice.mode)) for m in self.integer_matrices]

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def contains_integer(self, m) -> bool:
        return tuple(tuple(r) for r in m) in set(self.integer_matrices)

    def is_closed(self) -> bool:
        keys = set(self.integer_matrices)
        mats = [np.array(m, dtype=np.int64) for m in self.integer_matrices]
        for a in mats:
            inv = np.rint(np.linalg.inv(a)).astype(np.int64)
            if _key(inv) not in keys:
                return False
            for b in mats:
                if _key(a @ b) not in keys:
                    return False
        return True

    def generating_set(self) -> list[Isometry]:
        """Small set of elements generating the group, chosen greedily in element order."""
        chosen: list[np.ndarray] = []
        reached = {_key(np.eye(3, dtype=np.int64))}
        for m in self.integer_matrices:
            if m in reached:
                continue
            chosen.append(np.array(m, dtype=np.int64))
            reached = _closure(chosen)
            if len(reached) == self.order:
                break
        return [self.lattice.isometry_from_integer(Matrix(_key(m), self.lattice.mode)) for m in chosen]


def _key(m: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in m)


def _closure(gens: list[np.ndarray]) -> set:
    seen = {_key(np.eye(3, dtype=np.int64))}
    frontier = [np.eye(3, dtype=np.int64)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = a @ g
                k = _key(b)
                if k not in seen:
                    seen.add(k)
                    nxt.append(b)
        frontier = nxt
    return seen


def _candidates(lat: Lattice, i: int) -> list[tuple[int, int, int]]:
    """Integer coefficient vectors n with |n . a| = |a_i|."""
    gram = lat.gram
    a_num = lat.generators.to_numpy()
    sigma_min = np.linalg.svd(a_num, compute_uv=False).min()
    target = gram[i, i]
    length = math.sqrt(float(target))
    bound = length / sigma_min * RADIUS_SAFETY
    top = int(math.ceil(bound))
    exact = lat.mode == EXACT
    scale = float(target)
    found = []
    for n in itertools.product(range(-top, top + 1), repeat=3):
        if n == (0, 0, 0) or math.sqrt(n[0] ** 2 + n[1] ** 2 + n[2] ** 2) > bound:
            continue
        q = _quad(gram, n, n)
        if (q == target) if exact else abs(q - target) <= NUMERIC_EPS * scale:
            found.append(n)
    return found


def _quad(gram: Matrix, u: Sequence[int], v: Sequence[int]):
    acc = gram.zero
    for a in range(3):
        if not u[a]:
            continue
        for b in range(3):
            if v[b]:
                acc = acc + gram[a, b] * (u[a] * v[b])
    return acc


def enumerate_point_group(lat: Lattice) -> PointGroup:
    """All orthogonal maps S with S(L) = L, found through Gram-preserving integer matrices."""
    gram = lat.gram
    exact = lat.mode == EXACT
    scale = max(abs(float(x)) for x in gram.entries())

    def same(x, y) -> bool:
        return x == y if exact else abs(float(x) - float(y)) <= NUMERIC_EPS * scale

    cands = [_candidates(lat, i) for i in range(3)]
    found = []
    for b1 in cands[0]:
        for b2 in cands[1]:
            if not same(_quad(gram, b1, b2), gram[0, 1]):
                continue
            for b3 in cands[2]:
                if same(_quad(gram, b1, b3), gram[0, 2]) and same(_quad(gram, b2, b3), gram[1, 2]):
                    # column i holds the coefficients of the image of a_i
                    found.append(tuple(tuple(col[k] for col in (b1, b2, b3)) for k in range(3)))
    unique = tuple(sorted(set(found)))
    group = PointGroup(lat, unique)
    if not group.is_closed():
        raise RuntimeError("enumerated point group is not closed")
    return group
