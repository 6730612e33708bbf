"""Commutation constraints C hat(S) = hat(S) C and the spaces they cut out.

The ambient space is either all 6x6 matrices (``full36``, coordinates C_ik in
row-major order) or symmetric ones (``sym21``, coordinates C_ik with i <= k in
row-major order).  Exact mode solves the constraints by RREF over
Q(sqrt2, sqrt3); numeric mode thresholds singular values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    EXACT,
    NUMERIC,
    ONE,
    SQRT3,
    ZERO,
    Matrix,
    leading_minors,
    nullspace_of_rref,
    rref,
    same_row_space,
    vstack,
)
from .errors import AsymmetricInput, ModeError, ZeroMatrix
from .lattice import Isometry, Lattice, enumerate_point_group, is_lattice_symmetry
from .patterns import anchors, format_pattern, pattern_from_basis

FULL36 = "full36"
SYM21 = "sym21"
AMBIENTS = (FULL36, SYM21)

# relative singular-value cut for numeric kernels
KERNEL_EPS = 1e-9


def coordinates(ambient: str) -> list[tuple[int, int]]:
    if ambient == FULL36:
        return [(i, k) for i in range(6) for k in range(6)]
    if ambient == SYM21:
        return [(i, k) for i in range(6) for k in range(i, 6)]
    raise ValueError(f"unknown ambient {ambient!r}")


def _coord_index(ambient: str) -> dict[tuple[int, int], int]:
    index = {ik: n for n, ik in enumerate(coordinates(ambient))}
    if ambient == SYM21:
        index.update({(k, i): n for (i, k), n in list(index.items())})
    return index


def flatten(c: Matrix, ambient: str) -> list:
    return [c[i, k] for i, k in coordinates(ambient)]


def unflatten(values: Sequence, ambient: str, mode: str) -> Matrix:
    zero = ZERO if mode == EXACT else 0.0
    rows = [[zero] * 6 for _ in range(6)]
    for (i, k), v in zip(coordinates(ambient), values):
        rows[i][k] = v
        if ambient == SYM21:
            rows[k][i] = v
    return Matrix._wrap(rows, mode)


def commutation_operator(hat: Matrix, ambient: str = FULL36) -> Matrix:
    """Matrix of C -> C hat - hat C: rows are the 36 entries, columns the ambient coordinates."""
    index = _coord_index(ambient)
    ncols = len(coordinates(ambient))
    zero = hat.zero
    rows = []
    for a in range(6):
        for b in range(6):
            row = [zero] * ncols
            for m in range(6):
                # (C hat)_ab picks up C_am hat_mb; (hat C)_ab picks up hat_am C_mb
                row[index[(a, m)]] = row[index[(a, m)]] + hat[m, b]
                row[index[(m, b)]] = row[index[(m, b)]] - hat[a, m]
            rows.append(row)
    return Matrix._wrap(rows, hat.mode)


@dataclass(frozen=True)
class SymmetryClass:
    tag: str
    axis: int | None = None  # 1-based director index of the distinguished axis
    dimension: int | None = None

    def __str__(self) -> str:
        if self.tag == "Unrecognized":
            return f"Unrecognized({self.dimension})"
        return f"{self.tag}(l{self.axis})" if self.axis else self.tag

    @property
    def axis_note(self) -> str:
        return f"distinguished axis l{self.axis}" if self.axis else ""


@dataclass(frozen=True)
class ConstrainedSpace:
    """Subspace of elasticity matrices with a canonical basis.

    Basis element i equals 1 at the i-th free coordinate and 0 at the other
    free coordinates, so parameter p_i is literally that coordinate of C.
    """

    ambient: str
    mode: str
    basis: tuple[Matrix, ...]
    free_coordinates: tuple[int, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def parameter_names(self) -> list[str]:
        return [f"p{i + 1}" for i in range(self.dimension)]

    @property
    def free_entries(self) -> list[tuple[int, int]]:
        coords = coordinates(self.ambient)
        return [coords[f] for f in self.free_coordinates]

    @cached_property
    def _rows(self) -> Matrix:
        ncols = len(coordinates(self.ambient))
        if not self.basis:
            return Matrix.zeros(0, ncols, self.mode)
        return Matrix._wrap([flatten(b, self.ambient) for b in self.basis], self.mode)

    def pattern(self, names: Sequence[str] | None = None):
        return pattern_from_basis(self.basis, list(names or self.parameter_names))

    def pattern_strings(self, names: Sequence[str] | None = None) -> list[list[str]]:
        names = list(names or self.parameter_names)
        return format_pattern(self.pattern(names), names)

    def reparametrized(self, anchor_map: dict[str, tuple[int, int]]) -> list[Matrix]:
        """Basis dual to the given anchor entries (element j is 1 at anchor j, 0 at the others)."""
        names = list(anchor_map)
        if len(names) != self.dimension:
            raise ValueError("anchor count must equal the dimension")
        a = Matrix._wrap([[b[anchor_map[n]] for b in self.basis] for n in names], self.mode)
        from .algebra import inverse

        ainv = inverse(a)
        out = []
        for j in range(len(names)):
            acc = Matrix.zeros(6, 6, self.mode)
            for i, b in enumerate(self.basis):
                acc = acc + b.scale(ainv[i, j])
            out.append(acc)
        return out

    def pattern_like(self, template_pattern) -> list[list[dict]]:
        """This space's pattern written in the parameters of a template pattern."""
        anchor_map = anchors(template_pattern)
        names = list(anchor_map)
        return pattern_from_basis(self.reparametrized(anchor_map), names)

    def contains(self, c: Matrix, tol: float = 1e-10) -> bool:
        vec = flatten(c, self.ambient)
        if self.ambient == SYM21 and not c.is_symmetric():
            return False
        if self.mode == EXACT and c.mode == EXACT:
            stacked = Matrix._wrap(list(self._rows.rows) + [vec], EXACT)
            return len(rref(stacked)[1]) == self.dimension
        return projection_residual(self, c) <= tol * max(c.frobenius(), 1e-300)

    def same_space(self, other: ConstrainedSpace) -> bool:
        if self.ambient != other.ambient or self.dimension != other.dimension:
            return False
        if self.dimension == 0:
            return True
        if self.mode == EXACT and other.mode == EXACT:
            return same_row_space(self._rows, other._rows)
        a = self._rows.to_numpy()
        b = other._rows.to_numpy()
        return _numeric_rank(np.vstack([a, b])) == self.dimension

    def is_subspace_of(self, other: ConstrainedSpace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def to_numeric(self) -> ConstrainedSpace:
        return ConstrainedSpace(self.ambient, NUMERIC, tuple(b.to_numeric() for b in self.basis), self.free_coordinates)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "dimension": self.dimension,
            "parameters": self.parameter_names,
            "pattern": self.pattern_strings(),
        }


def _numeric_rank(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    sv = np.linalg.svd(arr, compute_uv=False)
    return int((sv > KERNEL_EPS * max(sv[0], 1e-300)).sum())


def projection_residual(space: ConstrainedSpace, c: Matrix) -> float:
    """Frobenius norm of c minus its orthogonal projection onto ``space``."""
    target = c.to_numpy().ravel()
    if not space.basis:
        return float(np.linalg.norm(target))
    mats = np.array([b.to_numpy().ravel() for b in space.basis]).T
    q, _ = np.linalg.qr(mats)
    return float(np.linalg.norm(target - q @ (q.T @ target)))


def _canonical_exact(reduced: Matrix, pivots: list[int], ambient: str) -> ConstrainedSpace:
    vecs = nullspace_of_rref(reduced, pivots)
    free = tuple(j for j in range(reduced.ncols) if j not in set(pivots))
    basis = tuple(unflatten([x for (x,) in v.rows], ambient, EXACT) for v in vecs)
    return ConstrainedSpace(ambient, EXACT, basis, free)


def _canonical_numeric(stacked: np.ndarray, ambient: str) -> ConstrainedSpace:
    ncols = stacked.shape[1]
    if stacked.size == 0 or not np.any(stacked):
        kernel = np.eye(ncols)
    else:
        _, sv, vt = np.linalg.svd(stacked)
        cut = KERNEL_EPS * sv[0]
        rank = int((sv > cut).sum())
        kernel = vt[rank:]
    if kernel.shape[0] == 0:
        return ConstrainedSpace(ambient, NUMERIC, (), ())
    # echelon form taken from the right end so that free columns match exact mode
    reduced, pivots = rref(Matrix.from_numpy(kernel[:, ::-1]))
    arr = reduced.to_numpy()[: len(pivots), ::-1]
    free = sorted(ncols - 1 - p for p in pivots)
    order = [ncols - 1 - f for f in free]
    rows = [arr[pivots.index(o)] for o in order]
    basis = []
    for f, row in zip(free, rows):
        row = row / row[f]
        for g in free:
            if g != f:
                row[g] = 0.0
        basis.append(unflatten([float(x) for x in row], ambient, NUMERIC))
    return ConstrainedSpace(ambient, NUMERIC, tuple(basis), tuple(free))


def _dedupe(hats: Iterable[Matrix]) -> list[Matrix]:
    seen, out = set(), []
    for h in hats:
        key = h if h.mode == EXACT else tuple(np.round(h.to_numpy(), 12).ravel())
        if key not in seen:
            seen.add(key)
            out.append(h)
    return out


def commutant_of_transforms(hats: Sequence[Matrix], ambient: str = FULL36, mode: str | None = None) -> ConstrainedSpace:
    """Space of C (in the ambient) commuting with every given 6x6 transform."""
    mode = mode or (hats[0].mode if hats else EXACT)
    if any(h.mode != mode for h in hats):
        raise ModeError("transforms of different modes")
    ncols = len(coordinates(ambient))
    hats = _dedupe(hats)
    if mode == NUMERIC:
        ops = [commutation_operator(h, ambient).to_numpy() for h in hats]
        stacked = np.vstack(ops) if ops else np.zeros((0, ncols))
        return _canonical_numeric(stacked, ambient)
    reduced, pivots = Matrix.zeros(0, ncols, EXACT), []
    for h in hats:
        block = commutation_operator(h, ambient)
        current = vstack([reduced, block]) if reduced.nrows else block
        r, pivots = rref(current)
        reduced = Matrix._wrap(r.rows[: len(pivots)], EXACT, ncols)
    return _canonical_exact(reduced, pivots, ambient)


def commutant(generators: Sequence[Isometry], ambient: str = FULL36, mode: str | None = None) -> ConstrainedSpace:
    """Elasticity matrices for which every generator is a material symmetry."""
    from .voigt import induced_transform

    return commutant_of_transforms([induced_transform(g) for g in generators], ambient, mode)


def constrain_by_lattice(lat: Lattice, ambient: str = FULL36, *, generators_only: bool = False) -> ConstrainedSpace:
    """Commutant of the lattice point group.

    All group elements are used by default; ``generators_only`` restricts to a
    greedy generating set, which yields the same space.
    """
    group = enumerate_point_group(lat)
    elems = group.generating_set() if generators_only else group.elements
    return commutant(elems, ambient, lat.mode)


def commutator_norm(c: Matrix, hat: Matrix) -> float:
    return float(np.linalg.norm(c.to_numpy() @ hat.to_numpy() - hat.to_numpy() @ c.to_numpy()))


def is_material_symmetry(c, s: Isometry, tol: float = 1e-12) -> bool:
    """True iff C commutes with the transform induced by ``s``.

    An exact C probed with a numeric isometry is converted to floats first.
    """
    from .voigt import ElasticityMatrix, induced_transform

    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    hat = induced_transform(s)
    if mat.mode == EXACT and hat.mode == EXACT:
        return mat @ hat == hat @ mat
    mat = mat.to_numeric()
    hat = hat.to_numeric()
    norm = mat.frobenius()
    return commutator_norm(mat, hat) <= tol * norm


def material_group_exceeds_lattice_group(
    lat: Lattice, probes: Sequence[Isometry], ambient: str = FULL36, tol: float = 1e-12
) -> list[Isometry]:
    """Probes that are material symmetries of the whole lattice-constrained space but not lattice symmetries."""
    space = constrain_by_lattice(lat, ambient)
    witnesses = []
    for probe in probes:
        if is_lattice_symmetry(lat, probe):
            continue
        if all(is_material_symmetry(b, probe, tol) for b in space.basis):
            witnesses.append(probe)
    return witnesses


# canonical class catalog ---------------------------------------------------


def axis_rotation(axis: int, turns: int, mode: str = EXACT) -> Isometry:
    """Rotation by 2*pi/turns about director ``axis`` (1-based); turns in {1, 2, 4, 6}."""
    if mode == EXACT:
        table = {1: (ONE, ZERO), 2: (-ONE, ZERO), 4: (ZERO, ONE), 6: (ONE / 2, SQRT3 / 2)}
        cos, sin = table[turns]
        one, zero = ONE, ZERO
    else:
        ang = 2 * math.pi / turns
        cos, sin = math.cos(ang), math.sin(ang)
        one, zero = 1.0, 0.0
    return rotation_about(axis, cos, sin, one, zero, name=f"Q_2pi/{turns}(l{axis})", mode=mode)


def rotation_about(axis: int, cos, sin, one=1.0, zero=0.0, name: str = "", mode: str = NUMERIC) -> Isometry:
    i, j = [k for k in range(3) if k != axis - 1]
    rows = [[zero] * 3 for _ in range(3)]
    rows[axis - 1][axis - 1] = one
    rows[i][i], rows[i][j] = cos, -sin
    rows[j][i], rows[j][j] = sin, cos
    return Isometry(Matrix(rows, mode), name)


def _class_generators() -> list[tuple[str, int | None, list[Isometry]]]:
    def q(axis, turns):
        return axis_rotation(axis, turns)

    ortho = [q(1, 2), q(2, 2), q(3, 2)]
    entries: list[tuple[str, int | None, list[Isometry]]] = [
        ("Isotropic", None, [q(1, 4), q(2, 4), q(3, 4), q(3, 6)]),
        ("Cubic", None, [q(1, 4), q(2, 4), q(3, 4)]),
    ]
    entries += [("TransverselyIsotropic", k, ortho + [q(k, 6)]) for k in (1, 2, 3)]
    entries += [("Tetragonal", k, ortho + [q(k, 4)]) for k in (1, 2, 3)]
    entries.append(("Orthotropic", None, ortho))
    entries += [("Monoclinic", k, [q(k, 2)]) for k in (1, 2, 3)]
    entries.append(("Triclinic", None, []))
    return entries


@lru_cache(maxsize=None)
def canonical_spaces(ambient: str = FULL36) -> tuple[tuple[SymmetryClass, ConstrainedSpace], ...]:
    """Director-aligned class spaces, most symmetric first (computed exactly, cached)."""
    out = []
    for tag, axis, gens in _class_generators():
        space = commutant(gens, ambient, EXACT)
        out.append((SymmetryClass(tag, axis, space.dimension), space))
    return tuple(out)


def classify(space: ConstrainedSpace) -> SymmetryClass:
    """Catalog class whose space equals ``space`` exactly, else Unrecognized(dimension)."""
    for cls, canon in canonical_spaces(space.ambient):
        if canon.dimension != space.dimension:
            continue
        candidate = canon if space.mode == EXACT else canon.to_numeric()
        if candidate.same_space(space):
            return cls
    return SymmetryClass("Unrecognized", None, space.dimension)


def classify_matrix(c, ambient: str = FULL36, tol: float = 1e-10) -> SymmetryClass:
    """Most symmetric catalog class whose space contains C.

    The triclinic space contains every matrix and is not reported; a matrix in
    no smaller catalog space is Unrecognized(1).
    """
    from .voigt import ElasticityMatrix

    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    for cls, canon in canonical_spaces(ambient):
        if cls.tag == "Triclinic":
            continue
        if canon.contains(mat, tol):
            return cls
    return SymmetryClass("Unrecognized", None, 1)


# diagnostics -----------------------------------------------------------------


def _iso_projector_terms(mat: Matrix):
    """Coefficients of C on the orthogonal pair J/3 and K = I - J/3 (J = ones in the normal block)."""
    zero = mat.zero
    s_block = zero
    s_trace = zero
    for i in range(3):
        for k in range(3):
            s_block = s_block + mat[i, k]
    for i in range(6):
        s_trace = s_trace + mat[i, i]
    return s_block, s_trace


def isotropic_projection(c) -> Matrix:
    """Orthogonal (Frobenius) projection of C onto span{I6, J}."""
    from .voigt import ElasticityMatrix

    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    s_block, s_trace = _iso_projector_terms(mat)
    exact = mat.mode == EXACT
    third = ONE / 3 if exact else 1.0 / 3.0
    one, zero = (ONE, ZERO) if exact else (1.0, 0.0)
    # <C, J/3> = s_block/3 ; <C, K> = s_trace - s_block/3 ; |K|^2 = 5
    alpha = s_block * third
    beta = (s_trace - s_block * third) * (ONE / 5 if exact else 0.2)
    rows = []
    for i in range(6):
        row = []
        for k in range(6):
            j_ik = third if (i < 3 and k < 3) else zero
            k_ik = (one if i == k else zero) - j_ik
            row.append(alpha * j_ik + beta * k_ik)
        rows.append(row)
    return Matrix._wrap(rows, mat.mode)


def isotropy_distance(c) -> float:
    """||C - P_iso C||_F / ||C||_F; 0.0 exactly when C is isotropic (exact mode)."""
    from .voigt import ElasticityMatrix

    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    norm_sq = mat.frobenius_sq()
    if (norm_sq.is_zero() if mat.mode == EXACT else norm_sq == 0.0):
        raise ZeroMatrix("isotropy distance of the zero matrix")
    residual = mat - isotropic_projection(mat)
    res_sq = residual.frobenius_sq()
    if mat.mode == EXACT:
        if res_sq.is_zero():
            return 0.0
        return math.sqrt(float(res_sq / norm_sq))
    return math.sqrt(res_sq / norm_sq)


def is_positive_definite(c, tol: float = 1e-12) -> bool:
    from .voigt import ElasticityMatrix

    mat = c.matrix if isinstance(c, ElasticityMatrix) else c
    if not mat.is_symmetric():
        raise AsymmetricInput("positive definiteness needs a symmetric matrix")
    if mat.mode == EXACT:
        return all(m.sign() > 0 for m in leading_minors(mat))
    eig = np.linalg.eigvalsh(mat.to_numpy())
    return bool(eig.min() > tol * max(abs(eig).max(), 1.0))
