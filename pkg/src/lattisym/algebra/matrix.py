"""Small dense matrices over Q(sqrt2, sqrt3) or over floats.

A matrix is in exactly one mode: ``"exact"`` (FieldElement entries) or
``"numeric"`` (float entries).  Binary operations between different modes
raise ModeError; use ``to_numeric`` for an explicit conversion.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ..errors import ModeError
from .field import ONE, ZERO, FieldElement

EXACT = "exact"
NUMERIC = "numeric"
MODES = (EXACT, NUMERIC)

# relative threshold for rank decisions in numeric mode
NUMERIC_EPS = 1e-9


def coerce_scalar(value, mode: str):
    if mode == EXACT:
        if isinstance(value, float):
            raise ModeError(f"float {value!r} given in exact mode")
        return FieldElement.coerce(value)
    if mode == NUMERIC:
        if isinstance(value, str):
            return float(FieldElement.parse(value))
        return float(value)
    raise ValueError(f"unknown mode {mode!r}")


def infer_mode(values: Iterable) -> str:
    modes = set()
    for v in values:
        if isinstance(v, FieldElement):
            modes.add(EXACT)
        elif isinstance(v, (float, np.floating)):
            modes.add(NUMERIC)
    if len(modes) > 1:
        raise ModeError("exact and numeric entries mixed in one matrix")
    return modes.pop() if modes else EXACT


class Matrix:
    """Immutable row-major matrix."""

    __slots__ = ("rows", "nrows", "ncols", "mode")

    def __init__(self, rows: Sequence[Sequence], mode: str | None = None):
        raw = [list(r) for r in rows]
        if mode is None:
            mode = infer_mode(x for r in raw for x in r)
        self.mode = mode
        self.nrows = len(raw)
        self.ncols = len(raw[0]) if raw else 0
        if any(len(r) != self.ncols for r in raw):
            raise ValueError("ragged rows")
        self.rows = tuple(tuple(coerce_scalar(x, mode) for x in r) for r in raw)

    @classmethod
    def _wrap(cls, rows, mode: str, ncols: int = 0) -> Matrix:
        obj = object.__new__(cls)
        obj.rows = tuple(tuple(r) for r in rows)
        obj.nrows = len(obj.rows)
        obj.ncols = len(obj.rows[0]) if obj.rows else ncols
        obj.mode = mode
        return obj

    @classmethod
    def zeros(cls, nrows: int, ncols: int, mode: str = EXACT) -> Matrix:
        z = ZERO if mode == EXACT else 0.0
        return cls._wrap([[z] * ncols for _ in range(nrows)], mode, ncols)

    @classmethod
    def identity(cls, n: int, mode: str = EXACT) -> Matrix:
        z, o = (ZERO, ONE) if mode == EXACT else (0.0, 1.0)
        return cls._wrap([[o if i == j else z for j in range(n)] for i in range(n)], mode)

    @classmethod
    def column(cls, values: Sequence, mode: str | None = None) -> Matrix:
        return cls([[v] for v in values], mode)

    @classmethod
    def diag(cls, values: Sequence, mode: str | None = None) -> Matrix:
        mode = mode or infer_mode(values)
        z = ZERO if mode == EXACT else 0.0
        n = len(values)
        return cls([[values[i] if i == j else z for j in range(n)] for i in range(n)], mode)

    @classmethod
    def from_numpy(cls, arr) -> Matrix:
        arr = np.asarray(arr, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        return cls._wrap([[float(x) for x in r] for r in arr], NUMERIC)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def zero(self):
        return ZERO if self.mode == EXACT else 0.0

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def entries(self) -> list:
        return [x for r in self.rows for x in r]

    def column_entries(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def _check(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.mode != self.mode:
            raise ModeError(f"cannot combine {self.mode} and {other.mode} matrices")

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(zip(*self.rows), self.mode) if self.rows else self

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._wrap([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.mode)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._wrap([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.mode)

    def __neg__(self) -> Matrix:
        return Matrix._wrap([[-a for a in r] for r in self.rows], self.mode)

    def scale(self, factor) -> Matrix:
        factor = coerce_scalar(factor, self.mode)
        return Matrix._wrap([[factor * a for a in r] for r in self.rows], self.mode)

    def __mul__(self, factor) -> Matrix:
        if isinstance(factor, Matrix):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        z = self.zero
        exact = self.mode == EXACT
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if exact and (a.is_zero() or b.is_zero()):
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix._wrap(out, self.mode)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.mode == other.mode and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.mode, self.rows))

    def is_zero(self) -> bool:
        if self.mode == EXACT:
            return all(x.is_zero() for r in self.rows for x in r)
        return all(x == 0.0 for r in self.rows for x in r)

    def is_symmetric(self, tol: float = NUMERIC_EPS) -> bool:
        if self.nrows != self.ncols:
            return False
        if self.mode == EXACT:
            return self == self.T
        arr = self.to_numpy()
        scale = max(np.abs(arr).max(), 1.0)
        return bool(np.abs(arr - arr.T).max() <= tol * scale)

    def trace(self):
        acc = self.zero
        for i in range(min(self.shape)):
            acc = acc + self.rows[i][i]
        return acc

    def frobenius_sq(self):
        acc = self.zero
        for x in self.entries():
            acc = acc + x * x
        return acc

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.to_numpy()))

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(self.shape)

    def to_numeric(self) -> Matrix:
        if self.mode == NUMERIC:
            return self
        return Matrix._wrap([[float(x) for x in r] for r in self.rows], NUMERIC)

    def map(self, fn) -> Matrix:
        return Matrix(([fn(x) for x in r] for r in self.rows))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._wrap([[self.rows[i][j] for j in cols] for i in rows], self.mode)

    def to_strings(self) -> list[list[str]]:
        if self.mode == EXACT:
            return [[str(x) for x in r] for r in self.rows]
        return [[repr(x) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"Matrix[{self.mode}]({body})"


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ValueError("nothing to stack")
    mode = blocks[0].mode
    for b in blocks:
        if b.mode != mode:
            raise ModeError("cannot stack matrices of different modes")
        if b.ncols != blocks[0].ncols:
            raise ValueError("column count mismatch")
    return Matrix._wrap([r for b in blocks for r in b.rows], mode)


def _is_negligible(x, mode: str, scale: float) -> bool:
    if mode == EXACT:
        return x.is_zero()
    return abs(x) <= NUMERIC_EPS * scale


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Exact mode takes the first nonzero entry in each column as pivot.  Numeric
    mode picks the largest-magnitude candidate and treats an entry as zero when
    it is at most ``NUMERIC_EPS`` times the largest entry of its row, where the
    row's original entries also count (so cancellation leaves no residue).
    """
    rows = [list(r) for r in m.rows]
    mode = m.mode
    exact = mode == EXACT
    nrows, ncols = m.shape
    scales = [0.0] * nrows if exact else [max((abs(x) for x in r), default=0.0) for r in rows]
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        if prow >= nrows:
            break
        best = None
        if exact:
            for i in range(prow, nrows):
                if not rows[i][col].is_zero():
                    best = i
                    break
        else:
            best_val = 0.0
            for i in range(prow, nrows):
                rowmax = max(max((abs(x) for x in rows[i]), default=0.0), scales[i])
                v = abs(rows[i][col])
                if not _is_negligible(v, mode, rowmax) and v > best_val:
                    best, best_val = i, v
            if best is None:
                for i in range(prow, nrows):
                    rows[i][col] = 0.0
        if best is None:
            continue
        rows[prow], rows[best] = rows[best], rows[prow]
        scales[prow], scales[best] = scales[best], scales[prow]
        pv = rows[prow][col]
        if exact:
            inv = pv.inverse()
            rows[prow] = [x * inv if not x.is_zero() else x for x in rows[prow]]
        else:
            rows[prow] = [x / pv for x in rows[prow]]
        prow_vals = rows[prow]
        nz = [j for j in range(col, ncols) if not (prow_vals[j].is_zero() if exact else prow_vals[j] == 0.0)]
        for i in range(nrows):
            if i == prow:
                continue
            f = rows[i][col]
            if exact:
                if f.is_zero():
                    continue
            elif f == 0.0:
                continue
            ri = rows[i]
            for j in nz:
                ri[j] = ri[j] - f * prow_vals[j]
            if not exact:
                ri[col] = 0.0
        pivots.append(col)
        prow += 1
    return Matrix._wrap(rows, mode), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def nullspace(m: Matrix) -> list[Matrix]:
    """Basis of ``{x : m x = 0}``, one column vector per free column, ascending."""
    return nullspace_of_rref(*rref(m))


def nullspace_of_rref(reduced: Matrix, pivots: list[int]) -> list[Matrix]:
    """Nullspace read off an already reduced matrix and its pivot columns."""
    one, zero = (ONE, ZERO) if reduced.mode == EXACT else (1.0, 0.0)
    pivot_set = set(pivots)
    free = [j for j in range(reduced.ncols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [zero] * reduced.ncols
        vec[f] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced.rows[r][f]
        basis.append(Matrix._wrap([[x] for x in vec], reduced.mode))
    return basis


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if n != m.ncols:
        raise ValueError("inverse of non-square matrix")
    aug = Matrix._wrap(
        [list(r) + list(e) for r, e in zip(m.rows, Matrix.identity(n, m.mode).rows)], m.mode
    )
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._wrap([r[n:] for r in reduced.rows], m.mode)


def det(m: Matrix):
    """Determinant by fraction-free bookkeeping of Gaussian elimination."""
    n = m.nrows
    if n != m.ncols:
        raise ValueError("determinant of non-square matrix")
    if m.mode == NUMERIC:
        return float(np.linalg.det(m.to_numpy())) if n else 1.0
    rows = [list(r) for r in m.rows]
    result = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if not rows[i][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            result = -result
        pv = rows[col][col]
        result = result * pv
        inv = pv.inverse()
        for i in range(col + 1, n):
            f = rows[i][col]
            if f.is_zero():
                continue
            f = f * inv
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
    return result


def leading_minors(m: Matrix) -> list:
    return [det(m.submatrix(range(k), range(k))) for k in range(1, m.nrows + 1)]


def same_row_space(a: Matrix, b: Matrix) -> bool:
    """Exact (or tolerance-based, in numeric mode) equality of row spaces."""
    if a.ncols != b.ncols:
        return False
    ra, pa = rref(a)
    rb, pb = rref(b)
    if pa != pb:
        return False
    k = len(pa)
    if a.mode == EXACT:
        return ra.rows[:k] == rb.rows[:k]
    return bool(np.allclose(ra.to_numpy()[:k], rb.to_numpy()[:k], atol=1e-8))
