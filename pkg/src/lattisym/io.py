"""JSON readers and writers for lattices, elasticity matrices and isometries.

Exact values use the field-element text grammar (``"1/2*sqrt3"``), numeric
values are plain JSON numbers.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import EXACT, MODES, NUMERIC, Matrix
from .errors import ModeError, ParseError
from .lattice import Isometry, Lattice
from .voigt import ElasticityMatrix


def _read(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top-level JSON object expected")
    return data


def _matrix(rows, shape: tuple[int, int], mode: str, what: str) -> Matrix:
    if not isinstance(rows, list) or len(rows) != shape[0] or any(
        not isinstance(r, list) or len(r) != shape[1] for r in rows
    ):
        raise ParseError(f"{what}: expected a {shape[0]}x{shape[1]} array")
    try:
        if mode == EXACT:
            if any(isinstance(x, float) for r in rows for x in r):
                raise ParseError(f"{what}: exact mode needs strings or integers, not floats")
            return Matrix([[str(x) for x in r] for r in rows], EXACT)
        return Matrix(rows, NUMERIC)
    except (ValueError, TypeError, ZeroDivisionError, ModeError) as exc:
        raise ParseError(f"{what}: {exc}") from exc


def _mode(data: dict, what: str) -> str:
    mode = data.get("mode", EXACT)
    if mode not in MODES:
        raise ParseError(f"{what}: mode must be one of {MODES}")
    return mode


def lattice_from_json(data: dict) -> Lattice:
    mode = _mode(data, "lattice")
    if "generators" not in data:
        raise ParseError("lattice: missing 'generators'")
    gens = _matrix(data["generators"], (3, 3), mode, "lattice generators")
    return Lattice(gens)


def load_lattice(path) -> Lattice:
    return lattice_from_json(_read(path))


def lattice_to_json(lat: Lattice) -> dict:
    return {"mode": lat.mode, "generators": _entries(lat.generators)}


def elasticity_from_json(data: dict) -> ElasticityMatrix:
    mode = _mode(data, "elasticity matrix")
    if "entries" not in data:
        raise ParseError("elasticity matrix: missing 'entries'")
    mat = _matrix(data["entries"], (6, 6), mode, "elasticity entries")
    return ElasticityMatrix(mat, bool(data.get("symmetric", False)))


def load_elasticity(path) -> ElasticityMatrix:
    return elasticity_from_json(_read(path))


def elasticity_to_json(c: ElasticityMatrix) -> dict:
    return {"mode": c.mode, "symmetric": c.symmetric, "entries": _entries(c.matrix)}


def isometry_from_json(data: dict) -> Isometry:
    mode = _mode(data, "isometry")
    if "matrix" not in data:
        raise ParseError("isometry: missing 'matrix'")
    return Isometry(_matrix(data["matrix"], (3, 3), mode, "isometry matrix"), data.get("name", ""))


def load_isometry(path) -> Isometry:
    return isometry_from_json(_read(path))


def _entries(m: Matrix) -> list:
    if m.mode == EXACT:
        return m.to_strings()
    return [[float(x) for x in r] for r in m.rows]


def matrix_to_json(m: Matrix) -> list:
    return _entries(m)
