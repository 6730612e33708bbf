"""Named lattices, isometries and elasticity patterns used as presets and regression cases."""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import EXACT, FieldElement, Matrix, rref
from .lattice import Isometry, Lattice, enumerate_point_group
from .patterns import pattern_basis, pattern_from_strings, pattern_names
from .symmetry import (
    AMBIENTS,
    FULL36,
    SYM21,
    ConstrainedSpace,
    SymmetryClass,
    classify,
    constrain_by_lattice,
    flatten,
    unflatten,
)

GENERATORS = {
    "simple-cubic": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "tetragonal-prism": [[1, 0, 0], [0, 1, 0], [0, 0, 2]],
    "orthorhombic": [[1, 0, 0], [0, "3/2", 0], [0, 0, 2]],
    # oblique base (|a2| != |a1|, a1.a2 != |a1|^2/2) under an orthogonal a3
    "monoclinic-prism": [[1, 0, 0], ["1/3", "3/2", 0], [0, 0, 2]],
    "hexagonal-prism": [[1, 0, 0], ["1/2", "1/2*sqrt3", 0], [0, 0, 1]],
    "fcc-rhomboidal": [[1, 0, 0], ["1/2", "1/2*sqrt3", 0], ["1/2", "1/6*sqrt3", "1/3*sqrt6"]],
}

ISOMETRY_ROWS = {
    "I": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "-I": [[-1, 0, 0], [0, -1, 0], [0, 0, -1]],
    "Q_pi": [[-1, 0, 0], [0, -1, 0], [0, 0, 1]],
    "Q_pi2": [[0, -1, 0], [1, 0, 0], [0, 0, 1]],
    "Q_pi3": [["1/2", "-1/2*sqrt3", 0], ["1/2*sqrt3", "1/2", 0], [0, 0, 1]],
    "R1": [[-1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "R2": [["1/2", "-1/2*sqrt3", 0], ["-1/2*sqrt3", "-1/2", 0], [0, 0, 1]],
    "Q_sum": [
        ["1/4", "1/2 + 1/4*sqrt3", "1/4*sqrt2 - 1/4*sqrt6"],
        ["-1/2 + 1/4*sqrt3", "-1/4", "-1/4*sqrt2 - 1/4*sqrt6"],
        ["-1/4*sqrt2 - 1/4*sqrt6", "-1/4*sqrt2 + 1/4*sqrt6", "0"],
    ],
}

ISOMETRY_NOTES = {
    "I": "identity",
    "-I": "central inversion",
    "Q_pi": "rotation by pi about l3",
    "Q_pi2": "rotation by pi/2 about l3",
    "Q_pi3": "rotation by pi/3 about l3",
    "R1": "reflection sending a1 to -a1 (fcc directors)",
    "R2": "reflection sending a2 to -a2 (fcc directors)",
    "Q_sum": "preset 3-fold rotation for the fcc cell (axis along a1 + a2 - a3)",
    "Q_cyc": "rotation by 2pi/3 about a1 + a2 + a3 permuting a1 -> a2 -> a3 -> a1",
}

# reference 6x6 transforms, entry for entry; Q_sum is scaled by 1/16
REFERENCE_TRANSFORMS = {
    "Q_pi": [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
             [0, 0, 0, -1, 0, 0], [0, 0, 0, 0, -1, 0], [0, 0, 0, 0, 0, 1]],
    "Q_pi2": [[0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
              [0, 0, 0, 0, 1, 0], [0, 0, 0, -1, 0, 0], [0, 0, 0, 0, 0, -1]],
    "Q_pi3": [
        ["1/4", "3/4", 0, 0, 0, "-1/4*sqrt6"],
        ["3/4", "1/4", 0, 0, 0, "1/4*sqrt6"],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, "1/2", "1/2*sqrt3", 0],
        [0, 0, 0, "-1/2*sqrt3", "1/2", 0],
        ["1/4*sqrt6", "-1/4*sqrt6", 0, 0, 0, "-1/2"],
    ],
    "Q_sum": [
        ["1", "7 + 4*sqrt3", "8 - 4*sqrt3", "-2 - 2*sqrt3", "2 - 2*sqrt3", "2*sqrt2 + sqrt6"],
        ["7 - 4*sqrt3", "1", "8 + 4*sqrt3", "2 + 2*sqrt3", "-2 + 2*sqrt3", "2*sqrt2 - sqrt6"],
        ["8 + 4*sqrt3", "8 - 4*sqrt3", "0", "0", "0", "-4*sqrt2"],
        ["-2 + 2*sqrt3", "2 - 2*sqrt3", "0", "-4", "8 + 4*sqrt3", "6*sqrt2 - 2*sqrt6"],
        ["-2 - 2*sqrt3", "2 + 2*sqrt3", "0", "-8 + 4*sqrt3", "4", "-6*sqrt2 - 2*sqrt6"],
        ["-2*sqrt2 + sqrt6", "-2*sqrt2 - sqrt6", "4*sqrt2", "-6*sqrt2 - 2*sqrt6", "-6*sqrt2 + 2*sqrt6", "-2"],
    ],
}
REFERENCE_SCALE = {"Q_sum": 16}

PATTERNS = {
    "C_cubic": [
        ["a", "b", "b", "0", "0", "0"],
        ["b", "a", "b", "0", "0", "0"],
        ["b", "b", "a", "0", "0", "0"],
        ["0", "0", "0", "c", "0", "0"],
        ["0", "0", "0", "0", "c", "0"],
        ["0", "0", "0", "0", "0", "c"],
    ],
    "C_trans": [
        ["a", "a - b", "d", "0", "0", "0"],
        ["a - b", "a", "d", "0", "0", "0"],
        ["d'", "d'", "c", "0", "0", "0"],
        ["0", "0", "0", "e", "0", "0"],
        ["0", "0", "0", "0", "e", "0"],
        ["0", "0", "0", "0", "0", "b"],
    ],
    "C_8param": [
        ["C11", "C11 - C66", "C13", "C14", "0", "0"],
        ["C11 - C66", "C11", "C13", "-C14", "0", "0"],
        ["C31", "C31", "C33", "0", "0", "0"],
        ["C41", "-C41", "0", "C44", "0", "0"],
        ["0", "0", "0", "0", "C44", "sqrt2*C41"],
        ["0", "0", "0", "0", "sqrt2*C14", "C66"],
    ],
    "C_iso": [
        ["a", "a - b", "a - b", "0", "0", "0"],
        ["a - b", "a", "a - b", "0", "0", "0"],
        ["a - b", "a - b", "a", "0", "0", "0"],
        ["0", "0", "0", "b", "0", "0"],
        ["0", "0", "0", "0", "b", "0"],
        ["0", "0", "0", "0", "0", "b"],
    ],
}


def lattice(name: str, mode: str = EXACT) -> Lattice:
    lat = Lattice.from_vectors(GENERATORS[name], EXACT)
    return lat if mode == EXACT else lat.to_numeric()


def isometry(name: str, mode: str = EXACT) -> Isometry:
    if name == "Q_cyc":
        iso = q_cyc()
    else:
        iso = Isometry(Matrix(ISOMETRY_ROWS[name], EXACT), name)
    iso.require_orthogonal()
    return iso if mode == EXACT else iso.to_numeric()


def isometry_names() -> list[str]:
    return list(ISOMETRY_ROWS) + ["Q_cyc"]


def q_cyc() -> Isometry:
    """Cyclic permutation a1 -> a2 -> a3 -> a1 of the fcc generators."""
    perm = Matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]], EXACT)
    return lattice("fcc-rhomboidal").isometry_from_integer(perm, "Q_cyc")


def q_theta(theta: float, axis: int = 3) -> Isometry:
    """Numeric rotation by ``theta`` radians about a director."""
    from .symmetry import rotation_about

    return rotation_about(axis, math.cos(theta), math.sin(theta), name=f"Q_theta({theta:g})")


def reference_transform(name: str) -> Matrix:
    m = Matrix(REFERENCE_TRANSFORMS[name], EXACT)
    scale = REFERENCE_SCALE.get(name)
    return m.scale(FieldElement(Fraction(1, scale))) if scale else m


def pattern(name: str):
    return pattern_from_strings(PATTERNS[name])


def pattern_space(name: str, ambient: str = FULL36) -> ConstrainedSpace:
    """Span of a named pattern, as an exact space (d and d' merge in sym21)."""
    pat = pattern(name)
    basis = pattern_basis(pat, pattern_names(pat))
    if ambient == SYM21:
        basis = [_symmetrize(b) for b in basis]
    rows = Matrix([flatten(b, ambient) for b in basis], EXACT)
    reduced, piv = rref(rows)
    canon = tuple(unflatten(list(reduced.rows[i]), ambient, EXACT) for i in range(len(piv)))
    return ConstrainedSpace(ambient, EXACT, canon, tuple(piv))


def _symmetrize(m: Matrix) -> Matrix:
    return (m + m.T).scale(FieldElement(Fraction(1, 2)))


@dataclass(frozen=True)
class NamedCase:
    name: str
    generators: list
    expected_class: SymmetryClass
    expected_dimension: dict
    expected_order: int
    citation: str
    expected_directors: list = field(default_factory=lambda: [[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    def lattice(self, mode: str = EXACT) -> Lattice:
        return lattice(self.name, mode)


CASES = (
    NamedCase("simple-cubic", GENERATORS["simple-cubic"], SymmetryClass("Cubic"),
              {FULL36: 3, SYM21: 3}, 48, "simple cubic lattice"),
    NamedCase("tetragonal-prism", GENERATORS["tetragonal-prism"], SymmetryClass("Tetragonal", 3),
              {FULL36: 7, SYM21: 6}, 16, "square-base prism"),
    NamedCase("orthorhombic", GENERATORS["orthorhombic"], SymmetryClass("Orthotropic"),
              {FULL36: 12, SYM21: 9}, 8, "rectangular box"),
    NamedCase("monoclinic-prism", GENERATORS["monoclinic-prism"], SymmetryClass("Monoclinic", 3),
              {FULL36: 20, SYM21: 13}, 4, "oblique-base prism"),
    NamedCase("hexagonal-prism", GENERATORS["hexagonal-prism"], SymmetryClass("TransverselyIsotropic", 3),
              {FULL36: 6, SYM21: 5}, 24, "stacked hexagonal layers"),
    NamedCase("fcc-rhomboidal", GENERATORS["fcc-rhomboidal"], SymmetryClass("Isotropic"),
              {FULL36: 2, SYM21: 2}, 48, "rhomboidal fcc cell"),
)


def list_cases() -> tuple[NamedCase, ...]:
    return CASES


def get_case(name: str) -> NamedCase:
    for case in CASES:
        if case.name == name:
            return case
    raise KeyError(name)


@dataclass
class CaseResult:
    name: str
    ambient: str
    expected_class: str
    expected_dimension: int
    computed_class: str
    computed_dimension: int
    order: int
    expected_order: int
    pattern: list
    citation: str

    @property
    def passed(self) -> bool:
        return (
            self.expected_class == self.computed_class
            and self.expected_dimension == self.computed_dimension
            and self.order == self.expected_order
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ambient": self.ambient,
            "passed": self.passed,
            "expected": {"class": self.expected_class, "dimension": self.expected_dimension, "order": self.expected_order},
            "computed": {"class": self.computed_class, "dimension": self.computed_dimension, "order": self.order},
            "pattern": self.pattern,
            "citation": self.citation,
        }


@lru_cache(maxsize=None)
def _run_case(name: str, ambient: str, mode: str) -> CaseResult:
    case = get_case(name)
    lat = case.lattice(mode)
    order = enumerate_point_group(lat).order
    space = constrain_by_lattice(lat, ambient)
    cls = classify(space)
    return CaseResult(
        name=case.name,
        ambient=ambient,
        expected_class=str(case.expected_class),
        expected_dimension=case.expected_dimension[ambient],
        computed_class=str(cls),
        computed_dimension=space.dimension,
        order=order,
        expected_order=case.expected_order,
        pattern=space.pattern_strings(),
        citation=case.citation,
    )


def verify_all(ambient: str = FULL36, mode: str = EXACT) -> list[CaseResult]:
    """Run every named case through point-group enumeration, constraint solving and classification."""
    if ambient not in AMBIENTS:
        raise ValueError(ambient)
    return [_run_case(c.name, ambient, mode) for c in CASES]
