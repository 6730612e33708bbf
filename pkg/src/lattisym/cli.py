"""``lattisym`` command-line front end."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import catalog, io
from .algebra import EXACT, MODES, NUMERIC, Matrix
from .errors import (
    AsymmetricInput,
    DegenerateGenerators,
    InvalidGenerator,
    LattisymError,
    ModeError,
    NotOrthogonal,
    ParseError,
)
from .lattice import Isometry, Lattice, enumerate_point_group, is_lattice_symmetry
from .patterns import anchors, format_pattern, pattern_names
from .symmetry import (
    AMBIENTS,
    FULL36,
    SYM21,
    ConstrainedSpace,
    classify,
    classify_matrix,
    commutant,
    constrain_by_lattice,
    is_material_symmetry,
    is_positive_definite,
    isotropy_distance,
    material_group_exceeds_lattice_group,
)
from .voigt import induced_transform

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_INVALID_GENERATOR = 4
EXIT_VERIFY = 5

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class RunConfig:
    mode: str | None = None  # None: keep the mode of the input file
    ambient: str = FULL36
    tolerance: float | None = None
    output_format: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.tolerance is not None and self.mode == EXACT:
            raise ParseError("--tol is only meaningful in numeric mode")

    @property
    def tol(self) -> float:
        return DEFAULT_TOL if self.tolerance is None else self.tolerance


class _Output:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.lines: list[str] = []

    def text(self, line: str = "") -> None:
        self.lines.append(line)

    def emit(self, payload: dict) -> None:
        if self.cfg.output_format == "json":
            print(json.dumps(payload, indent=2))
        else:
            print("\n".join(self.lines))


def _fmt_matrix(m: Matrix, indent: str = "  ") -> list[str]:
    cells = m.to_strings() if m.mode == EXACT else [[f"{x: .12g}" for x in r] for r in m.rows]
    width = max((len(c) for r in cells for c in r), default=1)
    return [indent + "  ".join(c.rjust(width) for c in r) for r in cells]


def _fmt_pattern(rows: list[list[str]], indent: str = "  ") -> list[str]:
    width = max(len(c) for r in rows for c in r)
    return [indent + "  ".join(c.rjust(width) for c in r) for r in rows]


def _apply_mode(lat: Lattice, cfg: RunConfig) -> Lattice:
    if cfg.mode is None or cfg.mode == lat.mode:
        return lat
    if cfg.mode == NUMERIC:
        return lat.to_numeric()
    raise ModeError("a numeric lattice file cannot be run in exact mode")


def _load_lattice(path: str, cfg: RunConfig) -> Lattice:
    return _apply_mode(io.load_lattice(path), cfg)


# commands ------------------------------------------------------------------


def cmd_directors(args, cfg: RunConfig) -> int:
    lat = _load_lattice(args.lattice, cfg)
    out = _Output(cfg)
    out.text("generators (rows):")
    out.lines += _fmt_matrix(lat.generators)
    out.text("directors (rows):")
    out.lines += _fmt_matrix(lat.directors)
    out.text("Gram matrix:")
    out.lines += _fmt_matrix(lat.gram)
    out.emit({
        "mode": lat.mode,
        "generators": io.matrix_to_json(lat.generators),
        "directors": io.matrix_to_json(lat.directors),
        "gram": io.matrix_to_json(lat.gram),
    })
    return EXIT_OK


def cmd_point_group(args, cfg: RunConfig) -> int:
    lat = _load_lattice(args.lattice, cfg)
    group = enumerate_point_group(lat)
    out = _Output(cfg)
    out.text(f"order: {group.order}")
    elements = []
    for idx, (iso, m) in enumerate(zip(group.elements, group.integer_matrices), 1):
        out.text(f"element {idx} ({iso.kind}), integer matrix {[list(r) for r in m]}:")
        out.lines += _fmt_matrix(iso.matrix)
        elements.append({"kind": iso.kind, "integer": [list(r) for r in m], "matrix": io.matrix_to_json(iso.matrix)})
    out.emit({"mode": lat.mode, "order": group.order, "elements": elements})
    return EXIT_OK


def _named_generator(lat: Lattice, name: str) -> Isometry:
    try:
        iso = catalog.isometry(name, lat.mode)
    except KeyError:
        raise InvalidGenerator(f"unknown isometry {name!r}; known: {', '.join(catalog.isometry_names())}") from None
    if not is_lattice_symmetry(lat, iso):
        raise InvalidGenerator(f"{name} is not a symmetry of the lattice")
    return iso


def matching_patterns(space: ConstrainedSpace) -> list[str]:
    """Catalog pattern names whose span equals ``space``."""
    found = []
    for name in catalog.PATTERNS:
        ref = catalog.pattern_space(name, space.ambient)
        if ref.dimension != space.dimension:
            continue
        if space.mode != EXACT:
            ref = ref.to_numeric()
        if ref.same_space(space):
            found.append(name)
    return found


def cmd_constrain(args, cfg: RunConfig) -> int:
    lat = _load_lattice(args.lattice, cfg)
    if args.generators:
        gens = [_named_generator(lat, n.strip()) for n in args.generators.split(",") if n.strip()]
        space = commutant(gens, cfg.ambient, lat.mode)
        source = "generators " + ",".join(g.name for g in gens)
    else:
        space = constrain_by_lattice(lat, cfg.ambient)
        source = "full point group"
    cls = classify(space)
    matches = matching_patterns(space)
    out = _Output(cfg)
    out.text(f"constraints from: {source}")
    out.text(f"ambient: {cfg.ambient}")
    out.text(f"dimension: {space.dimension}")
    out.text(f"class: {cls}")
    out.text(f"matches catalog pattern: {', '.join(matches) if matches else 'none'}")
    out.text("pattern:")
    out.lines += _fmt_pattern(space.pattern_strings())
    payload = space.to_json()
    payload.update({"mode": space.mode, "class": str(cls), "matches": matches, "source": source})
    template = catalog.pattern(matches[0]) if matches else None
    if template is not None and space.mode == EXACT and len(anchors(template)) == space.dimension:
        rewritten = space.pattern_like(template)
        names = pattern_names(rewritten)
        text = format_pattern(rewritten, names)
        out.text(f"pattern in {matches[0]} parameters:")
        out.lines += _fmt_pattern(text)
        payload["catalog_pattern"] = {"name": matches[0], "parameters": names, "pattern": text}
    out.emit(payload)
    return EXIT_OK


def cmd_classify(args, cfg: RunConfig) -> int:
    c = io.load_elasticity(args.c_file)
    mat = c.matrix
    if cfg.mode == NUMERIC and mat.mode == EXACT:
        mat = mat.to_numeric()
    elif cfg.mode == EXACT and mat.mode == NUMERIC:
        raise ModeError("a numeric matrix file cannot be run in exact mode")
    symmetries = []
    for name in catalog.isometry_names():
        iso = catalog.isometry(name, mat.mode)
        if is_material_symmetry(mat, iso, cfg.tol):
            symmetries.append(name)
    ambient = SYM21 if c.symmetric else cfg.ambient
    cls = classify_matrix(mat, ambient, cfg.tol)
    pd = is_positive_definite(mat) if c.symmetric else None
    dist = isotropy_distance(mat)
    out = _Output(cfg)
    out.text(f"material symmetries among catalog isometries: {', '.join(symmetries) if symmetries else 'none'}")
    out.text(f"class: {cls}")
    if pd is not None:
        out.text(f"positive definite: {pd}")
    out.text(f"isotropy distance: {dist:.6g}")
    out.emit({
        "mode": mat.mode,
        "symmetries": symmetries,
        "class": str(cls),
        "positive_definite": pd,
        "isotropy_distance": dist,
    })
    return EXIT_OK


def _resolve_isometry(ref: str, cfg: RunConfig) -> Isometry:
    mode = cfg.mode or EXACT
    if ref in catalog.isometry_names():
        return catalog.isometry(ref, mode)
    if Path(ref).exists():
        iso = io.load_isometry(ref)
        if cfg.mode == NUMERIC and iso.mode == EXACT:
            iso = iso.to_numeric()
        return iso
    raise ParseError(f"{ref!r} is neither a catalog isometry nor a readable file")


def cmd_hat(args, cfg: RunConfig) -> int:
    iso = _resolve_isometry(args.isometry, cfg)
    hat = induced_transform(iso)
    out = _Output(cfg)
    out.text(f"isometry {iso.name or args.isometry} ({iso.kind}):")
    out.lines += _fmt_matrix(iso.matrix)
    out.text("induced 6x6 transform:")
    out.lines += _fmt_matrix(hat)
    out.emit({
        "name": iso.name or args.isometry,
        "mode": hat.mode,
        "kind": iso.kind,
        "isometry": io.matrix_to_json(iso.matrix),
        "hat": io.matrix_to_json(hat),
    })
    return EXIT_OK


def cmd_catalog(args, cfg: RunConfig) -> int:
    if args.export:
        try:
            lat = catalog.lattice(args.export, cfg.mode or EXACT)
        except KeyError:
            raise ParseError(f"unknown catalog lattice {args.export!r}") from None
        print(json.dumps(io.lattice_to_json(lat), indent=2))
        return EXIT_OK
    out = _Output(cfg)
    out.text("lattices:")
    cases = []
    for case in catalog.list_cases():
        dim = case.expected_dimension[cfg.ambient]
        out.text(f"  {case.name:18s} {str(case.expected_class):26s} dim {dim:2d}  order {case.expected_order:2d}  ({case.citation})")
        cases.append({
            "name": case.name,
            "generators": [[str(x) for x in r] for r in case.generators],
            "expected_class": str(case.expected_class),
            "expected_dimension": dim,
            "expected_order": case.expected_order,
            "citation": case.citation,
        })
    out.text("isometries:")
    for name in catalog.isometry_names():
        out.text(f"  {name:8s} {catalog.ISOMETRY_NOTES.get(name, '')}")
    out.text("patterns:")
    for name in catalog.PATTERNS:
        out.text(f"  {name}")
    out.emit({
        "ambient": cfg.ambient,
        "lattices": cases,
        "isometries": {n: catalog.ISOMETRY_NOTES.get(n, "") for n in catalog.isometry_names()},
        "patterns": list(catalog.PATTERNS),
    })
    return EXIT_OK


# reproduction report ---------------------------------------------------------


@dataclass
class CheckRow:
    check: str
    citation: str
    expected: str
    computed: str
    passed: bool

    def __post_init__(self):
        self.passed = bool(self.passed)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _random_rotation(rng: np.random.Generator) -> Isometry:
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return Isometry(Matrix(q.tolist(), NUMERIC), "random rotation")


def reproduction_rows(ambient: str = FULL36, seed: int = 0, probes: int = 20) -> list[CheckRow]:
    rows: list[CheckRow] = []
    for res in catalog.verify_all(ambient, EXACT):
        rows.append(CheckRow(
            f"lattice {res.name}",
            res.citation,
            f"{res.expected_class}, dim {res.expected_dimension}, order {res.expected_order}",
            f"{res.computed_class}, dim {res.computed_dimension}, order {res.order}",
            res.passed,
        ))

    for name in catalog.REFERENCE_TRANSFORMS:
        ok = induced_transform(catalog.isometry(name)) == catalog.reference_transform(name)
        rows.append(CheckRow(f"induced transform of {name}", "reference 6x6 transform", "entrywise equal",
                             "entrywise equal" if ok else "differs", ok))

    fcc = catalog.lattice("fcc-rhomboidal")
    r12 = [catalog.isometry("R1"), catalog.isometry("R2")]
    eight = commutant(r12, ambient, EXACT)
    ref8 = catalog.pattern_space("C_8param", ambient)
    ok8 = eight.same_space(ref8)
    rows.append(CheckRow("fcc chain: commutant of R1, R2", "R1, R2 commutant", f"dim {ref8.dimension}, equals C_8param",
                         f"dim {eight.dimension}" + (", equals C_8param" if ok8 else ""), ok8))
    two = commutant(r12 + [catalog.isometry("Q_sum")], ambient, EXACT)
    ok2 = two.dimension == 2 and two.same_space(catalog.pattern_space("C_iso", ambient))
    rows.append(CheckRow("fcc chain: add Q_sum", "R1, R2, Q_sum commutant", "dim 2, equals C_iso",
                         f"dim {two.dimension}" + (", equals C_iso" if ok2 else ""), ok2))

    for name in ("R1", "R2", "Q_sum", "Q_cyc"):
        ok = is_lattice_symmetry(fcc, catalog.isometry(name))
        rows.append(CheckRow(f"{name} maps the fcc lattice onto itself", "fcc point group", "true",
                             str(ok).lower(), ok))

    hexa = catalog.lattice("hexagonal-prism")
    hex_space = constrain_by_lattice(hexa, ambient)
    trans = catalog.pattern_space("C_trans", ambient)
    ok = trans.same_space(hex_space)
    rows.append(CheckRow("hexagonal space equals C_trans", "hexagonal lattice space",
                         f"dim {trans.dimension}", f"dim {hex_space.dimension}", ok))

    theta = catalog.q_theta(1.0)
    found = material_group_exceeds_lattice_group(hexa, [theta], ambient)
    rows.append(CheckRow("witness Q_theta(1.0) for hexagonal-prism", "isometries beyond the lattice group",
                         "returned", "returned" if found else "not returned", bool(found)))
    q3 = catalog.isometry("Q_pi3")
    found = material_group_exceeds_lattice_group(fcc, [q3], ambient)
    rows.append(CheckRow("witness Q_pi3 for fcc-rhomboidal", "isometries beyond the lattice group",
                         "returned", "returned" if found else "not returned", bool(found)))

    rng = np.random.default_rng(seed)
    iso = catalog.pattern_space("C_iso", ambient).to_numeric()
    worst = 0.0
    for _ in range(probes):
        rot = _random_rotation(rng)
        for s in (rot, -rot):
            hat = induced_transform(s).to_numpy()
            for b in iso.basis:
                c = b.to_numpy()
                worst = max(worst, np.linalg.norm(c @ hat - hat @ c) / np.linalg.norm(c))
    rows.append(CheckRow(f"C_iso commutes with {2 * probes} random isometries", "isotropic invariance",
                         "rel. residual <= 1e-12", f"max {worst:.1e}", worst <= 1e-12))
    return rows


def cmd_verify_paper(args, cfg: RunConfig) -> int:
    rows = reproduction_rows(cfg.ambient, cfg.seed)
    passed = all(r.passed for r in rows)
    out = _Output(cfg)
    w = max(len(r.check) for r in rows)
    we = max(len(r.expected) for r in rows)
    wc = max(len(r.computed) for r in rows)
    out.text(f"{'check':{w}s}  {'expected':{we}s}  {'computed':{wc}s}  verdict  reference")
    for r in rows:
        out.text(f"{r.check:{w}s}  {r.expected:{we}s}  {r.computed:{wc}s}  {'PASS' if r.passed else 'FAIL':7s}  {r.citation}")
    nfail = sum(not r.passed for r in rows)
    out.text(f"{len(rows) - nfail}/{len(rows)} checks passed")
    out.emit({"ambient": cfg.ambient, "passed": passed, "rows": [r.to_json() for r in rows]})
    return EXIT_OK if passed else EXIT_VERIFY


# argument parsing --------------------------------------------------------------


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--mode", choices=MODES, default=d(None))
    parser.add_argument("--ambient", choices=AMBIENTS, default=d(FULL36))
    parser.add_argument("--tol", type=float, default=d(None), help="numeric tolerance (numeric mode only)")
    parser.add_argument("--format", dest="output_format", choices=("text", "json"), default=d("text"))
    parser.add_argument("--seed", type=int, default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lattisym", description="Elastic symmetry classes from lattice symmetries.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("directors", parents=[common], help="generators, directors and Gram matrix")
    p.add_argument("lattice")
    p.set_defaults(func=cmd_directors)

    p = sub.add_parser("point-group", parents=[common], help="enumerate the lattice point group")
    p.add_argument("lattice")
    p.set_defaults(func=cmd_point_group)

    p = sub.add_parser("constrain", parents=[common], help="elasticity space compatible with the lattice")
    p.add_argument("lattice")
    p.add_argument("--generators", help="comma-separated catalog isometries, e.g. R1,R2")
    p.set_defaults(func=cmd_constrain)

    p = sub.add_parser("classify", parents=[common], help="symmetries and class of an elasticity matrix")
    p.add_argument("c_file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("hat", parents=[common], help="induced 6x6 transform of an isometry")
    p.add_argument("isometry", help="catalog name or isometry JSON file")
    p.set_defaults(func=cmd_hat)

    p = sub.add_parser("catalog", parents=[common], help="list built-in lattices, isometries and patterns")
    p.add_argument("--export", metavar="NAME", help="print a catalog lattice as lattice JSON")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-paper", parents=[common], help="run the reproduction checks")
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.mode, args.ambient, args.tol, args.output_format, args.seed)
        return args.func(args, cfg)
    except DegenerateGenerators as exc:
        print(f"error: degenerate generators: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except InvalidGenerator as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_GENERATOR
    except (ParseError, ModeError, AsymmetricInput, NotOrthogonal, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LattisymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
