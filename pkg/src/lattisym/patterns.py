"""Linear-expression patterns for 6x6 elasticity matrices.

A pattern entry is a homogeneous linear form in named parameters with
coefficients in Q(sqrt2, sqrt3) (or floats), written like ``"p1 - p2"``,
``"sqrt2*C41"`` or ``"(1/2 + 1/2*sqrt3)*p3"``.
"""

from __future__ import annotations

import re
from typing import Mapping, Sequence

from .algebra import EXACT, FieldElement, Matrix
from .errors import ParseError

LinearForm = dict  # name -> coefficient, zero coefficients omitted

_NAME = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)$")


def _format_coef(c) -> str:
    if isinstance(c, FieldElement):
        text = str(c)
        return f"({text})" if sum(1 for x in c.coefficients if x != 0) > 1 else text
    return f"{c:.12g}"


def format_form(form: Mapping, order: Sequence[str]) -> str:
    parts = []
    for name in order:
        c = form.get(name)
        if c is None or c == 0:
            continue
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"{_format_coef(c)}*{name}")
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _split_top_level(src: str) -> list[str]:
    terms, depth, start = [], 0, 0
    for i, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > start:
            prev = src[i - 1]
            if prev not in "*/(":
                terms.append(src[start:i])
                start = i
    terms.append(src[start:])
    return [t for t in terms if t]


def parse_form(text: str) -> LinearForm:
    """Parse a linear expression into ``{name: FieldElement}``."""
    src = text.replace(" ", "")
    if src in ("", "0"):
        return {}
    form: LinearForm = {}
    for term in _split_top_level(src):
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        m = _NAME.search(term)
        if not m or re.fullmatch(r"sqrt\d+", m.group(1)):
            raise ParseError(f"term {term!r} in {text!r} has no parameter")
        name = m.group(1)
        coef_text = term[: m.start()]
        if coef_text.endswith("*"):
            coef_text = coef_text[:-1]
        if coef_text.startswith("(") and coef_text.endswith(")"):
            coef_text = coef_text[1:-1]
        coef = FieldElement.parse(coef_text) if coef_text else FieldElement(1)
        form[name] = form.get(name, FieldElement(0)) + sign * coef
    return {k: v for k, v in form.items() if not v.is_zero()}


def pattern_from_strings(rows: Sequence[Sequence[str]]) -> list[list[LinearForm]]:
    return [[parse_form(x) for x in r] for r in rows]


def pattern_names(pattern: Sequence[Sequence[Mapping]]) -> list[str]:
    """Parameter names in order of first appearance (row-major)."""
    names: list[str] = []
    for row in pattern:
        for form in row:
            for n in form:
                if n not in names:
                    names.append(n)
    return names


def pattern_basis(pattern: Sequence[Sequence[Mapping]], names: Sequence[str] | None = None) -> list[Matrix]:
    """One exact 6x6 matrix per parameter (that parameter 1, the others 0)."""
    names = list(names or pattern_names(pattern))
    zero = FieldElement(0)
    return [Matrix([[form.get(n, zero) for form in row] for row in pattern], EXACT) for n in names]


def pattern_from_basis(basis: Sequence[Matrix], names: Sequence[str]) -> list[list[LinearForm]]:
    if not basis:
        return [[{} for _ in range(6)] for _ in range(6)]
    nrows, ncols = basis[0].shape
    out = []
    for a in range(nrows):
        row = []
        for b in range(ncols):
            form = {}
            for name, mat in zip(names, basis):
                c = mat[a, b]
                if c != 0:
                    form[name] = c
            row.append(form)
        out.append(row)
    return out


def format_pattern(pattern: Sequence[Sequence[Mapping]], order: Sequence[str]) -> list[list[str]]:
    return [[format_form(f, order) for f in row] for row in pattern]


def anchors(pattern: Sequence[Sequence[Mapping]]) -> dict[str, tuple[int, int]]:
    """First position (row-major) where each parameter appears alone with coefficient 1."""
    found: dict[str, tuple[int, int]] = {}
    for a, row in enumerate(pattern):
        for b, form in enumerate(row):
            if len(form) == 1:
                (name, c), = form.items()
                if c == 1 and name not in found:
                    found[name] = (a, b)
    return found
