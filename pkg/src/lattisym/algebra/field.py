"""Exact arithmetic in the biquadratic field Q(sqrt2, sqrt3).

Elements are stored as four integer numerators over one positive common
denominator, which keeps multiplication to plain integer work plus a single
gcd.  The public coefficients ``p, q, r, s`` are exposed as ``Fraction``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Union

import mpmath

from ..errors import NormOutsideField, ParseError

Coercible = Union["FieldElement", int, Fraction, str]

RADICANDS = (1, 2, 3, 6)
_SQRT_FLOATS = (1.0, math.sqrt(2.0), math.sqrt(3.0), math.sqrt(6.0))


def _reduce(nums: tuple[int, int, int, int], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den == 1:
        return tuple(nums), 1
    a, b, c, d = nums
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    g = math.gcd(a, b, c, d, den)
    if g != 1:
        return (a // g, b // g, c // g, d // g), den // g
    return (a, b, c, d), den


class FieldElement:
    """Immutable value ``p + q*sqrt2 + r*sqrt3 + s*sqrt6`` with rational p, q, r, s."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, p=0, q=0, r=0, s=0):
        coeffs = [Fraction(c) for c in (p, q, r, s)]
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (c.denominator for c in coeffs), 1)
        nums = tuple(c.numerator * (den // c.denominator) for c in coeffs)
        self._n, self._d = _reduce(nums, den)
        self._hash = None

    @classmethod
    def _raw(cls, nums, den) -> FieldElement:
        obj = object.__new__(cls)
        obj._n, obj._d = _reduce(tuple(nums), den)
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value: Coercible) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to FieldElement")

    # coefficient access -------------------------------------------------------

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._d) for n in self._n)

    @property
    def p(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def q(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def r(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def s(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        return not (self._n[1] or self._n[2] or self._n[3])

    def is_integer(self) -> bool:
        return self.is_rational() and self._d == 1

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Rational)):
                other = FieldElement(other)
            else:
                return NotImplemented
        a, b = self._n, other._n
        da, db = self._d, other._d
        if da == db:
            return FieldElement._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]), da)
        return FieldElement._raw(
            (a[0] * db + b[0] * da, a[1] * db + b[1] * da, a[2] * db + b[2] * da, a[3] * db + b[3] * da),
            da * db,
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        obj = object.__new__(FieldElement)
        obj._n = tuple(-n for n in self._n)
        obj._d = self._d
        obj._hash = None
        return obj

    def __pos__(self) -> FieldElement:
        return self

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Rational)):
                other = FieldElement(other)
            else:
                return NotImplemented
        a, b = self._n, other._n
        da, db = self._d, other._d
        if da == db:
            return FieldElement._raw((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]), da)
        return FieldElement._raw(
            (a[0] * db - b[0] * da, a[1] * db - b[1] * da, a[2] * db - b[2] * da, a[3] * db - b[3] * da),
            da * db,
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return FieldElement._raw(tuple(n * other for n in self._n), self._d)
            if isinstance(other, Rational):
                other = FieldElement(other)
            else:
                return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = other._n
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2
        return FieldElement._raw(
            (
                a0 * b0 + 2 * a1 * b1 + 3 * a2 * b2 + 6 * a3 * b3,
                a0 * b1 + a1 * b0 + 3 * (a2 * b3 + a3 * b2),
                a0 * b2 + a2 * b0 + 2 * (a1 * b3 + a3 * b1),
                a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
            ),
            self._d * other._d,
        )

    __rmul__ = __mul__

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Rational 4x4 matrix of ``x -> self * x`` on the basis (1, sqrt2, sqrt3, sqrt6)."""
        cols = [(self * FieldElement._unit(j)).coefficients for j in range(4)]
        return [[cols[j][i] for j in range(4)] for i in range(4)]

    @staticmethod
    def _unit(j: int) -> FieldElement:
        nums = [0, 0, 0, 0]
        nums[j] = 1
        return FieldElement._raw(nums, 1)

    def inverse(self) -> FieldElement:
        """Multiplicative inverse, found by solving ``self * x = 1`` as a 4x4 rational system."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        if self.is_rational():
            return FieldElement._raw((self._d, 0, 0, 0), self._n[0])
        aug = [row + [Fraction(int(i == 0))] for i, row in enumerate(self.multiplication_matrix())]
        for col in range(4):
            piv = next(r for r in range(col, 4) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(4):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        return FieldElement(*(aug[i][4] for i in range(4)))

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return FieldElement._raw(self._n, self._d * other)
        if isinstance(other, Rational):
            other = FieldElement(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldElement.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self, sign2: int, sign3: int) -> FieldElement:
        """Image under the automorphism sqrt2 -> sign2*sqrt2, sqrt3 -> sign3*sqrt3."""
        n = self._n
        return FieldElement._raw((n[0], sign2 * n[1], sign3 * n[2], sign2 * sign3 * n[3]), self._d)

    # comparison ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self._d == other._d and self._n == other._n
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._n[0], self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.p) if self.is_rational() else hash((self._n, self._d))
        return self._hash

    def sign(self) -> int:
        """Exact sign, decided by refining integer bounds on the square roots."""
        if self.is_zero():
            return 0
        n0, n1, n2, n3 = self._n
        if not (n1 or n2 or n3):
            return 1 if n0 > 0 else -1
        bits = 64
        while True:
            lo = hi = n0 << bits
            for coef, rad in ((n1, 2), (n2, 3), (n3, 6)):
                if not coef:
                    continue
                root_lo = math.isqrt(rad << (2 * bits))
                root_hi = root_lo + 1
                if coef > 0:
                    lo += coef * root_lo
                    hi += coef * root_hi
                else:
                    lo += coef * root_hi
                    hi += coef * root_lo
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def __lt__(self, other) -> bool:
        return (self - FieldElement.coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - FieldElement.coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - FieldElement.coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - FieldElement.coerce(other)).sign() >= 0

    def __abs__(self) -> FieldElement:
        return -self if self.sign() < 0 else self

    def __bool__(self) -> bool:
        return not self.is_zero()

    # conversion ---------------------------------------------------------------

    def __float__(self) -> float:
        if self.is_rational():
            return self._n[0] / self._d
        return float(self.to_mpf())

    def to_mpf(self, dps: int = 40):
        with mpmath.workdps(dps):
            total = mpmath.mpf(0)
            for n, rad in zip(self._n, RADICANDS):
                if n:
                    total += n * mpmath.sqrt(rad)
            return total / self._d

    def sqrt(self) -> FieldElement:
        """Nonnegative square root inside the field.

        Raises NormOutsideField when no element of Q(sqrt2, sqrt3) squares to
        ``self``.
        """
        sgn = self.sign()
        if sgn < 0:
            raise NormOutsideField(f"negative radicand {self}")
        if sgn == 0:
            return ZERO
        if self.is_rational():
            for rad, unit in zip(RADICANDS, range(4)):
                val = self.p / rad
                num, den = math.isqrt(val.numerator), math.isqrt(val.denominator)
                if num * num == val.numerator and den * den == val.denominator:
                    coeffs = [0, 0, 0, 0]
                    coeffs[unit] = Fraction(num, den)
                    return FieldElement(*coeffs)
            raise NormOutsideField(f"sqrt({self}) is not in Q(sqrt2, sqrt3)")
        # every conjugate of a square is a square of a conjugate
        with mpmath.workdps(80):
            conj_roots = {}
            for s2 in (1, -1):
                for s3 in (1, -1):
                    c = self.conjugate(s2, s3)
                    if c.sign() < 0:
                        raise NormOutsideField(f"sqrt({self}) is not real in every embedding")
                    conj_roots[(s2, s3)] = mpmath.sqrt(c.to_mpf(80))
            for e2 in (1, -1):
                for e3 in (1, -1):
                    for e6 in (1, -1):
                        signs = {(1, 1): 1, (-1, 1): e2, (1, -1): e3, (-1, -1): e6}
                        coeffs = []
                        for j, rad in enumerate(RADICANDS):
                            acc = mpmath.mpf(0)
                            for (s2, s3), root in conj_roots.items():
                                basis_sign = (1, s2, s3, s2 * s3)[j]
                                acc += signs[(s2, s3)] * basis_sign * root
                            coeffs.append(acc / (4 * mpmath.sqrt(rad)))
                        candidate = FieldElement(
                            *(Fraction(mpmath.nstr(c, 60)).limit_denominator(10**15) for c in coeffs)
                        )
                        if candidate * candidate == self:
                            return abs(candidate)
        raise NormOutsideField(f"sqrt({self}) is not in Q(sqrt2, sqrt3)")

    # text form ----------------------------------------------------------------

    def __str__(self) -> str:
        terms = []
        for coef, rad in zip(self.coefficients, RADICANDS):
            if coef == 0:
                continue
            if rad == 1:
                terms.append(str(coef))
            elif coef == 1:
                terms.append(f"sqrt{rad}")
            elif coef == -1:
                terms.append(f"-sqrt{rad}")
            else:
                terms.append(f"{coef}*sqrt{rad}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self) -> str:
        return f"FieldElement({str(self)!r})"

    _TERM = re.compile(
        r"^(?P<coef>\d+(?:\.\d+)?(?:/\d+)?)?(?:\*?sqrt\(?(?P<rad>[0-9]+)\)?)?(?:/(?P<div>\d+))?$"
    )

    @classmethod
    def parse(cls, text: str) -> FieldElement:
        """Parse ``"p + q*sqrt2 + r*sqrt3 + s*sqrt6"``; omitted terms are zero."""
        src = text.replace(" ", "")
        if not src:
            raise ParseError("empty field element")
        if src[0] not in "+-":
            src = "+" + src
        pieces = re.findall(r"[+-][^+-]+", src)
        if "".join(pieces) != src:
            raise ParseError(f"cannot parse field element {text!r}")
        coeffs = [Fraction(0)] * 4
        for piece in pieces:
            sign, body = (-1 if piece[0] == "-" else 1), piece[1:]
            m = cls._TERM.match(body)
            if not m or (m.group("coef") is None and m.group("rad") is None):
                raise ParseError(f"bad term {piece!r} in {text!r}")
            coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
            if m.group("div"):
                coef /= int(m.group("div"))
            rad = int(m.group("rad") or 1)
            if rad not in RADICANDS:
                raise ParseError(f"radicand {rad} outside {{2, 3, 6}} in {text!r}")
            coeffs[RADICANDS.index(rad)] += sign * coef
        return cls(*coeffs)


ZERO = FieldElement(0)
ONE = FieldElement(1)
SQRT2 = FieldElement(0, 1)
SQRT3 = FieldElement(0, 0, 1)
SQRT6 = FieldElement(0, 0, 0, 1)


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()
