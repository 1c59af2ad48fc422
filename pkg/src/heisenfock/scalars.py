"""Exact complex scalars with rational real and imaginary parts.

``Scalar`` is the coefficient field for everything in this package: a
Gaussian rational a + bi with ``fractions.Fraction`` components.  All
arithmetic is exact and equality carries no tolerance.  The canonical text
form is ``a+bi`` with each rational printed as ``p/q`` (``1/2-3/4i``, ``2``,
``-i``); it is what every JSON payload uses for exact values.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .errors import SchemaError

RationalLike = Union[int, Fraction]
ScalarLike = Union["Scalar", int, Fraction]


class Scalar:
    """Immutable Gaussian rational, closed under +, -, *, / (nonzero)."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(o.re - self.re, o.im - self.im)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im,
                      self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar((self.re * o.re + self.im * o.im) / norm,
                      (self.im * o.re - self.re * o.im) / norm)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def scale(self, q: Fraction) -> "Scalar":
        """Fast multiply by a real rational (hot path of the derivations)."""
        return Scalar(self.re * q, self.im * q)

    def __pos__(self) -> "Scalar":
        return self

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- comparisons / conversions ------------------------------------------

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _coerce(x) -> Optional[Scalar]:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    return None


def as_scalar(x: ScalarLike) -> Scalar:
    """Coerce an int/Fraction/Scalar to Scalar, rejecting floats."""
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as an exact scalar")
    return s


# -- canonical text form -----------------------------------------------------

def format_scalar(x: Scalar) -> str:
    """Render the canonical ``a+bi`` form with rationals as ``p/q``."""
    if x.im == 0:
        return str(x.re)
    mag = -x.im if x.im < 0 else x.im
    imag = "i" if mag == 1 else f"{mag}i"
    if x.re == 0:
        return imag if x.im > 0 else "-" + imag
    sign = "+" if x.im > 0 else "-"
    return f"{x.re}{sign}{imag}"


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical ``a+bi`` form back into a Scalar."""
    s = text.strip().replace(" ", "")
    if not s:
        raise SchemaError("empty scalar string")
    if not s.endswith("i"):
        return Scalar(_parse_fraction(s))
    body = s[:-1]
    # split off a leading real part at the last sign that is not the
    # leading sign and not part of a fraction slash
    split = None
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            split = pos
            break
    if split is None:
        re_part, im_part = "", body
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = _parse_fraction(im_part)
    re = _parse_fraction(re_part) if re_part else Fraction(0)
    return Scalar(re, im)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {text!r}") from exc


# -- exact square roots ------------------------------------------------------

def fraction_sqrt(q: Fraction) -> Optional[Fraction]:
    """Exact nonnegative square root of a rational, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def scalar_sqrt(c: Scalar) -> Optional[Scalar]:
    """An exact square root of c in Q(i) if one exists, else None.

    Deterministic branch: the root with positive real part, falling back
    to nonnegative imaginary part on the imaginary axis.
    """
    a, b = c.re, c.im
    if b == 0:
        r = fraction_sqrt(a if a >= 0 else -a)
        if r is None:
            return None
        return Scalar(r) if a >= 0 else Scalar(0, r)
    n = fraction_sqrt(a * a + b * b)
    if n is None:
        return None
    x = fraction_sqrt((a + n) / 2)
    if x is None or x == 0:
        return None
    root = Scalar(x, b / (2 * x))
    return root if root * root == c else None
