"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Rationals are plain ``Fraction`` objects.  Gaussian rationals ``a + b i`` with
``a, b`` rational are represented by :class:`GaussianRational`.  Both expose
``.real``, ``.imag`` and support mixed arithmetic, so linear algebra code can
stay agnostic of the configured field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

FIELDS = ("Q", "Qi")


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def _lift(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, GaussianRational]

ZERO = Fraction(0)
ONE = Fraction(1)


def conj(s: Scalar) -> Scalar:
    """Complex conjugate; the identity on rationals."""
    if type(s) is Fraction:
        return s
    return s.conjugate()


def sort_key(s: Scalar) -> tuple[Fraction, Fraction]:
    return (s.real, s.imag)


_RAT = r"[+-]?\d+(?:/\d+)?"
_IMAG_ONLY = re.compile(r"^(?P<im>[+-]?(?:\d+(?:/\d+)?)?)i$")
_COMPLEX_RE = re.compile(
    rf"^(?P<re>{_RAT})(?:(?P<im>[+-](?:\d+(?:/\d+)?)?)i)?$")


def _imag_coefficient(txt: str) -> Fraction:
    if txt in ("", "+"):
        return ONE
    if txt == "-":
        return -ONE
    return Fraction(txt)


def parse_scalar(value, field: str = "Q") -> Scalar:
    """Parse ``"p/q"``, ``"p/q+r/si"``, an int, or a Fraction into a scalar.

    With ``field="Q"`` a non-zero imaginary part is an error.
    """
    if field not in FIELDS:
        raise ValueError(f"unknown field {field!r}")
    if isinstance(value, bool):
        raise ValueError(f"not a scalar: {value!r}")
    if isinstance(value, GaussianRational):
        re_part, im_part = value.re, value.im
    elif isinstance(value, (int, Fraction)):
        re_part, im_part = Fraction(value), ZERO
    elif isinstance(value, str):
        text = value.replace(" ", "")
        m_im = _IMAG_ONLY.match(text)
        m = _COMPLEX_RE.match(text)
        if m_im is not None:
            re_part, im_part = ZERO, _imag_coefficient(m_im.group("im"))
        elif m is not None:
            re_part = Fraction(m.group("re"))
            im_txt = m.group("im")
            im_part = ZERO if im_txt is None else _imag_coefficient(im_txt)
        else:
            raise ValueError(f"cannot parse scalar {value!r}")
    else:
        raise ValueError(f"not a scalar: {value!r}")
    if field == "Q":
        if im_part != 0:
            raise ValueError(f"complex scalar {value!r} in field Q")
        return re_part
    return GaussianRational(re_part, im_part)


def format_scalar(s: Scalar) -> str:
    re_part, im_part = Fraction(s.real), Fraction(s.imag)
    if im_part == 0:
        return str(re_part)
    sign = "-" if im_part < 0 else "+"
    return f"{re_part}{sign}{abs(im_part)}i"


def to_field(s: Scalar, field: str) -> Scalar:
    """Coerce a scalar into the representation used by ``field``."""
    return parse_scalar(s, field)
