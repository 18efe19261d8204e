"""Exact Gaussian-rational scalars.

A scalar is a + b*i with a, b rational, stored as two fractions.Fraction
values. The class is immutable and hashable so scalars can key dicts and live
in frozen matrix rows.

String grammar (parse/format are inverse on canonical forms):

    real      -2, 7, 3/4, -11/5
    imaginary i, 2i, -1i, -5/3i       (bare "i" means 1; "-i" is not accepted)
    mixed     1+2i, -3/4-1/2i, 2-i

Denominators are written unsigned and must be nonzero. Non-canonical but
grammatical input ("1+-2i") is normalized on read. Formatting always emits
an explicit imaginary coefficient ("1i", "-1i", never bare "i").
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ScalarParseError

_FRAC = r"-?\d+(?:/\d+)?"
_RE_REAL = re.compile(rf"({_FRAC})\Z")
_RE_IMAG = re.compile(rf"({_FRAC})?i\Z")
_RE_MIXED = re.compile(rf"({_FRAC})([+-])({_FRAC})?i\Z")


def _fraction(token: str, original: str) -> Fraction:
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise ScalarParseError(f"zero denominator in {original!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


class GaussianRational:
    """Immutable exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- parsing / formatting ------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the strict scalar grammar; raise ScalarParseError otherwise."""
        if not isinstance(text, str):
            raise ScalarParseError(f"expected string, got {type(text).__name__}")
        s = text.strip()
        if not s:
            raise ScalarParseError("empty scalar string")
        m = _RE_REAL.match(s)
        if m:
            return cls(_fraction(m.group(1), text))
        m = _RE_MIXED.match(s)
        if m:
            re_part = _fraction(m.group(1), text)
            coeff = _fraction(m.group(3), text) if m.group(3) else Fraction(1)
            if m.group(2) == "-":
                coeff = -coeff
            # "1+-2i" style input is legal but non-canonical; the sign folds
            # into the coefficient here and formatting re-canonicalizes.
            return cls(re_part, coeff)
        m = _RE_IMAG.match(s)
        if m:
            coeff = _fraction(m.group(1), text) if m.group(1) else Fraction(1)
            return cls(0, coeff)
        raise ScalarParseError(f"invalid scalar: {text!r}")

    def __str__(self):
        if not self.im:
            return _frac_str(self.re)
        imag = _frac_str(self.im) + "i"
        if not self.re:
            return imag
        if self.im > 0:
            return f"{_frac_str(self.re)}+{imag}"
        return f"{_frac_str(self.re)}{imag}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            # Common case: both real. Skips four multiplies.
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero scalar")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- comparisons / protocol ----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im


def _frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
