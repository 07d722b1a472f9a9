"""Exact scalar helpers.

Angles are stored as ``Fraction`` multiples of pi.  Sine and cosine come
back as ``Fraction`` at multiples of pi/2 and as sympy expressions
otherwise; :func:`simplify` folds rational results back to ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy

Scalar = Union[int, Fraction, sympy.Expr]


def as_fraction(value) -> Fraction:
    """Parse ``"1/2"``, ints, floats-with-exact-repr or Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**9)
    raise TypeError(f"cannot read {value!r} as a rational")


def mod_pi(q: Fraction) -> Fraction:
    """Reduce an angle (in units of pi) into [0, 1)."""
    return q - (q.numerator // q.denominator)


def mod_two_pi(q: Fraction) -> Fraction:
    return q - 2 * (q.numerator // (2 * q.denominator))


@lru_cache(maxsize=None)
def cos_pi(q: Fraction) -> Scalar:
    q = mod_two_pi(Fraction(q))
    if (2 * q).denominator == 1:
        return Fraction({0: 1, 1: 0, 2: -1, 3: 0}[int(2 * q)])
    return sympy.nsimplify(sympy.cos(sympy.pi * sympy.Rational(q.numerator, q.denominator)))


@lru_cache(maxsize=None)
def sin_pi(q: Fraction) -> Scalar:
    q = mod_two_pi(Fraction(q))
    if (2 * q).denominator == 1:
        return Fraction({0: 0, 1: 1, 2: 0, 3: -1}[int(2 * q)])
    return sympy.nsimplify(sympy.sin(sympy.pi * sympy.Rational(q.numerator, q.denominator)))


def is_zero(x: Scalar) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    x = sympy.nsimplify(sympy.expand(x))
    if x == 0:
        return True
    # radicals from cos/sin of rational multiples of pi: exact test
    return sympy.simplify(x) == 0


def eq(x: Scalar, y: Scalar) -> bool:
    return is_zero(x - y)


def to_float(x: Scalar) -> float:
    return float(x)


def simplify(x: Scalar) -> Scalar:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    x = sympy.nsimplify(sympy.expand(x))
    if x.is_Rational:
        return Fraction(int(x.p), int(x.q))
    return x
