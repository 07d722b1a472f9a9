"""Exact isometries of the Euclidean plane.

An isometry is stored as x -> A x + t where the linear part A is either a
rotation R(alpha) or the reflection matrix F(beta) = [[cos b, sin b],
[sin b, -cos b]] (reflection across the line at angle beta/2).  Angles are
``Fraction`` multiples of pi; translation components are exact scalars.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .exact import cos_pi, sin_pi, simplify

IDENTITY = "identity"
REFLECTION = "reflection"
ROTATION_PI = "rotation_pi"
ROTATION = "rotation"
TRANSLATION = "translation"
GLIDE = "glide"


@dataclass(frozen=True, eq=False)
class PlanarIsometry:
    flip: bool
    angle: Fraction
    tx: object = Fraction(0)
    ty: object = Fraction(0)

    def __post_init__(self):
        a = exact.mod_two_pi(Fraction(self.angle))
        object.__setattr__(self, "angle", a)
        object.__setattr__(self, "tx", simplify(self.tx))
        object.__setattr__(self, "ty", simplify(self.ty))

    # -- constructors ------------------------------------------------------
    @classmethod
    def identity(cls) -> "PlanarIsometry":
        return cls(False, Fraction(0))

    @classmethod
    def translation(cls, vx, vy) -> "PlanarIsometry":
        return cls(False, Fraction(0), vx, vy)

    @classmethod
    def rotation_pi(cls, cx, cy) -> "PlanarIsometry":
        return cls(False, Fraction(1), 2 * cx, 2 * cy)

    @classmethod
    def rotation(cls, angle, cx, cy) -> "PlanarIsometry":
        """Rotation by ``angle`` (units of pi) about (cx, cy)."""
        angle = Fraction(angle)
        c, s = cos_pi(angle), sin_pi(angle)
        # t = (I - R) center
        return cls(False, angle, (1 - c) * cx + s * cy, -s * cx + (1 - c) * cy)

    @classmethod
    def reflection(cls, direction, offset=0) -> "PlanarIsometry":
        """Reflection across {x : n.x = offset}, n the unit normal left of ``direction``."""
        phi = Fraction(direction)
        nx, ny = -sin_pi(phi), cos_pi(phi)
        return cls(True, 2 * phi, 2 * offset * nx, 2 * offset * ny)

    @classmethod
    def glide(cls, direction, offset, shift) -> "PlanarIsometry":
        phi = Fraction(direction)
        r = cls.reflection(phi, offset)
        return cls.translation(shift * cos_pi(phi), shift * sin_pi(phi)).compose(r)

    @classmethod
    def vertical_line(cls, x0) -> "PlanarIsometry":
        return cls.reflection(Fraction(1, 2), -Fraction(x0))

    @classmethod
    def horizontal_line(cls, y0) -> "PlanarIsometry":
        return cls.reflection(Fraction(0), Fraction(y0))

    # -- algebra -----------------------------------------------------------
    def _matrix(self):
        c, s = cos_pi(self.angle), sin_pi(self.angle)
        if self.flip:
            return c, s, s, -c
        return c, -s, s, c

    def compose(self, other: "PlanarIsometry") -> "PlanarIsometry":
        """``self o other``: apply ``other`` first."""
        a, b, c, d = self._matrix()
        tx = a * other.tx + b * other.ty + self.tx
        ty = c * other.tx + d * other.ty + self.ty
        # F(a)R(b) = F(a-b), F(a)F(b) = R(a-b), R(a)X(b) = X(a+b)
        angle = self.angle - other.angle if self.flip else self.angle + other.angle
        flip = self.flip != other.flip
        return PlanarIsometry(flip, angle, tx, ty)

    __matmul__ = compose

    def inverse(self) -> "PlanarIsometry":
        if self.flip:
            inv = PlanarIsometry(True, self.angle)
        else:
            inv = PlanarIsometry(False, -self.angle)
        a, b, c, d = inv._matrix()
        return PlanarIsometry(inv.flip, inv.angle,
                              -(a * self.tx + b * self.ty), -(c * self.tx + d * self.ty))

    def apply(self, x, y):
        a, b, c, d = self._matrix()
        return simplify(a * x + b * y + self.tx), simplify(c * x + d * y + self.ty)

    def __call__(self, point):
        return self.apply(*point)

    def __eq__(self, other):
        if not isinstance(other, PlanarIsometry):
            return NotImplemented
        return (self.flip == other.flip and self.angle == other.angle
                and exact.eq(self.tx, other.tx) and exact.eq(self.ty, other.ty))

    def __hash__(self):
        return hash((self.flip, self.angle, round(float(self.tx), 9), round(float(self.ty), 9)))

    # -- classification ----------------------------------------------------
    @property
    def kind(self) -> str:
        if not self.flip:
            if self.angle == 0:
                zero = exact.is_zero(self.tx) and exact.is_zero(self.ty)
                return IDENTITY if zero else TRANSLATION
            return ROTATION_PI if self.angle == 1 else ROTATION
        return REFLECTION if exact.is_zero(self.glide_shift) else GLIDE

    @property
    def axis_direction(self) -> Fraction:
        """Direction of the reflection/glide axis, modulo pi."""
        if not self.flip:
            raise ValueError("not a reflection or glide")
        return exact.mod_pi(self.angle / 2)

    @property
    def glide_shift(self):
        phi = self.axis_direction
        return simplify(self.tx * cos_pi(phi) + self.ty * sin_pi(phi))

    @property
    def axis_offset(self):
        phi = self.axis_direction
        return simplify((-self.tx * sin_pi(phi) + self.ty * cos_pi(phi)) / 2)

    @property
    def center(self):
        if self.flip or self.angle == 0:
            raise ValueError(f"{self.kind} has no center")
        c, s = cos_pi(self.angle), sin_pi(self.angle)
        det = 2 - 2 * c
        return (simplify(((1 - c) * self.tx - s * self.ty) / det),
                simplify((s * self.tx + (1 - c) * self.ty) / det))

    @property
    def order(self):
        k = self.kind
        if k == IDENTITY:
            return 1
        if k in (REFLECTION, ROTATION_PI):
            return 2
        if k == ROTATION:
            return (self.angle / 2).denominator
        return math.inf

    def describe(self) -> dict:
        k = self.kind
        out = {"kind": k}
        if k in (REFLECTION, GLIDE):
            out["direction_pi"] = str(self.axis_direction)
            out["offset"] = str(self.axis_offset)
            if k == GLIDE:
                out["shift"] = str(self.glide_shift)
        elif k in (ROTATION_PI, ROTATION):
            out["center"] = [str(v) for v in self.center]
            if k == ROTATION:
                out["angle_pi"] = str(self.angle)
        elif k == TRANSLATION:
            out["vector"] = [str(self.tx), str(self.ty)]
        return out

    def __repr__(self):
        d = self.describe()
        return "PlanarIsometry(" + ", ".join(f"{k}={v}" for k, v in d.items()) + ")"


def compose(g: PlanarIsometry, h: PlanarIsometry) -> PlanarIsometry:
    """Apply ``h`` first, then ``g``."""
    return g.compose(h)


def commutes(g: PlanarIsometry, h: PlanarIsometry) -> bool:
    return g.compose(h) == h.compose(g)


def is_order_two(g: PlanarIsometry) -> bool:
    return g.kind in (REFLECTION, ROTATION_PI)
