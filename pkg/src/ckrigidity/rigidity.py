"""Case analysis for commuting order-2 isometries and the gluing-angle search.

Two kinds of evidence are produced for every claim: an exact derivation on
``Fraction`` data, and a seeded float search that tries to build a
counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import exact
from .isometry import PlanarIsometry, commutes, REFLECTION, TRANSLATION

DEFAULT_SEED = 20240601
DEFAULT_TOL = 1e-6

CASES = {
    1: "line-point disjoint",
    2: "parallel lines",
    3: "distinct points",
}
# element kinds making up each infinite-order product
_CASE_KINDS = {1: ("line", "point"), 2: ("line", "line"), 3: ("point", "point")}


class AngleError(ValueError):
    pass


def check_angle(theta) -> Fraction:
    theta = exact.as_fraction(theta)
    if not 0 < theta <= Fraction(1, 2):
        raise AngleError(f"angle {theta}*pi outside (0, pi/2]")
    return theta


@dataclass(frozen=True)
class ReflectionConfig:
    """Two pairs of reflections; each pair has parallel axes, the pairs are perpendicular."""

    first: tuple
    second: tuple

    def reflections(self):
        return self.first + self.second

    def problems(self) -> list:
        out = []
        for r in self.reflections():
            if r.kind != REFLECTION:
                out.append(f"{r!r} is not a reflection")
        if out:
            return out
        for name, (r, s) in (("first", self.first), ("second", self.second)):
            if r.axis_direction != s.axis_direction:
                out.append(f"{name} pair axes not parallel")
            elif exact.eq(r.axis_offset, s.axis_offset):
                out.append(f"{name} pair axes coincide")
            elif r.compose(s).kind != TRANSLATION:
                out.append(f"{name} pair product is not a translation")
        d1 = self.first[0].axis_direction
        d2 = self.second[0].axis_direction
        if exact.mod_pi(d1 - d2) != Fraction(1, 2):
            out.append("pairs are not perpendicular")
        for r in self.first:
            for s in self.second:
                if not commutes(r, s):
                    out.append(f"{r!r} and {s!r} do not commute")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def describe(self) -> dict:
        return {"first": [r.describe() for r in self.first],
                "second": [r.describe() for r in self.second]}


def square_lattice_config(period_x=1, period_y=1, shift_x=0, shift_y=0) -> ReflectionConfig:
    """Axes x = shift_x, shift_x + period_x and y = shift_y, shift_y + period_y."""
    v = PlanarIsometry.vertical_line
    h = PlanarIsometry.horizontal_line
    return ReflectionConfig(
        (v(shift_x), v(shift_x + period_x)),
        (h(shift_y), h(shift_y + period_y)),
    )


# -- exact case analysis -----------------------------------------------------

def _forced_by(kind: str, other: tuple) -> Optional[str]:
    """Contradiction (if any) for an element of ``kind`` commuting with both members of ``other``.

    ``other`` is the case number of the opposite pair.  Commuting order-2
    elements: line/line perpendicular or equal, line/point incident,
    point/point equal.
    """
    if kind == "point":
        if other == 1:
            return "the point must equal the pair's point and lie on the pair's line, which misses it"
        if other == 2:
            return "the point must lie on two distinct parallel lines"
        return "the point must equal two distinct points"
    return None


def _pair_contradiction(case_a: int, case_b: int) -> Optional[str]:
    for kind in _CASE_KINDS[case_a]:
        why = _forced_by(kind, case_b)
        if why:
            return why
    for kind in _CASE_KINDS[case_b]:
        why = _forced_by(kind, case_a)
        if why:
            return why
    # Only parallel pair against parallel pair is left.  A line equal to one
    # member of the opposite pair is parallel to the other member, which it
    # then cannot commute with; so every cross pair is perpendicular, and
    # perpendicular directions are consistent.
    return None


def exact_cell(case_a: int, case_b: int) -> dict:
    why = _pair_contradiction(case_a, case_b)
    out = {"cases": [case_a, case_b], "feasible": why is None}
    if why is None:
        config = square_lattice_config()
        assert config.is_valid()
        out["witness"] = config.describe()
    else:
        out["obstruction"] = why
    return out


# -- randomized cross-check --------------------------------------------------

def _line_matrix(phi, off):
    c2, s2 = np.cos(2 * phi), np.sin(2 * phi)
    nx, ny = -np.sin(phi), np.cos(phi)
    m = np.zeros(phi.shape + (3, 3))
    m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1] = c2, s2, s2, -c2
    m[..., 0, 2], m[..., 1, 2] = 2 * off * nx, 2 * off * ny
    m[..., 2, 2] = 1
    return m


def _point_matrix(px, py):
    m = np.zeros(px.shape + (3, 3))
    m[..., 0, 0] = m[..., 1, 1] = -1
    m[..., 0, 2], m[..., 1, 2] = 2 * px, 2 * py
    m[..., 2, 2] = 1
    return m


class _Elements:
    """A vectorised batch of lines (phi, off) or points (px, py)."""

    def __init__(self, kind, a, b):
        self.kind, self.a, self.b = kind, a, b

    def matrix(self):
        return _line_matrix(self.a, self.b) if self.kind == "line" else _point_matrix(self.a, self.b)


def _random_pair(rng, case, n):
    sign = rng.choice([-1.0, 1.0], n)
    gap = sign * rng.uniform(0.1, 2.0, n)
    if case == 1:
        phi, off = rng.uniform(0, np.pi, n), rng.uniform(-2, 2, n)
        s = rng.uniform(-2, 2, n)
        nx, ny, ux, uy = -np.sin(phi), np.cos(phi), np.cos(phi), np.sin(phi)
        px = (off + gap) * nx + s * ux
        py = (off + gap) * ny + s * uy
        return _Elements("line", phi, off), _Elements("point", px, py)
    if case == 2:
        phi, off = rng.uniform(0, np.pi, n), rng.uniform(-2, 2, n)
        return _Elements("line", phi, off), _Elements("line", phi.copy(), off + gap)
    px, py = rng.uniform(-2, 2, n), rng.uniform(-2, 2, n)
    ang = rng.uniform(0, 2 * np.pi, n)
    return (_Elements("point", px, py),
            _Elements("point", px + np.abs(gap) * np.cos(ang), py + np.abs(gap) * np.sin(ang)))


def _compatible(rng, kind, anchor: _Elements, n):
    """Random elements of ``kind`` that commute exactly with ``anchor``, mixed with free ones."""
    mode = rng.integers(0, 3, n)
    if kind == "line":
        phi, off = rng.uniform(0, np.pi, n), rng.uniform(-2, 2, n)
        if anchor.kind == "line":
            perp = anchor.a + np.pi / 2
            phi = np.where(mode == 0, perp, np.where(mode == 1, anchor.a, phi))
            off = np.where(mode == 1, anchor.b, off)
        else:
            through = np.where(mode < 2, True, False)
            off = np.where(through, -np.sin(phi) * anchor.a + np.cos(phi) * anchor.b, off)
        return _Elements("line", phi, off)
    px, py = rng.uniform(-2, 2, n), rng.uniform(-2, 2, n)
    if anchor.kind == "line":
        s = rng.uniform(-2, 2, n)
        fx = -np.sin(anchor.a) * anchor.b + s * np.cos(anchor.a)
        fy = np.cos(anchor.a) * anchor.b + s * np.sin(anchor.a)
        px, py = np.where(mode < 2, fx, px), np.where(mode < 2, fy, py)
    else:
        px, py = np.where(mode < 2, anchor.a, px), np.where(mode < 2, anchor.b, py)
    return _Elements("point", px, py)


def _realizes(case, x: _Elements, y: _Elements, tol):
    if case == 1:
        d = -np.sin(x.a) * y.a + np.cos(x.a) * y.b - x.b
        return np.abs(d) > tol
    if case == 2:
        cross = np.abs(np.sin(x.a - y.a))
        # offsets compared with a common normal
        off_y = np.where(np.cos(x.a - y.a) > 0, y.b, -y.b)
        return (cross < tol) & (np.abs(off_y - x.b) > tol)
    return np.hypot(x.a - y.a, x.b - y.b) > tol


def _commute_mask(p, q, tol):
    a, b = p.matrix(), q.matrix()
    return np.max(np.abs(a @ b - b @ a), axis=(-2, -1)) < tol


def random_cell(case_a, case_b, samples, rng, tol=DEFAULT_TOL) -> int:
    """Number of sampled configurations realizing (case_a, case_b) with all cross pairs commuting."""
    b0, b1 = _random_pair(rng, case_b, samples)
    kinds = _CASE_KINDS[case_a]
    a0 = _compatible(rng, kinds[0], b0, samples)
    a1 = _compatible(rng, kinds[1], b0 if rng.random() < 0.5 else b1, samples)
    ok = _realizes(case_a, a0, a1, tol)
    for x in (a0, a1):
        for y in (b0, b1):
            ok &= _commute_mask(x, y, tol)
    return int(ok.sum())


def key_lemma_case_matrix(samples: int = 100_000, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> dict:
    """Feasibility of every (case, case) cell, exact plus randomized."""
    rng = np.random.default_rng(seed)
    cells = []
    per_cell = max(1, samples // 9)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            cell = exact_cell(i, j)
            hits = random_cell(i, j, per_cell, rng, tol)
            cell["random_hits"] = hits
            cell["agrees"] = (hits > 0) == cell["feasible"]
            cells.append(cell)
    feasible = [c["cases"] for c in cells if c["feasible"]]
    return {
        "cases": {str(k): v for k, v in CASES.items()},
        "cells": cells,
        "feasible_cells": feasible,
        "samples": per_cell * 9,
        "seed": seed,
        "tol": tol,
        "consistent": all(c["agrees"] for c in cells),
    }


# -- angle rigidity ----------------------------------------------------------

PRESERVE = "preserve"
SWAP = "swap"


def family_preserving_axes(theta, mode: str = PRESERVE) -> set:
    """Axis directions (mod pi, units of pi) mapping the line families at 0 and theta to themselves.

    ``mode='swap'`` returns the axes exchanging the two families instead.
    A reflection with axis direction phi sends direction psi to 2 phi - psi.
    """
    theta = check_angle(theta)
    half = Fraction(1, 2)
    if mode == PRESERVE:
        fix_first = {Fraction(0), half}
        fix_second = {exact.mod_pi(theta), exact.mod_pi(theta + half)}
        return fix_first & fix_second
    if mode == SWAP:
        return {exact.mod_pi(theta / 2), exact.mod_pi(theta / 2 + half)}
    raise ValueError(f"unknown mode {mode!r}")


def _maps_family(refl: PlanarIsometry, direction: Fraction, spacing, probe=range(-2, 3)) -> bool:
    """Whether ``refl`` permutes the lines {n.x = k*spacing} of the given direction."""
    if exact.mod_pi(2 * refl.axis_direction - direction) != exact.mod_pi(direction):
        return False
    nx, ny = -exact.sin_pi(direction), exact.cos_pi(direction)
    for k in probe:
        px, py = refl.apply(k * spacing * nx, k * spacing * ny)
        ratio = exact.simplify((nx * px + ny * py) / spacing)
        if not isinstance(ratio, Fraction) or ratio.denominator != 1:
            return False
    return True


def candidate_directions(theta) -> list:
    """Exact grid of directions containing every congruence solution for theta."""
    theta = check_angle(theta)
    den = 4 * theta.denominator * 12
    return [Fraction(k, den) for k in range(den)]


def rigidity_report(theta, lengths=(1, 1), samples: int = 2000, seed: int = DEFAULT_SEED,
                    tol: float = DEFAULT_TOL) -> dict:
    """Whether a family-preserving D-infinity x D-infinity reflection configuration exists at angle theta.

    ``lengths`` are the translation lengths of the two families on the
    middle flat (b, c).
    """
    theta = check_angle(theta)
    len_b, len_c = (exact.as_fraction(x) for x in lengths)
    preserve = family_preserving_axes(theta, PRESERVE)
    swap = family_preserving_axes(theta, SWAP)

    # exhaustive exact scan agrees with the congruence solve
    scanned = {phi for phi in candidate_directions(theta)
               if exact.mod_pi(2 * phi) == 0 and exact.mod_pi(2 * phi - 2 * theta) == 0}

    # randomized sweep of float directions
    rng = np.random.default_rng(seed)
    phis = rng.uniform(0, 1, samples)
    t = float(theta)
    dist = lambda x: np.abs(((x + 0.5) % 1.0) - 0.5)  # noqa: E731
    hits = phis[(dist(2 * phis) < tol) & (dist(2 * phis - 2 * t) < tol)]
    stray = [float(p) for p in hits if min(dist(p - float(q)) for q in preserve or {Fraction(0)}) > tol]

    report = {
        "theta_pi": str(theta),
        "preserve_axes": sorted(str(p) for p in preserve),
        "swap_axes": sorted(str(p) for p in swap),
        "exact_scan_matches": scanned == preserve,
        "random_sweep": {"samples": samples, "seed": seed, "tol": tol, "stray_hits": stray},
    }
    perpendicular = [p for p in preserve if exact.mod_pi(p + Fraction(1, 2)) in preserve]
    if perpendicular:
        config = square_lattice_config(len_b, len_c, -len_b / 2, -len_c / 2)
        spacing_b = len_c * exact.sin_pi(theta)
        spacing_c = len_b * exact.sin_pi(theta)
        families_ok = all(_maps_family(r, Fraction(0), spacing_b) and _maps_family(r, theta, spacing_c)
                          for r in config.reflections())
        report.update(feasible=config.is_valid() and families_ok,
                      witness=config.describe(), obstruction="")
        return report

    # the T1/T3 side forces a reflection perpendicular to the b-lines
    required = Fraction(1, 2)
    report.update(
        feasible=False,
        witness=None,
        required_axis_pi=str(required),
        required_axis_admissible=required in preserve or required in swap,
        obstruction=(
            "only the diagonal axes " + ", ".join(report["swap_axes"])
            + " respect the gluing lines; they exchange the two families. A generator "
            "reflecting a b-line onto itself needs an axis perpendicular to it, which is "
            "neither family-preserving nor diagonal, so a third non-parallel axis direction "
            "would be needed and the four reflections no longer form D_inf x D_inf."
        ),
    )
    return report


def sweep(thetas=None, **kw) -> list:
    if thetas is None:
        thetas = [Fraction(k, 12) for k in range(1, 7)]
    return [rigidity_report(t, **kw) for t in thetas]
