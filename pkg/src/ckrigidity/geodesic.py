"""Geodesics, comparison angles, rays and itineraries in a truncated complex.

A geodesic between two flats runs through the chain of flats on the tree path
between them and crosses each shared gluing line once, so it is fixed by the
crossing positions.  The total length is convex in those positions; it is
minimized by cyclic coordinate descent with a closed-form step per crossing.
When a flat's entry and exit lines intersect, the segment inside that flat can
shrink to a point and single-coordinate steps stall there; a paired step over
both crossings of that flat handles that case.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .complex import T1, T2, T3, BlockTree, NerveTree

DEFAULT_TOL = 1e-9
MAX_SWEEPS = 10_000
POLES = ("b+", "b-", "c+", "c-")


class GeodesicInputError(ValueError):
    pass


class GeodesicRangeError(LookupError):
    pass


class ConvergenceError(ArithmeticError):
    def __init__(self, message, diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class PointRef:
    flat: int
    coords: tuple  # chart coordinates (s, t)

    @classmethod
    def parse(cls, text: str) -> "PointRef":
        """``"FLAT:s,t"``."""
        try:
            flat, rest = text.split(":")
            s, t = rest.split(",")
            return cls(int(flat), (float(s), float(t)))
        except ValueError:
            raise GeodesicInputError(f"bad point {text!r}; expected FLAT:s,t") from None

    def xy(self, nerve: NerveTree) -> np.ndarray:
        _check_flat(nerve, self.flat)
        chart = nerve.chart(self.flat)
        (ax, ay), (bx, by) = ((float(u), float(v)) for u, v in chart.basis())
        s, t = (float(c) for c in self.coords)
        return np.array([s * ax + t * bx, s * ay + t * by])

    @classmethod
    def from_xy(cls, nerve: NerveTree, flat: int, xy) -> "PointRef":
        chart = nerve.chart(flat)
        (ax, _), (bx, by) = ((float(u), float(v)) for u, v in chart.basis())
        t = xy[1] / by
        return cls(flat, ((xy[0] - t * bx) / ax, t))


def _check_flat(nerve: NerveTree, flat: int):
    if flat not in nerve.nodes:
        raise GeodesicInputError(f"flat {flat} is not in the truncation")


@dataclass(frozen=True)
class FlatChain:
    flats: tuple
    lines: tuple  # per crossing: (family, index in the earlier flat, index in the later flat)

    def __len__(self):
        return len(self.flats)


def tree_chain(nerve: NerveTree, a: int, b: int) -> FlatChain:
    _check_flat(nerve, a)
    _check_flat(nerve, b)
    flats = tuple(nerve.path(a, b))
    lines = []
    for x, y in zip(flats, flats[1:]):
        fam, i = nerve.line_to_neighbor(x, y)
        _, j = nerve.line_to_neighbor(y, x)
        lines.append((fam, i, j))
    return FlatChain(flats, tuple(lines))


def _frame(nerve, flat, family, index):
    o, d = nerve.chart(flat).line_frame(family, index)
    return np.array(o), np.array(d)


def _cross(u, v) -> float:
    return u[0] * v[1] - u[1] * v[0]


@dataclass
class GeodesicPath:
    start: PointRef
    end: PointRef
    chain: FlatChain
    crossings: tuple
    length: float
    sweeps: int = 0
    segments: list = field(default_factory=list)  # (flat, P, Q) float chart points

    def point_at(self, nerve: NerveTree, r: float) -> PointRef:
        """Point at arclength ``r`` from the start (clamped to the path)."""
        left = max(0.0, r)
        for flat, p, q in self.segments:
            seg = float(np.linalg.norm(q - p))
            if left <= seg or flat == self.segments[-1][0]:
                lam = 1.0 if seg == 0 else min(1.0, left / seg)
                return PointRef.from_xy(nerve, flat, p + lam * (q - p))
            left -= seg
        return self.end

    def to_json(self) -> dict:
        return {"flats": list(self.chain.flats), "crossings": [float(c) for c in self.crossings],
                "length": self.length, "sweeps": self.sweeps}


class _Problem:
    """Crossing-parameter objective for a fixed chain."""

    def __init__(self, nerve: NerveTree, p: PointRef, q: PointRef):
        self.chain = tree_chain(nerve, p.flat, q.flat)
        self.p, self.q = p.xy(nerve), q.xy(nerve)
        self.k = len(self.chain.lines)
        # crossing i joins flats[i] and flats[i+1]
        self.prev = [_frame(nerve, self.chain.flats[i], fam, a)
                     for i, (fam, a, _) in enumerate(self.chain.lines)]
        self.next = [_frame(nerve, self.chain.flats[i + 1], fam, b)
                     for i, (fam, _, b) in enumerate(self.chain.lines)]

    def entry(self, u, j):
        """Start of the segment in flats[j], in that chart."""
        if j == 0:
            return self.p
        o, d = self.next[j - 1]
        return o + u[j - 1] * d

    def exit(self, u, j):
        if j == self.k:
            return self.q
        o, d = self.prev[j]
        return o + u[j] * d

    def segments(self, u):
        return [(self.chain.flats[j], self.entry(u, j), self.exit(u, j)) for j in range(self.k + 1)]

    def length(self, u) -> float:
        return float(sum(np.linalg.norm(b - a) for _, a, b in self.segments(u)))

    def best_single(self, u, i) -> float:
        """Closed-form minimizer over crossing i with the others fixed (unfold across the line)."""
        return _two_segment(self.entry(u, i), self.prev[i], self.exit(u, i + 1), self.next[i], u[i])

    def intersecting(self, j) -> bool:
        """Flat j has entry and exit lines that meet."""
        if j == 0 or j == self.k:
            return False
        _, d_in = self.next[j - 1]
        _, d_out = self.prev[j]
        return abs(_cross(d_in, d_out)) > 1e-12

    def best_pair(self, u, j):
        """Minimize over both crossings of flat j: outer 1-D convex search, inner closed form."""
        a_pt = self.entry(u, j - 1)
        b_pt = self.exit(u, j + 1)
        o_in, d_in = self.prev[j - 1]
        o_in2, d_in2 = self.next[j - 1]

        def inner(a):
            x = o_in2 + a * d_in2
            b = _two_segment(x, self.prev[j], b_pt, self.next[j], u[j])
            o1, d1 = self.prev[j]
            o2, d2 = self.next[j]
            return b, float(np.linalg.norm(o1 + b * d1 - x) + np.linalg.norm(b_pt - (o2 + b * d2)))

        def psi(a):
            return float(np.linalg.norm(o_in + a * d_in - a_pt)) + inner(a)[1]

        f0 = psi(u[j - 1])
        foot = float(np.dot(a_pt - o_in, d_in))
        lo, hi = sorted((foot - f0 - 1.0, foot + f0 + 1.0))
        lo, hi = min(lo, u[j - 1]), max(hi, u[j - 1])
        res = minimize_scalar(psi, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        a = float(res.x)
        return a, inner(a)[0]


def _two_segment(a_pt, frame_a, b_pt, frame_b, current) -> float:
    """Argmin over u of |A - L_a(u)| + |L_b(u) - B|, where L_a, L_b are one line in two charts."""
    oa, da = frame_a
    ob, db = frame_b
    ra, rb = a_pt - oa, b_pt - ob
    sa, sb = float(np.dot(ra, da)), float(np.dot(rb, db))
    ha, hb = abs(_cross(da, ra)), abs(_cross(db, rb))
    if ha + hb == 0:
        return min(max(current, min(sa, sb)), max(sa, sb))
    return sa + (sb - sa) * ha / (ha + hb)


def geodesic(nerve: NerveTree, p: PointRef, q: PointRef, tol: float = DEFAULT_TOL,
             max_sweeps: int = MAX_SWEEPS) -> GeodesicPath:
    if tol <= 0:
        raise GeodesicInputError("tol must be positive")
    prob = _Problem(nerve, p, q)
    u = [0.0] * prob.k
    cur = prob.length(u)
    sweeps = 0
    while prob.k:
        sweeps += 1
        before = cur
        for i in range(prob.k):
            u[i] = prob.best_single(u, i)
        for j in range(1, prob.k):
            if prob.intersecting(j):
                cand = list(u)
                cand[j - 1], cand[j] = prob.best_pair(u, j)
                if prob.length(cand) < prob.length(u):
                    u = cand
        cur = prob.length(u)
        if before - cur < tol:
            break
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"no convergence after {max_sweeps} sweeps",
                {"length": cur, "improvement": before - cur, "crossings": list(u)})
    return GeodesicPath(p, q, prob.chain, tuple(u), cur, sweeps, prob.segments(u))


def optimality_gaps(nerve: NerveTree, path: GeodesicPath) -> list:
    """Length drop available from re-optimizing each crossing alone (should be ~0)."""
    prob = _Problem(nerve, path.start, path.end)
    u = list(path.crossings)
    base = prob.length(u)
    gaps = []
    for i in range(prob.k):
        v = list(u)
        v[i] = prob.best_single(u, i)
        gaps.append(base - prob.length(v))
    return gaps


def distance(nerve: NerveTree, p: PointRef, q: PointRef, tol: float = DEFAULT_TOL) -> float:
    return geodesic(nerve, p, q, tol).length


# -- mesh oracle ----------------------------------------------------------------

def mesh_length(nerve: NerveTree, p: PointRef, q: PointRef, h: float,
                window: Optional[float] = None) -> float:
    """Shortest path through grid points of step ``h`` on each crossed gluing line.

    Every mesh path is an actual path in the complex, so this bounds the
    geodesic length from above.
    """
    if h <= 0:
        raise GeodesicInputError("mesh step must be positive")
    prob = _Problem(nerve, p, q)
    if prob.k == 0:
        return float(np.linalg.norm(prob.q - prob.p))
    if window is None:
        window = 3.0 + float(np.linalg.norm(prob.p)) + float(np.linalg.norm(prob.q))
    m = int(math.ceil(window / h))
    grid = np.arange(-m, m + 1) * h
    sizes = [1]
    for _ in range(prob.k):
        sizes.append(len(grid))
    sizes.append(1)
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    rows, cols, vals = [], [], []
    for j in range(prob.k + 1):
        # points of layer j and j+1 expressed in the chart of flats[j]
        if j == 0:
            src = prob.p[None, :]
        else:
            o, d = prob.next[j - 1]
            src = o + grid[:, None] * d
        if j == prob.k:
            dst = prob.q[None, :]
        else:
            o, d = prob.prev[j]
            dst = o + grid[:, None] * d
        dist = np.linalg.norm(src[:, None, :] - dst[None, :, :], axis=2)
        si, di = np.meshgrid(np.arange(len(src)), np.arange(len(dst)), indexing="ij")
        rows.append((si + offsets[j]).ravel())
        cols.append((di + offsets[j + 1]).ravel())
        # csgraph drops explicit zeros; a tiny floor keeps touching points connected
        vals.append(np.maximum(dist.ravel(), 1e-300))
    n = int(offsets[-1])
    graph = coo_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                       shape=(n, n)).tocsr()
    d = dijkstra(graph, directed=True, indices=0)
    return float(d[n - 1])


# -- angles, rays, itineraries --------------------------------------------------

def comparison_angle(nerve: NerveTree, x: PointRef, p: PointRef, q: PointRef,
                     tol: float = DEFAULT_TOL) -> float:
    a = distance(nerve, x, p, tol)
    b = distance(nerve, x, q, tol)
    c = distance(nerve, p, q, tol)
    if min(a, b) <= 10 * tol:
        raise GeodesicInputError("degenerate comparison triangle: a side from x has zero length")
    cos = (a * a + b * b - c * c) / (2 * a * b)
    return math.acos(max(-1.0, min(1.0, cos)))


@dataclass(frozen=True)
class RaySpec:
    base: PointRef
    direction: tuple          # unit vector in the base chart
    pole: Optional[str] = None
    block: Optional[str] = None

    def point_at(self, nerve: NerveTree, r: float) -> PointRef:
        xy = self.base.xy(nerve) + r * np.array(self.direction)
        return PointRef.from_xy(nerve, self.base.flat, xy)

    def to_json(self) -> dict:
        return {"base": {"flat": self.base.flat, "coords": [float(c) for c in self.base.coords]},
                "direction": [float(c) for c in self.direction], "pole": self.pole, "block": self.block}


def ray_toward_pole(nerve: NerveTree, blocks: BlockTree, base: PointRef, block: str,
                    pole: str) -> RaySpec:
    if pole not in POLES:
        raise GeodesicInputError(f"unknown pole {pole!r}; choose from {', '.join(POLES)}")
    if block not in blocks.blocks:
        raise GeodesicInputError(f"unknown block {block!r}")
    family, sign = pole[0], 1.0 if pole[1] == "+" else -1.0
    if blocks.kinds[block] != family:
        raise GeodesicInputError(f"pole {pole} is not an axis of {blocks.kinds[block]}-block {block}")
    if base.flat not in blocks.blocks[block]:
        raise GeodesicInputError(f"flat {base.flat} is not in block {block}")
    chart = nerve.chart(base.flat)
    angle = math.pi * float(chart.families[chart.family_index(family)].direction)
    return RaySpec(base, (sign * math.cos(angle), sign * math.sin(angle)), pole, block)


def _segment_blocks(nerve: NerveTree, blocks: BlockTree, flat: int, p, q) -> list:
    label = nerve.label(flat)
    if label == T1:
        return [blocks.block_of(flat, "b")]
    if label == T3:
        return [blocks.block_of(flat, "c")]
    # a barrier segment counts only when it runs along a line shared with a non-barrier flat
    a = PointRef.from_xy(nerve, flat, p).coords
    b = PointRef.from_xy(nerve, flat, q).coords
    for pos, fam in enumerate(nerve.chart(flat).families):
        lo, hi = (a[1], b[1]) if pos == 0 else (a[0], b[0])
        k = round(lo)
        if abs(lo - k) < 1e-9 and abs(hi - k) < 1e-9:
            nb = nerve.neighbor_across(flat, fam.name, k)
            if nb is not None:
                return [blocks.block_of(nb, fam.name)]
    return []


def itinerary(nerve: NerveTree, blocks: BlockTree, path: Union[GeodesicPath, RaySpec],
              radius: float = 1.0) -> list:
    """Blocks the path enters, in order.

    A path that never leaves barrier flats is assigned both blocks of its
    first barrier (b-block first).
    """
    if isinstance(path, RaySpec):
        p = path.base.xy(nerve)
        segs = [(path.base.flat, p, p + radius * np.array(path.direction))]
    else:
        segs = path.segments
    out = []
    for flat, p, q in segs:
        if np.linalg.norm(q - p) <= 1e-12:
            continue
        for bid in _segment_blocks(nerve, blocks, flat, p, q):
            if not out or out[-1] != bid:
                out.append(bid)
    if not out:
        flat = segs[0][0]
        if nerve.label(flat) == T2:
            return [blocks.block_of(flat, "b"), blocks.block_of(flat, "c")]
        return [blocks.block_of(flat, "b" if nerve.label(flat) == T1 else "c")]
    return out


def cone_neighborhood_contains(nerve: NerveTree, x: PointRef, xi: RaySpec, R: float, eps: float,
                               z: Union[PointRef, RaySpec], tol: float = DEFAULT_TOL) -> bool:
    """Membership of z in U(x, xi, R, eps).

    Rays are compared through parallel representatives, so a ray given from
    another base point must start in x's flat.
    """
    if R <= 0 or eps <= 0:
        raise GeodesicInputError("R and eps must be positive")

    def from_x(ray: RaySpec) -> RaySpec:
        if ray.base.flat != x.flat:
            raise GeodesicRangeError("ray class must be represented in the flat of x")
        return RaySpec(x, ray.direction, ray.pole, ray.block)

    along_xi = from_x(xi).point_at(nerve, R)
    if isinstance(z, RaySpec):
        along_z = from_x(z).point_at(nerve, R)
    else:
        path = geodesic(nerve, x, z, tol)
        if path.length <= R:
            return False
        along_z = path.point_at(nerve, R)
    return distance(nerve, along_z, along_xi, tol) < eps
