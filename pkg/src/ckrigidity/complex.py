"""Finite truncations of the three-torus complex: flat charts, nerve tree, blocks, links."""
from __future__ import annotations

import heapq
import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import exact

T1, T2, T3 = "T1", "T2", "T3"
LABELS = (T1, T2, T3)

# curve families carried by each torus, in chart order
FAMILIES = {T1: ("a", "b"), T2: ("b", "c"), T3: ("c", "d")}
# the torus on the other side of a gluing family
_ACROSS = {(T2, "b"): T1, (T1, "b"): T2, (T2, "c"): T3, (T3, "c"): T2}

MAX_DEPTH = 6
MAX_RANGE = 3


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class GeomData:
    """Three gluing angles (``Fraction`` multiples of pi) and four lengths a, b, c, d."""

    theta1: Fraction = Fraction(1, 2)
    theta2: Fraction = Fraction(1, 2)
    theta3: Fraction = Fraction(1, 2)
    len_a: Fraction = Fraction(1)
    len_b: Fraction = Fraction(1)
    len_c: Fraction = Fraction(1)
    len_d: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("theta1", "theta2", "theta3"):
            v = exact.as_fraction(getattr(self, name))
            if not 0 < v <= Fraction(1, 2):
                raise GeometryError(f"{name} = {v}*pi outside (0, pi/2]")
            object.__setattr__(self, name, v)
        for name in ("len_a", "len_b", "len_c", "len_d"):
            v = exact.as_fraction(getattr(self, name))
            if v <= 0:
                raise GeometryError(f"{name} must be positive")
            object.__setattr__(self, name, v)

    @classmethod
    def from_json(cls, source) -> "GeomData":
        """``{"theta": ["1/2", "1/2", "1/2"], "lengths": [1, 1, 1, 1]}``; angles in units of pi."""
        if isinstance(source, (str, Path)) and Path(source).exists():
            data = json.loads(Path(source).read_text())
        elif isinstance(source, str):
            data = json.loads(source)
        else:
            data = source
        try:
            t1, t2, t3 = (exact.as_fraction(x) for x in data.get("theta", ["1/2"] * 3))
            a, b, c, d = (exact.as_fraction(x) for x in data.get("lengths", [1, 1, 1, 1]))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"bad geometry document: {exc}") from exc
        return cls(t1, t2, t3, a, b, c, d)

    def to_json(self) -> dict:
        return {"theta": [str(self.theta1), str(self.theta2), str(self.theta3)],
                "lengths": [str(x) for x in (self.len_a, self.len_b, self.len_c, self.len_d)]}

    def angle(self, label: str) -> Fraction:
        return {T1: self.theta1, T2: self.theta2, T3: self.theta3}[label]

    def length(self, family: str) -> Fraction:
        return {"a": self.len_a, "b": self.len_b, "c": self.len_c, "d": self.len_d}[family]

    @property
    def right_angled(self) -> bool:
        return self.theta1 == self.theta2 == self.theta3 == Fraction(1, 2)


@dataclass(frozen=True)
class CurveFamily:
    name: str
    direction: Fraction  # units of pi, in the chart
    length: Fraction     # translation length
    spacing: object      # distance between consecutive lines of the family


@dataclass(frozen=True)
class FlatChart:
    """Affine chart: (s, t) -> s * len0 * e0 + t * len1 * e1, e1 at ``angle`` from e0.

    Lines of the first family are {t = k}; lines of the second are {s = k}.
    """

    label: str
    angle: Fraction
    families: tuple

    @classmethod
    def for_label(cls, geom: GeomData, label: str) -> "FlatChart":
        theta = geom.angle(label)
        f0, f1 = FAMILIES[label]
        l0, l1 = geom.length(f0), geom.length(f1)
        sin = exact.sin_pi(theta)
        return cls(label, theta, (
            CurveFamily(f0, Fraction(0), l0, exact.simplify(l1 * sin)),
            CurveFamily(f1, theta, l1, exact.simplify(l0 * sin)),
        ))

    def family_index(self, name: str) -> int:
        for i, fam in enumerate(self.families):
            if fam.name == name:
                return i
        raise GeometryError(f"{self.label} carries no {name!r} family")

    def basis(self):
        l0, l1 = self.families[0].length, self.families[1].length
        c, s = exact.cos_pi(self.angle), exact.sin_pi(self.angle)
        return (l0, Fraction(0)), (exact.simplify(l1 * c), exact.simplify(l1 * s))

    def point(self, s, t):
        (ax, ay), (bx, by) = self.basis()
        return exact.simplify(s * ax + t * bx), exact.simplify(s * ay + t * by)

    def coords(self, x, y):
        """Inverse of :meth:`point`."""
        (ax, _), (bx, by) = self.basis()
        t = exact.simplify(y / by)
        return exact.simplify((x - t * bx) / ax), t

    def line_point(self, family: str, index: int, along):
        """Point of line ``index`` of ``family`` at arclength ``along`` from its base point."""
        i = self.family_index(family)
        if i == 0:
            return self.point(exact.simplify(along / self.families[0].length), index)
        return self.point(index, exact.simplify(along / self.families[1].length))

    def line_frame(self, family: str, index: int):
        """(origin, unit direction) of the line, both as float pairs."""
        i = self.family_index(family)
        ox, oy = (float(v) for v in self.line_point(family, index, 0))
        d = float(self.families[i].direction)
        return (ox, oy), (math.cos(math.pi * d), math.sin(math.pi * d))


def chart_point(chart: FlatChart, coords):
    return chart.point(*coords)


@dataclass(frozen=True)
class GluingLine:
    """Line ``index`` of ``family`` in flat ``flat``; ``offset`` shifts arclength on the far side."""

    flat: int
    family: str
    index: int
    offset: Fraction = Fraction(0)


@dataclass
class NerveNode:
    id: int
    label: str
    depth: int
    parent: Optional[int] = None
    parent_line: Optional[GluingLine] = None  # line in the parent's chart
    steps: tuple = ()  # (family, index) along the path from the root
    children: list = field(default_factory=list)


@dataclass
class NerveTree:
    geom: GeomData
    nodes: dict
    root: int
    depth: int
    range: int
    charts: dict

    def chart(self, node_id: int) -> FlatChart:
        return self.charts[self.nodes[node_id].label]

    def label(self, node_id: int) -> str:
        return self.nodes[node_id].label

    def edges(self):
        """(parent, child, family, parent_index) for every tree edge."""
        for n in self.nodes.values():
            if n.parent is not None:
                yield n.parent, n.id, n.parent_line.family, n.parent_line.index

    def neighbors(self, node_id: int) -> list:
        n = self.nodes[node_id]
        out = list(n.children)
        if n.parent is not None:
            out.append(n.parent)
        return out

    def line_to_neighbor(self, node_id: int, other: int) -> tuple:
        """(family, index) of the line in ``node_id``'s chart shared with ``other``."""
        n, m = self.nodes[node_id], self.nodes[other]
        if m.parent == node_id:
            return m.parent_line.family, m.parent_line.index
        if n.parent == other:
            return n.parent_line.family, 0
        raise GeometryError(f"flats {node_id} and {other} are not adjacent")

    def neighbor_across(self, node_id: int, family: str, index: int) -> Optional[int]:
        n = self.nodes[node_id]
        if n.parent is not None and n.parent_line.family == family and index == 0:
            return n.parent
        for c in n.children:
            pl = self.nodes[c].parent_line
            if pl.family == family and pl.index == index:
                return c
        return None

    def path(self, a: int, b: int) -> list:
        def up(x):
            chain = [x]
            while self.nodes[x].parent is not None:
                x = self.nodes[x].parent
                chain.append(x)
            return chain
        pa, pb = up(a), up(b)
        common = set(pa) & set(pb)
        i = next(k for k, x in enumerate(pa) if x in common)
        j = pb.index(pa[i])
        return pa[: i + 1] + list(reversed(pb[:j]))

    def find(self, steps) -> int:
        steps = tuple(tuple(s) for s in steps)
        for n in self.nodes.values():
            if n.steps == steps:
                return n.id
        raise KeyError(f"no flat at {steps}")

    def __len__(self):
        return len(self.nodes)


def build_nerve(geom: GeomData, depth: int, line_range: int, root_label: str = T2) -> NerveTree:
    """Breadth-first truncation of the nerve; child lines are indexed -L..L in the parent chart.

    The line a child shares with its parent is that child's line 0.
    """
    if not isinstance(geom, GeomData):
        raise GeometryError("geometry must be GeomData")
    if depth < 0 or line_range < 0:
        raise GeometryError("depth and range must be non-negative")
    if root_label not in LABELS:
        raise GeometryError(f"unknown root label {root_label!r}")
    charts = {lab: FlatChart.for_label(geom, lab) for lab in LABELS}
    nodes = {0: NerveNode(0, root_label, 0)}
    queue = deque([0])
    while queue:
        nid = queue.popleft()
        node = nodes[nid]
        if node.depth >= depth:
            continue
        for family in FAMILIES[node.label]:
            if (node.label, family) not in _ACROSS:
                continue
            for k in range(-line_range, line_range + 1):
                if node.parent_line is not None and node.parent_line.family == family and k == 0:
                    continue
                cid = len(nodes)
                nodes[cid] = NerveNode(
                    cid, _ACROSS[node.label, family], node.depth + 1, nid,
                    GluingLine(nid, family, k), node.steps + ((family, k),))
                node.children.append(cid)
                queue.append(cid)
    return NerveTree(geom, nodes, 0, depth, line_range, charts)


def nerve_size(depth: int, line_range: int, root_label: str = T2) -> int:
    """Node count of :func:`build_nerve` by recursion over labels."""
    per_family = 2 * line_range + 1

    def below(label, parent_family, d):
        if d == 0:
            return 1
        total = 1
        for fam in FAMILIES[label]:
            if (label, fam) not in _ACROSS:
                continue
            k = per_family - (1 if fam == parent_family else 0)
            total += k * below(_ACROSS[label, fam], fam, d - 1)
        return total

    return below(root_label, None, depth)


# -- blocks and barriers -------------------------------------------------------

@dataclass
class BlockTree:
    blocks: dict          # block id -> frozenset of flat ids
    kinds: dict           # block id -> "b" | "c"
    barriers: list        # T2 flat ids
    adjacency: set        # frozenset({block, block}) per barrier
    node_blocks: dict     # flat id -> list of block ids

    def block_of(self, flat: int, kind: str):
        for bid in self.node_blocks[flat]:
            if self.kinds[bid] == kind:
                return bid
        raise KeyError(f"flat {flat} lies in no {kind}-block")

    def is_tree(self) -> bool:
        n = len(self.blocks)
        if len(self.adjacency) != n - 1:
            return False
        seen, stack = set(), [next(iter(self.blocks))] if self.blocks else []
        adj = {b: set() for b in self.blocks}
        for e in self.adjacency:
            x, y = tuple(e)
            adj[x].add(y)
            adj[y].add(x)
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
        return len(seen) == n


def blocks(nerve: NerveTree) -> BlockTree:
    parent: dict = {}

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out_blocks, kinds = {}, {}
    for kind, member in (("b", (T1, T2)), ("c", (T2, T3))):
        parent = {nid: nid for nid in nerve.nodes}
        for p, c, fam, _ in nerve.edges():
            if fam == kind:
                parent[root(p)] = root(c)
        comps = {}
        for nid, node in nerve.nodes.items():
            if node.label in member:
                comps.setdefault(root(nid), set()).add(nid)
        for members in comps.values():
            bid = f"{kind}{min(members)}"
            out_blocks[bid] = frozenset(members)
            kinds[bid] = kind
    node_blocks = {nid: [] for nid in nerve.nodes}
    for bid in sorted(out_blocks, key=lambda b: (b[0], int(b[1:]))):
        for nid in out_blocks[bid]:
            node_blocks[nid].append(bid)
    barriers = sorted(nid for nid, n in nerve.nodes.items() if n.label == T2)
    adjacency = {frozenset(node_blocks[nid]) for nid in barriers}
    return BlockTree(out_blocks, kinds, barriers, adjacency, node_blocks)


# -- links ----------------------------------------------------------------------

def _girth(edges) -> Fraction:
    """Shortest cycle in a weighted multigraph given as (u, v, w) triples."""
    best = None
    for k, (u, v, w) in enumerate(edges):
        adj = {}
        for j, (x, y, wt) in enumerate(edges):
            if j != k:
                adj.setdefault(x, []).append((y, wt))
                adj.setdefault(y, []).append((x, wt))
        dist = {u: Fraction(0)}
        heap = [(Fraction(0), 0, u)]
        tie = 1
        while heap:
            d, _, x = heapq.heappop(heap)
            if d > dist.get(x, d):
                continue
            for y, wt in adj.get(x, ()):
                nd = d + wt
                if y not in dist or nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, tie, y))
                    tie += 1
        if v in dist:
            cyc = dist[v] + w
            best = cyc if best is None else min(best, cyc)
    return best


def link_edges(geom: GeomData, at) -> list:
    """Arcs of the link as (direction, direction, length/pi) triples.

    ``at`` is a :class:`GluingLine` (a generic point on it) or ``"vertex"``.
    """
    if isinstance(at, GluingLine):
        fam = at.family
        if fam not in ("b", "c"):
            raise GeometryError(f"{fam!r} curves are not glued")
        flats = [lab for lab in LABELS if fam in FAMILIES[lab]]
        # each incident flat contributes a half circle on either side of the line
        return [(fam + "+", fam + "-", Fraction(1)) for lab in flats for _side in (0, 1)]
    if at != "vertex":
        raise GeometryError(f"unknown link location {at!r}")
    edges = []
    for lab in LABELS:
        f, g = FAMILIES[lab]
        th = geom.angle(lab)
        edges += [(f + "+", g + "+", th), (g + "+", f + "-", 1 - th),
                  (f + "-", g + "-", th), (g + "-", f + "+", 1 - th)]
    return edges


def link_girth(geom: GeomData, at) -> Fraction:
    """Girth of the link at ``at``, in units of pi (2 means 2*pi)."""
    if not isinstance(geom, GeomData):
        raise GeometryError("geometry must be GeomData")
    return _girth(link_edges(geom, at))


# -- DOT ---------------------------------------------------------------------------

def nerve_dot(nerve: NerveTree, highlight=(), name="nerve") -> str:
    lines = [f"graph {name} {{"]
    hl = set(highlight)
    for nid, n in sorted(nerve.nodes.items()):
        extra = ', style=filled, fillcolor="lightblue"' if nid in hl else ""
        lines.append(f'  n{nid} [label="{n.label}", depth={n.depth}{extra}];')
    for p, c, fam, k in nerve.edges():
        lines.append(f'  n{p} -- n{c} [label="{fam}{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_dot(bt: BlockTree, name="blocks") -> str:
    lines = [f"graph {name} {{"]
    for bid in sorted(bt.blocks):
        lines.append(f'  {bid} [label="{bt.kinds[bid]}-block {len(bt.blocks[bid])}"];')
    for nid in bt.barriers:
        pair = sorted(bt.node_blocks[nid])
        if len(pair) == 2:
            lines.append(f'  {pair[0]} -- {pair[1]} [label="T2 n{nid}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
