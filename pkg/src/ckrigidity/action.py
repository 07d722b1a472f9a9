"""The eight-generator right-angled Coxeter group acting on the right-angled complex.

Every special flat of the truncation is a coset ``g H`` of the stabilizer of
one of the three base flats (the T1, T2 and T3 flats through the base vertex).
A flat is stored with the minimal-length coset representative ``g``; its
chart is the ``g``-image of the base chart.  A word then acts on a chart
point by

    s . (g . P) = g' . (h . P)      where  s g = g' h,  h in H,

and ``h`` acts on the base chart through the reflections below.  Axes sit
half a period away from the gluing lines, so no generator fixes a gluing
line and edge stabilizers are exactly the shared D-infinity factors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import coxeter
from .complex import (T1, T2, T3, FAMILIES, GeomData, NerveTree, build_nerve)
from .coxeter import DefiningGraph, fig7_graph, normal_form
from .isometry import PlanarIsometry, TRANSLATION
from .rigidity import ReflectionConfig

# stabilizer generators of the base flats, grouped (first-coordinate pair, second-coordinate pair)
HOME = {
    T1: (("v2", "v4"), ("v1", "v3")),
    T2: (("v1", "v3"), ("w2", "w4")),
    T3: (("w2", "w4"), ("w1", "w3")),
}
# D-infinity moving the lines of a gluing family inside a flat of a given label
_LINE_MOVERS = {
    (T2, "b"): ("w2", "w4"),
    (T2, "c"): ("v1", "v3"),
    (T1, "b"): ("v2", "v4"),
    (T3, "c"): ("w1", "w3"),
}


class ActionError(ValueError):
    pass


class RelationFailure(AssertionError):
    def __init__(self, relation, flat, point, image):
        super().__init__(f"relation {relation} fails on flat {flat} at {point}: got {image}")
        self.relation, self.flat, self.point, self.image = relation, flat, point, image


def dihedral_word(pair, k: int) -> tuple:
    """Word in the D-infinity ``pair`` = (p, q) sending index 0 to ``k``.

    p acts on indices by k -> 1 - k, q by k -> -1 - k; a word acts right to left.
    """
    p, q = pair
    first, second = (p, q) if k > 0 else (q, p)
    return tuple(first if i % 2 == 0 else second for i in range(abs(k)))


def w_defining_graph() -> DefiningGraph:
    return fig7_graph()


def diamonds(graph: DefiningGraph) -> list:
    """Induced 4-cycles whose two diagonals are twin pairs (equal neighbourhoods)."""
    out = []
    for a, b, c, d in coxeter.chordless_four_cycles(graph):
        if graph.neighbors(a) == graph.neighbors(c) and graph.neighbors(b) == graph.neighbors(d):
            out.append((a, b, c, d))
    return out


@dataclass(frozen=True)
class AmalgamDecomposition:
    factors: tuple       # three vertex sets, each spanning D_inf x D_inf
    edge_groups: tuple   # two vertex sets, each spanning D_inf

    def describe(self) -> dict:
        return {"factors": [sorted(f) for f in self.factors],
                "edge_groups": [sorted(e) for e in self.edge_groups]}


def amalgam_decomposition(graph: DefiningGraph) -> AmalgamDecomposition:
    """Split the group as H *_{D_inf} H *_{D_inf} H along its three diamonds."""
    ds = [frozenset(d) for d in diamonds(graph)]
    if len(ds) != 3:
        raise coxeter.GraphError(f"expected three diamonds, found {len(ds)}")
    # the middle diamond shares a diagonal with each of the others
    for mid in ds:
        others = [d for d in ds if d != mid]
        shared = [mid & o for o in others]
        if all(len(s) == 2 and not graph.adjacent(*s) for s in shared):
            if frozenset(set().union(*ds)) != frozenset(graph.vertices):
                break
            return AmalgamDecomposition((others[0], mid, others[1]), tuple(shared))
    raise coxeter.GraphError("diamonds do not form a chain H - H - H")


@dataclass
class ActionSpec:
    graph: DefiningGraph
    geom: GeomData
    nerve: NerveTree
    base_isometries: dict            # (label, generator) -> PlanarIsometry on the base chart
    reps: dict                       # flat id -> normal form of its minimal coset representative
    lookup: dict                     # (label, representative) -> flat id
    generators: tuple
    basepoint: tuple                 # (flat id, chart point)
    base_flats: dict = field(default_factory=dict)  # label -> flat id of the base flat

    # -- group bookkeeping ------------------------------------------------------------
    def home(self, label) -> set:
        return set(HOME[label][0] + HOME[label][1])

    def split_coset(self, g: tuple, label: str):
        """``g = g' h`` with ``g'`` the minimal representative of ``g H_label``."""
        return _split_coset(self.graph, tuple(g), label)

    def node_image(self, word, flat: int) -> Optional[int]:
        label = self.nerve.label(flat)
        g = normal_form(self.graph, tuple(word) + self.reps[flat])
        rep, _ = self.split_coset(g, label)
        return self.lookup.get((label, rep))

    def chart_map(self, h: tuple, label: str) -> PlanarIsometry:
        return _chart_map(self, tuple(h), label)

    def act(self, word, flat: int, point):
        """Image of a chart point under ``word`` (a tuple acting right to left); None if it leaves the truncation."""
        label = self.nerve.label(flat)
        for s in word:
            if s not in self.generators:
                raise ActionError(f"generator {s!r} is not part of this action")
        g = normal_form(self.graph, tuple(word) + self.reps[flat])
        rep, h = self.split_coset(g, label)
        target = self.lookup.get((label, rep))
        if target is None:
            return None
        return target, self.chart_map(h, label).apply(*point)

    def act_stepwise(self, word, flat: int, point):
        """Apply the letters one at a time (rightmost first)."""
        cur = (flat, point)
        for s in reversed(tuple(word)):
            cur = self.act((s,), *cur)
            if cur is None:
                return None
        return cur

    def stabilizes(self, word, flat: int) -> bool:
        return self.node_image(word, flat) == flat

    def flat_isometry(self, word, flat: int) -> PlanarIsometry:
        """The chart isometry of a word stabilizing ``flat``."""
        label = self.nerve.label(flat)
        rep = self.reps[flat]
        conj = normal_form(self.graph, coxeter.inverse(rep) + tuple(word) + rep)
        if not set(conj) <= self.home(label):
            raise ActionError(f"{word} does not stabilize flat {flat}")
        return self.chart_map(conj, label)

    def chamber(self, flat: int, lattice) -> tuple:
        """Group element whose chamber is centred at lattice point (k, m) of ``flat``."""
        label = self.nerve.label(flat)
        first, second = HOME[label]
        k, m = lattice
        h = dihedral_word(first, k) + dihedral_word(second, m)
        return normal_form(self.graph, self.reps[flat] + h)

    def restrict(self, generators) -> "ActionSpec":
        gens = tuple(g for g in self.generators if g in set(generators))
        return ActionSpec(self.graph, self.geom, self.nerve, self.base_isometries, self.reps,
                          self.lookup, gens, self.basepoint, self.base_flats)


@lru_cache(maxsize=200_000)
def _split_coset(graph: DefiningGraph, g: tuple, label: str):
    home = set(HOME[label][0] + HOME[label][1])
    rest = list(g)
    h: list = []
    changed = True
    while changed:
        changed = False
        for pos in range(len(rest) - 1, -1, -1):
            s = rest[pos]
            if s in home and all(graph.adjacent(s, t) for t in rest[pos + 1:]):
                del rest[pos]
                h.insert(0, s)
                changed = True
                break
    return normal_form(graph, rest), normal_form(graph, h)


def _chart_map(action: ActionSpec, h: tuple, label: str) -> PlanarIsometry:
    key = (id(action.base_isometries), h, label)
    cached = _CHART_CACHE.get(key)
    if cached is not None:
        return cached
    iso = PlanarIsometry.identity()
    for s in h:
        iso = iso.compose(action.base_isometries[label, s])
    _CHART_CACHE[key] = iso
    return iso


_CHART_CACHE: dict = {}


def base_isometries(geom: GeomData) -> dict:
    """Reflections of the base charts: each D-infinity pair has axes at -len/2 and +len/2."""
    out = {}
    for label, (first, second) in HOME.items():
        f0, f1 = FAMILIES[label]
        l0, l1 = geom.length(f0), geom.length(f1)
        out[label, first[0]] = PlanarIsometry.vertical_line(l0 / 2)
        out[label, first[1]] = PlanarIsometry.vertical_line(-l0 / 2)
        out[label, second[0]] = PlanarIsometry.horizontal_line(l1 / 2)
        out[label, second[1]] = PlanarIsometry.horizontal_line(-l1 / 2)
    return out


def build_w_action(geom: GeomData, nerve: Optional[NerveTree] = None, depth: int = 2,
                   line_range: int = 1) -> ActionSpec:
    if not geom.right_angled:
        raise ActionError(
            "all three gluing angles must be pi/2: a geometric flat-preserving action of a "
            "right-angled Coxeter group forces right angles (see rigidity_report)")
    if nerve is None:
        nerve = build_nerve(geom, depth, line_range)
    if nerve.label(nerve.root) != T2:
        raise ActionError("the nerve must be rooted at a T2 flat")
    graph = w_defining_graph()
    reps, lookup = {}, {}
    for nid, node in sorted(nerve.nodes.items()):
        if node.parent is None:
            word = ()
        else:
            parent = nerve.nodes[node.parent]
            pair = _LINE_MOVERS[parent.label, node.parent_line.family]
            word = reps[node.parent] + dihedral_word(pair, node.parent_line.index)
        g = normal_form(graph, word)
        rep, h = _split_coset(graph, g, node.label)
        if h:
            raise ActionError(f"path word for flat {nid} is not a minimal coset representative")
        reps[nid] = rep
        if (node.label, rep) in lookup:
            raise ActionError(f"flats {lookup[node.label, rep]} and {nid} coincide")
        lookup[node.label, rep] = nid
    base_flats = {T2: nerve.root}
    for nid in nerve.nodes[nerve.root].children:
        pl = nerve.nodes[nid].parent_line
        if pl.index == 0:
            base_flats[nerve.label(nid)] = nid
    quarter = (geom.len_b / 4, geom.len_c / 4)
    return ActionSpec(graph, geom, nerve, base_isometries(geom), reps, lookup,
                      tuple(graph.vertices), (nerve.root, quarter), base_flats)


# -- verification -------------------------------------------------------------------

def sample_points(nerve: NerveTree, flat: int, per_axis: int = 10):
    """Rational chart points on a per_axis x per_axis grid over [-2, 2]^2 (chart units)."""
    chart = nerve.chart(flat)
    vals = [Fraction(-2) + Fraction(4 * i + 1, per_axis) for i in range(per_axis)]
    return [chart.point(s, t) for s in vals for t in vals]


def relations(graph: DefiningGraph):
    inv = [(s, s) for s in graph.vertices]
    comm = [tuple(sorted(e, key=graph.index)) * 2 for e in graph.edges]
    return inv, sorted(comm, key=lambda w: [graph.index(x) for x in w])


def _distance(p, q) -> float:
    return float(((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2) ** 0.5)


def verify_relations(action: ActionSpec, nerve: Optional[NerveTree] = None, per_axis: int = 10,
                     raise_on_failure: bool = False) -> dict:
    """Evaluate every defining relation letter by letter on sample points of every flat."""
    nerve = nerve or action.nerve
    inv, comm = relations(action.graph)
    rows = []
    worst = Fraction(0)
    for kind, rels in (("involution", inv), ("commutation", comm)):
        for rel in rels:
            evaluated = undefined = 0
            disc = Fraction(0)
            for flat in nerve.nodes:
                for p in sample_points(nerve, flat, per_axis):
                    img = action.act_stepwise(rel, flat, p)
                    if img is None:
                        undefined += 1
                        continue
                    evaluated += 1
                    if img[0] != flat or img[1] != p:
                        d = Fraction(10**9) if img[0] != flat else \
                            max(abs(Fraction(img[1][0] - p[0])), abs(Fraction(img[1][1] - p[1])))
                        disc = max(disc, d)
                        if raise_on_failure:
                            raise RelationFailure(rel, flat, p, img)
            worst = max(worst, disc)
            rows.append({"relation": "".join(rel), "kind": kind, "evaluated": evaluated,
                         "undefined": undefined, "max_discrepancy": str(disc)})
    return {
        "relations": rows,
        "max_discrepancy": str(worst),
        "holds": worst == 0 and all(r["evaluated"] > 0 for r in rows),
        "non_relations": non_relations(action),
        "gluing": gluing_consistency(action),
    }


def non_relations(action: ActionSpec) -> list:
    """For each non-commuting pair, the type of s t on a flat both stabilize (or its tree motion)."""
    g = action.graph
    out = []
    for s, t in sorted(((s, t) for s in g.vertices for t in g.vertices
                        if g.index(s) < g.index(t) and not g.adjacent(s, t)),
                       key=lambda p: (g.index(p[0]), g.index(p[1]))):
        row = {"pair": [s, t]}
        shared = [f for f in action.base_flats.values()
                  if action.stabilizes((s,), f) and action.stabilizes((t,), f)]
        if shared:
            iso = action.flat_isometry((s, t), shared[0])
            row.update(flat=shared[0], product=iso.kind, infinite_order=iso.kind == TRANSLATION)
        else:
            flat = action.base_flats[T2]
            moved = [action.node_image((s, t) * k, flat) != flat for k in (1, 2, 3)]
            row.update(flat=None, product="moves flats", infinite_order=all(moved))
        out.append(row)
    return out


def same_point(nerve: NerveTree, a, b) -> bool:
    return point_key(nerve, *a) == point_key(nerve, *b)


def point_reprs(nerve: NerveTree, flat: int, point) -> set:
    """All (flat, point) descriptions of one point of the complex inside the truncation."""
    seen = {(flat, tuple(point))}
    stack = [(flat, tuple(point))]
    while stack:
        f, p = stack.pop()
        chart = nerve.chart(f)
        s, t = chart.coords(*p)
        label = nerve.label(f)
        for pos, fam in enumerate(FAMILIES[label]):
            coord = t if pos == 0 else s
            if not isinstance(coord, Fraction) or coord.denominator != 1:
                continue
            other = nerve.neighbor_across(f, fam, int(coord))
            if other is None:
                continue
            along = s * chart.families[0].length if pos == 0 else t * chart.families[1].length
            fam_o, idx_o = nerve.line_to_neighbor(other, f)
            q = nerve.chart(other).line_point(fam_o, idx_o, along)
            if (other, q) not in seen:
                seen.add((other, q))
                stack.append((other, q))
    return seen


def point_key(nerve: NerveTree, flat: int, point):
    return min(point_reprs(nerve, flat, point), key=lambda r: (r[0], r[1]))


def gluing_consistency(action: ActionSpec) -> dict:
    """A point on a gluing line must have the same image whichever flat computes it."""
    nerve = action.nerve
    checked = failures = 0
    for p, c, fam, k in nerve.edges():
        chart_p, chart_c = nerve.chart(p), nerve.chart(c)
        for along in (Fraction(-3, 2), Fraction(-1, 3), Fraction(0), Fraction(2, 5), Fraction(7, 4)):
            a = (p, chart_p.line_point(fam, k, along))
            b = (c, chart_c.line_point(fam, 0, along))
            for s in action.generators:
                ia, ib = action.act((s,), *a), action.act((s,), *b)
                if ia is None or ib is None:
                    continue
                checked += 1
                if not same_point(nerve, ia, ib):
                    failures += 1
    return {"checked": checked, "failures": failures}


def invariants_report(action: ActionSpec) -> dict:
    """Involution, label preservation and gluing-line images for every generator and flat."""
    nerve = action.nerve
    bad = []
    for s in action.generators:
        for flat in nerve.nodes:
            img = action.node_image((s,), flat)
            if img is None:
                continue
            if nerve.label(img) != nerve.label(flat):
                bad.append(("label", s, flat))
            if action.node_image((s,), img) not in (flat, None):
                bad.append(("involution", s, flat))
            for nb in nerve.neighbors(flat):
                fam, _ = nerve.line_to_neighbor(flat, nb)
                j = action.node_image((s,), nb)
                if j is None:
                    continue
                if j not in nerve.neighbors(img):
                    bad.append(("adjacency", s, flat, nb))
                elif nerve.line_to_neighbor(img, j)[0] != fam:
                    bad.append(("family", s, flat, nb))
    return {"violations": bad, "ok": not bad}


# -- stabilizers, geometricity, dual graph ----------------------------------------------

def flat_stabilizer(action: ActionSpec, flat: int, maxlen: int) -> dict:
    if maxlen > 6:
        raise ActionError("stabilizer scans are capped at word length 6")
    ball = coxeter.enumerate_ball(action.graph, maxlen)
    allowed = set(action.generators)
    elements = [g for g in ball if set(g) <= allowed and action.stabilizes(g, flat)]
    rep = action.reps[flat]
    conj_letters = set()
    for g in elements:
        conj_letters |= set(normal_form(action.graph, coxeter.inverse(rep) + g + rep))
    label = action.nerve.label(flat)
    gens = sorted(s for s in allowed if action.stabilizes((s,), flat))
    return {
        "flat": flat,
        "label": label,
        "elements": elements,
        "count": len(elements),
        "conjugator": list(rep),
        "special_subgroup": sorted(conj_letters, key=action.graph.index),
        "stabilizing_generators": gens,
    }


def stabilizer_configuration(action: ActionSpec, flat: int) -> ReflectionConfig:
    """The four stabilizer generators of a flat as a reflection configuration in its chart."""
    label = action.nerve.label(flat)
    rep = action.reps[flat]
    first, second = HOME[label]
    conj = lambda s: normal_form(action.graph, rep + (s,) + coxeter.inverse(rep))  # noqa: E731
    return ReflectionConfig(tuple(action.flat_isometry(conj(s), flat) for s in first),
                            tuple(action.flat_isometry(conj(s), flat) for s in second))


def fundamental_squares(action: ActionSpec) -> dict:
    """Closed base chamber: the square [-len/2, len/2]^2 in each base flat chart."""
    out = {}
    for label, flat in action.base_flats.items():
        chart = action.nerve.chart(flat)
        out[flat] = (chart.families[0].length / 2, chart.families[1].length / 2)
    return out


def _in_square(action, flat, point, closed=True) -> bool:
    sq = fundamental_squares(action).get(flat)
    if sq is None:
        return False
    hx, hy = sq
    x, y = point
    if closed:
        return -hx <= x <= hx and -hy <= y <= hy
    return -hx < x < hx and -hy < y < hy


def interior_samples(nerve: NerveTree, max_depth: int = 1):
    """Chart points at quarter offsets, away from gluing lines and chamber walls."""
    vals = [Fraction(2 * i + 1, 4) for i in range(-4, 4)]
    for flat, node in sorted(nerve.nodes.items()):
        if node.depth > max_depth:
            continue
        chart = nerve.chart(flat)
        for s in vals:
            for t in vals:
                yield flat, (s, t), chart.point(s, t)


def covering_element(action: ActionSpec, flat: int, coords) -> tuple:
    """Inverse of the chamber containing the chart point with coordinates ``coords``."""
    k = int((coords[0] + Fraction(1, 2)) // 1)
    m = int((coords[1] + Fraction(1, 2)) // 1)
    return coxeter.inverse(action.chamber(flat, (k, m)))


def geometricity_check(action: ActionSpec, nerve: Optional[NerveTree] = None, max_len: int = 5) -> dict:
    nerve = nerve or action.nerve
    allowed = set(action.generators)
    uncovered = []
    total = 0
    for flat, coords, pt in interior_samples(nerve):
        total += 1
        w = covering_element(action, flat, coords)
        if not set(w) <= allowed:
            uncovered.append({"flat": flat, "label": nerve.label(flat), "coords": [str(c) for c in coords],
                              "needs": sorted(set(w) - allowed)})
            continue
        img = action.act_stepwise(w, flat, pt)
        if img is None or not _in_square(action, img[0], img[1]):
            uncovered.append({"flat": flat, "coords": [str(c) for c in coords], "needs": []})
    counts = overlap_counts(action, max_len)
    stable_from = next((n for n in range(len(counts))
                        if all(c == counts[n] for c in counts[n:])), None)
    return {
        "cocompact": not uncovered,
        "samples": total,
        "uncovered": uncovered[:20],
        "uncovered_labels": sorted({u.get("label", "?") for u in uncovered}),
        "overlap_counts": counts,
        "stable_from": stable_from,
        "proper": stable_from is not None and stable_from < len(counts) - 1,
        "stable_count": counts[-1],
    }


def _square_points(action: ActionSpec, flat: int):
    hx, hy = fundamental_squares(action)[flat]
    return [(i * hx, j * hy) for i in (-1, 0, 1) for j in (-1, 0, 1)]


def overlap_counts(action: ActionSpec, max_len: int) -> list:
    """#{g : |g| <= n, gK meets K} for n = 0..max_len.

    Chamber squares are unions of cells with vertices at half-period points,
    so two of them meet iff they share one of the 3x3 grid points.  Flats
    three or more tree steps apart are disjoint, so images landing there are
    skipped without looking at points.
    """
    nerve = action.nerve
    k_keys = set()
    for flat in fundamental_squares(action):
        for p in _square_points(action, flat):
            k_keys.add(point_key(nerve, flat, p))
    near = set(fundamental_squares(action))
    for _ in range(2):
        near |= {m for n in near for m in nerve.neighbors(n)}
    hits = [0] * (max_len + 1)
    allowed = set(action.generators)
    for g in coxeter.enumerate_ball(action.graph, max_len):
        if not set(g) <= allowed:
            continue
        meets = False
        for flat in fundamental_squares(action):
            if action.node_image(g, flat) not in near:
                continue
            for p in _square_points(action, flat):
                img = action.act(g, flat, p)
                if img is not None and point_key(nerve, *img) in k_keys:
                    meets = True
                    break
            if meets:
                break
        if meets:
            for n in range(len(g), max_len + 1):
                hits[n] += 1
    return hits


@dataclass
class DualGraph:
    vertices: dict       # vertex key -> group element
    edges: dict          # frozenset({key, key}) -> generator label
    multiplicity: dict   # frozenset({key, key}) -> number of directed generator edges


def _lattice_reprs(action: ActionSpec, flat: int, lattice):
    nerve = action.nerve
    pt = nerve.chart(flat).point(*lattice)
    for f, p in point_reprs(nerve, flat, pt):
        s, t = nerve.chart(f).coords(*p)
        yield f, (int(s), int(t))


def cayley_dual(action: ActionSpec, radius: int) -> DualGraph:
    """Squares around lattice points, adjacent when they share a side, explored to ``radius``."""
    nerve = action.nerve
    root = action.base_flats[T2]
    start = point_key(nerve, root, nerve.chart(root).point(0, 0))
    verts = {start: action.chamber(root, (0, 0))}
    where = {start: (root, (0, 0))}
    edges, mult = {}, {}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for key in frontier:
            flat, lat = where[key]
            g = verts[key]
            for f, (k, m) in _lattice_reprs(action, flat, lat):
                for dk, dm in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    nb = (k + dk, m + dm)
                    nkey = point_key(nerve, f, nerve.chart(f).point(*nb))
                    h = action.chamber(f, nb)
                    step = normal_form(action.graph, coxeter.inverse(g) + h)
                    e = frozenset((key, nkey))
                    if e not in edges:
                        edges[e] = step[0] if len(step) == 1 else "".join(step)
                        # directed generator edges g -> g s and g s -> g
                        mult[e] = sum(1 for a, b in ((g, h), (h, g))
                                      if len(normal_form(action.graph, coxeter.inverse(a) + b)) == 1)
                    if nkey not in verts:
                        verts[nkey] = h
                        where[nkey] = (f, nb)
                        nxt.append(nkey)
        frontier = nxt
    # edges found from the outer layer may reach beyond the ball; keep the induced subgraph
    edges = {e: s for e, s in edges.items() if e <= set(verts)}
    mult = {e: mult[e] for e in edges}
    return DualGraph(verts, edges, mult)


def cayley_ball_graph(graph: DefiningGraph, radius: int):
    ball = coxeter.enumerate_ball(graph, radius)
    vs = set(ball)
    edges = {}
    for g in ball:
        for s in graph.vertices:
            h = normal_form(graph, g + (s,))
            if h in vs:
                edges[frozenset((g, h))] = s
    return vs, edges


def compare_dual_with_cayley(action: ActionSpec, radius: int) -> dict:
    dual = cayley_dual(action, radius)
    elem = dual.vertices
    dual_v = set(elem.values())
    dual_e = {frozenset(elem[k] for k in e): s for e, s in dual.edges.items()}
    cay_v, cay_e = cayley_ball_graph(action.graph, radius)
    return {
        "radius": radius,
        "dual_vertices": len(dual.vertices),
        "cayley_vertices": len(cay_v),
        "dual_edges": len(dual_e),
        "cayley_edges": len(cay_e),
        "injective": len(dual_v) == len(dual.vertices),
        "isomorphic": dual_v == cay_v and dual_e == cay_e,
        "multiplicities": sorted(set(dual.multiplicity.values())),
    }
