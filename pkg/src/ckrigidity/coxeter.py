"""Right-angled Coxeter groups given by a defining graph.

Group elements are handled through ShortLex normal forms over the declared
vertex order.  Words are tuples of generator labels.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

INF = math.inf

Word = tuple  # tuple[str, ...]


class GraphError(ValueError):
    """Malformed defining graph or unknown generator label."""


@dataclass(frozen=True)
class DefiningGraph:
    """Finite simplicial graph; an edge means the two generators commute."""

    vertices: tuple
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex labels")
        edges = set()
        for e in self.edges:
            pair = tuple(str(x) for x in e)
            if len(pair) != 2:
                raise GraphError(f"edge {e!r} is not a pair")
            u, v = pair
            if u == v:
                raise GraphError(f"loop at {u!r}")
            if u not in verts or v not in verts:
                raise GraphError(f"edge {e!r} has an endpoint outside the vertex set")
            edges.add(frozenset(pair))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))
        index = {v: i for i, v in enumerate(verts)}
        n = len(verts)
        comm = [[False] * n for _ in range(n)]
        for e in edges:
            u, v = tuple(e)
            comm[index[u]][index[v]] = comm[index[v]][index[u]] = True
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_comm", tuple(tuple(r) for r in comm))

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable) -> "DefiningGraph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    @classmethod
    def from_json(cls, source) -> "DefiningGraph":
        """Read ``{"vertices": [...], "edges": [[u, v], ...]}`` from a path, str or dict."""
        if isinstance(source, (str, Path)) and Path(source).exists():
            data = json.loads(Path(source).read_text())
        elif isinstance(source, str):
            data = json.loads(source)
        else:
            data = source
        try:
            return cls.from_edges(data["vertices"], data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"bad graph document: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": sorted(sorted(e, key=self._index.get) for e in self.edges),
        }

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown generator {label!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return self._comm[self.index(u)][self.index(v)]

    def commute(self, u: str, v: str) -> bool:
        return u == v or self.adjacent(u, v)

    def neighbors(self, u: str) -> set:
        i = self.index(u)
        return {v for j, v in enumerate(self.vertices) if self._comm[i][j]}

    def check_word(self, w: Iterable) -> Word:
        w = tuple(w)
        for x in w:
            self.index(x)
        return w


# -- word problem -----------------------------------------------------------

def _reduce(graph: DefiningGraph, idx: Sequence[int]) -> list:
    """Cancel s..s pairs separated only by letters commuting with s."""
    comm = graph._comm
    out: list = []
    for s in idx:
        for pos in range(len(out) - 1, -1, -1):
            t = out[pos]
            if t == s:
                del out[pos]
                break
            if not comm[s][t]:
                out.append(s)
                break
        else:
            out.append(s)
    return out


def _shortlex(graph: DefiningGraph, idx: list) -> tuple:
    """Lexicographically least rearrangement of a reduced word under commutations."""
    comm = graph._comm
    n = len(idx)
    # blockers[i]: earlier letters that must stay before idx[i]
    blockers = [sum(1 for j in range(i) if not comm[idx[i]][idx[j]]) for i in range(n)]
    used = [False] * n
    out = []
    for _ in range(n):
        best = min((i for i in range(n) if not used[i] and blockers[i] == 0), key=idx.__getitem__)
        used[best] = True
        out.append(idx[best])
        for i in range(best + 1, n):
            if not used[i] and not comm[idx[i]][idx[best]]:
                blockers[i] -= 1
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _nf_idx_cached(graph: DefiningGraph, idx: tuple) -> tuple:
    return _shortlex(graph, _reduce(graph, idx))


def _nf_idx(graph: DefiningGraph, idx: Sequence[int]) -> tuple:
    return _nf_idx_cached(graph, tuple(idx))


def normal_form(graph: DefiningGraph, w: Iterable) -> Word:
    """ShortLex normal form of the element represented by ``w``.

    >>> g = DefiningGraph.from_edges("ab", [])
    >>> normal_form(g, "abba")
    ()
    """
    w = graph.check_word(w)
    nf = _nf_idx(graph, [graph.index(x) for x in w])
    return tuple(graph.vertices[i] for i in nf)


def multiply(graph: DefiningGraph, *words: Iterable) -> Word:
    return normal_form(graph, itertools.chain.from_iterable(words))


def inverse(w: Iterable) -> Word:
    """Letters are involutions, so the inverse is the reversed word."""
    return tuple(reversed(tuple(w)))


def product_order(graph: DefiningGraph, i: str, j: str):
    """Order of s_i s_j: 1, 2, or ``math.inf``."""
    graph.index(i)
    graph.index(j)
    if i == j:
        return 1
    return 2 if graph.adjacent(i, j) else INF


def is_finite(graph: DefiningGraph) -> bool:
    n = len(graph.vertices)
    return len(graph.edges) == n * (n - 1) // 2


is_abelian = is_finite


def center_generators(graph: DefiningGraph) -> set:
    """Vertices adjacent to every other vertex (each spans a Z/2 direct factor)."""
    n = len(graph.vertices)
    return {v for v in graph.vertices if len(graph.neighbors(v)) == n - 1}


def special_subgroup(graph: DefiningGraph, subset: Iterable) -> DefiningGraph:
    subset = set(subset)
    unknown = subset - set(graph.vertices)
    if unknown:
        raise GraphError(f"not vertices of the graph: {sorted(unknown)}")
    verts = tuple(v for v in graph.vertices if v in subset)
    edges = frozenset(e for e in graph.edges if e <= subset)
    return DefiningGraph(verts, edges)


def enumerate_ball(graph: DefiningGraph, n: int) -> list:
    """Normal forms of all elements of word length <= n, by length then ShortLex."""
    if n < 0:
        raise ValueError("radius must be non-negative")
    seen = {()}
    layers = [[()]]
    gens = range(len(graph.vertices))
    for _ in range(n):
        nxt = []
        for w in layers[-1]:
            for s in gens:
                u = _nf_idx(graph, w + (s,))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        if not nxt:
            break
        layers.append(sorted(nxt))
    names = graph.vertices
    return [tuple(names[i] for i in w) for layer in layers for w in layer]


def ball_sizes(graph: DefiningGraph, n: int) -> list:
    """Number of elements of each exact length 0..n."""
    counts = [0] * (n + 1)
    for w in enumerate_ball(graph, n):
        counts[len(w)] += 1
    return counts


def chordless_four_cycles(graph: DefiningGraph) -> list:
    """Induced 4-cycles, each as a tuple (a, b, c, d) with a,c and b,d the non-adjacent pairs."""
    verts = graph.vertices
    found = set()
    for quad in itertools.combinations(verts, 4):
        for a, b, c, d in ((quad[0], quad[1], quad[2], quad[3]),
                           (quad[0], quad[2], quad[1], quad[3]),
                           (quad[0], quad[1], quad[3], quad[2])):
            ring = [(a, b), (b, c), (c, d), (d, a)]
            if all(graph.adjacent(x, y) for x, y in ring) and not graph.adjacent(a, c) \
                    and not graph.adjacent(b, d):
                found.add(frozenset(quad))
    out = []
    for quad in found:
        q = sorted(quad, key=graph.index)
        a = q[0]
        c = next(x for x in q[1:] if not graph.adjacent(a, x))
        b, d = [x for x in q if x not in (a, c)]
        out.append((a, b, c, d))
    return sorted(out, key=lambda t: [graph.index(x) for x in t])


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    return tuple(x.strip() for x in text.split(","))


def fig7_graph() -> DefiningGraph:
    """The eight-generator graph: two 4-cycles v*, w* joined through v1, v3, w2, w4."""
    verts = ("v1", "v2", "v3", "v4", "w1", "w2", "w3", "w4")
    edges = [
        ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1"),
        ("w1", "w2"), ("w2", "w3"), ("w3", "w4"), ("w4", "w1"),
        ("v1", "w2"), ("w2", "v3"), ("v3", "w4"), ("w4", "v1"),
    ]
    return DefiningGraph.from_edges(verts, edges)
