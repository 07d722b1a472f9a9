"""The group acting on the truncated nerve tree.

Node maps come from flat images under the action; they are partial because
images may leave the truncation.  The fundamental subtree is assembled from
yes-components: for each generator s_i, the union over generators s_j whose
fixed set misses Fix(s_i) of the side of Fix(s_i) containing Fix(s_j),
together with Fix(s_i), and then the intersection over i.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .action import ActionSpec
from .complex import NerveTree


class TreeDomainError(ValueError):
    pass


class PreconditionError(TreeDomainError):
    pass


class RangeError(LookupError):
    pass


class StructuralViolation(AssertionError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class TreeAction:
    action: ActionSpec
    nerve: NerveTree
    maps: dict          # generator -> {node: image or None}

    @property
    def generators(self) -> tuple:
        return tuple(self.maps)

    def image(self, word, node: int) -> Optional[int]:
        """Apply a word (rightmost letter first) through the partial node maps."""
        for s in reversed(tuple(word)):
            if node is None:
                return None
            if s not in self.maps:
                raise TreeDomainError(f"generator {s!r} is not acted on")
            node = self.maps[s][node]
        return node

    def edge_image(self, word, edge) -> Optional[frozenset]:
        a, b = (self.image(word, x) for x in edge)
        if a is None or b is None:
            return None
        return frozenset((a, b))

    def inversions(self) -> list:
        """Edges whose endpoints some generator swaps."""
        out = []
        for s, m in self.maps.items():
            for p, c, _, _ in self.nerve.edges():
                if m[p] == c and m[c] == p:
                    out.append((s, p, c))
        return out


def induced_tree_action(action: ActionSpec, nerve: Optional[NerveTree] = None) -> TreeAction:
    nerve = nerve or action.nerve
    maps = {s: {n: action.node_image((s,), n) for n in nerve.nodes} for s in action.generators}
    ta = TreeAction(action, nerve, maps)
    bad = ta.inversions()
    if bad:
        raise StructuralViolation(
            "an isometry cannot invert an edge of the nerve tree, yet these are inverted: "
            f"{bad[:5]}", bad)
    return ta


@dataclass(frozen=True)
class FixedSet:
    word: tuple
    nodes: frozenset
    edges: frozenset

    @property
    def empty(self) -> bool:
        return not self.nodes


def _connected(nerve: NerveTree, nodes) -> bool:
    nodes = set(nodes)
    if not nodes:
        return True
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        x = stack.pop()
        for y in nerve.neighbors(x):
            if y in nodes and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == nodes


def fixed_set(ta: TreeAction, word) -> FixedSet:
    word = (word,) if isinstance(word, str) else tuple(word)
    nodes = frozenset(n for n in ta.nerve.nodes if ta.image(word, n) == n)
    edges = frozenset(frozenset((p, c)) for p, c, _, _ in ta.nerve.edges() if p in nodes and c in nodes)
    if not _connected(ta.nerve, nodes):
        raise StructuralViolation(f"fixed set of {''.join(word)} is disconnected", sorted(nodes))
    return FixedSet(word, nodes, edges)


def components(nerve: NerveTree, removed) -> list:
    """Connected components of the tree with the nodes ``removed`` deleted, as sorted frozensets."""
    removed = set(removed)
    seen, out = set(), []
    for start in sorted(nerve.nodes):
        if start in removed or start in seen:
            continue
        comp, stack = {start}, [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in nerve.neighbors(x):
                if y not in removed and y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


@dataclass(frozen=True)
class ComponentRecord:
    i: str
    j: str
    fixed_i: frozenset
    components: tuple
    yes: frozenset
    no: frozenset
    undefined: int   # nodes of the yes-component whose image leaves the truncation


def yes_no_components(ta: TreeAction, i: str, j: str) -> ComponentRecord:
    graph = ta.action.graph
    if i == j or graph.adjacent(i, j):
        raise PreconditionError(f"{i} and {j} commute; their fixed sets intersect")
    fi, fj = fixed_set(ta, (i,)), fixed_set(ta, (j,))
    if fj.empty:
        raise RangeError(f"Fix({j}) does not meet the truncation")
    if fi.nodes & fj.nodes:
        raise PreconditionError(f"Fix({i}) and Fix({j}) meet on the tree")
    comps = components(ta.nerve, fi.nodes)
    yes = next(c for c in comps if c & fj.nodes)
    image = {ta.image((i,), n) for n in yes}
    undefined = sum(1 for n in yes if ta.image((i,), n) is None)
    image.discard(None)
    return ComponentRecord(i, j, fi.nodes, tuple(comps), yes, frozenset(image), undefined)


def kl(ta: TreeAction, i: str) -> list:
    """Generators whose tree fixed set is nonempty and disjoint from Fix(s_i)."""
    fi = fixed_set(ta, (i,)).nodes
    out = []
    for j in ta.generators:
        if j == i or ta.action.graph.adjacent(i, j):
            continue
        fj = fixed_set(ta, (j,)).nodes
        if fj and not (fi & fj):
            out.append(j)
    return out


@dataclass
class FundamentalSubtree:
    nodes: frozenset
    labels: dict
    connected: bool
    convex: bool
    path: Optional[list]           # the nodes in path order when K is a path
    orbit_checks: int
    violations: list

    @property
    def ok(self) -> bool:
        return self.connected and self.convex and not self.violations

    def to_json(self) -> dict:
        return {
            "nodes": sorted(self.nodes),
            "labels": [self.labels[n] for n in (self.path or sorted(self.nodes))],
            "connected": self.connected,
            "convex": self.convex,
            "path": self.path,
            "orbit_checks": self.orbit_checks,
            "violations": self.violations[:10],
        }


def _convex(nerve: NerveTree, nodes) -> bool:
    nodes = sorted(nodes)
    return all(set(nerve.path(a, b)) <= set(nodes) for a in nodes for b in nodes)


def _as_path(nerve: NerveTree, nodes) -> Optional[list]:
    nodes = set(nodes)
    deg = {n: sum(1 for m in nerve.neighbors(n) if m in nodes) for n in nodes}
    if len(nodes) == 1:
        return list(nodes)
    ends = sorted(n for n, d in deg.items() if d == 1)
    if len(ends) != 2 or any(d > 2 for d in deg.values()):
        return None
    return nerve.path(*ends)


def orbit(ta: TreeAction, node: int, max_len: int = 6) -> set:
    """Nodes reachable from ``node`` by words of length <= max_len whose partial images stay defined."""
    seen = {node}
    frontier = [node]
    for _ in range(max_len):
        nxt = []
        for x in frontier:
            for m in ta.maps.values():
                y = m[x]
                if y is not None and y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def strict_fundamental_domain(ta: TreeAction, max_len: int = 6) -> FundamentalSubtree:
    nerve = ta.nerve
    K: Optional[set] = None
    for i in ta.generators:
        fi = fixed_set(ta, (i,)).nodes
        term = set(fi)
        for j in kl(ta, i):
            term |= yes_no_components(ta, i, j).yes
        K = term if K is None else K & term
    K = frozenset(K or ())
    violations = []
    checks = 0
    for n, node in sorted(nerve.nodes.items()):
        if node.depth > nerve.depth - 2:
            continue
        checks += 1
        hits = sorted(orbit(ta, n, max_len) & K)
        if len(hits) != 1:
            violations.append({"node": n, "label": node.label, "hits": hits})
    return FundamentalSubtree(
        K, {n: nerve.label(n) for n in K}, _connected(nerve, K), _convex(nerve, K),
        _as_path(nerve, K), checks, violations)


def fixed_sets_meet_domain(ta: TreeAction, K: FundamentalSubtree) -> dict:
    """Each generator's fixed set meets K."""
    return {s: bool(fixed_set(ta, (s,)).nodes & K.nodes) for s in ta.generators}
