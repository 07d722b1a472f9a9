import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ckrigidity import geodesic as G
from ckrigidity.geodesic import PointRef

from oracles import brute_geodesic_length

TOL = 1e-9


def P(f, s, t):
    return PointRef(f, (s, t))


def random_pairs(nerve, n, seed):
    rng = np.random.default_rng(seed)
    ids = sorted(nerve.nodes)
    for _ in range(n):
        a, b = rng.choice(ids, 2)
        yield (P(int(a), *rng.uniform(-1, 1, 2)), P(int(b), *rng.uniform(-1, 1, 2)))


def chain_objective(nerve, p, q):
    """Length as a function of crossing positions, built straight from the charts."""
    flats = nerve.path(p.flat, q.flat)

    def xy(flat, pt):
        (ax, ay), (bx, by) = (tuple(float(v) for v in e) for e in nerve.chart(flat).basis())
        s, t = (float(c) for c in pt)
        return np.array([s * ax + t * bx, s * ay + t * by])

    def line(flat, other):
        fam, k = nerve.line_to_neighbor(flat, other)
        origin = np.array([float(v) for v in nerve.chart(flat).line_point(fam, k, 0)])
        return origin, np.array(nerve.chart(flat).line_frame(fam, k)[1])

    lines = [(line(a, b), line(b, a)) for a, b in zip(flats, flats[1:])]
    start, end = xy(p.flat, p.coords), xy(q.flat, q.coords)

    def f(us):
        total, cur = 0.0, start
        for u, ((oa, da), (ob, db)) in zip(us, lines):
            total += np.linalg.norm(oa + u * da - cur)
            cur = ob + u * db
        return total + np.linalg.norm(end - cur)

    return f, len(flats) - 1


def test_tree_chain(nerve2):
    root = nerve2.root
    t1 = nerve2.find([("b", 0)])
    t3 = nerve2.find([("c", 1)])
    assert G.tree_chain(nerve2, t1, t1).flats == (t1,)
    ch = G.tree_chain(nerve2, root, t1)
    assert ch.flats == (root, t1) and ch.lines == (("b", 0, 0),)
    assert G.tree_chain(nerve2, t1, t3).flats == (t1, root, t3)
    with pytest.raises(G.GeodesicInputError):
        G.tree_chain(nerve2, 0, 10_000)


def test_same_flat_straight(nerve2):
    path = G.geodesic(nerve2, P(0, 0, 0), P(0, 3, 4))
    assert path.length == pytest.approx(5) and path.crossings == ()


def test_adjacent_aligned_feet(nerve2):
    t1 = nerve2.find([("b", 0)])
    # root point 1 above b-line 0 at arclength 0.5; child point 1 off its line 0 at the same arclength
    path = G.geodesic(nerve2, P(0, 0.5, 1), P(t1, 1, 0.5))
    assert path.length == pytest.approx(2, abs=TOL)
    assert path.crossings[0] == pytest.approx(0.5, abs=1e-7)


@pytest.mark.parametrize("h1,h2,a,b", [(1, 2, 0.0, 3.0), (0.3, 0.7, -1.0, 0.4), (2, 0.1, 0.5, 0.5)])
def test_unfolding_two_flats(nerve2, h1, h2, a, b):
    t1 = nerve2.find([("b", 0)])
    path = G.geodesic(nerve2, P(0, a, h1), P(t1, h2, b))
    assert path.length == pytest.approx(math.hypot(b - a, h1 + h2), abs=TOL)


def test_three_flat_chain_against_mesh(nerve2):
    t1, t3 = nerve2.find([("b", 1)]), nerve2.find([("c", -1)])
    p, q = P(t1, 0.7, 0.2), P(t3, -0.4, 0.9)
    L = G.geodesic(nerve2, p, q).length
    for h in (0.2, 0.1, 0.05):
        m = G.mesh_length(nerve2, p, q, h)
        assert L <= m + TOL and m - L <= 2 * h


def test_mesh_gap_shrinks(nerve2):
    p, q = P(nerve2.find([("b", -1)]), 0.31, 0.77), P(nerve2.find([("c", 1)]), -0.52, 0.13)
    L = G.geodesic(nerve2, p, q).length
    gaps = [G.mesh_length(nerve2, p, q, h) - L for h in (0.2, 0.1, 0.05)]
    assert all(g >= -TOL for g in gaps)
    assert gaps[2] <= gaps[0] + TOL


def test_matches_generic_optimizer(nerve2):
    for p, q in random_pairs(nerve2, 15, seed=5):
        f, k = chain_objective(nerve2, p, q)
        path = G.geodesic(nerve2, p, q)
        assert f(list(path.crossings)) == pytest.approx(path.length, abs=1e-9)
        if k:
            assert path.length <= brute_geodesic_length(f, k) + 1e-7


def test_corner_case_escapes_kink(nerve2):
    # through the point where b-line 0 meets c-line 0 the in-root segment can vanish
    t1, t3 = nerve2.find([("b", 0)]), nerve2.find([("c", 0)])
    p, q = P(t1, 1, 0.05), P(t3, 0.05, 1)
    f, k = chain_objective(nerve2, p, q)
    path = G.geodesic(nerve2, p, q)
    assert path.length <= brute_geodesic_length(f, k, start=[0.3, -0.3]) + 1e-7
    assert max(G.optimality_gaps(nerve2, path)) < 1e-9


def test_symmetry_and_optimality(nerve2):
    for p, q in random_pairs(nerve2, 20, seed=9):
        a = G.geodesic(nerve2, p, q)
        assert a.length == pytest.approx(G.geodesic(nerve2, q, p).length, abs=3 * TOL)
        assert max(G.optimality_gaps(nerve2, a), default=0) < 1e-8


@given(st.integers(0, 10_000))
def test_triangle_inequality(nerve2, seed):
    rng = np.random.default_rng(seed)
    ids = sorted(nerve2.nodes)
    a, b, c = (P(int(rng.choice(ids)), *rng.uniform(-1, 1, 2)) for _ in range(3))
    d = lambda x, y: G.distance(nerve2, x, y)  # noqa: E731
    assert d(a, c) <= d(a, b) + d(b, c) + 3 * TOL


def test_bad_tol(nerve2):
    with pytest.raises(G.GeodesicInputError):
        G.geodesic(nerve2, P(0, 0, 0), P(0, 1, 1), tol=0)


def test_non_convergence_reports(nerve2):
    t1, t3 = nerve2.find([("b", 1)]), nerve2.find([("c", -1)])
    with pytest.raises(G.ConvergenceError) as exc:
        G.geodesic(nerve2, P(t1, 0.7, 0.2), P(t3, -0.4, 0.9), tol=1e-300, max_sweeps=1)
    assert "length" in exc.value.diagnostics


def test_point_parse():
    assert PointRef.parse("3:0.5,-1") == P(3, 0.5, -1.0)
    with pytest.raises(G.GeodesicInputError):
        PointRef.parse("3:0.5")


# -- angles ----------------------------------------------------------------------

def test_comparison_angle_flat_cases(nerve2):
    assert G.comparison_angle(nerve2, P(0, 0, 0), P(0, 1, 0), P(0, -2, 0)) == pytest.approx(math.pi)
    assert G.comparison_angle(nerve2, P(0, 0, 0), P(0, 1, 0), P(0, 0, 1)) == pytest.approx(math.pi / 2)
    with pytest.raises(G.GeodesicInputError):
        G.comparison_angle(nerve2, P(0, 0, 0), P(0, 0, 0), P(0, 1, 1))


def test_comparison_angle_monotone_along_geodesic(nerve2):
    x = P(0, 0.3, 0.2)
    p = P(nerve2.find([("b", 0)]), 0.2, 0.5)
    far = G.geodesic(nerve2, x, P(nerve2.find([("c", 0)]), 2.0, 0.3))
    angles = [G.comparison_angle(nerve2, x, p, far.point_at(nerve2, t))
              for t in np.linspace(0.3, far.length, 8)]
    assert all(0 < a < math.pi for a in angles)
    assert all(b <= a + 1e-9 for a, b in zip(angles, angles[1:]))


# -- rays, itineraries, cone -------------------------------------------------------

def test_rays(nerve2, blocks2):
    base = P(0, 0, 0)
    bblock = blocks2.block_of(0, "b")
    r = G.ray_toward_pole(nerve2, blocks2, base, bblock, "b+")
    assert r.direction == pytest.approx((1.0, 0.0))
    assert G.ray_toward_pole(nerve2, blocks2, base, bblock, "b-").direction == pytest.approx((-1.0, 0.0))
    with pytest.raises(G.GeodesicInputError):
        G.ray_toward_pole(nerve2, blocks2, base, bblock, "d+")
    with pytest.raises(G.GeodesicInputError):
        G.ray_toward_pole(nerve2, blocks2, base, bblock, "c+")


def test_itinerary_examples(nerve2, blocks2):
    t1, t3 = nerve2.find([("b", 0)]), nerve2.find([("c", 0)])
    ray = G.ray_toward_pole(nerve2, blocks2, P(t1, 0.2, 0.1), blocks2.block_of(t1, "b"), "b+")
    assert len(G.itinerary(nerve2, blocks2, ray, 5)) == 1
    path = G.geodesic(nerve2, P(t1, 0.5, 0.3), P(t3, 0.4, 0.6))
    assert G.itinerary(nerve2, blocks2, path) == [blocks2.block_of(t1, "b"), blocks2.block_of(t3, "c")]
    point = G.geodesic(nerve2, P(t1, 0.5, 0.3), P(t1, 0.5, 0.3))
    assert G.itinerary(nerve2, blocks2, point) == [blocks2.block_of(t1, "b")]
    barrier = G.geodesic(nerve2, P(0, 0.5, 0.3), P(0, 0.4, 0.6))
    assert len(G.itinerary(nerve2, blocks2, barrier)) == 2


def test_itinerary_entries_adjacent(nerve2, blocks2):
    for p, q in random_pairs(nerve2, 25, seed=2):
        it = G.itinerary(nerve2, blocks2, G.geodesic(nerve2, p, q))
        assert all(a in blocks2.blocks for a in it)
        for a, b in zip(it, it[1:]):
            assert frozenset((a, b)) in blocks2.adjacency


def test_cone_neighbourhood(nerve2, blocks2):
    x = P(0, 0, 0.3)
    xi = G.ray_toward_pole(nerve2, blocks2, x, blocks2.block_of(0, "b"), "b+")
    assert G.cone_neighborhood_contains(nerve2, x, xi, 2, 1e-6, P(0, 5, 0.3))
    assert not G.cone_neighborhood_contains(nerve2, x, xi, 2, 10, P(0, 1, 0.3))
    with pytest.raises(G.GeodesicInputError):
        G.cone_neighborhood_contains(nerve2, x, xi, 0, 1, P(0, 5, 0.3))


@pytest.mark.parametrize("delta", [0.01, 0.05, 0.2, 0.4])
def test_cone_matches_planar_formula(nerve2, blocks2, delta):
    x = P(0, 0, 0.3)
    xi = G.ray_toward_pole(nerve2, blocks2, x, blocks2.block_of(0, "b"), "b+")
    z, R, eps = P(0, 8, 0.3 + delta), 4.0, 0.1
    # point at arclength R toward z versus along the ray, in one flat
    exact = R * np.linalg.norm(np.array([8, delta]) / math.hypot(8, delta) - np.array([1, 0]))
    assert G.cone_neighborhood_contains(nerve2, x, xi, R, eps, z) == (exact < eps)


def test_cone_ray_against_ray(nerve2, blocks2):
    x = P(0, 0, 0)
    xi = G.ray_toward_pole(nerve2, blocks2, x, blocks2.block_of(0, "b"), "b+")
    other = G.RaySpec(P(0, 0, 1), xi.direction)
    assert G.cone_neighborhood_contains(nerve2, x, xi, 3, 1e-6, other)
    with pytest.raises(G.GeodesicRangeError):
        G.cone_neighborhood_contains(nerve2, x, xi, 3, 1e-6, G.RaySpec(P(1, 0, 0), (1.0, 0.0)))
