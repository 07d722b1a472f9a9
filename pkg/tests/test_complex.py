from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ckrigidity import complex as cx
from ckrigidity.complex import GeomData, GeometryError, GluingLine, blocks, build_nerve


def brute_nerve_count(depth, line_range):
    """Count flats by walking label sequences: T2 spawns b- and c-lines, T1/T3 one family."""
    per = 2 * line_range + 1

    def walk(label, came, d):
        if d == depth:
            return 1
        fams = {"T2": ("b", "c"), "T1": ("b",), "T3": ("c",)}[label]
        total = 1
        for fam in fams:
            nxt = {"b": {"T2": "T1", "T1": "T2"}, "c": {"T2": "T3", "T3": "T2"}}[fam][label]
            total += (per - (fam == came)) * walk(nxt, fam, d + 1)
        return total

    return walk("T2", None, 0)


@pytest.mark.parametrize("depth,rng", [(0, 1), (1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (4, 1)])
def test_nerve_size(depth, rng):
    nerve = build_nerve(GeomData(), depth, rng)
    assert len(nerve) == cx.nerve_size(depth, rng) == brute_nerve_count(depth, rng)


def test_nerve_frozen_counts():
    assert [cx.nerve_size(d, 1) for d in range(5)] == [1, 7, 19, 79, 199]


def test_nerve_is_tree_with_label_rules(nerve2):
    assert sum(1 for _ in nerve2.edges()) == len(nerve2) - 1
    for p, c, fam, _ in nerve2.edges():
        labels = {nerve2.label(p), nerve2.label(c)}
        assert labels == ({"T1", "T2"} if fam == "b" else {"T2", "T3"})


def test_tree_path(nerve2):
    root = nerve2.root
    kids = nerve2.nodes[root].children
    t1 = next(k for k in kids if nerve2.label(k) == "T1")
    t3 = next(k for k in kids if nerve2.label(k) == "T3")
    assert nerve2.path(root, root) == [root]
    assert nerve2.path(t1, t3) == [t1, root, t3]


def test_root_children(nerve2):
    kids = nerve2.nodes[nerve2.root].children
    assert sorted(nerve2.label(k) for k in kids) == ["T1"] * 3 + ["T3"] * 3


def test_blocks_depth_two(blocks2):
    assert len(blocks2.barriers) == 13
    assert len(blocks2.blocks) == 14
    assert blocks2.is_tree()


@pytest.mark.parametrize("depth,rng", [(1, 1), (3, 1), (2, 2)])
def test_block_tree_is_tree(depth, rng):
    bt = blocks(build_nerve(GeomData(), depth, rng))
    assert bt.is_tree()
    for bid, members in bt.blocks.items():
        assert bt.kinds[bid] in "bc"


def test_barrier_in_two_blocks(nerve2, blocks2):
    for nid in blocks2.barriers:
        assert sorted(blocks2.kinds[b] for b in blocks2.node_blocks[nid]) == ["b", "c"]


def test_chart_angle_and_lengths():
    g = GeomData.from_json({"theta": ["1/3", "1/2", "1/4"], "lengths": [1, 2, 3, 4]})
    ch = cx.FlatChart.for_label(g, "T1")
    x, y = ch.point(1, 1)
    assert float(x) == pytest.approx(1 + 2 * 0.5) and float(y) == pytest.approx(2 * 3 ** 0.5 / 2)
    assert ch.coords(*ch.point(F(1, 3), F(-2, 5))) == (F(1, 3), F(-2, 5))


def test_unit_pi_over_three_norm():
    ch = cx.FlatChart.for_label(GeomData(theta2=F(1, 3)), "T2")
    x, y = ch.point(1, 1)
    assert float(x) ** 2 + float(y) ** 2 == pytest.approx(3)


@pytest.mark.parametrize("doc", [{"theta": ["0", "1/2", "1/2"]}, {"lengths": [1, 0, 1, 1]},
                                 {"theta": ["2/3", "1/2", "1/2"]}, {"theta": ["x"]}])
def test_bad_geometry(doc):
    with pytest.raises((GeometryError, ValueError)):
        GeomData.from_json(doc)


@given(st.integers(1, 6))
def test_link_girth_two_pi(k):
    g = GeomData(F(k, 12), F(k, 12), F(7 - k, 12) if k < 7 else F(1, 2))
    assert cx.link_girth(g, "vertex") == 2
    assert cx.link_girth(g, GluingLine(0, "b", 0)) == 2
    assert cx.link_girth(g, GluingLine(0, "c", 3)) == 2


def test_link_bad_location():
    with pytest.raises(GeometryError):
        cx.link_girth(GeomData(), GluingLine(0, "a", 0))


def test_dot_output(nerve2, blocks2):
    dot = cx.nerve_dot(nerve2, highlight=[0])
    assert dot.startswith("graph nerve {") and 'label="T2"' in dot and "fillcolor" in dot
    assert cx.block_dot(blocks2).count("--") == 13


def test_find_by_steps(nerve2):
    nid = nerve2.find([("b", 1)])
    assert nerve2.label(nid) == "T1"
    with pytest.raises(KeyError):
        nerve2.find([("c", 7)])
