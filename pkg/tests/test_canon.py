import random

import pytest
from hypothesis import given, settings, strategies as st

from wlgroups.canon import (
    CanonicalClass, EdgeColoredGraph, Mode, SizeMismatch, canonical_class, canonical_form,
    color_isomorphic,
)


def complete(n, cols):
    return EdgeColoredGraph(n, Mode.COMPLETE, tuple(cols))


def test_loops_multiset():
    a = EdgeColoredGraph.loops([3, 1, 3])
    b = EdgeColoredGraph.loops([1, 3, 3])
    assert canonical_class(a) == canonical_class(b)
    assert canonical_class(a) != canonical_class(EdgeColoredGraph.loops([1, 1, 3]))


def test_cycle_vs_two_swaps():
    # a directed 4-cycle and two directed 2-cycles both have four edges of color 1
    c4 = [[0] * 4 for _ in range(4)]
    for i in range(4):
        c4[i][(i + 1) % 4] = 1
    two = [[0] * 4 for _ in range(4)]
    for a, b in [(0, 1), (1, 0), (2, 3), (3, 2)]:
        two[a][b] = 1
    g1, g2 = EdgeColoredGraph.complete(c4), EdgeColoredGraph.complete(two)
    assert sorted(g1.colors) == sorted(g2.colors)
    assert not color_isomorphic(g1, g2)  # all 24 bijections fail
    assert canonical_class(g1) != canonical_class(g2)


def test_identical_and_different_multisets():
    g = EdgeColoredGraph.complete([[0, 1], [2, 0]])
    assert color_isomorphic(g, g)
    h = EdgeColoredGraph.complete([[0, 1], [1, 0]])
    assert not color_isomorphic(g, h)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        color_isomorphic(EdgeColoredGraph.loops([1]), EdgeColoredGraph.loops([1, 2]))
    with pytest.raises(SizeMismatch):
        color_isomorphic(EdgeColoredGraph.loops([1, 1]), EdgeColoredGraph.complete([[1, 0], [0, 1]]))


def test_invalid_graphs():
    with pytest.raises(ValueError):
        EdgeColoredGraph.loops([1, -1])
    with pytest.raises(ValueError):
        EdgeColoredGraph.complete([[0, 1, 2]])


def test_dump_load_round_trip():
    g = EdgeColoredGraph.complete([[0, 1, 2], [2, 0, 1], [1, 1, 3]])
    assert EdgeColoredGraph.load(g.dump()) == g
    h = EdgeColoredGraph.loops([4, 2, 2])
    assert EdgeColoredGraph.load(h.dump()) == h


def test_byte_encoding():
    g = EdgeColoredGraph.complete([[5, 9], [9, 5]])
    b = canonical_class(g).to_bytes()
    assert b[:4] == b"ECG1"
    assert b == canonical_class(g.permute([1, 0])).to_bytes()
    # palette keeps the actual colors, so a recolored graph encodes differently
    assert b != canonical_class(EdgeColoredGraph.complete([[1, 2], [2, 1]])).to_bytes()


def test_vertex_transitive_graph_fast():
    # the uniform graph on 40 vertices has a huge automorphism group
    n = 40
    cols = [0 if i == j else 1 for i in range(n) for j in range(n)]
    assert canonical_form(cols, n) == tuple(cols)


def test_trivial_sizes():
    assert canonical_class(EdgeColoredGraph.complete([[3]])).form == (3,)
    assert canonical_class(EdgeColoredGraph.loops([])).form == ()


# -- properties

graphs = st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 3), min_size=n * n, max_size=n * n)))


@settings(max_examples=150, deadline=None)
@given(graphs, st.randoms(use_true_random=False))
def test_relabel_invariance(g, rnd):
    n, cols = g
    G = complete(n, cols)
    sigma = list(range(n))
    rnd.shuffle(sigma)
    assert canonical_class(G) == canonical_class(G.permute(sigma))


@settings(max_examples=150, deadline=None)
@given(graphs, st.data())
def test_agrees_with_oracle(g, data):
    n, cols = g
    other = data.draw(st.lists(st.integers(0, 3), min_size=n * n, max_size=n * n))
    G1, G2 = complete(n, cols), complete(n, other)
    assert (canonical_class(G1) == canonical_class(G2)) == color_isomorphic(G1, G2)


@settings(max_examples=100, deadline=None)
@given(graphs)
def test_idempotent(g):
    n, cols = g
    c = canonical_class(complete(n, cols))
    assert canonical_class(complete(n, c.form)) == c


@settings(max_examples=100, deadline=None)
@given(graphs, st.data())
def test_recoloring_preserves_class_equality(g, data):
    n, cols = g
    rnd = random.Random(data.draw(st.integers(0, 10**6)))
    sigma = list(range(n))
    rnd.shuffle(sigma)
    G1 = complete(n, cols)
    G2 = G1.permute(sigma) if rnd.random() < 0.5 else complete(n, [rnd.randrange(4) for _ in cols])
    recolor = rnd.sample(range(100), 4)
    R1 = complete(n, [recolor[c] for c in G1.colors])
    R2 = complete(n, [recolor[c] for c in G2.colors])
    assert (canonical_class(G1) == canonical_class(G2)) == (canonical_class(R1) == canonical_class(R2))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(0, 2), min_size=n, max_size=n)),
       st.randoms(use_true_random=False))
def test_loops_relabel(cols, rnd):
    perm = list(range(len(cols)))
    rnd.shuffle(perm)
    g = EdgeColoredGraph.loops(cols)
    assert canonical_class(g) == canonical_class(g.permute(perm))


def test_classes_are_ordered():
    a = CanonicalClass(1, 2, (0, 1, 1, 0))
    b = CanonicalClass(1, 2, (0, 1, 2, 0))
    assert a < b
