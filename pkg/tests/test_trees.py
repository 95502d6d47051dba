import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paritykit.errors import UndefinedTree
from paritykit.trees import (
    LEAF,
    OrderedTree,
    depth,
    embed,
    enumerate_trees,
    is_universal_for,
    n_strahler,
    universal_tree,
)


def T(*kids):
    return OrderedTree(tuple(kids))


def backtracking_embed(t, host):
    """Exhaustive search over all strictly increasing child assignments."""
    if t.is_leaf:
        return True
    m, k = len(t.children), len(host.children)
    if m > k:
        return False
    for combo in itertools.combinations(range(k), m):
        if all(backtracking_embed(c, host.children[j]) for c, j in zip(t.children, combo)):
            return True
    return False


def figure_tree():
    # the depth-4 example tree from the worked Strahler illustration
    c1 = T(T(LEAF), T(LEAF), LEAF)
    c2 = T(T(LEAF, LEAF, LEAF))
    c3 = T(LEAF, LEAF)
    c4 = T(LEAF, T(LEAF, LEAF, LEAF))
    c5 = T(T(LEAF, LEAF), T(LEAF, LEAF))
    return T(c1, c2, c3, c4, c5)


def complete_binary(h):
    t = LEAF
    for _ in range(h - 1):
        t = T(t, t)
    return t


def random_tree(rng, max_depth, max_branch):
    if max_depth == 1 or rng.random() < 0.3:
        return LEAF
    deg = rng.randint(0, max_branch)
    return T(*[random_tree(rng, max_depth - 1, max_branch) for _ in range(deg)])


class TestDepth:
    def test_leaf(self):
        assert depth(LEAF) == 1

    def test_unary(self):
        assert depth(T(LEAF)) == 2

    def test_figure_tree(self):
        assert depth(figure_tree()) == 4


class TestStrahler:
    def test_leaf(self):
        assert n_strahler(LEAF, 1) == 1
        assert n_strahler(LEAF, 5) == 1

    def test_figure_tree(self):
        # The recursive definition bumps at >= n+1 equal children, which on
        # this tree yields 3 at n=2 (the caption's count matches the n=2 run).
        t = figure_tree()
        assert n_strahler(t, 2) == 3
        assert n_strahler(t, 3) == 2

    def test_classical_strahler_on_complete_binary(self):
        for h in range(1, 6):
            assert n_strahler(complete_binary(h), 1) == h

    def test_bounded_by_depth(self):
        rng = random.Random(5)
        for _ in range(100):
            t = random_tree(rng, 4, 3)
            for n in (1, 2, 3):
                assert n_strahler(t, n) <= depth(t)

    def test_antitone_in_n(self):
        rng = random.Random(6)
        for _ in range(100):
            t = random_tree(rng, 4, 4)
            values = [n_strahler(t, n) for n in (1, 2, 3, 4)]
            assert values == sorted(values, reverse=True)


class TestEmbed:
    def test_identity(self):
        t = figure_tree()
        e = embed(t, t)
        assert e is not None
        assert all(p == q for p, q in e.mapping.items())
        assert e.check(t, t)

    def test_too_few_children(self):
        assert embed(T(LEAF, LEAF), T(LEAF)) is None

    def test_agrees_with_backtracking_oracle_small(self):
        smalls = enumerate_trees(5, 4, 4)
        hosts = enumerate_trees(6, 4, 4)
        for t in smalls:
            for h in hosts:
                got = embed(t, h)
                assert (got is not None) == backtracking_embed(t, h)
                if got is not None:
                    assert got.check(t, h)

    def test_embedding_bounds_strahler(self):
        rng = random.Random(8)
        for _ in range(150):
            t = random_tree(rng, 4, 3)
            h = random_tree(rng, 4, 3)
            if embed(t, h) is not None:
                for n in (1, 2, 3):
                    assert n_strahler(t, n) <= n_strahler(h, n)

    def test_transitive(self):
        rng = random.Random(9)
        found = 0
        for _ in range(400):
            a = random_tree(rng, 3, 2)
            b = random_tree(rng, 4, 3)
            c = random_tree(rng, 4, 3)
            if embed(a, b) is not None and embed(b, c) is not None:
                found += 1
                assert embed(a, c) is not None
        assert found > 10


class TestUniversalTree:
    def test_base_case(self):
        for n in (1, 2, 3):
            assert universal_tree(n, 1, 1, 2) == LEAF

    def test_undefined(self):
        with pytest.raises(UndefinedTree):
            universal_tree(2, 3, 2, 2)
        with pytest.raises(UndefinedTree):
            universal_tree(2, 0, 1, 2)

    def test_2_2_2_3(self):
        u = universal_tree(2, 2, 2, 3)
        assert depth(u) == 2
        assert n_strahler(u, 2) == 2

    def test_strahler_exact_when_width_suffices(self):
        for n in (1, 2):
            for d in (1, 2, 3):
                for k in range(1, d + 1):
                    u = universal_tree(n, k, d, n + 1)
                    assert depth(u) == d
                    assert n_strahler(u, n) == k

    def test_universal_for_bounded_family(self):
        # finite instance of the universality guarantee
        for n in (1, 2):
            for d in (1, 2, 3):
                for k in range(1, d + 1):
                    for w in (1, 2, 3):
                        u = universal_tree(n, k, d, w)
                        family = [
                            t
                            for t in enumerate_trees(1 + w + w * w + w ** 3, d, w)
                            if n_strahler(t, n) <= k
                        ]
                        ok, bad = is_universal_for(u, family)
                        assert ok, f"n={n} k={k} d={d} w={w} missed {bad}"


class TestIsUniversalFor:
    def test_leaf_always_embeds(self):
        assert is_universal_for(figure_tree(), [LEAF]) == (True, None)

    def test_leaf_host_fails(self):
        ok, bad = is_universal_for(LEAF, [T(LEAF)])
        assert not ok and bad == T(LEAF)


class TestEnumerate:
    def test_single(self):
        assert enumerate_trees(1, 3, 3) == [LEAF]

    def test_hand_count(self):
        got = set(enumerate_trees(3, 2, 2))
        assert got == {LEAF, T(LEAF), T(LEAF, LEAF)}

    def test_catalan_counts(self):
        # ordered trees with n nodes and no branching cap: Catalan(n-1)
        for n, catalan in [(1, 1), (2, 1), (3, 2), (4, 5), (5, 14)]:
            exact = [t for t in enumerate_trees(n, n, n) if t.node_count() == n]
            assert len(exact) == catalan

    def test_unique_and_within_bounds(self):
        trees = enumerate_trees(6, 3, 3)
        assert len(trees) == len(set(trees))
        for t in trees:
            assert t.node_count() <= 6
            assert depth(t) <= 3
            assert all(len(n.children) <= 3 for n in _nodes(t))


def _nodes(t):
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


trees_strategy = st.recursive(
    st.just(LEAF),
    lambda kids: st.lists(kids, max_size=4).map(lambda ks: T(*ks)),
    max_leaves=12,
)


class TestProperties:
    @given(trees_strategy, st.integers(1, 4))
    @settings(max_examples=120, deadline=None)
    def test_strahler_bounded_by_depth(self, t, n):
        assert 1 <= n_strahler(t, n) <= depth(t)

    @given(trees_strategy, st.integers(1, 3), st.integers(0, 2))
    @settings(max_examples=120, deadline=None)
    def test_strahler_antitone_in_n(self, t, n, extra):
        assert n_strahler(t, n + extra) <= n_strahler(t, n)

    @given(trees_strategy, trees_strategy, st.integers(1, 3))
    @settings(max_examples=120, deadline=None)
    def test_embedding_is_strahler_monotone(self, t, host, n):
        if embed(t, host) is not None:
            assert n_strahler(t, n) <= n_strahler(host, n)


class TestBrackets:
    @given(st.integers(0, 100000))
    @settings(max_examples=80, deadline=None)
    def test_round_trip(self, seed):
        t = random_tree(random.Random(seed), 4, 3)
        assert OrderedTree.from_brackets(t.to_brackets()) == t

    @given(trees_strategy)
    @settings(max_examples=80, deadline=None)
    def test_round_trip_generated(self, t):
        assert OrderedTree.from_brackets(t.to_brackets()) == t
