"""Finite ordered trees: depth, n-Strahler numbers, order-preserving
embeddings, finite universal-tree construction and enumeration."""

from dataclasses import dataclass, field
from itertools import product

from .errors import PreconditionFailed, UndefinedTree


@dataclass(frozen=True)
class OrderedTree:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(tuple(hash(c) for c in self.children)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, OrderedTree):
            return NotImplemented
        return self._hash == other._hash and self.children == other.children

    @property
    def is_leaf(self):
        return not self.children

    def node_count(self):
        return 1 + sum(c.node_count() for c in self.children)

    def to_brackets(self):
        """Bracket text: leaf = "()", node = "(" + children + ")"."""
        return "(" + "".join(c.to_brackets() for c in self.children) + ")"

    @staticmethod
    def from_brackets(text):
        text = text.strip()
        pos = 0

        def parse():
            nonlocal pos
            if pos >= len(text) or text[pos] != "(":
                raise PreconditionFailed("brackets", f"expected '(' at {pos}")
            pos += 1
            kids = []
            while pos < len(text) and text[pos] == "(":
                kids.append(parse())
            if pos >= len(text) or text[pos] != ")":
                raise PreconditionFailed("brackets", f"expected ')' at {pos}")
            pos += 1
            return OrderedTree(tuple(kids))

        t = parse()
        if pos != len(text):
            raise PreconditionFailed("brackets", "trailing characters")
        return t

    def __repr__(self):
        return f"OrderedTree{self.to_brackets()!r}"


LEAF = OrderedTree()


def depth(t):
    """Leaf has depth 1; a node adds one to its deepest child."""
    best = 0
    stack = [(t, 1)]
    while stack:
        node, d = stack.pop()
        if d > best:
            best = d
        for c in node.children:
            stack.append((c, d + 1))
    return best


def n_strahler(t, n):
    """Bumps by one exactly when at least n+1 children attain the current max."""
    if n < 1:
        raise PreconditionFailed("n_strahler", "n must be >= 1")
    memo = {}

    def rec(node):
        got = memo.get(node)
        if got is not None:
            return got
        if node.is_leaf:
            memo[node] = 1
            return 1
        vals = [rec(c) for c in node.children]
        m = max(vals)
        out = m + 1 if vals.count(m) >= n + 1 else m
        memo[node] = out
        return out

    return rec(t)


@dataclass(frozen=True)
class Embedding:
    """Maps each embedded node's child-index path to its image path in the host."""

    mapping: dict = field(hash=False)

    def check(self, t, host):
        """Validate root-to-root, per-node strict order preservation and totality."""

        def node_at(tree, path):
            for i in path:
                tree = tree.children[i]
            return tree

        if self.mapping.get(()) != ():
            return False
        for path, image in self.mapping.items():
            if len(path) != len(image):
                return False
            if path and (path[:-1] not in self.mapping or self.mapping[path[:-1]] != image[:-1]):
                return False
            try:
                node_at(t, path), node_at(host, image)
            except IndexError:
                return False
        seen = set()
        stack = [()]
        while stack:
            p = stack.pop()
            seen.add(p)
            node = node_at(t, p)
            images = []
            for i in range(len(node.children)):
                child = p + (i,)
                if child not in self.mapping:
                    return False
                images.append(self.mapping[child][-1])
                stack.append(child)
            if images != sorted(set(images)) or len(set(images)) != len(images):
                return False
        return seen == set(self.mapping)


def embed(t, host):
    """Greedy leftmost isomorphic embedding, or None.

    Greedy is exact here: whether child t_i fits under host child h_j does
    not depend on where the other children go, so any embedding can be
    exchanged child by child into the leftmost one.
    """
    memo = {}

    def fits(a, b):
        key = (id(a), id(b))
        got = memo.get(key)
        if got is not None:
            return got
        j = 0
        hosts = b.children
        for c in a.children:
            while j < len(hosts) and not fits(c, hosts[j]):
                j += 1
            if j == len(hosts):
                memo[key] = False
                return False
            j += 1
        memo[key] = True
        return True

    if not fits(t, host):
        return None
    mapping = {(): ()}

    def assign(a, b, path, image):
        j = 0
        hosts = b.children
        for i, c in enumerate(a.children):
            while not fits(c, hosts[j]):
                j += 1
            mapping[path + (i,)] = image + (j,)
            assign(c, hosts[j], path + (i,), image + (j,))
            j += 1

    assign(t, host, (), ())
    return Embedding(mapping)


def universal_tree(n, k, d, w):
    """Finite truncation of the universal tree: omega-blocks become w copies.

    The n-Strahler number of the result equals k whenever w >= n+1 (a
    truncated block of fewer than n+1 equal children cannot force the bump).
    Universality is guaranteed for candidates of branching degree <= w.
    """
    if n < 1 or w < 1:
        raise PreconditionFailed("universal_tree", "n and w must be positive")
    if k == 0 or k > d:
        raise UndefinedTree(f"U(n={n},k={k},d={d}) is undefined")
    memo = {}

    def build(kk, dd):
        if (kk, dd) in memo:
            return memo[(kk, dd)]
        if kk == 1 and dd == 1:
            memo[(kk, dd)] = LEAF
            return LEAF
        block = [build(kk - 1, dd - 1)] * w if kk >= 2 else []
        mid = build(kk, dd - 1) if dd - 1 >= kk else None
        kids = list(block)
        for _ in range(n):
            if mid is not None:
                kids.append(mid)
            kids.extend(block)
        out = OrderedTree(tuple(kids))
        memo[(kk, dd)] = out
        return out

    return build(k, d)


def is_universal_for(host, candidates):
    """(True, None) if every candidate embeds into host, else (False, first failure)."""
    for t in candidates:
        if embed(t, host) is None:
            return False, t
    return True, None


def enumerate_trees(max_nodes, max_depth, max_branch):
    """All ordered trees within the bounds, each once, ordered by node count
    then by generation order."""
    if max_nodes < 1 or max_depth < 1 or max_branch < 1:
        raise PreconditionFailed("enumerate_trees", "bounds must be >= 1")
    memo = {}

    def exact(nodes, dep):
        if dep < 1 or nodes < 1:
            return []
        key = (nodes, dep)
        if key in memo:
            return memo[key]
        if nodes == 1:
            memo[key] = [LEAF]
            return memo[key]
        out = []
        for parts in _compositions(nodes - 1, max_branch):
            pools = [exact(p, dep - 1) for p in parts]
            if any(not pool for pool in pools):
                continue
            for combo in product(*pools):
                out.append(OrderedTree(combo))
        memo[key] = out
        return out

    result = []
    for nodes in range(1, max_nodes + 1):
        result.extend(exact(nodes, max_depth))
    return result


def _compositions(total, max_parts):
    """Ordered compositions of `total` into at most max_parts positive parts."""
    out = []

    def rec(remaining, parts):
        if remaining == 0:
            if parts:
                out.append(tuple(parts))
            return
        if len(parts) == max_parts:
            return
        for first in range(1, remaining + 1):
            rec(remaining - first, parts + [first])

    rec(total, [])
    return out
