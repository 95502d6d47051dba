"""Attractor decompositions: construction, validation, transformation, and
the bounded-pair to low-Strahler construction on memory products.

All vertex and edge references inside a decomposition are in the id space
of the root graph it was built for; recursion happens on (alive vertices,
removed edges) views instead of physically restricted graphs, because a
removed top-priority edge can connect two vertices of the same child
subgame and must stay excluded all the way down.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    HypothesisViolated,
    InvalidDecomposition,
    NotBounded,
    NotEven,
    OverlappingParts,
    PreconditionFailed,
    PriorityOutOfRange,
    StateExplosion,
)
from .games import Index, ParityGraph, _attr_edges, _attr_vertices, _odd_cycle_witness
from .trees import LEAF, OrderedTree


@dataclass(frozen=True)
class AdChild:
    subgame: frozenset
    attractor: frozenset
    sub: "AttractorDecomposition"


@dataclass(frozen=True)
class AttractorDecomposition:
    level: int
    top_edges: frozenset
    top_attractor: frozenset
    children: tuple

    def width(self):
        if not self.children:
            return 0
        return max(len(self.children), max(c.sub.width() for c in self.children))

    def vertex_count(self):
        return len(self.top_attractor) + sum(len(c.attractor) for c in self.children)


@dataclass
class ValidationResult:
    ok: bool
    clause: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationResult(ok)"
        return f"ValidationResult(clause={self.clause!r}, witness={self.witness!r})"


def _live_edge_ids(g, alive, dead):
    return [
        i
        for i, e in enumerate(g.edges)
        if i not in dead and e.src in alive and e.dst in alive
    ]


def _terminal_in_view(g, alive, dead):
    for v in sorted(alive):
        if not any(i not in dead and g.edges[i].dst in alive for i in g.out[v]):
            return v
    return None


def _reaches_priority(g, alive, dead, priority):
    """Vertices of the view from which an edge of the given priority is reachable."""
    seeds = {
        g.edges[i].src
        for i in _live_edge_ids(g, alive, dead)
        if g.edges[i].priority == priority
    }
    reach = set(seeds)
    queue = deque(sorted(seeds))
    while queue:
        v = queue.popleft()
        for i in g.inc[v]:
            if i in dead:
                continue
            u = g.edges[i].src
            if u in alive and u not in reach:
                reach.add(u)
                queue.append(u)
    return reach


def _canonical_children(g, alive, dead, level):
    """Top layer of the canonical decomposition: (H, A_0, [(S_k, A_k)]).

    Each S_k is maximal: all residual vertices from which level-1 cannot
    be reached.  Raises NotEven-shaped failures only via the caller; here
    an empty S_k on a non-empty residual signals a non-even input.
    """
    h_edges = frozenset(
        i for i in _live_edge_ids(g, alive, dead) if g.edges[i].priority == level
    )
    a0 = _attr_edges(g, h_edges, alive, dead)
    dead2 = dead | h_edges
    rest = alive - a0
    kids = []
    while rest:
        bad = _reaches_priority(g, rest, dead2, level - 1)
        s = frozenset(rest - bad)
        if not s:
            raise InvalidDecomposition(
                f"no level-{level - 2} core in a non-empty residual (graph not even?)"
            )
        a = _attr_vertices(g, s, rest, dead2)
        kids.append((s, a))
        rest = rest - a
    return h_edges, a0, kids


def _build(g, alive, dead, level):
    if level == 0:
        live = frozenset(_live_edge_ids(g, alive, dead))
        return AttractorDecomposition(0, live, frozenset(alive), ())
    h_edges, a0, kids = _canonical_children(g, alive, dead, level)
    if not kids:
        return AttractorDecomposition(level, h_edges, frozenset(alive), ())
    children = tuple(
        AdChild(s, a, _build(g, s, dead | h_edges, level - 2)) for s, a in kids
    )
    return AttractorDecomposition(level, h_edges, a0, children)


def build_ad(g, h):
    """Canonical attractor decomposition of an even graph at even level h."""
    if h < 0 or h % 2 == 1:
        raise PreconditionFailed("build_ad", "level must be an even natural")
    for e in g.edges:
        if e.priority > h:
            raise PriorityOutOfRange(f"priority {e.priority} exceeds level {h}")
    lasso = _odd_cycle_witness(g, g.vertices, frozenset())
    if lasso is not None:
        raise NotEven(lasso)
    if g.terminals:
        raise PreconditionFailed("build_ad", f"terminal vertex {g.terminals[0]}")
    return _build(g, g.vertices, frozenset(), h)


def _validate(g, d, alive, dead):
    if d.level < 0 or d.level % 2 == 1:
        return ValidationResult(False, "level-even", d.level)
    live = _live_edge_ids(g, alive, dead)
    for i in live:
        if g.edges[i].priority > d.level:
            return ValidationResult(False, "priorities-bounded", i)
    h_expected = frozenset(i for i in live if g.edges[i].priority == d.level)
    if d.top_edges != h_expected:
        return ValidationResult(False, "top-edges", d.top_edges ^ h_expected)
    a0 = _attr_edges(g, h_expected, alive, dead)
    if d.top_attractor != a0:
        return ValidationResult(False, "top-attractor", d.top_attractor ^ a0)
    if not d.children:
        if a0 != alive:
            return ValidationResult(False, "coverage", alive - a0)
        return ValidationResult(True)
    if d.level == 0:
        return ValidationResult(False, "level-zero-children", None)
    dead2 = dead | h_expected
    current = alive - a0
    for idx, child in enumerate(d.children, 1):
        s, a, sub = child.subgame, child.attractor, child.sub
        if not s:
            return ValidationResult(False, "child-nonempty", idx)
        if not s <= current:
            return ValidationResult(False, "child-in-residual", (idx, s - current))
        for i in _live_edge_ids(g, s, dead2):
            if g.edges[i].priority > d.level - 2:
                return ValidationResult(False, "child-priorities", (idx, i))
        t = _terminal_in_view(g, s, dead2)
        if t is not None:
            return ValidationResult(False, "child-terminal", (idx, t))
        for v in sorted(s):
            for i in g.out[v]:
                if i in dead2:
                    continue
                w = g.edges[i].dst
                if w in current and w not in s:
                    return ValidationResult(False, "child-closed", (idx, i))
        expected_a = _attr_vertices(g, s, current, dead2)
        if a != expected_a:
            return ValidationResult(False, "child-attractor", (idx, a ^ expected_a))
        if sub.level != d.level - 2:
            return ValidationResult(False, "child-level", (idx, sub.level))
        inner = _validate(g, sub, s, dead2)
        if not inner:
            return inner
        current = current - a
    if current:
        return ValidationResult(False, "coverage", current)
    return ValidationResult(True)


def validate_ad(g, d):
    """Check every clause of the decomposition definition; names the first
    violated clause and a witness on failure."""
    return _validate(g, d, g.vertices, frozenset())


def _reach_from(g, starts, alive, dead):
    reach = set(starts)
    queue = deque(sorted(starts))
    while queue:
        v = queue.popleft()
        for i in g.out[v]:
            if i in dead:
                continue
            w = g.edges[i].dst
            if w in alive and w not in reach:
                reach.add(w)
                queue.append(w)
    return reach


def _reach_check(g, d, alive, dead):
    if not d.children:
        return True
    dead2 = dead | d.top_edges
    union = frozenset().union(*(c.attractor for c in d.children))
    for i, child in enumerate(d.children):
        reach = _reach_from(g, child.attractor & union, union, dead2)
        for later in d.children[i + 1 :]:
            if reach & later.attractor:
                return False
    return all(_reach_check(g, c.sub, c.subgame, dead2) for c in d.children)


def ad_reachability_check(g, d):
    """Ordering regression: within the top-priority-free part,
    later child attractors are unreachable from earlier ones, recursively."""
    return _reach_check(g, d, g.vertices, frozenset())


def _shape(d):
    if not d.children:
        return LEAF
    return OrderedTree(tuple(_shape(c.sub) for c in d.children))


def tree_shape(d):
    return _shape(d)


def _tight(g, d, alive, dead):
    if d.children:
        dead2 = dead | d.top_edges
        low = [
            i
            for i in _live_edge_ids(g, alive, dead2)
            if g.edges[i].priority <= d.level - 2
        ]
        out = {v: [] for v in alive}
        for i in low:
            out[g.edges[i].src].append(g.edges[i].dst)
        for i, child in enumerate(d.children):
            if i == 0:
                continue
            reach = set(child.subgame)
            queue = deque(sorted(child.subgame))
            while queue:
                v = queue.popleft()
                for w in out[v]:
                    if w not in reach:
                        reach.add(w)
                        queue.append(w)
            for earlier in d.children[:i]:
                if (reach - child.subgame) & earlier.subgame:
                    return False
        return all(_tight(g, c.sub, c.subgame, dead2) for c in d.children)
    return True


def is_tight(g, d):
    """True iff every path between distinct subgames dodges nothing: it must
    see priority >= level-1, recursively in all children."""
    return _tight(g, d, g.vertices, frozenset())


def attr_partition(g, parts):
    """Attractors of disjoint parts, each computed in the residual of the
    previous ones; their disjoint union equals the attractor of the union."""
    seen = set()
    for s in parts:
        s = frozenset(s)
        if s & seen:
            raise OverlappingParts(sorted(s & seen))
        seen |= s
    out = []
    current = frozenset(g.vertices)
    for s in parts:
        a = _attr_vertices(g, frozenset(s) & current, current, frozenset())
        out.append(a)
        current = current - a
    return out


def join_ads(g, h, pieces):
    """Assemble a decomposition from pre-decomposed subgames.

    Checks the three join hypotheses (successor closure in the running
    residual, child validity at level h-2, full coverage) and names the
    failed clause.  Empty subgames are dropped.
    """
    if h < 2 or h % 2 == 1:
        raise PreconditionFailed("join_ads", "level must be even and >= 2")
    for e in g.edges:
        if e.priority > h:
            raise PriorityOutOfRange(f"priority {e.priority} exceeds level {h}")
    live = _live_edge_ids(g, g.vertices, frozenset())
    h_edges = frozenset(i for i in live if g.edges[i].priority == h)
    a0 = _attr_edges(g, h_edges, g.vertices, frozenset())
    dead2 = h_edges
    current = g.vertices - a0
    children = []
    for k, (s, sub) in enumerate(pieces):
        s = frozenset(s)
        if not s:
            continue
        if not s <= current:
            raise HypothesisViolated("subgame-in-residual", f"piece {k}")
        for v in sorted(s):
            for i in g.out[v]:
                if i in dead2:
                    continue
                w = g.edges[i].dst
                if w in current and w not in s:
                    raise HypothesisViolated("successor-closed", f"piece {k}, edge {i}")
        if sub.level != h - 2:
            raise HypothesisViolated("child-level", f"piece {k} has level {sub.level}")
        inner = _validate(g, sub, s, dead2)
        if not inner:
            raise HypothesisViolated(
                "child-decomposition", f"piece {k}: {inner.clause}"
            )
        a = _attr_vertices(g, s, current, dead2)
        children.append(AdChild(s, a, sub))
        current = current - a
    if current:
        raise HypothesisViolated("coverage", sorted(current))
    return AttractorDecomposition(h, h_edges, a0, tuple(children))


def dismantle(d):
    """Inverse of join_ads: the (subgame, sub-decomposition) pieces."""
    return [(c.subgame, c.sub) for c in d.children]


# ---------------------------------------------------------------------------
# labelling pairs and the memory product


@dataclass(frozen=True)
class LabellingPair:
    """One graph skeleton with two total edge labellings (its own priorities
    are ignored)."""

    graph: ParityGraph
    label_i: tuple
    label_j: tuple
    index_i: Index
    index_j: Index

    @staticmethod
    def make(graph, label_i, label_j, index_i=None, index_j=None):
        li = tuple(label_i)
        lj = tuple(label_j)
        if len(li) != len(graph.edges) or len(lj) != len(graph.edges):
            raise PreconditionFailed("labelling", "labellings must be total on edges")
        if index_i is None:
            hi = max(li, default=0)
            index_i = Index(0, hi + hi % 2)
        if index_j is None:
            hi = max(lj, default=2)
            index_j = Index(1, hi + hi % 2)
        for p in li:
            if p not in index_i:
                raise PriorityOutOfRange(f"labelI value {p} outside {index_i}")
        for p in lj:
            if p not in index_j:
                raise PriorityOutOfRange(f"labelJ value {p} outside {index_j}")
        return LabellingPair(graph, li, lj, index_i, index_j)

    @cached_property
    def _graph_i(self):
        g = self.graph
        return ParityGraph(
            g.vertices,
            tuple(e._replace(priority=self.label_i[i]) for i, e in enumerate(g.edges)),
            self.index_i,
        )

    @cached_property
    def _graph_j(self):
        g = self.graph
        return ParityGraph(
            g.vertices,
            tuple(e._replace(priority=self.label_j[i]) for i, e in enumerate(g.edges)),
            self.index_j,
        )

    def graph_i(self):
        """The skeleton carrying the labelI priorities."""
        return self._graph_i

    def graph_j(self):
        return self._graph_j


@dataclass(frozen=True)
class MemoryProduct:
    """Product of a labelling pair with per-(odd i, even j) freshness flags.

    Bit 2p of a memory word says "2j seen in labelJ since the last i in
    labelI" for flag pair p, bit 2p+1 the converse.  An edge carrying both
    priorities at once sets both flags.
    """

    base: LabellingPair
    pair: LabellingPair
    decode: tuple
    flag_pairs: tuple
    initial: dict

    def _bit(self, v, oi, ej, offset):
        p = self.flag_pairs.index((oi, ej))
        return (self.decode[v][1] >> (2 * p + offset)) & 1 == 1

    def flag_j_since_i(self, v, oi, ej):
        return self._bit(v, oi, ej, 0)

    def flag_i_since_j(self, v, oi, ej):
        return self._bit(v, oi, ej, 1)


DEFAULT_STATE_CAP = 200_000


def memory_product(pair, cap=DEFAULT_STATE_CAP):
    """All (vertex, memory) states reachable from cleared memory at every
    base vertex, with both labellings lifted edge-wise."""
    g = pair.graph
    flag_pairs = tuple(
        (oi, ej) for oi in pair.index_i.odds() for ej in pair.index_j.evens()
    )

    step_cache = {}

    def step(mem, a, b):
        key = (mem, a, b)
        got = step_cache.get(key)
        if got is not None:
            return got
        out = 0
        for p, (oi, ej) in enumerate(flag_pairs):
            f1 = (mem >> (2 * p)) & 1
            f2 = (mem >> (2 * p + 1)) & 1
            nf1 = (1 if b == ej else 0) if a == oi else (f1 | (1 if b == ej else 0))
            nf2 = (1 if a == oi else 0) if b == ej else (f2 | (1 if a == oi else 0))
            out |= nf1 << (2 * p)
            out |= nf2 << (2 * p + 1)
        step_cache[key] = out
        return out

    ids = {}
    decode = []
    initial = {}
    queue = deque()
    for v in g.sorted_vertices():
        state = (v, 0)
        ids[state] = len(decode)
        decode.append(state)
        initial[v] = ids[state]
        queue.append(state)
    edges = []
    label_i = []
    label_j = []
    while queue:
        state = queue.popleft()
        v, mem = state
        sid = ids[state]
        for i in g.out[v]:
            e = g.edges[i]
            a, b = pair.label_i[i], pair.label_j[i]
            nxt = (e.dst, step(mem, a, b))
            nid = ids.get(nxt)
            if nid is None:
                nid = len(decode)
                if nid >= cap:
                    raise StateExplosion(nid + 1, cap)
                ids[nxt] = nid
                decode.append(nxt)
                queue.append(nxt)
            edges.append((sid, nid, 0))
            label_i.append(a)
            label_j.append(b)
    product_graph = ParityGraph.make(range(len(decode)), edges, Index(0, 0))
    product_pair = LabellingPair.make(
        product_graph, label_i, label_j, pair.index_i, pair.index_j
    )
    return MemoryProduct(pair, product_pair, tuple(decode), flag_pairs, initial)


# ---------------------------------------------------------------------------
# bounded pair -> low-Strahler decomposition


def _view_core(g, part, dead):
    """Largest subset whose view-internal paths are infinite: iteratively
    drop vertices with no surviving internal successor.  Dropped vertices
    are forced out of the part, so assembly attractors absorb them."""
    core = set(part)
    changed = True
    while changed:
        changed = False
        for v in sorted(core):
            if not any(
                i not in dead and g.edges[i].dst in core for i in g.out[v]
            ):
                core.discard(v)
                changed = True
    return frozenset(core)


def _two_layer_reach(out_edges, start, oi_label):
    """Vertices reachable from start, split by whether the path has already
    traversed a labelI = oi edge: returns (plain set, witnessed set)."""
    seen = {(start, 0)}
    queue = deque([(start, 0)])
    while queue:
        v, flag = queue.popleft()
        for w, is_oi in out_edges.get(v, ()):
            nxt = (w, 1 if (flag or is_oi) else 0)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    plain = {v for v, _ in seen}
    witnessed = {v for v, f in seen if f == 1}
    return plain, witnessed


def _rts_build(mp, g_i, g_j, alive, dead, i2, j2, n):
    """The induction step of the bounded-pair construction on the memory
    product: split children into star parts ranked by witnessed hops and
    priority-free leftovers, then reassemble in interleaved order."""
    level = 2 * i2
    if i2 == 0:
        live = frozenset(_live_edge_ids(g_i, alive, dead))
        return AttractorDecomposition(0, live, frozenset(alive), ())
    t = _terminal_in_view(g_i, alive, dead)
    if t is not None:
        raise InvalidDecomposition(f"terminal vertex {t} in construction subgame")
    h_edges, a0, kids = _canonical_children(g_i, alive, dead, level)
    if not kids:
        return AttractorDecomposition(level, h_edges, frozenset(alive), ())
    dead1 = dead | h_edges
    alive1 = alive - a0
    oi = level - 1
    ej = 2 * j2

    stars_of = []
    star_rank = {}
    star_k = {}
    for k, (s, _a) in enumerate(kids):
        stars = frozenset(v for v in s if mp.flag_j_since_i(v, oi, ej))
        stars_of.append(stars)
        for v in stars:
            star_k[v] = k
    all_stars = sorted(star_k)

    out_edges = {}
    for i in _live_edge_ids(g_i, alive1, dead1):
        e = g_i.edges[i]
        out_edges.setdefault(e.src, []).append((e.dst, g_i.edges[i].priority == oi))

    plain_to = {}
    witness_to = {}
    for v in all_stars:
        plain, witnessed = _two_layer_reach(out_edges, v, oi)
        plain_to[v] = [u for u in all_stars if u != v and u in plain]
        witness_to[v] = [u for u in all_stars if u in witnessed]

    # longest witnessed chain, with plain reachability propagating ranks;
    # iterate to fixpoint — a witnessed cycle would contradict every n-bound,
    # so divergence is reported instead of looped on
    for v in all_stars:
        star_rank[v] = 1
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        if rounds > n + 3 + len(all_stars):
            raise InvalidDecomposition("witnessed star cycle; pair is not bounded")
        for v in all_stars:
            best = 1
            for u in plain_to[v]:
                if star_rank[u] > best:
                    best = star_rank[u]
            for u in witness_to[v]:
                if star_rank[u] + 1 > best:
                    best = star_rank[u] + 1
            if best > star_rank[v]:
                star_rank[v] = best
                changed = True
    max_rank = max(star_rank.values(), default=0)
    if max_rank > n + 1:
        raise InvalidDecomposition(
            f"star rank {max_rank} exceeds n+1={n + 1}; pair is not bounded"
        )

    thetas = {}
    for v, r in star_rank.items():
        thetas.setdefault(r, set()).add(v)

    leftover_pieces = {m: [] for m in range(0, max_rank + 1)}
    for k, (s, _a) in enumerate(kids):
        stars = stars_of[k]
        a_star = _attr_vertices(g_i, stars, s, dead1)
        left = s - a_star
        if not left:
            continue
        by_rank = {}
        for v in sorted(left):
            plain, _w = _two_layer_reach(out_edges, v, oi)
            ranks = [star_rank[u] for u in all_stars if u in plain]
            by_rank.setdefault(max(ranks, default=0), set()).add(v)
        for m, part in sorted(by_rank.items()):
            # dead-end vertices of a rank class exit it on every path and
            # are swept up by the assembly attractors instead
            part = _view_core(g_i, part, dead1)
            if not part:
                continue
            if j2 <= 1:
                raise InvalidDecomposition(
                    "2j-free leftover with an internal cycle contradicts "
                    "output evenness"
                )
            hj, aj0, jkids = _canonical_children(g_j, part, dead1, 2 * j2)
            if hj or aj0:
                raise InvalidDecomposition(
                    "leftover part unexpectedly contains a top output priority"
                )
            for s_p, _ap in jkids:
                leftover_pieces[m].append(s_p)

    sequence = []
    for m in range(0, max_rank + 1):
        for part in leftover_pieces.get(m, []):
            sequence.append((part, j2 - 1))
        if m + 1 <= max_rank:
            sequence.append((frozenset(thetas[m + 1]), j2))

    current = alive1
    children = []
    for part, sub_j in sequence:
        live_part = _view_core(g_i, frozenset(part) & current, dead1)
        if not live_part:
            continue
        sub = _rts_build(mp, g_i, g_j, live_part, dead1, i2 - 1, sub_j, n)
        a = _attr_vertices(g_i, live_part, current, dead1)
        children.append(AdChild(live_part, a, sub))
        current = current - a
    if current:
        raise InvalidDecomposition(f"assembly left {sorted(current)} uncovered")
    return AttractorDecomposition(level, h_edges, a0, tuple(children))


def ad_from_bounded_pair(pair, n, j, cap=DEFAULT_STATE_CAP):
    """Decomposition of the memory product witnessing low Strahler complexity.

    Requires both labellings even and labelI n-bound by labelJ.  The
    result always validates against the product's labelI graph and its
    tree-shape has (n+1)-Strahler number at most j; when the realized star
    ranks stay at n or below (in particular whenever the pair is already
    (n-1)-bound) the n-Strahler number is at most j as well.
    """
    from .transduction import n_bound_check

    ii, jj = pair.index_i, pair.index_j
    if ii.lo != 0 or ii.hi % 2 == 1:
        raise PreconditionFailed("index-I", f"{ii} is not of the form [0,2i]")
    if jj.lo != 1 or jj.hi != 2 * j:
        raise PreconditionFailed("index-J", f"{jj} is not [1,{2 * j}]")
    ok, lasso = _even_view(pair.graph_i())
    if not ok:
        raise NotEven(lasso, "labelI view is not even")
    ok, lasso = _even_view(pair.graph_j())
    if not ok:
        raise NotEven(lasso, "labelJ view is not even")
    ok, ce = n_bound_check(pair, n)
    if not ok:
        raise NotBounded(ce)
    mp = memory_product(pair, cap=cap)
    g_i = mp.pair.graph_i()
    g_j = mp.pair.graph_j()
    d = _rts_build(
        mp, g_i, g_j, g_i.vertices, frozenset(), ii.hi // 2, j, n
    )
    res = validate_ad(g_i, d)
    if not res:
        raise InvalidDecomposition(f"internal: {res.clause} ({res.witness})")
    return d


def _even_view(g):
    if g.terminals:
        raise PreconditionFailed("evenness", f"terminal vertex {g.terminals[0]}")
    lasso = _odd_cycle_witness(g, g.vertices, frozenset())
    return lasso is None, lasso
