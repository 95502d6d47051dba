"""Parity graphs and games: attractors, evenness, Zielonka solving.

Priorities live on edges throughout.  Vertices are plain ints, edges are
referred to by their position in the edge tuple.  All set-valued results
are computed by iterating vertices and edges in ascending id order, so
every operation is deterministic.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import (
    PreconditionFailed,
    PriorityOutOfRange,
    StrategyEscapesRegion,
    TerminalVertex,
    UndefinedChoice,
)

EVE = "eve"
ADAM = "adam"


def opponent(player):
    return ADAM if player == EVE else EVE


@dataclass(frozen=True)
class Index:
    """A contiguous priority range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise PreconditionFailed("index", f"bad range [{self.lo},{self.hi}]")

    def __contains__(self, p):
        return self.lo <= p <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    @property
    def max_even(self):
        """Largest even priority in the range, or None if there is none."""
        if self.hi % 2 == 0:
            return self.hi
        return self.hi - 1 if self.hi - 1 >= self.lo else None

    @property
    def max_odd(self):
        if self.hi % 2 == 1:
            return self.hi
        return self.hi - 1 if self.hi - 1 >= self.lo else None

    def odds(self):
        return [p for p in self if p % 2 == 1]

    def evens(self):
        return [p for p in self if p % 2 == 0]

    def shift(self, delta):
        return Index(self.lo + delta, self.hi + delta)


class Edge(NamedTuple):
    src: int
    dst: int
    priority: int


@dataclass(frozen=True)
class ParityGraph:
    """Edge-priority-labelled directed graph.

    Terminal vertices (no outgoing edge) are representable — restriction
    creates them transiently — but game-facing operations reject them.
    """

    vertices: frozenset
    edges: tuple
    index: Index

    @staticmethod
    def make(vertices, edges, index=None):
        """Build a graph from iterables, inferring the index if omitted."""
        vs = frozenset(vertices)
        es = tuple(Edge(*e) for e in edges)
        for e in es:
            if e.src not in vs or e.dst not in vs:
                raise PreconditionFailed("edge endpoints", f"{e} not within vertex set")
            if e.priority < 0:
                raise PriorityOutOfRange(f"negative priority on {e}")
        if index is None:
            hi = max((e.priority for e in es), default=0)
            index = Index(0, hi)
        for e in es:
            if e.priority not in index:
                raise PriorityOutOfRange(f"priority {e.priority} outside {index}")
        return ParityGraph(vs, es, index)

    @cached_property
    def out(self):
        """vertex -> tuple of outgoing edge ids, ascending."""
        table = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            table[e.src].append(i)
        return {v: tuple(ids) for v, ids in table.items()}

    @cached_property
    def inc(self):
        """vertex -> tuple of incoming edge ids, ascending."""
        table = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            table[e.dst].append(i)
        return {v: tuple(ids) for v, ids in table.items()}

    @cached_property
    def terminals(self):
        """Vertices with no outgoing edge, ascending."""
        return tuple(sorted(v for v in self.vertices if not self.out[v]))

    def sorted_vertices(self):
        return sorted(self.vertices)

    def relabel(self, fn):
        """New graph with priorities mapped through fn (index re-inferred)."""
        return ParityGraph.make(
            self.vertices, [(e.src, e.dst, fn(e.priority)) for e in self.edges]
        )


@dataclass(frozen=True)
class ParityGame:
    """Parity graph plus an Eve/Adam partition of the vertices."""

    graph: ParityGraph
    eve: frozenset

    @staticmethod
    def make(graph, owner):
        """owner: mapping vertex -> EVE/ADAM, or an iterable of Eve's vertices."""
        if isinstance(owner, dict):
            missing = graph.vertices - owner.keys()
            extra = owner.keys() - graph.vertices
            if missing or extra:
                raise PreconditionFailed("owner", f"missing={sorted(missing)} extra={sorted(extra)}")
            eve = frozenset(v for v, p in owner.items() if p == EVE)
        else:
            eve = frozenset(owner)
            if not eve <= graph.vertices:
                raise PreconditionFailed("owner", "eve set not within vertices")
        return ParityGame(graph, eve)

    def owner(self, v):
        return EVE if v in self.eve else ADAM

    def player_vertices(self, player):
        if player == EVE:
            return self.eve
        return self.graph.vertices - self.eve


@dataclass(frozen=True)
class Lasso:
    """Finite witness of an infinite play: a stem followed by a cycle."""

    stem: tuple
    cycle: tuple

    def __post_init__(self):
        if not self.cycle:
            raise PreconditionFailed("lasso", "empty cycle")

    def check(self, g):
        """True iff the edge ids form a connected stem+cycle returning to its start."""
        path = list(self.stem) + list(self.cycle)
        for a, b in zip(path, path[1:]):
            if g.edges[a].dst != g.edges[b].src:
                return False
        return g.edges[self.cycle[-1]].dst == g.edges[self.cycle[0]].src

    def cycle_max_priority(self, g):
        return max(g.edges[i].priority for i in self.cycle)


# ---------------------------------------------------------------------------
# restriction and attractors


def restrict(g, keep):
    """Subgraph on `keep`; check .terminals on the result for legality."""
    keep = frozenset(keep)
    if not keep <= g.vertices:
        raise PreconditionFailed("restrict", "keep is not a subset of the vertex set")
    edges = [e for e in g.edges if e.src in keep and e.dst in keep]
    return ParityGraph(keep, tuple(edges), g.index)


def _live_out(g, v, alive, dead):
    for i in g.out[v]:
        if i in dead:
            continue
        if g.edges[i].dst in alive:
            yield i


def _attr_edges(g, targets, alive, dead):
    """Vertices of `alive` all of whose infinite (alive, non-dead) paths hit `targets`.

    Greatest-fixpoint complement: survivors can keep avoiding the target
    edges forever; everything else is attracted.  Terminal vertices have no
    infinite paths and are vacuously attracted.
    """
    avoid = set(alive)
    changed = True
    while changed:
        changed = False
        for v in sorted(avoid):
            ok = False
            for i in _live_out(g, v, alive, dead):
                if i not in targets and g.edges[i].dst in avoid:
                    ok = True
                    break
            if not ok:
                avoid.discard(v)
                changed = True
    return frozenset(alive - avoid)


def attractor_edges(g, targets):
    """attr(E', G): vertices whose every infinite path traverses an edge of E'."""
    targets = frozenset(targets)
    for i in targets:
        if not (0 <= i < len(g.edges)):
            raise PreconditionFailed("attractor_edges", f"unknown edge id {i}")
    return _attr_edges(g, targets, g.vertices, frozenset())


def _attr_vertices(g, targets, alive, dead):
    """attr(V', ·) on the (alive, non-dead) view; targets start inside."""
    avoid = set(alive - targets)
    changed = True
    while changed:
        changed = False
        for v in sorted(avoid):
            ok = False
            for i in _live_out(g, v, alive, dead):
                if g.edges[i].dst in avoid:
                    ok = True
                    break
            if not ok:
                avoid.discard(v)
                changed = True
    return frozenset(alive - avoid)


def attractor_vertices(g, targets):
    """attr(V', G): vertices whose every infinite path eventually passes V'."""
    targets = frozenset(targets)
    if not targets <= g.vertices:
        raise PreconditionFailed("attractor_vertices", "targets not within vertices")
    return _attr_vertices(g, targets, g.vertices, frozenset())


def _player_attr(game, player, target_vertices, target_edges, alive, dead):
    """Alternating attractor on the (alive, dead) view.

    Returns (attracted set, strategy).  The strategy maps each of the
    player's vertices attracted after the seed round to an edge that is in
    `target_edges` or moves one layer closer to the targets.
    """
    g = game.graph
    tv = frozenset(target_vertices) & alive
    te = frozenset(target_edges)
    attracted = set(tv)
    strat = {}
    # escape count: live out-edges that neither belong to te nor (later) enter A
    esc = {}
    queue = deque(sorted(tv))
    for v in sorted(alive - tv):
        live = list(_live_out(g, v, alive, dead))
        if game.owner(v) == player:
            for i in live:
                if i in te:
                    attracted.add(v)
                    strat[v] = i
                    queue.append(v)
                    break
        else:
            esc[v] = sum(1 for i in live if i not in te)
            if esc[v] == 0:
                attracted.add(v)
                queue.append(v)
    while queue:
        w = queue.popleft()
        for i in g.inc[w]:
            if i in dead or i in te:
                continue
            u = g.edges[i].src
            if u not in alive or u in attracted:
                continue
            if game.owner(u) == player:
                attracted.add(u)
                strat[u] = i
                queue.append(u)
            else:
                esc[u] -= 1
                if esc[u] == 0:
                    attracted.add(u)
                    queue.append(u)
    return frozenset(attracted), strat


def player_attractor(game, targets, player):
    """Vertices from which `player` can force reaching `targets`, plus a
    positional reaching strategy on the player's vertices outside the targets."""
    targets = frozenset(targets)
    if not targets <= game.graph.vertices:
        raise PreconditionFailed("player_attractor", "targets not within vertices")
    return _player_attr(game, player, targets, frozenset(), game.graph.vertices, frozenset())


# ---------------------------------------------------------------------------
# evenness


def _tarjan_scc(vertices, succ):
    """Iterative Tarjan; returns vertex -> component id."""
    index = {}
    low = {}
    comp = {}
    on_stack = set()
    stack = []
    counter = [0]
    comp_counter = [0]
    for root in sorted(vertices):
        if root in index:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                elif w in on_stack:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                cid = comp_counter[0]
                comp_counter[0] += 1
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = cid
                    if w == v:
                        break
    return comp


def _odd_cycle_witness(g, alive, dead):
    """Lasso with odd-maximal cycle on the (alive, dead) view, or None.

    Scans odd priorities descending; a cycle with maximum exactly p exists
    iff the subgraph of priorities <= p has a p-edge inside one of its
    strongly connected components.
    """
    priorities = sorted(
        {
            g.edges[i].priority
            for i in range(len(g.edges))
            if i not in dead and g.edges[i].src in alive and g.edges[i].dst in alive
        },
        reverse=True,
    )
    for p in priorities:
        if p % 2 == 0:
            continue
        sub_out = {v: [] for v in alive}
        p_edges = []
        for i, e in enumerate(g.edges):
            if i in dead or e.priority > p or e.src not in alive or e.dst not in alive:
                continue
            sub_out[e.src].append(i)
            if e.priority == p:
                p_edges.append(i)
        comp = _tarjan_scc(alive, lambda v: (g.edges[i].dst for i in sub_out[v]))
        for i in p_edges:
            e = g.edges[i]
            if comp[e.src] != comp[e.dst]:
                continue
            if e.src == e.dst:
                return Lasso((), (i,))
            # path dst -> src inside the <=p subgraph, restricted to the SCC
            cid = comp[e.src]
            parent = {e.dst: None}
            queue = deque([e.dst])
            while queue:
                u = queue.popleft()
                if u == e.src:
                    break
                for k in sub_out[u]:
                    w = g.edges[k].dst
                    if comp[w] == cid and w not in parent:
                        parent[w] = k
                        queue.append(w)
            path = []
            u = e.src
            while parent[u] is not None:
                k = parent[u]
                path.append(k)
                u = g.edges[k].src
            path.reverse()
            return Lasso((), (i, *path))
    return None


def check_even(g):
    """(True, None) if every cycle has even maximum, else (False, lasso)."""
    if g.terminals:
        raise TerminalVertex(g.terminals[0])
    lasso = _odd_cycle_witness(g, g.vertices, frozenset())
    return (lasso is None), lasso


def is_even(g):
    ok, _ = check_even(g)
    return ok


# ---------------------------------------------------------------------------
# solving


def _max_live_priority(g, alive, dead):
    best = None
    for i, e in enumerate(g.edges):
        if i in dead or e.src not in alive or e.dst not in alive:
            continue
        if best is None or e.priority > best:
            best = e.priority
    return best


def _zielonka(game, alive, dead):
    """Generator form of Zielonka's recursion for edge priorities.

    Yields (alive, dead) argument pairs for sub-calls; the trampoline in
    solve() sends back their results.  Returns a dict
    {EVE: region, ADAM: region, (EVE, 's'): strategy, (ADAM, 's'): strategy}.
    """
    g = game.graph
    if not alive:
        return {EVE: frozenset(), ADAM: frozenset(), (EVE, "s"): {}, (ADAM, "s"): {}}
    d = _max_live_priority(g, alive, dead)
    if d is None:
        # cannot happen: subgames of terminal-free games stay terminal-free
        raise TerminalVertex(min(alive))
    player = EVE if d % 2 == 0 else ADAM
    other = opponent(player)
    top = frozenset(
        i
        for i, e in enumerate(g.edges)
        if i not in dead and e.priority == d and e.src in alive and e.dst in alive
    )
    area, reach = _player_attr(game, player, frozenset(), top, alive, dead)
    sub = yield (alive - area, dead | top)
    if not sub[other]:
        strat = dict(sub[(player, "s")])
        strat.update(reach)
        return {player: alive, other: frozenset(), (player, "s"): strat, (other, "s"): {}}
    trap, pull = _player_attr(game, other, sub[other], frozenset(), alive, dead)
    rest = yield (alive - trap, dead)
    other_strat = dict(rest[(other, "s")])
    other_strat.update(pull)
    for v, e in sub[(other, "s")].items():
        if v in sub[other]:
            other_strat[v] = e
    return {
        player: rest[player],
        other: rest[other] | trap,
        (player, "s"): dict(rest[(player, "s")]),
        (other, "s"): other_strat,
    }


def solve(game):
    """Zielonka regions and positional winning strategies for both players."""
    g = game.graph
    if g.terminals:
        raise TerminalVertex(g.terminals[0])
    stack = [_zielonka(game, g.vertices, frozenset())]
    result = None
    while stack:
        try:
            args = stack[-1].send(result)
            result = None
            stack.append(_zielonka(game, *args))
        except StopIteration as stop:
            result = stop.value
            stack.pop()
    eve_strat = {v: e for v, e in result[(EVE, "s")].items() if game.owner(v) == EVE}
    adam_strat = {v: e for v, e in result[(ADAM, "s")].items() if game.owner(v) == ADAM}
    return result[EVE], result[ADAM], eve_strat, adam_strat


def strategy_graph(game, sigma, region, player=EVE):
    """One-player graph: `player` vertices keep only their chosen edge,
    the opponent's keep all region-internal edges."""
    g = game.graph
    region = frozenset(region)
    edges = []
    keep = []
    for v in sorted(region):
        if game.owner(v) == player:
            if v not in sigma:
                raise UndefinedChoice(f"no choice at vertex {v}")
            i = sigma[v]
            e = g.edges[i]
            if e.src != v:
                raise PreconditionFailed("strategy", f"edge {i} does not leave {v}")
            if e.dst not in region:
                raise StrategyEscapesRegion(f"choice at {v} leaves the region")
            keep.append(i)
        else:
            for i in g.out[v]:
                if g.edges[i].dst in region:
                    keep.append(i)
    for i in sorted(keep):
        edges.append(g.edges[i])
    return ParityGraph(region, tuple(edges), g.index)


def verify_winning(game, sigma, region, player=EVE):
    """True iff fixing `sigma` on `region` leaves only plays won by `player`."""
    h = strategy_graph(game, sigma, region, player)
    if not region:
        return True
    if h.terminals:
        raise TerminalVertex(h.terminals[0])
    lasso = _odd_cycle_witness(h, h.vertices, frozenset())
    if player == EVE:
        return lasso is None
    # Adam wins iff no cycle with even maximum survives: flip parities and reuse
    flipped = h.relabel(lambda p: p + 1)
    lasso = _odd_cycle_witness(flipped, flipped.vertices, frozenset())
    return lasso is None
