"""The J,n-priority transduction game as a finite parity game, with
boundedness checking and the two strategy syntheses.

Round structure per base move: (1) the base owner picks an edge, (2) Eve
picks a register, which fixes the output priority, (3) if the base edge
priority is odd Eve additionally picks an odd value at least as large
before the counter and register updates fire.  Auxiliary edges carry
priority 0, outputs carry their own value, and instant losses route to a
sink with a priority-1 self-loop.
"""

from collections import deque
from dataclasses import dataclass, field

from .decomposition import tree_shape, validate_ad
from .errors import (
    EmptyIndex,
    InvalidDecomposition,
    PreconditionFailed,
    StateExplosion,
)
from .games import (
    EVE,
    Index,
    ParityGame,
    ParityGraph,
    _odd_cycle_witness,
    solve,
    verify_winning,
)
from .trees import n_strahler

LIBERAL = "liberal"
LITERAL = "literal"
NEVER = "never"

DEFAULT_STATE_CAP = 200_000


@dataclass(frozen=True)
class RegConfig:
    """Decoded register/counter contents of one product configuration."""

    registers: dict = field(hash=False)
    counters: dict = field(hash=False)


@dataclass(frozen=True)
class RegProduct:
    game: ParityGame
    decode: tuple
    initial: dict
    base: object
    J: Index
    n: int
    rule: str
    reg_indices: tuple
    counter_keys: tuple
    degenerate_init: bool

    def describe(self, vid):
        """(phase, base vertex, RegConfig, pending data) for one vertex."""
        state = self.decode[vid]
        phase = state[0]
        if phase == "sink":
            return ("sink", None, None, None)
        if phase == "A":
            _, v, cfg = state
            return ("A", v, self._config(cfg), None)
        if phase == "B":
            _, eid, cfg = state
            e = self._graph().edges[eid]
            return ("B", e.src, self._config(cfg), eid)
        _, eid, jx, cfg = state
        e = self._graph().edges[eid]
        return ("C", e.src, self._config(cfg), (eid, self.reg_indices[jx]))

    def _graph(self):
        return self.base.graph if isinstance(self.base, ParityGame) else self.base

    def _config(self, cfg):
        regs_t, ctr_t = cfg
        return RegConfig(
            dict(zip(self.reg_indices, regs_t)),
            dict(zip(self.counter_keys, ctr_t)),
        )


def normalize_output_index(J):
    """Shift J by even steps until min(J) lands in {1, 2}."""
    while J.lo > 2:
        J = J.shift(-2)
    while J.lo < 1:
        J = J.shift(2)
    return J


def _register_indices(J):
    regs = sorted({e // 2 for e in J.evens()} | ({0} if 1 in J else set()))
    if not regs:
        raise EmptyIndex(f"no registers available for output index {J}")
    return regs


class RegMachine:
    """The register/counter data structure shared by the product game and
    the automaton composition: outputs and updates over interned configs."""

    def __init__(self, index_i, J, n, rule):
        if n < 0:
            raise PreconditionFailed("reg machine", "counter bound must be a natural")
        if rule not in (LIBERAL, LITERAL, NEVER):
            raise PreconditionFailed("reg machine", f"unknown reset rule {rule}")
        self.index_i = index_i
        self.J = J
        self.n = n
        self.rule = rule
        self.odds = tuple(index_i.odds())
        self.regs = tuple(_register_indices(J))
        self.counter_keys = tuple((i, j) for i in self.odds for j in self.regs)
        self._ck_pos = {key: x for x, key in enumerate(self.counter_keys)}
        self.max_odd = index_i.max_odd
        self.degenerate_init = index_i.max_even is None
        init_reg = index_i.max_even if not self.degenerate_init else index_i.lo - 1
        self.initial = (
            tuple(init_reg for _ in self.regs),
            tuple(0 for _ in self.counter_keys),
        )
        self._out_cache = {}
        self._upd_cache = {}

    def output(self, cfg, jx):
        """(output priority, config after counter effects, instant loss?)."""
        key = (cfg, jx)
        got = self._out_cache.get(key)
        if got is not None:
            return got
        regs_t, ctr_t = cfg
        j = self.regs[jx]
        if j == 0:
            res = (1, cfg, False)
        else:
            r = regs_t[jx]
            if r % 2 == 0:
                res = (2 * j, cfg, False)
            else:
                ci = self._ck_pos[(r, j)]
                c = ctr_t[ci]
                ctr2 = list(ctr_t)
                if c == self.n:
                    ctr2[ci] = 0
                    res = (2 * j + 1, (regs_t, tuple(ctr2)), 2 * j + 1 not in self.J)
                else:
                    ctr2[ci] = c + 1
                    res = (2 * j, (regs_t, tuple(ctr2)), False)
        self._out_cache[key] = res
        return res

    def update(self, cfg, i, jx):
        key = (cfg, i, jx)
        got = self._upd_cache.get(key)
        if got is not None:
            return got
        regs_t, ctr_t = cfg
        j = self.regs[jx]
        ctr2 = list(ctr_t)
        if self.rule == LIBERAL:
            for x, (ki, kj) in enumerate(self.counter_keys):
                if ki < i or kj < j:
                    ctr2[x] = 0
        elif self.rule == LITERAL:
            old = regs_t[jx]
            for x, (ki, kj) in enumerate(self.counter_keys):
                if kj == j and ki < i:
                    ctr2[x] = 0
                elif old % 2 == 1 and ki == old and kj < j:
                    ctr2[x] = 0
        regs2 = list(regs_t)
        regs2[jx] = i
        for x in range(jx + 1, len(self.regs)):
            if regs2[x] < i:
                regs2[x] = i
        res = (tuple(regs2), tuple(ctr2))
        self._upd_cache[key] = res
        return res

    def sharp_choices(self, priority):
        """Available odd picks after an edge of the given priority."""
        if priority % 2 == 0:
            return (priority,)
        return tuple(range(priority, self.max_odd + 1, 2))


def reg_product(base, J, n, *, rule=LIBERAL, cap=DEFAULT_STATE_CAP, starts=None):
    """Finite parity game whose plays biject with transduction-game plays.

    `base` is a ParityGraph (Adam moves) or a ParityGame (base moves owned
    by the base owner).  Initial configurations have counters 0 and all
    registers at the maximal even priority of the input index.
    """
    J = normalize_output_index(J)
    game_mode = isinstance(base, ParityGame)
    g = base.graph if game_mode else base
    if g.terminals:
        raise PreconditionFailed("reg_product", f"terminal vertex {g.terminals[0]}")
    index_i = g.index
    if index_i.lo >= 2:
        shift = index_i.lo - (index_i.lo % 2)
        g = g.relabel(lambda p: p - shift)
        index_i = g.index
    machine = RegMachine(index_i, J, n, rule)
    regs = machine.regs
    max_odd = machine.max_odd
    cfg0 = machine.initial
    output = machine.output
    update = machine.update

    ids = {}
    decode = []
    edges = []
    eve = []
    initial = {}
    queue = deque()
    sink_id = None

    def intern(state):
        nonlocal sink_id
        vid = ids.get(state)
        if vid is None:
            vid = len(decode)
            if vid >= cap:
                raise StateExplosion(vid + 1, cap)
            ids[state] = vid
            decode.append(state)
            queue.append(state)
            if state[0] == "sink":
                sink_id = vid
        return vid

    if starts is None:
        starts = g.sorted_vertices()
    for v in starts:
        initial[v] = intern(("A", v, cfg0))

    while queue:
        state = queue.popleft()
        sid = ids[state]
        phase = state[0]
        if phase == "sink":
            edges.append((sid, sid, 1))
            continue
        if phase == "A":
            _, v, cfg = state
            if game_mode and base.owner(v) == EVE:
                eve.append(sid)
            for eid in g.out[v]:
                edges.append((sid, intern(("B", eid, cfg)), 0))
            continue
        if phase == "B":
            _, eid, cfg = state
            eve.append(sid)
            e = g.edges[eid]
            for jx in range(len(regs)):
                w, mid, loss = output(cfg, jx)
                if loss:
                    edges.append((sid, intern(("sink",)), 0))
                elif e.priority % 2 == 0:
                    nxt = ("A", e.dst, update(mid, e.priority, jx))
                    edges.append((sid, intern(nxt), w))
                else:
                    edges.append((sid, intern(("C", eid, jx, mid)), w))
            continue
        _, eid, jx, cfg = state
        eve.append(sid)
        e = g.edges[eid]
        for i in range(e.priority, max_odd + 1, 2):
            nxt = ("A", e.dst, update(cfg, i, jx))
            edges.append((sid, intern(nxt), 0))

    graph = ParityGraph.make(range(len(decode)), edges, Index(0, max(J.hi, 1)))
    game = ParityGame.make(graph, eve)
    return RegProduct(
        game,
        tuple(decode),
        initial,
        base,
        J,
        n,
        rule,
        regs,
        machine.counter_keys,
        machine.degenerate_init,
    )


def eve_wins_reg(base, J, n, from_vertex=None, *, rule=LIBERAL, cap=DEFAULT_STATE_CAP):
    """Does Eve win the transduction game from the encoded initial
    configuration of `from_vertex` (default: smallest vertex)?"""
    g = base.graph if isinstance(base, ParityGame) else base
    if from_vertex is None:
        from_vertex = min(g.vertices)
    product = reg_product(base, J, n, rule=rule, cap=cap, starts=[from_vertex])
    eve_region, _, _, _ = solve(product.game)
    return product.initial[from_vertex] in eve_region


# ---------------------------------------------------------------------------
# n-boundedness


@dataclass(frozen=True)
class SegmentedPath:
    """Witness against an n-bound: n+1 consecutive segments whose labelI and
    labelJ maxima are the fixed odd/even pair."""

    odd: int
    even: int
    segments: tuple

    def check(self, pair):
        prev_end = None
        for seg in self.segments:
            if not seg:
                return False
            for a, b in zip(seg, seg[1:]):
                if pair.graph.edges[a].dst != pair.graph.edges[b].src:
                    return False
            if prev_end is not None and pair.graph.edges[seg[0]].src != prev_end:
                return False
            prev_end = pair.graph.edges[seg[-1]].dst
            if max(pair.label_i[i] for i in seg) != self.odd:
                return False
            if max(pair.label_j[i] for i in seg) != self.even:
                return False
        return True


def _segment_search(g, li, lj, odd, even, n):
    """BFS over (vertex, closed segments, seen-odd, seen-even); a close is an
    epsilon step allowed when both maxima have been witnessed."""
    parent = {}
    queue = deque()
    for v in g.sorted_vertices():
        s0 = (v, 0, False, False)
        if s0 not in parent:
            parent[s0] = None
            queue.append(s0)
    while queue:
        state = queue.popleft()
        v, s, fi, fj = state
        if fi and fj:
            nxt = (v, s + 1, False, False)
            if nxt not in parent:
                parent[nxt] = (state, None)
                if s + 1 == n + 1:
                    return _reconstruct(parent, nxt)
                queue.append(nxt)
        for eid in g.out[v]:
            a, b = li[eid], lj[eid]
            if a > odd or b > even:
                continue
            nxt = (g.edges[eid].dst, s, fi or a == odd, fj or b == even)
            if nxt not in parent:
                parent[nxt] = (state, eid)
                queue.append(nxt)
    return None


def _reconstruct(parent, state):
    steps = []
    while parent[state] is not None:
        prev, eid = parent[state]
        steps.append(eid)
        state = prev
    steps.reverse()
    segments = []
    current = []
    for eid in steps:
        if eid is None:
            segments.append(tuple(current))
            current = []
        else:
            current.append(eid)
    return tuple(segments)


def n_bound_check(pair, n):
    """(True, None) if labelI is n-bound by labelJ, else (False, witness)."""
    if n < 0:
        raise PreconditionFailed("n_bound_check", "n must be a natural")
    for odd in pair.index_i.odds():
        for even in pair.index_j.evens():
            found = _segment_search(
                pair.graph, pair.label_i, pair.label_j, odd, even, n
            )
            if found is not None:
                return False, SegmentedPath(odd, even, found)
    return True, None


# ---------------------------------------------------------------------------
# strategy syntheses


@dataclass(frozen=True)
class ProductStrategy:
    """An Eve strategy over a concrete register product."""

    product: RegProduct
    sigma: dict = field(hash=False)

    def reachable_region(self):
        """Vertices reachable from the initial ones when Eve follows sigma."""
        game = self.product.game
        g = game.graph
        seen = set(self.product.initial.values())
        queue = deque(sorted(seen))
        while queue:
            v = queue.popleft()
            if game.owner(v) == EVE:
                targets = [self.sigma[v]]
            else:
                targets = list(g.out[v])
            for i in targets:
                w = g.edges[i].dst
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def verify(self):
        region = self.reachable_region()
        sigma = {v: e for v, e in self.sigma.items() if v in region}
        return verify_winning(self.product.game, sigma, region)


def _choice_edge(product, vid, position):
    return product.game.graph.out[vid][position]


def strategy_from_bounded_pair(pair, n, *, rule=LIBERAL, cap=DEFAULT_STATE_CAP):
    """Eve's register strategy mirroring the guide labelling: after an edge
    with output label j', pick register floor(j'/2); resolve odd inputs by
    their own priority.  Wins the product at counter bound n+1."""
    ok, lasso = _view_even(pair.graph_i())
    if not ok:
        raise PreconditionFailed("labelI-even", f"odd lasso {lasso}")
    ok, lasso = _view_even(pair.graph_j())
    if not ok:
        raise PreconditionFailed("labelJ-even", f"odd lasso {lasso}")
    if pair.index_j.lo not in (1, 2):
        raise PreconditionFailed("index-J", "min(J) must be 1 or 2")
    bounded, ce = n_bound_check(pair, n)
    if not bounded:
        raise PreconditionFailed("n-bound", f"witness {ce}")
    product = reg_product(pair.graph_i(), pair.index_j, n + 1, rule=rule, cap=cap)
    reg_pos = {j: x for x, j in enumerate(product.reg_indices)}
    sigma = {}
    for vid, state in enumerate(product.decode):
        if state[0] == "B":
            _, eid, _cfg = state
            j = pair.label_j[eid] // 2
            sigma[vid] = _choice_edge(product, vid, reg_pos[j])
        elif state[0] == "C":
            _, eid, _jx, _cfg = state
            sigma[vid] = _choice_edge(product, vid, 0)
    return ProductStrategy(product, sigma)


def _view_even(g):
    lasso = _odd_cycle_witness(g, g.vertices, frozenset())
    return lasso is None, lasso


def _decomposition_signatures(d, n):
    """Per-vertex ordering signature plus (level, shape-Strahler) per node.

    Signature chunks are (slot, marker) pairs flattened into one tuple:
    child k contributes slot k, the top attractor slot kappa+1; marker 0
    descends into the child subtree, marker 1 stops on its attractor rim.
    Lexicographic order on signatures is the leaf order with every node's
    top attractor ordered last.
    """
    sig = {}
    info = {}

    def walk(node, prefix):
        info[prefix] = (node.level, n_strahler(tree_shape(node), n))
        kappa = len(node.children)
        for v in node.top_attractor:
            sig[v] = prefix + (kappa + 1, 0)
        for k, child in enumerate(node.children, 1):
            for v in child.attractor - child.subgame:
                sig[v] = prefix + (k, 1)
            walk(child.sub, prefix + (k, 0))

    walk(d, ())
    return sig, info


def _smallest_common(info, sig_q, sig_r):
    prefix = ()
    idx = 0
    while idx + 2 <= len(sig_q) and idx + 2 <= len(sig_r):
        chunk = sig_q[idx : idx + 2]
        if chunk != sig_r[idx : idx + 2] or chunk[1] != 0:
            break
        candidate = prefix + chunk
        if candidate not in info:
            break
        prefix = candidate
        idx += 2
    return info[prefix]


def synth_from_ad(g, d, n, *, rule=LIBERAL, cap=DEFAULT_STATE_CAP):
    """Eve strategy for the product over a one-player even graph, reading
    register picks off the decomposition: r_0 leftwards, the subtree's
    Strahler number rightwards, r_0/r_1 inside an attractor."""
    if n < 1:
        raise PreconditionFailed("synth_from_ad", "n must be positive")
    res = validate_ad(g, d)
    if not res:
        raise InvalidDecomposition(f"{res.clause} ({res.witness})")
    sig, info = _decomposition_signatures(d, n)
    h = n_strahler(tree_shape(d), n)
    if g.index.hi < d.level:
        # widen the declared range so the sharp choice can reach level-1
        g = ParityGraph(g.vertices, g.edges, Index(g.index.lo, d.level))
    product = reg_product(g, Index(1, 2 * h), n + 1, rule=rule, cap=cap)
    reg_pos = {j: x for x, j in enumerate(product.reg_indices)}

    def choices(eid):
        e = g.edges[eid]
        level, strahler = _smallest_common(info, sig[e.src], sig[e.dst])
        p = e.priority
        if p % 2 == 1 and p < level - 1:
            i = level - 1
        else:
            i = p
        if sig[e.dst] < sig[e.src]:
            reg = 0
        elif sig[e.src] < sig[e.dst]:
            reg = strahler
        else:
            reg = 0 if i < level else 1
        return i, reg

    sigma = {}
    for vid, state in enumerate(product.decode):
        if state[0] == "B":
            _, eid, _cfg = state
            _i, reg = choices(eid)
            sigma[vid] = _choice_edge(product, vid, reg_pos[reg])
        elif state[0] == "C":
            _, eid, _jx, _cfg = state
            i, _reg = choices(eid)
            e = g.edges[eid]
            sigma[vid] = _choice_edge(product, vid, (i - e.priority) // 2)
    return ProductStrategy(product, sigma)
