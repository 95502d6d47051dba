"""Native JSON manifests, PGSolver interop, and DOT export.

Every native kind round-trips: parse(print(x)) == x.  Register products
are serialized by their generating parameters and rebuilt on load, which
is identity because construction is deterministic.
"""

import json
import re

from .automata import NPTA, GuidingFunction, RegularTree
from .decomposition import AdChild, AttractorDecomposition, LabellingPair
from .errors import (
    DanglingSuccessor,
    NotExpressible,
    ParseError,
    PreconditionFailed,
)
from .games import ADAM, EVE, Index, Lasso, ParityGame, ParityGraph
from .trees import OrderedTree

FORMAT = "paritykit/1"


def _graph_payload(g):
    return {
        "vertices": sorted(g.vertices),
        "edges": [[e.src, e.dst, e.priority] for e in g.edges],
        "index": [g.index.lo, g.index.hi],
    }


def _graph_from(payload):
    return ParityGraph.make(
        payload["vertices"],
        [tuple(e) for e in payload["edges"]],
        Index(*payload["index"]),
    )


def _payload(obj):
    if isinstance(obj, ParityGraph):
        return "graph", _graph_payload(obj)
    if isinstance(obj, ParityGame):
        return "game", {
            "graph": _graph_payload(obj.graph),
            "eve": sorted(obj.eve),
        }
    if isinstance(obj, Lasso):
        return "lasso", {"stem": list(obj.stem), "cycle": list(obj.cycle)}
    if isinstance(obj, OrderedTree):
        return "tree", {"brackets": obj.to_brackets()}
    if isinstance(obj, AttractorDecomposition):
        return "decomposition", _ad_payload(obj)
    if isinstance(obj, LabellingPair):
        return "pair", {
            "graph": _graph_payload(obj.graph),
            "label_i": list(obj.label_i),
            "label_j": list(obj.label_j),
            "index_i": [obj.index_i.lo, obj.index_i.hi],
            "index_j": [obj.index_j.lo, obj.index_j.hi],
        }
    if isinstance(obj, NPTA):
        return "automaton", {
            "alphabet": list(obj.alphabet),
            "states": list(obj.states),
            "initial": obj.initial,
            "transitions": [list(t) for t in obj.transitions],
            "omega": [list(o) for o in obj.omega],
            "index": [obj.index.lo, obj.index.hi],
        }
    if isinstance(obj, RegularTree):
        return "regular-tree", {
            "labels": list(obj.labels),
            "succ0": list(obj.succ0),
            "succ1": list(obj.succ1),
            "root": obj.root,
        }
    if isinstance(obj, GuidingFunction):
        return "guiding-function", {
            "table": [[p, tb, ta] for (p, tb), ta in sorted(obj.table.items())]
        }
    if isinstance(obj, dict):
        return "strategy", {"choices": [[v, e] for v, e in sorted(obj.items())]}
    from .transduction import RegProduct

    if isinstance(obj, RegProduct):
        base_kind, base_payload = _payload(obj.base)
        return "product", {
            "base": {"kind": base_kind, "payload": base_payload},
            "J": [obj.J.lo, obj.J.hi],
            "n": obj.n,
            "rule": obj.rule,
            "starts": sorted(obj.initial),
        }
    raise PreconditionFailed("manifest", f"unsupported object {type(obj).__name__}")


def _ad_payload(d):
    return {
        "level": d.level,
        "top_edges": sorted(d.top_edges),
        "top_attractor": sorted(d.top_attractor),
        "children": [
            {
                "subgame": sorted(c.subgame),
                "attractor": sorted(c.attractor),
                "sub": _ad_payload(c.sub),
            }
            for c in d.children
        ],
    }


def _ad_from(payload):
    return AttractorDecomposition(
        payload["level"],
        frozenset(payload["top_edges"]),
        frozenset(payload["top_attractor"]),
        tuple(
            AdChild(
                frozenset(c["subgame"]),
                frozenset(c["attractor"]),
                _ad_from(c["sub"]),
            )
            for c in payload["children"]
        ),
    )


def dumps(obj, indent=None, meta=None):
    kind, payload = _payload(obj)
    doc = {"format": FORMAT, "kind": kind, "payload": payload}
    if meta:
        doc["meta"] = meta
    return json.dumps(doc, indent=indent, sort_keys=True)


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"not a manifest: {err.msg}", line=err.lineno, column=err.colno)
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise ParseError("missing or unknown manifest format tag")
    kind = doc.get("kind")
    payload = doc.get("payload")
    return _from_payload(kind, payload)


def _from_payload(kind, payload):
    if kind == "graph":
        return _graph_from(payload)
    if kind == "game":
        return ParityGame.make(_graph_from(payload["graph"]), payload["eve"])
    if kind == "lasso":
        return Lasso(tuple(payload["stem"]), tuple(payload["cycle"]))
    if kind == "tree":
        return OrderedTree.from_brackets(payload["brackets"])
    if kind == "decomposition":
        return _ad_from(payload)
    if kind == "pair":
        return LabellingPair.make(
            _graph_from(payload["graph"]),
            payload["label_i"],
            payload["label_j"],
            Index(*payload["index_i"]),
            Index(*payload["index_j"]),
        )
    if kind == "automaton":
        return NPTA.make(
            payload["alphabet"],
            payload["states"],
            payload["initial"],
            [tuple(t) for t in payload["transitions"]],
            [tuple(o) for o in payload["omega"]],
            Index(*payload["index"]),
        )
    if kind == "regular-tree":
        return RegularTree.make(
            payload["labels"], payload["succ0"], payload["succ1"], payload["root"]
        )
    if kind == "guiding-function":
        return GuidingFunction({(p, tb): ta for p, tb, ta in payload["table"]})
    if kind == "strategy":
        return {v: e for v, e in payload["choices"]}
    if kind == "product":
        from .transduction import reg_product

        base = _from_payload(payload["base"]["kind"], payload["base"]["payload"])
        return reg_product(
            base,
            Index(*payload["J"]),
            payload["n"],
            rule=payload["rule"],
            starts=payload["starts"],
        )
    raise ParseError(f"unknown manifest kind {kind!r}")


# ---------------------------------------------------------------------------
# PGSolver format

_PG_LINE = re.compile(
    r"^\s*(\d+)\s+(\d+)\s+([01])\s+([0-9,\s]+?)\s*(?:\"([^\"]*)\")?\s*;\s*$"
)


def import_pgsolver(text, *, use_source_priority=False):
    """Parse the classic vertex-priority format; vertex priorities convert
    to edge priorities via the TARGET vertex (a play sees a priority on
    arrival), or via the source behind the flag."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", line=1)
    header = lines[0].strip()
    if not re.match(r"^parity\s+\d+\s*;$", header):
        raise ParseError(f"bad header {header!r}", line=1)
    priority = {}
    owner = {}
    succs = {}
    for ln, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        m = _PG_LINE.match(raw)
        if m is None:
            raise ParseError(f"bad vertex line {raw!r}", line=ln)
        vid = int(m.group(1))
        priority[vid] = int(m.group(2))
        owner[vid] = ADAM if m.group(3) == "1" else EVE
        succs[vid] = [int(s) for s in m.group(4).replace(" ", "").split(",") if s]
    if not priority:
        raise ParseError("no vertices (EmptyGame)", line=1)
    for v, targets in succs.items():
        for w in targets:
            if w not in priority:
                raise DanglingSuccessor(f"vertex {v} lists unknown successor {w}")
    edges = []
    for v in sorted(succs):
        for w in succs[v]:
            p = priority[v] if use_source_priority else priority[w]
            edges.append((v, w, p))
    graph = ParityGraph.make(sorted(priority), edges)
    return ParityGame.make(graph, {v: o for v, o in owner.items()})


def export_pgsolver(game):
    """Inverse of the import where expressible: every vertex's incoming
    edges must agree on a single priority."""
    g = game.graph
    vertex_priority = {}
    for e in g.edges:
        before = vertex_priority.get(e.dst)
        if before is None:
            vertex_priority[e.dst] = e.priority
        elif before != e.priority:
            raise NotExpressible(
                f"vertex {e.dst} has incoming priorities {before} and {e.priority}"
            )
    lines = [f"parity {max(g.vertices)};"]
    for v in g.sorted_vertices():
        succ = ",".join(str(g.edges[i].dst) for i in g.out[v])
        if not succ:
            raise NotExpressible(f"terminal vertex {v}")
        p = vertex_priority.get(v, 0)
        o = 1 if game.owner(v) == ADAM else 0
        lines.append(f"{v} {p} {o} {succ};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DOT export


def export_dot(obj):
    if isinstance(obj, ParityGame):
        return _dot_game(obj.graph, obj)
    if isinstance(obj, ParityGraph):
        return _dot_game(obj, None)
    if isinstance(obj, OrderedTree):
        return _dot_tree(obj)
    if isinstance(obj, AttractorDecomposition):
        return _dot_decomposition(obj)
    from .transduction import RegProduct

    if isinstance(obj, RegProduct):
        return _dot_product(obj)
    raise PreconditionFailed("dot", f"unsupported object {type(obj).__name__}")


def _dot_game(g, game):
    lines = ["digraph parity {"]
    for v in g.sorted_vertices():
        if game is None:
            shape = "circle"
        else:
            shape = "box" if game.owner(v) == ADAM else "ellipse"
        lines.append(f'  v{v} [label="{v}", shape={shape}];')
    for e in g.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.priority}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_tree(t):
    lines = ["digraph tree {"]
    counter = [0]

    def walk(node):
        me = counter[0]
        counter[0] += 1
        lines.append(f'  n{me} [label="", shape=point];')
        for c in node.children:
            child = walk(c)
            lines.append(f"  n{me} -> n{child};")
        return me

    walk(t)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_decomposition(d):
    lines = ["digraph decomposition {", "  compound=true;"]
    counter = [0]

    def walk(node, path):
        cid = counter[0]
        counter[0] += 1
        lines.append(f"  subgraph cluster_{cid} {{")
        lines.append(f'    label="level {node.level}";')
        top = ",".join(str(v) for v in sorted(node.top_attractor))
        lines.append(f'    a{cid} [label="A0: {top}", shape=box];')
        for k, child in enumerate(node.children, 1):
            att = ",".join(str(v) for v in sorted(child.attractor))
            lines.append(f'    a{cid}_{k} [label="A{k}: {att}", shape=box];')
            walk(child.sub, path + (k,))
        lines.append("  }")

    walk(d, ())
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_product(p):
    g = p.game.graph
    lines = ["digraph product {"]
    for v in g.sorted_vertices():
        phase, base, cfg, pending = p.describe(v)
        if phase == "sink":
            label = "sink"
        else:
            regs = ",".join(f"r{j}={x}" for j, x in sorted(cfg.registers.items()))
            ctrs = ",".join(
                f"c{i},{j}={x}" for (i, j), x in sorted(cfg.counters.items()) if x
            )
            label = f"{phase} {base} [{regs}]" + (f" [{ctrs}]" if ctrs else "")
        shape = "box" if p.game.owner(v) == ADAM else "ellipse"
        lines.append(f'  v{v} [label="{label}", shape={shape}];')
    for e in g.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.priority}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
