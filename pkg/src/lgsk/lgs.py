"""λ-graph systems: construction, validation, reduction, isomorphism.

A λ-graph system (truncated at level L) is a leveled labeled graph: a
vertex list per level, labeled edges from level l to l+1, and a
surjection iota from each level onto the previous one.  Every vertex
stores its predecessor set: the length-l words that can appear
immediately to its left.  The canonical builder takes the past-
equivalence classes of the synchronizing words as vertices; stationary
systems repeat a fixed labeled graph on every level.
"""

import json
from collections import Counter
from dataclasses import dataclass

from .errors import (
    ClassResolutionError,
    LevelMismatchError,
    QuotientError,
    ValidationError,
)
from .sync import past_equiv_classes, shortlex_key
from .words import DEFAULT_BUDGET, SoficGraph


@dataclass(frozen=True)
class LgsVertex:
    id: str
    gamma: frozenset  # predecessor words of the vertex's level length
    rep: tuple = None  # advisory representative word


class LambdaGraphSystem:
    """Immutable-by-convention leveled labeled graph with iota maps.

    vertices[l] lists the level-l vertices; edges[l] the labeled edges
    from level l to l+1 as (src id, dst id, label); iota[l] maps each
    level-(l+1) vertex id to its level-l parent id.
    """

    def __init__(self, alphabet, vertices, edges, iota, spec=None, word_cap=None):
        self.alphabet = tuple(alphabet)
        self.vertices = [list(vs) for vs in vertices]
        self.edges = [sorted(es) for es in edges]
        self.iota = [dict(m) for m in iota]
        self.spec = spec
        self.word_cap = word_cap
        self._by_id = {
            v.id: (l, v) for l, vs in enumerate(self.vertices) for v in vs
        }
        if len(self.edges) != self.L or len(self.iota) != self.L:
            raise ValidationError(
                "need exactly one edge list and one iota map per level pair"
            )

    @property
    def L(self):
        return len(self.vertices) - 1

    def vertex(self, vid):
        return self._by_id[vid][1]

    def level_of(self, vid):
        return self._by_id[vid][0]

    def vertex_counts(self):
        return [len(vs) for vs in self.vertices]

    # -- serialization

    def to_dict(self):
        levels = []
        for l, vs in enumerate(self.vertices):
            entry = {
                "vertices": [
                    {
                        "id": v.id,
                        "gamma": sorted([list(w) for w in v.gamma]),
                        "rep": None if v.rep is None else list(v.rep),
                    }
                    for v in vs
                ],
                "edges": [],
                "iota": [],
            }
            if l < self.L:
                entry["edges"] = [
                    {"src": s, "dst": d, "label": lab}
                    for s, d, lab in self.edges[l]
                ]
                entry["iota"] = [
                    {"child": c, "parent": p}
                    for c, p in sorted(self.iota[l].items())
                ]
            levels.append(entry)
        return {"levels": levels}

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        vertices, edges, iota = [], [], []
        for l, entry in enumerate(data["levels"]):
            vertices.append(
                [
                    LgsVertex(
                        v["id"],
                        frozenset(tuple(w) for w in v["gamma"]),
                        None if v.get("rep") is None else tuple(v["rep"]),
                    )
                    for v in entry["vertices"]
                ]
            )
            if l < len(data["levels"]) - 1:
                edges.append(
                    [(e["src"], e["dst"], e["label"]) for e in entry["edges"]]
                )
                iota.append(
                    {m["child"]: m["parent"] for m in entry["iota"]}
                )
        alphabet = tuple(sorted({lab for es in edges for _s, _d, lab in es}))
        return cls(alphabet, vertices, edges, iota)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dot(self, level):
        """DOT digraph for the level pair (level, level+1)."""
        if not 0 <= level < self.L:
            raise ValidationError("level pair %d is not built" % (level,))
        lines = ["digraph level_%d_%d {" % (level, level + 1)]
        for v in self.vertices[level] + self.vertices[level + 1]:
            lines.append('  "%s";' % v.id)
        for s, d, lab in self.edges[level]:
            lines.append('  "%s" -> "%s" [label="%s"];' % (s, d, lab))
        for c, p in sorted(self.iota[level].items()):
            lines.append('  "%s" -> "%s" [style=dashed];' % (c, p))
        lines.append("}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# canonical builder


def build_lambda_sync_lgs(spec, L, W, horizon=None, budget=DEFAULT_BUDGET):
    """Canonical system on past-equivalence classes of synchronizing words.

    Level l vertices are the classes of l-synchronizing words of length
    <= W.  For a level-(l+1) class with predecessor set G, the symbols
    adjacent to the class are the last symbols of G's members; each such
    symbol alpha contributes one edge labeled alpha from the level-l
    class with predecessor set {u minus its last symbol : u in G ending
    in alpha}; iota drops the outermost predecessor symbol instead.
    """
    if L < 0:
        raise ValidationError("level bound must be nonnegative")
    parts = [past_equiv_classes(spec, l, max(W, l), budget) for l in range(L + 1)]
    vertices = []
    index = []  # per level: gamma -> vertex id
    for l, part in enumerate(parts):
        vs = [
            LgsVertex("l%dv%d" % (l, i), gamma, rep)
            for i, (gamma, rep) in enumerate(
                zip(part.gammas, part.representatives)
            )
        ]
        vertices.append(vs)
        index.append({v.gamma: v.id for v in vs})
    edges, iota = [], []
    for l in range(L):
        level_edges, level_iota = [], {}
        for v in vertices[l + 1]:
            gamma = v.gamma
            parent_gamma = frozenset(u[1:] for u in gamma)
            parent = index[l].get(parent_gamma)
            if parent is None:
                raise ClassResolutionError(
                    "no level-%d class matches the iota image of %s"
                    % (l, v.id),
                    witness=v.rep,
                )
            level_iota[v.id] = parent
            for alpha in sorted({u[-1] for u in gamma}):
                src_gamma = frozenset(u[:-1] for u in gamma if u[-1] == alpha)
                src = index[l].get(src_gamma)
                if src is None:
                    raise ClassResolutionError(
                        "no level-%d class matches the %r-predecessor of %s"
                        % (l, alpha, v.id),
                        witness=None if v.rep is None else (alpha,) + v.rep,
                    )
                level_edges.append((src, v.id, alpha))
        edges.append(level_edges)
        iota.append(level_iota)
    alphabet = spec_machine_alphabet(spec)
    return LambdaGraphSystem(
        alphabet, vertices, edges, iota, spec=spec, word_cap=W
    )


def spec_machine_alphabet(spec):
    return spec.alphabet


# ---------------------------------------------------------------------------
# stationary systems


def stationary_lgs(graph, L, alphabet=None):
    """Level-constant system repeating a left-resolving labeled graph."""
    if isinstance(graph, SoficGraph):
        states, graph_edges = graph.states, graph.edges
    else:
        states, graph_edges = graph
        SoficGraph(tuple(states), tuple(graph_edges))  # essentiality check
    seen = {}
    for frm, to, lab in graph_edges:
        if (to, lab) in seen and seen[(to, lab)] != frm:
            raise ValidationError(
                "graph is not left-resolving: edges %r and %r both enter %r "
                "with label %r" % (seen[(to, lab)], frm, to, lab)
            )
        seen[(to, lab)] = frm
    if alphabet is None:
        alphabet = tuple(sorted({lab for _f, _t, lab in graph_edges}))
    order = {s: i for i, s in enumerate(states)}
    # predecessor words per state and level
    gammas = [{s: frozenset([()]) for s in states}]
    for l in range(1, L + 1):
        prev = gammas[-1]
        cur = {s: set() for s in states}
        for frm, to, lab in graph_edges:
            cur[to].update(w + (lab,) for w in prev[frm])
        gammas.append({s: frozenset(ws) for s, ws in cur.items()})
    vertices = [
        [
            LgsVertex("l%dv%d" % (l, order[s]), gammas[l][s], None)
            for s in states
        ]
        for l in range(L + 1)
    ]
    edges = [
        [
            ("l%dv%d" % (l, order[f]), "l%dv%d" % (l + 1, order[t]), lab)
            for f, t, lab in graph_edges
        ]
        for l in range(L)
    ]
    iota = [
        {
            "l%dv%d" % (l + 1, order[s]): "l%dv%d" % (l, order[s])
            for s in states
        }
        for l in range(L)
    ]
    return LambdaGraphSystem(alphabet, vertices, edges, iota)


# ---------------------------------------------------------------------------
# validation


def _pass():
    return {"verdict": "Pass", "witness": None}


def _fail(witness):
    return {"verdict": "Fail", "witness": witness}


def validate_lgs(lgs):
    """Structural report: each named check is Pass or Fail with witness."""
    report = {
        "left_resolving": _pass(),
        "predecessor_separated": _pass(),
        "local_property": _pass(),
        "essential": _pass(),
        "iota_surjective": _pass(),
    }
    # left-resolving: no two distinct edges into one target share a label
    for level_edges in lgs.edges:
        seen = {}
        for s, d, lab in level_edges:
            if (d, lab) in seen and seen[(d, lab)] != s:
                report["left_resolving"] = _fail(
                    {"edges": [[seen[(d, lab)], d, lab], [s, d, lab]]}
                )
            seen[(d, lab)] = s
    # predecessor-separated: gamma sets pairwise distinct within a level
    for vs in lgs.vertices:
        by_gamma = {}
        for v in vs:
            if v.gamma in by_gamma:
                report["predecessor_separated"] = _fail(
                    {"vertices": [by_gamma[v.gamma], v.id]}
                )
            by_gamma[v.gamma] = v.id
    # essential: out-edges below the truncation, in-edges above level 0
    for l, vs in enumerate(lgs.vertices):
        if l < lgs.L:
            with_out = {s for s, _d, _lab in lgs.edges[l]}
            for v in vs:
                if v.id not in with_out:
                    report["essential"] = _fail({"vertex": v.id, "missing": "out"})
        if l >= 1:
            with_in = {d for _s, d, _lab in lgs.edges[l - 1]}
            for v in vs:
                if v.id not in with_in:
                    report["essential"] = _fail({"vertex": v.id, "missing": "in"})
    # iota surjective onto each non-final level
    for l in range(lgs.L):
        image = set(lgs.iota[l].values())
        for v in lgs.vertices[l]:
            if v.id not in image:
                report["iota_surjective"] = _fail({"vertex": v.id})
        for child in lgs.vertices[l + 1]:
            if child.id not in lgs.iota[l]:
                report["iota_surjective"] = _fail({"vertex": child.id})
    # local property: for u two levels up the iota tower and v below,
    # edges v's level receives from iota-preimages of u carry the same
    # label multiset as the edges from u into iota(v)
    for l in range(1, lgs.L):
        down = lgs.iota[l - 1]  # level l id -> level l-1 id
        for v in lgs.vertices[l + 1]:
            by_u = Counter()
            for s, d, lab in lgs.edges[l]:
                if d == v.id:
                    by_u[(down[s], lab)] += 1
            lower = Counter()
            parent = lgs.iota[l][v.id]
            for s, d, lab in lgs.edges[l - 1]:
                if d == parent:
                    lower[(s, lab)] += 1
            if by_u != lower:
                report["local_property"] = _fail(
                    {"vertex": v.id, "upper": sorted(by_u.items()),
                     "lower": sorted(lower.items())}
                )
    report["ok"] = all(
        entry["verdict"] == "Pass"
        for name, entry in report.items()
        if name != "ok"
    )
    return report


# ---------------------------------------------------------------------------
# reduction and isomorphism


def reduce_lgs(lgs):
    """Quotient by equal predecessor sets; enforces separation."""
    maps = []  # per level: old id -> new id
    vertices = []
    for l, vs in enumerate(lgs.vertices):
        groups = {}
        for v in vs:
            groups.setdefault(v.gamma, []).append(v)
        items = sorted(
            groups.items(),
            key=lambda kv: sorted(v.id for v in kv[1])[0],
        )
        level_map = {}
        new_vs = []
        for i, (gamma, members) in enumerate(items):
            nid = "l%dv%d" % (l, i)
            reps = [m.rep for m in members if m.rep is not None]
            new_vs.append(
                LgsVertex(nid, gamma, min(reps, key=shortlex_key) if reps else None)
            )
            for m in members:
                level_map[m.id] = nid
        vertices.append(new_vs)
        maps.append(level_map)
    edges, iota = [], []
    for l in range(lgs.L):
        level_edges = sorted(
            {
                (maps[l][s], maps[l + 1][d], lab)
                for s, d, lab in lgs.edges[l]
            }
        )
        seen = {}
        for s, d, lab in level_edges:
            if (d, lab) in seen:
                raise QuotientError(
                    "quotient breaks the left-resolving property at level %d"
                    % (l,),
                    witness=[[seen[(d, lab)], d, lab], [s, d, lab]],
                )
            seen[(d, lab)] = s
        level_iota = {}
        for child, parent in lgs.iota[l].items():
            c, p = maps[l + 1][child], maps[l][parent]
            if level_iota.get(c, p) != p:
                raise QuotientError(
                    "quotient makes iota ambiguous at level %d" % (l,),
                    witness=c,
                )
            level_iota[c] = p
        edges.append(level_edges)
        iota.append(level_iota)
    return LambdaGraphSystem(
        lgs.alphabet, vertices, edges, iota, spec=lgs.spec, word_cap=lgs.word_cap
    )


@dataclass
class IsoResult:
    isomorphic: bool
    bijections: tuple = ()  # per compared level: dict id1 -> id2
    mismatch: str = None

    def __bool__(self):
        return self.isomorphic


def are_isomorphic(lgs1, lgs2, from_level=0):
    """Level-wise identification via predecessor-set keys.

    Both systems must be predecessor-separated on the compared range, so
    vertices are canonically keyed by their stored predecessor sets and
    isomorphism is simply equality of the keyed data.
    """
    if lgs1.L != lgs2.L:
        raise LevelMismatchError(
            "systems truncated at different levels: %d vs %d"
            % (lgs1.L, lgs2.L)
        )
    if not 0 <= from_level <= lgs1.L:
        raise LevelMismatchError("from_level %d out of range" % (from_level,))
    for lgs in (lgs1, lgs2):
        for vs in lgs.vertices[from_level:]:
            gammas = [v.gamma for v in vs]
            if len(set(gammas)) != len(gammas):
                raise ValidationError(
                    "system is not predecessor-separated on the compared "
                    "range; apply reduce_lgs first"
                )
    bijections = []
    for l in range(from_level, lgs1.L + 1):
        k1 = {v.gamma: v.id for v in lgs1.vertices[l]}
        k2 = {v.gamma: v.id for v in lgs2.vertices[l]}
        if set(k1) != set(k2):
            return IsoResult(False, mismatch="vertex sets differ at level %d" % l)
        bijections.append({k1[g]: k2[g] for g in k1})
    gamma1 = {v.id: v.gamma for vs in lgs1.vertices for v in vs}
    gamma2 = {v.id: v.gamma for vs in lgs2.vertices for v in vs}
    for l in range(from_level, lgs1.L):
        e1 = {(gamma1[s], gamma1[d], lab) for s, d, lab in lgs1.edges[l]}
        e2 = {(gamma2[s], gamma2[d], lab) for s, d, lab in lgs2.edges[l]}
        if e1 != e2:
            return IsoResult(False, mismatch="edge sets differ at levels %d-%d"
                             % (l, l + 1))
        i1 = {(gamma1[c], gamma1[p]) for c, p in lgs1.iota[l].items()}
        i2 = {(gamma2[c], gamma2[p]) for c, p in lgs2.iota[l].items()}
        if i1 != i2:
            return IsoResult(False, mismatch="iota maps differ at levels %d-%d"
                             % (l, l + 1))
    return IsoResult(True, tuple(bijections))


# ---------------------------------------------------------------------------
# launching words and iota-irreducibility


def launching_vertices(lgs, spec, H, word_cap=None, budget=DEFAULT_BUDGET):
    """Per level: vertex id -> a word read from that vertex alone, or None.

    A word nu of length k is readable from a level-l vertex v when some
    level-(l+k) class C has predecessor words ending in nu whose leading
    length-l parts form exactly v's predecessor set (then the labeled
    path from v spelling nu ends at C).  A witness for v is a word
    readable from v and from no other vertex of the same level.
    """
    out = []
    part_cache = {}

    def part(level):
        if level not in part_cache:
            cap = max(word_cap or 0, lgs.word_cap or 0, level)
            part_cache[level] = past_equiv_classes(spec, level, cap, budget)
        return part_cache[level]

    for l, vs in enumerate(lgs.vertices):
        found = {}
        if len(vs) == 1:
            found[vs[0].id] = ()
        by_gamma = {}
        for v in vs:
            by_gamma.setdefault(v.gamma, []).append(v.id)
        for k in range(1, H + 1):
            if len(found) == len(vs):
                break
            readers = {}
            deep = part(l + k)
            for gamma in deep.gammas:
                by_suffix = {}
                for u in gamma:
                    by_suffix.setdefault(u[l:], set()).add(u[:l])
                for nu, heads in by_suffix.items():
                    for vid in by_gamma.get(frozenset(heads), ()):
                        readers.setdefault(nu, set()).add(vid)
            for nu in sorted(readers, key=shortlex_key):
                vids = readers[nu]
                if len(vids) == 1:
                    (vid,) = vids
                    found.setdefault(vid, nu)
        out.append({v.id: found.get(v.id) for v in vs})
    return out


def check_iota_irreducible(lgs, depth):
    """Pass/Fail/Unknown: every vertex reaches every same-level vertex
    through a labeled path whose endpoint iota-projects back onto it."""
    if depth < 1:
        raise ValidationError("depth must be positive")
    if lgs.L < depth:
        return {"verdict": "Unknown", "witness": None}
    succ = [dict() for _ in range(lgs.L)]
    for l in range(lgs.L):
        for s, d, _lab in lgs.edges[l]:
            succ[l].setdefault(s, set()).add(d)
    for l in range(lgs.L - depth + 1):
        for v in lgs.vertices[l]:
            reach = {v.id}
            hit = set()
            for n in range(1, depth + 1):
                reach = {
                    d for s in reach for d in succ[l + n - 1].get(s, ())
                }
                proj = set(reach)
                for step in range(n):
                    proj = {lgs.iota[l + n - 1 - step][p] for p in proj}
                hit |= proj
            missing = [u.id for u in lgs.vertices[l] if u.id not in hit]
            if missing:
                return {
                    "verdict": "Fail",
                    "witness": {"from": v.id, "unreached": missing[0]},
                }
    return {"verdict": "Pass", "witness": None}
