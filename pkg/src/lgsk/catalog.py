"""Built-in subshifts, the Fischer cover, and explicit bracket systems.

The explicit "horizon" λ-graph systems for the bracket shifts serve as
independent ground truth for the generic builder: their vertices are the
admissible closing-bracket words themselves, with the edge and iota
rules written out directly, rather than classes discovered by the
synchronization machinery.
"""

from collections import deque

from .errors import ValidationError
from .lgs import LambdaGraphSystem, LgsVertex
from .sync import is_intrinsically_synchronizing, shortlex_key
from .words import (
    Dyck,
    FullShift,
    MarkovDyck,
    SftForbidden,
    SoficGraph,
    enumerate_words,
    left_extensions,
    spec_machine,
)


def golden_mean():
    return SftForbidden(("a", "b"), (("b", "b"),))


def full_shift(n):
    if n < 2:
        raise ValidationError(
            "full shift on %d symbol(s) is degenerate; need at least 2" % (n,)
        )
    return FullShift(n)


def dyck(n):
    return Dyck(n)


def markov_dyck(matrix):
    return MarkovDyck(tuple(tuple(int(x) for x in row) for row in matrix))


def sofic_from_graph(graph):
    if isinstance(graph, SoficGraph):
        return graph
    states, edges = graph
    return SoficGraph(tuple(states), tuple(tuple(e) for e in edges))


def adjacency_matrix(graph):
    """Edge counts between states, rows indexed by source."""
    order = {s: i for i, s in enumerate(graph.states)}
    n = len(graph.states)
    m = [[0] * n for _ in range(n)]
    for frm, to, _lab in graph.edges:
        m[order[frm]][order[to]] += 1
    return m


# ---------------------------------------------------------------------------
# Fischer cover


def _presentation(spec):
    """Some left-to-right labeled-graph presentation of a sofic spec."""
    if isinstance(spec, SoficGraph):
        return tuple(spec.states), tuple(spec.edges)
    if isinstance(spec, (SftForbidden, FullShift)):
        machine = spec_machine(spec)
        # the graph machine was built from an explicit state graph
        states = sorted({s for pair in machine.start() for s in pair})
        edges = sorted(
            (frm, to, lab)
            for lab, moves in machine._step.items()
            for frm, to in moves
        )
        return tuple(states), tuple(edges)
    raise ValidationError("Fischer cover needs a sofic input")


def fischer_cover(spec, max_sync_len=8, budget=None):
    """Minimal left-resolving presentation of an irreducible sofic shift.

    States are predecessor sets S(w) = {p : w readable starting at p},
    computed by subset construction reading right to left, restricted to
    the states of intrinsically synchronizing words, then merged by
    their behaviour against every forward-reachable end set.  The result
    is checked to be essential and strongly connected.
    """
    states, edges = _presentation(spec)
    pre = {}
    post = {}
    alphabet = sorted({lab for _f, _t, lab in edges})
    for frm, to, lab in edges:
        pre.setdefault(lab, {}).setdefault(to, set()).add(frm)
        post.setdefault(lab, {}).setdefault(frm, set()).add(to)

    def pre_a(lab, xs):
        table = pre.get(lab, {})
        out = set()
        for x in xs:
            out |= table.get(x, set())
        return frozenset(out)

    def post_a(lab, xs):
        table = post.get(lab, {})
        out = set()
        for x in xs:
            out |= table.get(x, set())
        return frozenset(out)

    # subset states of the right-to-left construction, with a minimal
    # witness word per state (symbols are prepended along the search)
    q0 = frozenset(states)
    witness = {q0: ()}
    queue = deque([q0])
    while queue:
        y = queue.popleft()
        for lab in alphabet:
            x = pre_a(lab, y)
            if x and x not in witness:
                witness[x] = (lab,) + witness[y]
                queue.append(x)

    # keep states carrying at least one intrinsically synchronizing word
    kept = {}
    sync_cache = {}
    for length in range(max_sync_len + 1):
        for w in enumerate_words(spec, length):
            if w not in sync_cache:
                sync_cache[w] = is_intrinsically_synchronizing(spec, w).is_yes
            if not sync_cache[w]:
                continue
            state = q0
            for lab in reversed(w):
                state = pre_a(lab, state)
            if state and (
                state not in kept
                or shortlex_key(w) < shortlex_key(kept[state])
            ):
                kept[state] = w
    if not kept:
        raise ValidationError(
            "no intrinsically synchronizing word of length <= %d; "
            "input may not be irreducible sofic" % (max_sync_len,)
        )
    cover_states = set(kept)
    cover_edges = {
        (pre_a(lab, y), y, lab)
        for y in cover_states
        for lab in alphabet
        if pre_a(lab, y) in cover_states
    }

    # merge states indistinguishable against every reachable end set
    ends = {q0}
    queue = deque([q0])
    while queue:
        e = queue.popleft()
        for lab in alphabet:
            nxt = post_a(lab, e)
            if nxt and nxt not in ends:
                ends.add(nxt)
                queue.append(nxt)
    end_list = sorted(ends, key=sorted)

    def profile(x):
        return tuple(bool(e & x) for e in end_list)

    classes = {}
    for x in cover_states:
        classes.setdefault(profile(x), []).append(x)
    class_word = {
        prof: min((kept[x] for x in xs), key=shortlex_key)
        for prof, xs in classes.items()
    }
    order = sorted(classes, key=lambda prof: shortlex_key(class_word[prof]))
    name = {}
    for i, prof in enumerate(order):
        for x in classes[prof]:
            name[x] = "s%d" % i
    merged_edges = sorted({(name[x], name[y], lab) for x, y, lab in cover_edges})
    seen = {}
    for s, d, lab in merged_edges:
        if (d, lab) in seen and seen[(d, lab)] != s:
            raise ValidationError(
                "merged cover is not left-resolving; input may not be an "
                "irreducible sofic presentation"
            )
        seen[(d, lab)] = s
    result = SoficGraph(
        tuple("s%d" % i for i in range(len(order))), tuple(merged_edges)
    )
    _require_strongly_connected(result)
    return result


def _require_strongly_connected(graph):
    succ = {}
    for frm, to, _lab in graph.edges:
        succ.setdefault(frm, set()).add(to)
    for start in graph.states:
        seen = {start}
        queue = deque([start])
        while queue:
            s = queue.popleft()
            for t in succ.get(s, ()):
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        if seen != set(graph.states):
            raise ValidationError(
                "cover is not strongly connected; subshift is not irreducible"
            )


# ---------------------------------------------------------------------------
# explicit horizon systems for the bracket shifts


def cantor_horizon_dyck(n, L):
    return cantor_horizon_markov_dyck(
        tuple((1,) * n for _ in range(n)), L, spec=Dyck(n)
    )


def cantor_horizon_markov_dyck(matrix, L, spec=None):
    """Explicit system whose level-l vertices are the admissible
    closing-bracket words of length l.

    iota deletes the rightmost symbol; an opening edge labeled a_j leads
    from mu to j.mu; a closing edge labeled b_j leads from j.nu to
    nu.x.y for any admissible completion x, y (the target keeps the
    source's tail and gains two free symbols).
    """
    if spec is None:
        spec = MarkovDyck(tuple(tuple(int(x) for x in row) for row in matrix))
    a = spec.matrix
    nsym = len(a)

    def admissible(mu):
        return all(a[i - 1][j - 1] == 1 for i, j in zip(mu, mu[1:]))

    levels = [[()]]
    for l in range(1, L + 1):
        levels.append(
            [
                (j,) + mu
                for mu in levels[l - 1]
                for j in range(1, nsym + 1)
                if admissible((j,) + mu)
            ]
        )
    levels = [sorted(vs) for vs in levels]
    ids = [
        {mu: "l%dv%d" % (l, i) for i, mu in enumerate(vs)}
        for l, vs in enumerate(levels)
    ]
    vertices = []
    for l, vs in enumerate(levels):
        level_vs = []
        for mu in vs:
            word = tuple("b%d" % j for j in mu)
            gamma = frozenset(left_extensions(spec, word, l))
            level_vs.append(LgsVertex(ids[l][mu], gamma, word))
        vertices.append(level_vs)
    edges, iota = [], []
    for l in range(L):
        level_edges = []
        for nu in levels[l + 1]:
            # opening edge: source drops the outermost (first) symbol
            level_edges.append(
                (ids[l][nu[1:]], ids[l + 1][nu], "a%d" % nu[0])
            )
            # closing edges: source is j followed by the target's head
            for j in range(1, nsym + 1):
                src = (j,) + nu[: l - 1] if l >= 1 else ()
                if l >= 1 and not admissible(src):
                    continue
                if l >= 1 and a[j - 1][nu[0] - 1] != 1:
                    continue
                if l == 0 and a[j - 1][nu[0] - 1] != 1:
                    continue
                level_edges.append((ids[l][src], ids[l + 1][nu], "b%d" % j))
        level_iota = {
            ids[l + 1][nu]: ids[l][nu[:-1]] for nu in levels[l + 1]
        }
        edges.append(sorted(set(level_edges)))
        iota.append(level_iota)
    return LambdaGraphSystem(
        spec.alphabet, vertices, edges, iota, spec=spec
    )
