"""Subshift descriptions and their word-language oracles.

A subshift is described by an immutable spec value (full shift, SFT by
forbidden words, sofic shift by a labeled graph, bracket shifts by a
compatibility matrix, or a symbol expansion of another spec).  Every spec
compiles to a deterministic scanning machine whose state summarizes all
that matters about the word read so far; admissibility, word
enumeration, and extension sets are all driven by that machine.

Words are tuples of symbol strings.
"""

import json
from dataclasses import dataclass
from functools import lru_cache

from . import _mdslow
from .errors import BudgetExceeded, ValidationError

EMPTY_WORD = ()

DEFAULT_BUDGET = 2_000_000


def word(*symbols):
    return tuple(symbols)


# ---------------------------------------------------------------------------
# spec variants


@dataclass(frozen=True)
class FullShift:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("full shift needs at least one symbol")

    @property
    def alphabet(self):
        return tuple(str(i) for i in range(1, self.n + 1))


@dataclass(frozen=True)
class SftForbidden:
    alphabet: tuple
    forbidden: tuple  # tuple of words

    def __post_init__(self):
        if not self.forbidden:
            raise ValidationError("forbidden word list must be nonempty")
        for w in self.forbidden:
            if not w:
                raise ValidationError("the empty word cannot be forbidden")
            for s in w:
                if s not in self.alphabet:
                    raise ValidationError(
                        "forbidden word symbol %r not in alphabet" % (s,)
                    )


@dataclass(frozen=True)
class SoficGraph:
    states: tuple
    edges: tuple  # tuple of (from, to, label)

    def __post_init__(self):
        outs = {s: 0 for s in self.states}
        ins = {s: 0 for s in self.states}
        for frm, to, _label in self.edges:
            if frm not in outs or to not in ins:
                raise ValidationError("edge endpoint not among the states")
            outs[frm] += 1
            ins[to] += 1
        for s in self.states:
            if outs[s] == 0 or ins[s] == 0:
                raise ValidationError(
                    "presentation graph is not essential at state %r" % (s,)
                )

    @property
    def alphabet(self):
        return tuple(sorted({label for _f, _t, label in self.edges}))


@dataclass(frozen=True)
class Dyck:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError("bracket shift needs at least two families")

    @property
    def alphabet(self):
        return bracket_alphabet(self.n)

    @property
    def matrix(self):
        return tuple((1,) * self.n for _ in range(self.n))


@dataclass(frozen=True)
class MarkovDyck:
    matrix: tuple  # square 0/1 matrix, rows as tuples

    def __post_init__(self):
        n = len(self.matrix)
        for row in self.matrix:
            if len(row) != n:
                raise ValidationError("compatibility matrix must be square")
            for x in row:
                if x not in (0, 1):
                    raise ValidationError("matrix entries must be 0 or 1")
        for i in range(n):
            if not any(self.matrix[i]):
                raise ValidationError("matrix row %d is zero" % (i + 1,))
            if not any(self.matrix[j][i] for j in range(n)):
                raise ValidationError("matrix column %d is zero" % (i + 1,))

    @property
    def n(self):
        return len(self.matrix)

    @property
    def alphabet(self):
        return bracket_alphabet(self.n)


@dataclass(frozen=True)
class Expanded:
    inner: object
    symbol: str
    fresh: str

    def __post_init__(self):
        inner_alpha = self.inner.alphabet
        if self.symbol not in inner_alpha:
            raise ValidationError(
                "expanded symbol %r not in the inner alphabet" % (self.symbol,)
            )
        if self.fresh in inner_alpha:
            raise ValidationError(
                "fresh symbol %r already in the inner alphabet" % (self.fresh,)
            )

    @property
    def alphabet(self):
        return self.inner.alphabet + (self.fresh,)


def bracket_alphabet(n):
    return tuple("a%d" % i for i in range(1, n + 1)) + tuple(
        "b%d" % i for i in range(1, n + 1)
    )


def bracket_symbol(name):
    """Split "a3"/"b1" into ("open", 3)/("close", 1)."""
    side = "open" if name[0] == "a" else "close"
    return side, int(name[1:])


# ---------------------------------------------------------------------------
# scanning machines
#
# A machine scans a word left to right.  Its state after a word w
# determines exactly which right-extensions keep w admissible, so all
# language queries reduce to graph search on machine states.  States are
# hashable; None marks the dead state.  finish() settles end-of-word
# obligations (only the expansion wrapper has any).


class GraphMachine:
    """Tracks the relation {(p, q) : some path p -> q reads the word}."""

    finite = True

    def __init__(self, states, edges, alphabet):
        self.alphabet = alphabet
        self._step = {}
        for frm, to, label in edges:
            self._step.setdefault(label, []).append((frm, to))
        self._start = frozenset((s, s) for s in states)

    def start(self):
        return self._start

    def step(self, state, symbol):
        moves = self._step.get(symbol)
        if moves is None:
            return None
        out = set()
        for q, r in moves:
            for p, q2 in state:
                if q2 == q:
                    out.add((p, r))
        return frozenset(out) or None

    def finish(self, state):
        return state


class MdMachine:
    """Bracket reduction machine on (allowed-set mask, pending stack)."""

    finite = False

    def __init__(self, matrix):
        self.n = len(matrix)
        self.alphabet = bracket_alphabet(self.n)
        self._masks = []
        for row in matrix:
            m = 0
            for j, x in enumerate(row):
                if x == 1:
                    m |= 1 << j
            self._masks.append(m)
        self._codes = {}
        for i in range(self.n):
            self._codes["a%d" % (i + 1)] = i
            self._codes["b%d" % (i + 1)] = self.n + i

    def start(self):
        return ((1 << self.n) - 1, ())

    def step(self, state, symbol):
        code = self._codes.get(symbol)
        if code is None:
            return None
        return _mdslow.step(state, code, self.n, self._masks)

    def finish(self, state):
        return state


class ExpandedMachine:
    """Wraps the inner machine with the fresh-before-expanded discipline.

    State is (inner state, fresh pending, at word start).  The expanded
    symbol must directly follow the fresh one, except at the very start of
    the word where the fresh symbol may sit just outside the window; a
    trailing fresh symbol obliges the expanded symbol at finish time.
    """

    def __init__(self, inner_machine, symbol, fresh):
        self.inner = inner_machine
        self.symbol = symbol
        self.fresh = fresh
        self.alphabet = inner_machine.alphabet + (fresh,)
        self.finite = inner_machine.finite

    def start(self):
        return (self.inner.start(), False, True)

    def step(self, state, symbol):
        istate, pending, at_start = state
        if symbol == self.fresh:
            if pending:
                return None
            return (istate, True, False)
        if symbol == self.symbol:
            if not (pending or at_start):
                return None
        elif pending:
            return None
        nxt = self.inner.step(istate, symbol)
        if nxt is None:
            return None
        return (nxt, False, False)

    def finish(self, state):
        istate, pending, _at_start = state
        if pending:
            istate = self.inner.step(istate, self.symbol)
            if istate is None:
                return None
        return self.inner.finish(istate)


def _full_graph(n):
    alphabet = tuple(str(i) for i in range(1, n + 1))
    return ("*",), tuple(("*", "*", s) for s in alphabet), alphabet


def _debruijn_graph(spec):
    """Essential labeled graph presenting the SFT, or raise."""
    alphabet = spec.alphabet
    forbidden = set(spec.forbidden)
    m = max(len(w) for w in forbidden)

    def clean(w):
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                if w[i:j] in forbidden:
                    return False
        return True

    if m == 1:
        letters = tuple(s for s in alphabet if (s,) not in forbidden)
        if not letters:
            raise ValidationError("every symbol is forbidden")
        return ("*",), tuple(("*", "*", s) for s in letters)

    states = set()
    frontier = [EMPTY_WORD]
    for _ in range(m - 1):
        frontier = [w + (s,) for w in frontier for s in alphabet if clean(w + (s,))]
    states = set(frontier)
    edges = set()
    for u in states:
        for s in alphabet:
            if clean(u + (s,)):
                edges.add((u, u[1:] + (s,), s))
    # trim to the essential part
    while True:
        outs = {frm for frm, _t, _l in edges}
        ins = {to for _f, to, _l in edges}
        keep = {v for v in states if v in outs and v in ins}
        if keep == states:
            break
        states = keep
        edges = {(f, t, l) for f, t, l in edges if f in keep and t in keep}
    if not states:
        raise ValidationError("forbidden words leave an empty subshift")
    return tuple(sorted(states)), tuple(sorted(edges))


def _essential_sft(spec):
    """Reject SFTs where factor-freeness alone is not the language."""
    states, edges = _debruijn_graph(spec)
    m = max(len(w) for w in spec.forbidden)
    machine = GraphMachine(states, edges, spec.alphabet)
    forbidden = set(spec.forbidden)

    def clean(w):
        for i in range(len(w)):
            for j in range(i + 1, len(w) + 1):
                if w[i:j] in forbidden:
                    return False
        return True

    # every factor-free word of length m-1 and m must be readable on the
    # trimmed graph; longer factor-free words then follow window by window
    to_check = []
    frontier = [EMPTY_WORD]
    for _ in range(m):
        frontier = [
            w + (s,) for w in frontier for s in spec.alphabet if clean(w + (s,))
        ]
        if len(frontier[0] if frontier else ()) >= m - 1:
            to_check.extend(frontier)
    for w in to_check:
        state = machine.start()
        for s in w:
            state = machine.step(state, s)
            if state is None:
                break
        if state is None:
            raise ValidationError(
                "factor-free word %s does not extend to a biinfinite point; "
                "the forbidden-word presentation is not essential" % (list(w),)
            )
    return states, edges


@lru_cache(maxsize=None)
def spec_machine(spec):
    """The scanning machine for a spec (cached; machines are stateless)."""
    if isinstance(spec, FullShift):
        states, edges, alphabet = _full_graph(spec.n)
        return GraphMachine(states, edges, alphabet)
    if isinstance(spec, SftForbidden):
        states, edges = _essential_sft(spec)
        return GraphMachine(states, edges, spec.alphabet)
    if isinstance(spec, SoficGraph):
        return GraphMachine(spec.states, spec.edges, spec.alphabet)
    if isinstance(spec, (Dyck, MarkovDyck)):
        return MdMachine(spec.matrix)
    if isinstance(spec, Expanded):
        return ExpandedMachine(spec_machine(spec.inner), spec.symbol, spec.fresh)
    raise ValidationError("unknown subshift spec %r" % (spec,))


# ---------------------------------------------------------------------------
# language queries


def _check_symbols(spec, w):
    alphabet = spec.alphabet
    for s in w:
        if s not in alphabet:
            raise ValidationError("symbol %r not in alphabet %s" % (s, alphabet))


def scan(spec, w):
    """Machine state after reading w (without finish), or None."""
    machine = spec_machine(spec)
    state = machine.start()
    for s in w:
        state = machine.step(state, s)
        if state is None:
            return None
    return state


def is_admissible(spec, w):
    _check_symbols(spec, w)
    state = scan(spec, w)
    if state is None:
        return False
    return spec_machine(spec).finish(state) is not None


def enumerate_words(spec, l, budget=DEFAULT_BUDGET):
    """All admissible words of length exactly l, lexicographically sorted."""
    if l < 0:
        raise ValidationError("length must be nonnegative")
    machine = spec_machine(spec)
    alphabet = machine.alphabet
    out = []
    spent = 0

    def walk(w, state):
        nonlocal spent
        if len(w) == l:
            if machine.finish(state) is not None:
                out.append(w)
            return
        for s in alphabet:
            spent += 1
            if spent > budget:
                raise BudgetExceeded(
                    "word enumeration exceeded the budget of %d candidates"
                    % (budget,)
                )
            nxt = machine.step(state, s)
            if nxt is not None:
                walk(w + (s,), nxt)

    walk(EMPTY_WORD, machine.start())
    return out


def left_extensions(spec, mu, l, budget=DEFAULT_BUDGET):
    """Exact set of length-l words nu with nu+mu admissible."""
    _check_symbols(spec, mu)
    if not is_admissible(spec, mu):
        raise ValidationError("word %s is not admissible" % (list(mu),))
    out = set()
    for nu in enumerate_words(spec, l, budget=budget):
        if is_admissible(spec, nu + mu):
            out.add(nu)
    return out


def right_extensions(spec, mu, l, budget=DEFAULT_BUDGET):
    """Exact set of length-l words omega with mu+omega admissible."""
    return {w for w in right_extensions_upto(spec, mu, l, budget) if len(w) == l}


def right_extensions_upto(spec, mu, horizon, budget=DEFAULT_BUDGET):
    """All words omega of length <= horizon with mu+omega admissible."""
    _check_symbols(spec, mu)
    machine = spec_machine(spec)
    state = scan(spec, mu)
    if state is None:
        raise ValidationError("word %s is not admissible" % (list(mu),))
    out = set()
    spent = 0

    def walk(w, st):
        nonlocal spent
        if machine.finish(st) is not None:
            out.add(w)
        if len(w) == horizon:
            return
        for s in machine.alphabet:
            spent += 1
            if spent > budget:
                raise BudgetExceeded(
                    "extension enumeration exceeded the budget of %d candidates"
                    % (budget,)
                )
            nxt = machine.step(st, s)
            if nxt is not None:
                walk(w + (s,), nxt)

    walk(EMPTY_WORD, state)
    return out


# ---------------------------------------------------------------------------
# JSON spec files


def spec_to_dict(spec):
    if isinstance(spec, FullShift):
        return {"kind": "full", "n": spec.n}
    if isinstance(spec, SftForbidden):
        return {
            "kind": "sft",
            "alphabet": list(spec.alphabet),
            "forbidden": [list(w) for w in spec.forbidden],
        }
    if isinstance(spec, SoficGraph):
        return {
            "kind": "sofic",
            "graph": {
                "states": list(spec.states),
                "edges": [
                    {"from": f, "to": t, "label": l} for f, t, l in spec.edges
                ],
            },
        }
    if isinstance(spec, Dyck):
        return {"kind": "dyck", "n": spec.n}
    if isinstance(spec, MarkovDyck):
        return {"kind": "markov_dyck", "matrix": [list(r) for r in spec.matrix]}
    if isinstance(spec, Expanded):
        return {
            "kind": "expanded",
            "inner": spec_to_dict(spec.inner),
            "symbol": spec.symbol,
            "fresh": spec.fresh,
        }
    raise ValidationError("unknown subshift spec %r" % (spec,))


def spec_from_dict(data):
    kind = data.get("kind")
    if kind == "full":
        return FullShift(int(data["n"]))
    if kind == "sft":
        return SftForbidden(
            tuple(data["alphabet"]),
            tuple(tuple(w) for w in data["forbidden"]),
        )
    if kind == "sofic":
        g = data["graph"]
        return SoficGraph(
            tuple(g["states"]),
            tuple((e["from"], e["to"], e["label"]) for e in g["edges"]),
        )
    if kind == "dyck":
        return Dyck(int(data["n"]))
    if kind == "markov_dyck":
        return MarkovDyck(tuple(tuple(int(x) for x in r) for r in data["matrix"]))
    if kind == "expanded":
        return Expanded(spec_from_dict(data["inner"]), data["symbol"], data["fresh"])
    raise ValidationError("unknown subshift kind %r" % (kind,))


def spec_to_json(spec, indent=None):
    return json.dumps(spec_to_dict(spec), indent=indent, sort_keys=True)


def spec_from_json(text):
    return spec_from_dict(json.loads(text))
