"""Synchronizing words, past-equivalence classes, and related checks.

A word mu is l-synchronizing when reading any admissible continuation
omega never shrinks the set of admissible length-l left contexts:
Gamma_l^-(mu) = Gamma_l^-(mu omega) for every omega.  The checker runs a
product of scanning machines, one component per distinct machine state
among the length-l words plus one component for the word itself, and
searches for a reachable continuation that kills a component while the
word stays admissible.

Verdicts are three-valued.  Yes is only emitted under an exactness rule:
for finite machines the product search reaches a fixpoint; for the
bracket machines every reachable reduced form of mu omega occurs within
horizon l + |mu| + 1, which the search asserts by scanning two levels
deeper and demanding that no new context set appears.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BudgetExceeded, ValidationError
from .words import (
    EMPTY_WORD,
    DEFAULT_BUDGET,
    ExpandedMachine,
    MdMachine,
    enumerate_words,
    is_admissible,
    spec_machine,
)

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SyncVerdict:
    value: str
    witness_nu: tuple = None
    witness_omega: tuple = None
    horizon: int = None

    @property
    def is_yes(self):
        return self.value == YES

    @property
    def is_no(self):
        return self.value == NO


@dataclass(frozen=True)
class PastPartition:
    """Partition of the synchronizing words by exact left-context set."""

    level: int
    classes: tuple  # tuple of frozensets of words
    representatives: tuple  # shortlex-minimal member per class
    gammas: tuple  # frozenset of length-level words per class
    unknown_words: tuple = ()


def shortlex_key(w):
    return (len(w), w)


class _SyncEngine:
    """Product-machine search shared by all level-l verdicts of a spec."""

    def __init__(self, spec, l):
        self.spec = spec
        self.l = l
        self.machine = spec_machine(spec)
        self.alphabet = self.machine.alphabet
        # one component per distinct machine state among B_l; every word in
        # a component has exactly the same admissible continuations
        by_state = {}
        for nu in enumerate_words(spec, l):
            state = self.machine.start()
            for s in nu:
                state = self.machine.step(state, s)
            by_state.setdefault(state, []).append(nu)
        comps = sorted(by_state.items(), key=lambda kv: min(kv[1]))
        self.comp_states = tuple(state for state, _members in comps)
        self.comp_members = tuple(tuple(sorted(ws)) for _s, ws in comps)
        self.comp_min = tuple(min(ws, key=shortlex_key) for _s, ws in comps)
        self._check_cache = {}
        self._md_moves = self._compute_md_moves()

    def _compute_md_moves(self):
        """Open/close symbol sequences when the language is bracket-driven.

        For a plain bracket machine each bracket is one symbol; under a
        symbol expansion the expanded bracket becomes the two-symbol
        sequence fresh-then-bracket.  Returns None for other machines.
        """
        m = self.machine
        if isinstance(m, MdMachine):
            n = m.n
            seq = lambda s: (s,)
        elif isinstance(m, ExpandedMachine) and isinstance(m.inner, MdMachine):
            n = m.inner.n
            seq = lambda s: (m.fresh, s) if s == m.symbol else (s,)
        else:
            return None
        opens = tuple(seq("a%d" % i) for i in range(1, n + 1))
        closes = tuple(seq("b%d" % j) for j in range(1, n + 1))
        return opens, closes

    def _glue_settled(self, node):
        """Whether every live state has its expansion glue flags cleared,
        so continuations decompose into whole-bracket moves."""
        if isinstance(self.machine, MdMachine):
            return True
        ustate, cstates = node
        for s in (ustate,) + cstates:
            if s is not None and (s[1] or s[2]):
                return False
        return True

    # -- product states: (word state, tuple of component states or None)

    def start(self):
        return (self.machine.start(), self.comp_states)

    def step(self, product, symbol):
        ustate, cstates = product
        ustate = self.machine.step(ustate, symbol)
        if ustate is None:
            return None
        step = self.machine.step
        cstates = tuple(
            None if c is None else step(c, symbol) for c in cstates
        )
        return (ustate, cstates)

    def scan(self, mu):
        product = self.start()
        for s in mu:
            product = self.step(product, s)
            if product is None:
                return None
        return product

    def signature(self, product):
        """Indices of components alive with the end-of-word obligation met,
        or None when the word itself is inadmissible."""
        ustate, cstates = product
        finish = self.machine.finish
        if finish(ustate) is None:
            return None
        return frozenset(
            i
            for i, c in enumerate(cstates)
            if c is not None and finish(c) is not None
        )

    def gamma_words(self, signature):
        out = set()
        for i in signature:
            out.update(self.comp_members[i])
        return frozenset(out)

    # -- verdicts

    def verdict(self, mu, horizon, budget=DEFAULT_BUDGET):
        product = self.scan(mu)
        if product is None or self.signature(product) is None:
            raise ValidationError("word %s is not admissible" % (list(mu),))
        return self.check(product, len(mu), horizon, budget)

    def check(self, product, mulen, horizon, budget=DEFAULT_BUDGET):
        base = self.signature(product)
        # project to the surviving components: only they can witness a drop
        cstates = tuple(product[1][i] for i in sorted(base))
        comp_ids = tuple(sorted(base))
        exact = self.machine.finite or self._md_moves is not None
        if exact:
            key = (product[0], cstates)
        else:
            if horizon is None:
                horizon = self.l + mulen + 1
            key = (product[0], cstates, horizon)
        cached = self._check_cache.get(key)
        if cached is None:
            if self._md_moves is not None and not self.machine.finite:
                cached = self._search_md((product[0], cstates), budget)
            else:
                cached = self._search((product[0], cstates), horizon, budget)
            self._check_cache[key] = cached
        kind, comp_pos, omega = cached
        if kind == NO:
            return SyncVerdict(NO, self.comp_min[comp_ids[comp_pos]], omega)
        if kind == UNKNOWN:
            return SyncVerdict(UNKNOWN, horizon=omega)
        return SyncVerdict(YES)

    def _counterexample(self, cstates):
        finish = self.machine.finish
        for i, c in enumerate(cstates):
            if c is None or finish(c) is None:
                return i
        return None

    def _search(self, start, horizon, budget):
        """BFS over all continuations, exact for finite machines.

        For finite machines the node set is finite, so running to the
        fixpoint decides the question.  Otherwise the search is cut off at
        the horizon and absence of a counterexample is inconclusive.
        """
        finite = self.machine.finite
        finish = self.machine.finish
        step = self.machine.step
        seen = {start}
        queue = deque([(start, EMPTY_WORD)])
        spent = 0
        while queue:
            (ustate, cstates), omega = queue.popleft()
            if finish(ustate) is not None:
                dead = self._counterexample(cstates)
                if dead is not None:
                    return (NO, dead, omega)
            if not finite and len(omega) >= horizon:
                continue
            for s in self.alphabet:
                spent += 1
                if spent > budget:
                    raise BudgetExceeded(
                        "synchronization search exceeded %d steps" % (budget,)
                    )
                u2 = step(ustate, s)
                if u2 is None:
                    continue
                c2 = tuple(
                    None if c is None else step(c, s) for c in cstates
                )
                node = (u2, c2)
                if node not in seen:
                    seen.add(node)
                    queue.append((node, omega + (s,)))
        if finite:
            return (YES, None, None)
        return (UNKNOWN, None, horizon)

    def _search_md(self, start, budget):
        """Exact search for bracket-driven languages via normalized moves.

        Opening brackets pushed after mu sit on top of every component's
        stack alike, so while that common part is nonempty all components
        live or die together and nothing distinguishes them.  Any
        counterexample continuation therefore normalizes to a sequence of
        floor moves - a single closing bracket, or a minimal excursion
        "open i, close i" - followed by at most one trailing open.  The
        floor-move reachable set is finite (stacks only shrink, allowed
        sets only shrink), so the breadth-first search saturates and the
        verdict is exact.

        Under a symbol expansion each bracket move is its fixed symbol
        sequence, and the glue flags (fresh pending, word start) are
        determined by the input once a symbol has been read; start nodes
        with unsettled or mixed flags take single generic steps first.
        """
        opens, closes = self._md_moves
        finish = self.machine.finish
        step = self.machine.step

        def advance(node, symbol):
            ustate, cstates = node
            u2 = step(ustate, symbol)
            if u2 is None:
                return None
            return (
                u2,
                tuple(None if c is None else step(c, symbol) for c in cstates),
            )

        def probe(node):
            # a component death only counts while the word is admissible
            if finish(node[0]) is None:
                return None
            return self._counterexample(node[1])

        def run_seq(node, omega, symbols):
            # advance through a whole bracket move, probing every prefix:
            # a trailing fragment of a move is itself a valid continuation
            for s in symbols:
                node = advance(node, s)
                if node is None:
                    return None, None, None
                omega = omega + (s,)
                dead = probe(node)
                if dead is not None:
                    return node, omega, dead
            return node, omega, None

        seen = {start}
        queue = deque([(start, EMPTY_WORD)])
        spent = 0
        while queue:
            node, omega = queue.popleft()
            dead = probe(node)
            if dead is not None:
                return (NO, dead, omega)
            spent += 4 * len(opens) + len(self.alphabet)
            if spent > budget:
                raise BudgetExceeded(
                    "synchronization search exceeded %d steps" % (budget,)
                )
            if not self._glue_settled(node):
                for s in self.alphabet:
                    nxt = advance(node, s)
                    if nxt is not None and nxt not in seen:
                        seen.add(nxt)
                        queue.append((nxt, omega + (s,)))
                continue
            for i in range(len(opens)):
                # probe one move past the floor: later deaths inside an
                # excursion hit every component at once
                opened, w, dead = run_seq(node, omega, opens[i])
                if dead is not None:
                    return (NO, dead, w)
                if opened is None:
                    continue
                nxt, w, dead = run_seq(opened, w, closes[i])
                if dead is not None:
                    return (NO, dead, w)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, w))
            for j in range(len(closes)):
                nxt, w, dead = run_seq(node, omega, closes[j])
                if dead is not None:
                    return (NO, dead, w)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, w))
        return (YES, None, None)


@lru_cache(maxsize=None)
def _engine(spec, l):
    return _SyncEngine(spec, l)


def is_l_synchronizing(spec, mu, l, horizon=None, budget=DEFAULT_BUDGET):
    """Three-valued check that mu is l-synchronizing."""
    if l < 0:
        raise ValidationError("level must be nonnegative")
    if horizon is None:
        horizon = l + len(mu) + 1
    if horizon < 1:
        raise ValidationError("horizon must be at least 1")
    return _engine(spec, l).verdict(mu, horizon, budget)


@dataclass(frozen=True)
class SyncEnumeration:
    level: int
    words: tuple  # shortlex-sorted synchronizing words
    unknown_words: tuple  # words whose verdict was inconclusive


def enumerate_sync_words(spec, l, word_cap, budget=DEFAULT_BUDGET):
    """All words of length <= word_cap with verdict Yes at level l."""
    if word_cap < l:
        raise ValidationError("word cap must be at least the level")
    engine = _engine(spec, l)
    yes, unknown = [], []

    def walk(w, product):
        sig = engine.signature(product)
        if sig is not None:
            v = engine.check(product, len(w), None, budget)
            if v.is_yes:
                yes.append(w)
            elif v.value == UNKNOWN:
                unknown.append(w)
        if len(w) == word_cap:
            return
        for s in engine.alphabet:
            nxt = engine.step(product, s)
            if nxt is not None:
                walk(w + (s,), nxt)

    walk(EMPTY_WORD, engine.start())
    return SyncEnumeration(
        l,
        tuple(sorted(yes, key=shortlex_key)),
        tuple(sorted(unknown, key=shortlex_key)),
    )


def past_equiv_classes(spec, l, word_cap, budget=DEFAULT_BUDGET):
    """Partition of the level-l synchronizing words by left-context set."""
    engine = _engine(spec, l)
    enum = enumerate_sync_words(spec, l, word_cap, budget)
    by_gamma = {}
    for w in enum.words:
        sig = engine.signature(engine.scan(w))
        by_gamma.setdefault(sig, []).append(w)
    items = sorted(
        by_gamma.items(),
        key=lambda kv: shortlex_key(min(kv[1], key=shortlex_key)),
    )
    return PastPartition(
        level=l,
        classes=tuple(frozenset(ws) for _sig, ws in items),
        representatives=tuple(
            min(ws, key=shortlex_key) for _sig, ws in items
        ),
        gammas=tuple(engine.gamma_words(sig) for sig, _ws in items),
        unknown_words=enum.unknown_words,
    )


def check_lambda_synchronizing(spec, l_max, k_max, word_cap, budget=DEFAULT_BUDGET):
    """Table probing the defining property of a λ-synchronizing subshift.

    For each level pair l <= k and each admissible word eta of length l,
    search for a k-synchronizing word nu such that eta nu is
    (k-l)-synchronizing.  Rows are JSON-ready dicts.
    """
    if l_max > k_max:
        raise ValidationError("l_max must not exceed k_max")
    rows = []
    sync_by_level = {}
    for k in range(k_max + 1):
        sync_by_level[k] = enumerate_sync_words(spec, k, max(word_cap, k), budget)
    for l in range(l_max + 1):
        for k in range(l, k_max + 1):
            enum = sync_by_level[k]
            for eta in enumerate_words(spec, l):
                verdict, witness = "Fail", None
                inconclusive = bool(enum.unknown_words)
                for nu in enum.words:
                    if not is_admissible(spec, eta + nu):
                        continue
                    v = is_l_synchronizing(spec, eta + nu, k - l, budget=budget)
                    if v.is_yes:
                        verdict, witness = "Pass", nu
                        break
                    if v.value == UNKNOWN:
                        inconclusive = True
                if verdict == "Fail" and inconclusive:
                    verdict = "Unknown"
                rows.append(
                    {
                        "l": l,
                        "k": k,
                        "eta": list(eta),
                        "verdict": verdict,
                        "witness": None if witness is None else list(witness),
                    }
                )
    return rows


def is_intrinsically_synchronizing(spec, omega, horizon=4, budget=DEFAULT_BUDGET):
    """Check that omega glues: mu omega, omega nu admissible implies
    mu omega nu admissible.  Exact for finite machines, bounded otherwise."""
    machine = spec_machine(spec)
    if not is_admissible(spec, omega):
        raise ValidationError("word %s is not admissible" % (list(omega),))
    if machine.finite:
        return _intrinsic_exact(spec, machine, omega, budget)
    # bounded scan over mu and nu up to the horizon
    for mu in _words_upto(spec, horizon, budget):
        if not is_admissible(spec, mu + omega):
            continue
        for nu in _words_upto(spec, horizon, budget):
            if is_admissible(spec, omega + nu) and not is_admissible(
                spec, mu + omega + nu
            ):
                return SyncVerdict(NO, witness_nu=mu, witness_omega=nu)
    return SyncVerdict(UNKNOWN, horizon=horizon)


def _words_upto(spec, horizon, budget):
    out = []
    for l in range(horizon + 1):
        out.extend(enumerate_words(spec, l, budget))
    return out


def _intrinsic_exact(spec, machine, omega, budget):
    """Quantify over reachable machine states instead of words."""
    # reachable left-context states, with a shortlex-minimal access word
    access = {machine.start(): EMPTY_WORD}
    queue = deque([machine.start()])
    spent = 0
    while queue:
        state = queue.popleft()
        for s in machine.alphabet:
            spent += 1
            if spent > budget:
                raise BudgetExceeded("state exploration exceeded the budget")
            nxt = machine.step(state, s)
            if nxt is not None and nxt not in access:
                access[nxt] = access[state] + (s,)
                queue.append(nxt)

    def read(state, w):
        for s in w:
            state = machine.step(state, s)
            if state is None:
                return None
        return state

    # a word nu extends omega iff it extends the state after omega from a
    # fresh start; it extends mu omega iff it extends the state after
    # reading omega from mu's state.  omega glues iff for every reachable
    # mu-state keeping mu omega admissible, the continuations of mu omega
    # cover those of omega.
    base_after = read(machine.start(), omega)
    for smu, mu in sorted(access.items(), key=lambda kv: shortlex_key(kv[1])):
        after = read(smu, omega)
        if after is None or machine.finish(after) is None:
            continue
        bad = _missing_continuation(machine, base_after, after, budget)
        if bad is not None:
            return SyncVerdict(NO, witness_nu=mu, witness_omega=bad)
    return SyncVerdict(YES)


def _missing_continuation(machine, wide, narrow, budget):
    """Shortest word admissible after `wide` but not after `narrow`."""
    start = (wide, narrow)
    seen = {start}
    queue = deque([(start, EMPTY_WORD)])
    spent = 0
    while queue:
        (a, b), w = queue.popleft()
        if machine.finish(a) is not None and (
            b is None or machine.finish(b) is None
        ):
            return w
        for s in machine.alphabet:
            spent += 1
            if spent > budget:
                raise BudgetExceeded("continuation search exceeded the budget")
            a2 = machine.step(a, s)
            if a2 is None:
                continue
            b2 = None if b is None else machine.step(b, s)
            node = (a2, b2)
            if node not in seen:
                seen.add(node)
                queue.append((node, w + (s,)))
    return None
