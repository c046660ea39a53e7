"""The bracket reduction machine.

Words over paired opening/closing bracket families 1..N, with a 0/1
compatibility matrix A saying which family may follow which, reduce to a
canonical form "pending closings, allowed-successor set, pending
openings".  A word is admissible exactly when its reduction never hits
the absorbing Zero state.

The public ``MdState``/``md_step`` API keeps the full canonical form
(including the closed-bracket record mu).  Whole-word admissibility runs
on a compiled kernel when available, with a pure-Python fallback.
"""

from dataclasses import dataclass

try:
    from . import _mdfast as _kernel
except ImportError:  # pragma: no cover - depends on build environment
    from . import _mdslow as _kernel

from . import _mdslow

KERNEL_IMPL = _kernel.IMPL

ZERO = "zero"
UNIT = "unit"
TRIPLE = "triple"


@dataclass(frozen=True)
class MdState:
    """Canonical form of a partially read bracket word.

    kind is one of zero / unit / triple.  In a triple, ``mu`` records the
    closing brackets already matched downward (oldest first), ``y`` is the
    nonempty set of bracket families allowed to open next at the current
    nesting floor, and ``nu`` the pending opening brackets (innermost
    first).
    """

    kind: str
    mu: tuple = ()
    y: frozenset = frozenset()
    nu: tuple = ()

    @property
    def is_zero(self):
        return self.kind == ZERO

    def __str__(self):
        if self.kind == ZERO:
            return "0"
        if self.kind == UNIT:
            return "1"
        return "triple(mu=%s, Y=%s, nu=%s)" % (
            list(self.mu),
            sorted(self.y),
            list(self.nu),
        )


MD_ZERO = MdState(ZERO)
MD_UNIT = MdState(UNIT)


def row(a, i):
    """Families allowed after family i (1-based)."""
    return frozenset(j + 1 for j, x in enumerate(a[i - 1]) if x == 1)


def md_step(state, symbol, a):
    """Advance the canonical form by one symbol.

    ``symbol`` is ("open", i) or ("close", j) with 1-based family index;
    ``a`` is the square 0/1 compatibility matrix.  Zero is absorbing.
    """
    if state.kind == ZERO:
        return MD_ZERO
    side, idx = symbol
    if side not in ("open", "close"):
        raise ValueError("bad symbol side %r" % (side,))
    n = len(a)
    if not 1 <= idx <= n:
        raise ValueError("bracket family %r out of range" % (idx,))
    if state.kind == UNIT:
        mu, y, nu = (), frozenset(range(1, n + 1)), ()
    else:
        mu, y, nu = state.mu, state.y, state.nu
    if side == "open":
        if nu:
            if a[idx - 1][nu[0] - 1] != 1:
                return MD_ZERO
            return MdState(TRIPLE, mu, y, (idx,) + nu)
        y2 = y & row(a, idx)
        if not y2:
            return MD_ZERO
        return MdState(TRIPLE, mu, y2, (idx,))
    # closing bracket
    if nu:
        if nu[0] != idx:
            return MD_ZERO
        rest = nu[1:]
        if rest:
            return MdState(TRIPLE, mu, y, rest)
        y2 = y & row(a, idx)
        if not y2:
            return MD_ZERO
        return MdState(TRIPLE, mu, y2, ())
    if idx not in y:
        return MD_ZERO
    return MdState(TRIPLE, mu + (idx,), row(a, idx), ())


def md_run(word, a):
    """Reduce a whole word starting from the unit state."""
    state = MD_UNIT
    for symbol in word:
        state = md_step(state, symbol, a)
        if state.is_zero:
            break
    return state


def rowmasks(a):
    """Successor bitmasks (0-based) for the kernels."""
    n = len(a)
    masks = []
    for i in range(n):
        m = 0
        for j in range(n):
            if a[i][j] == 1:
                m |= 1 << j
        masks.append(m)
    return masks


def encode(word, n):
    """Symbols ("open", i)/("close", j) to kernel codes."""
    out = []
    for side, idx in word:
        out.append(idx - 1 if side == "open" else n + idx - 1)
    return out


def word_admissible(word, a, masks=None):
    """Whole-word admissibility on the fast kernel."""
    n = len(a)
    if masks is None:
        masks = rowmasks(a)
    return _kernel.word_admissible(n, masks, encode(word, n))


def word_admissible_python(word, a, masks=None):
    """Reference path, always the pure-Python kernel."""
    n = len(a)
    if masks is None:
        masks = rowmasks(a)
    return _mdslow.word_admissible(n, masks, encode(word, n))
