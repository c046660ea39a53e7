"""Pure-Python kernel for the bracket reduction machine.

Symbols are coded as ints: ``i`` in ``0..n-1`` is the i-th opening
bracket, ``n+i`` the i-th closing bracket.  ``rowmasks[i]`` is the bitmask
of successors allowed after bracket family ``i``.  The machine state is a
pair (allowed-successor mask, stack of pending opening brackets); a dead
state is reported as None.
"""

IMPL = "python"


def step(state, code, n, rowmasks):
    """Advance one symbol; state is (ymask, stack tuple) or None."""
    if state is None:
        return None
    ymask, stack = state
    if code < n:  # opening bracket
        if stack:
            if not (rowmasks[code] >> stack[0]) & 1:
                return None
            return (ymask, (code,) + stack)
        y = ymask & rowmasks[code]
        if y == 0:
            return None
        return (y, (code,))
    j = code - n  # closing bracket
    if stack:
        if stack[0] != j:
            return None
        rest = stack[1:]
        if rest:
            return (ymask, rest)
        y = ymask & rowmasks[j]
        if y == 0:
            return None
        return (y, ())
    if not (ymask >> j) & 1:
        return None
    return (rowmasks[j], ())


def word_admissible(n, rowmasks, codes):
    state = ((1 << n) - 1, ())
    for code in codes:
        state = step(state, code, n, rowmasks)
        if state is None:
            return False
    return True


def count_admissible(n, rowmasks, maxlen):
    """Number of admissible words of each length 0..maxlen (DFS scan)."""
    counts = [0] * (maxlen + 1)
    full = (1 << n) - 1
    symbols = range(2 * n)

    def walk(state, depth):
        counts[depth] += 1
        if depth == maxlen:
            return
        for code in symbols:
            nxt = step(state, code, n, rowmasks)
            if nxt is not None:
                walk(nxt, depth + 1)

    walk((full, ()), 0)
    return counts
