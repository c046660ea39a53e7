# cython: boundscheck=False, wraparound=False
"""Compiled kernel for the bracket reduction machine.

Same contract as lgsk._mdslow; bracket families are limited to 64 so the
allowed-successor set fits in one machine word, and stacks are bounded by
the scanned word length.
"""

IMPL = "compiled"

cdef int MAXN = 64


def word_admissible(int n, rowmasks, codes):
    cdef unsigned long long masks[64]
    cdef int stack[4096]
    cdef int depth = 0
    cdef unsigned long long ymask
    cdef int i, code, j
    if n > MAXN:
        raise ValueError("too many bracket families for the compiled kernel")
    if len(codes) > 4096:
        raise ValueError("word too long for the compiled kernel")
    for i in range(n):
        masks[i] = rowmasks[i]
    ymask = (1ULL << n) - 1
    for code in codes:
        if code < n:
            if depth > 0:
                if not (masks[code] >> stack[depth - 1]) & 1ULL:
                    return False
                stack[depth] = code
                depth += 1
            else:
                ymask = ymask & masks[code]
                if ymask == 0:
                    return False
                stack[0] = code
                depth = 1
        else:
            j = code - n
            if depth > 0:
                if stack[depth - 1] != j:
                    return False
                depth -= 1
                if depth == 0:
                    ymask = ymask & masks[j]
                    if ymask == 0:
                        return False
            else:
                if not (ymask >> j) & 1ULL:
                    return False
                ymask = masks[j]
    return True


def count_admissible(int n, rowmasks, int maxlen):
    cdef unsigned long long masks[64]
    cdef int stack[4096]
    cdef unsigned long long ystack[4096]
    cdef int codestack[4096]
    cdef int i
    if n > MAXN:
        raise ValueError("too many bracket families for the compiled kernel")
    if maxlen > 4000:
        raise ValueError("scan too deep for the compiled kernel")
    for i in range(n):
        masks[i] = rowmasks[i]

    counts = [0] * (maxlen + 1)
    cdef long long[:] ccounts
    import array
    arr = array.array("q", counts)
    ccounts = arr

    cdef int depth = 0       # word length so far
    cdef int sdepth = 0      # bracket stack depth
    cdef unsigned long long ymask = (1ULL << n) - 1
    cdef int code, j, nsym = 2 * n
    cdef int ok

    # iterative DFS: codestack holds the next symbol to try per level.
    # Pushes are the only writes into the bracket stack, so undo needs the
    # previous mask, the previous stack depth, and the one overwritten cell.
    cdef unsigned long long ysave[4096]
    cdef int ssave[4096]
    cdef int cellpos[4096]
    cdef int cellsave[4096]
    ccounts[0] += 1
    codestack[0] = 0
    while depth >= 0:
        if depth == maxlen or codestack[depth] == nsym:
            depth -= 1
            if depth >= 0:
                ymask = ysave[depth]
                sdepth = ssave[depth]
                if cellpos[depth] >= 0:
                    stack[cellpos[depth]] = cellsave[depth]
            continue
        code = codestack[depth]
        codestack[depth] += 1
        ysave[depth] = ymask
        ssave[depth] = sdepth
        cellpos[depth] = -1
        ok = 1
        if code < n:
            if sdepth > 0:
                if not (masks[code] >> stack[sdepth - 1]) & 1ULL:
                    ok = 0
                else:
                    cellpos[depth] = sdepth
                    cellsave[depth] = stack[sdepth]
                    stack[sdepth] = code
                    sdepth += 1
            else:
                ymask = ymask & masks[code]
                if ymask == 0:
                    ok = 0
                else:
                    cellpos[depth] = 0
                    cellsave[depth] = stack[0]
                    stack[0] = code
                    sdepth = 1
        else:
            j = code - n
            if sdepth > 0:
                if stack[sdepth - 1] != j:
                    ok = 0
                else:
                    sdepth -= 1
                    if sdepth == 0:
                        ymask = ymask & masks[j]
                        if ymask == 0:
                            ok = 0
            else:
                if not (ymask >> j) & 1ULL:
                    ok = 0
                else:
                    ymask = masks[j]
        if ok:
            depth += 1
            ccounts[depth] += 1
            codestack[depth] = 0
        else:
            ymask = ysave[depth]
            sdepth = ssave[depth]
            if cellpos[depth] >= 0:
                stack[cellpos[depth]] = cellsave[depth]
    return list(arr)
