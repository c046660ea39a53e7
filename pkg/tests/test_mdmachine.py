import itertools
import random

from lgsk import _mdslow, mdmachine
from lgsk.mdmachine import MD_UNIT, MD_ZERO, MdState, md_run, md_step

import oracles

ONES2 = [[1, 1], [1, 1]]


def test_kernel_is_compiled():
    assert mdmachine.KERNEL_IMPL == "compiled"


def test_close_from_unit():
    s = md_step(MD_UNIT, ("close", 1), ONES2)
    assert s == MdState("triple", (1,), frozenset({1, 2}), ())


def test_mismatched_close_dies():
    s = MdState("triple", (1,), frozenset({1, 2}), (1,))
    assert md_step(s, ("close", 2), ONES2) == MD_ZERO


def test_open_then_close_cancels():
    s = md_run([("open", 1), ("close", 1)], ONES2)
    assert s == MdState("triple", (), frozenset({1, 2}), ())


def test_zero_absorbing():
    assert md_step(MD_ZERO, ("open", 1), ONES2) == MD_ZERO


def test_open_stacks_innermost_first():
    s = md_run([("open", 1), ("open", 2)], ONES2)
    assert s.nu == (2, 1)
    s = md_step(s, ("close", 2), ONES2)
    assert s.nu == (1,)


def test_matrix_constraint_on_open():
    a = [[1, 0], [0, 1]]  # family 2 may not sit directly inside family 1
    assert md_run([("open", 1), ("open", 2)], a) == MD_ZERO
    assert not md_run([("open", 1)], a).is_zero


def test_matrix_constraint_on_floor():
    a = [[0, 1], [1, 0]]
    # closing family 1 at the floor restricts the next floor family to 2
    s = md_run([("close", 1), ("close", 1)], a)
    assert s == MD_ZERO
    s = md_run([("close", 1), ("close", 2)], a)
    assert s.mu == (1, 2)


def all_words(n, length):
    syms = [("open", i) for i in range(1, n + 1)] + [
        ("close", i) for i in range(1, n + 1)
    ]
    return itertools.product(syms, repeat=length)


def test_admissible_matches_bracket_oracle():
    # for the all-ones matrix the machine is plain bracket matching
    for length in range(7):
        for w in all_words(2, length):
            expected = oracles.dyck_admissible(w)
            assert (not md_run(w, ONES2).is_zero) == expected
            assert mdmachine.word_admissible(w, ONES2) == expected
            assert mdmachine.word_admissible_python(w, ONES2) == expected


def random_binary_matrix(rng, n):
    while True:
        a = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
        if all(any(row) for row in a) and all(
            any(a[i][j] for i in range(n)) for j in range(n)
        ):
            return a


def test_kernels_agree_randomized():
    rng = random.Random(20240819)
    for _ in range(200):
        n = rng.randint(2, 4)
        a = random_binary_matrix(rng, n)
        masks = mdmachine.rowmasks(a)
        syms = [("open", i) for i in range(1, n + 1)] + [
            ("close", i) for i in range(1, n + 1)
        ]
        w = [rng.choice(syms) for _ in range(rng.randint(0, 12))]
        ref = not md_run(w, a).is_zero
        assert mdmachine.word_admissible(w, a, masks) == ref
        assert mdmachine.word_admissible_python(w, a, masks) == ref


def count_by_scan(a, maxlen):
    n = len(a)
    counts = [0] * (maxlen + 1)
    for length in range(maxlen + 1):
        for w in all_words(n, length):
            if not md_run(w, a).is_zero:
                counts[length] += 1
    return counts


def test_count_admissible_kernels():
    rng = random.Random(5)
    cases = [ONES2, [[1, 0], [1, 1]], random_binary_matrix(rng, 3)]
    for a in cases:
        masks = mdmachine.rowmasks(a)
        ref = count_by_scan(a, 5)
        assert _mdslow.count_admissible(len(a), masks, 5) == ref
        from lgsk import _mdfast

        assert _mdfast.count_admissible(len(a), masks, 5) == ref


def test_count_admissible_deeper_agreement():
    a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    masks = mdmachine.rowmasks(a)
    from lgsk import _mdfast

    assert _mdfast.count_admissible(3, masks, 8) == _mdslow.count_admissible(
        3, masks, 8
    )
