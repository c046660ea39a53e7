"""Benchmark the bracket reduction kernels.

Compares whole-word admissibility on the compiled extension against the
pure-Python fallback over a mix of random and structured bracket words,
after verifying that both kernels agree on every word.

Run as ``python3 benchmarks/bench_md.py [--words N] [--length L]``.
"""

import argparse
import random
import time

from lgsk.mdmachine import (
    KERNEL_IMPL,
    word_admissible,
    word_admissible_python,
)


def make_words(rng, count, length, n):
    """Random bracket words plus balanced ones that stay admissible."""
    alphabet = [("open", i) for i in range(1, n + 1)] + [
        ("close", i) for i in range(1, n + 1)
    ]
    words = []
    for k in range(count):
        if k % 2:
            words.append(tuple(rng.choice(alphabet) for _ in range(length)))
        else:
            # balanced word: random well-nested brackets
            word, stack = [], []
            while len(word) < length:
                if stack and (len(stack) >= length - len(word) or rng.random() < 0.5):
                    word.append(("close", stack.pop()))
                else:
                    fam = rng.randint(1, n)
                    stack.append(fam)
                    word.append(("open", fam))
            words.append(tuple(word))
    return words


def bench(fn, words, a, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        for word in words:
            fn(word, a)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--words", type=int, default=2000)
    parser.add_argument("--length", type=int, default=200)
    parser.add_argument("--families", type=int, default=2)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    n = args.families
    a = [[1] * n for _ in range(n)]
    rng = random.Random(args.seed)
    words = make_words(rng, args.words, args.length, n)

    agree = sum(
        word_admissible(word, a) == word_admissible_python(word, a)
        for word in words
    )
    assert agree == len(words), "kernels disagree"
    admissible = sum(word_admissible(word, a) for word in words)

    fast = bench(word_admissible, words, a, args.repeats)
    slow = bench(word_admissible_python, words, a, args.repeats)
    total = args.words * args.length

    print("active kernel: %s" % KERNEL_IMPL)
    print(
        "%d words x %d symbols (%d admissible), best of %d runs"
        % (args.words, args.length, admissible, args.repeats)
    )
    print("compiled kernel:   %8.1f ms  (%6.1f ns/symbol)" % (fast * 1e3, fast / total * 1e9))
    print("pure-python kernel:%8.1f ms  (%6.1f ns/symbol)" % (slow * 1e3, slow / total * 1e9))
    print("speedup: %.1fx" % (slow / fast))


if __name__ == "__main__":
    main()
