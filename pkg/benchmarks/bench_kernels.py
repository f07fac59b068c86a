#!/usr/bin/env python3
"""Benchmark the pure-Python rewrite kernel against the compiled one.

Workloads mirror the hot paths: relator expansions, commutator-word
expansions at the shipped truncations, and the graded reduction of random
polynomials.  Run after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from surfalg._kernel import _pure  # noqa: E402

try:
    from surfalg._kernel import _speedups
except ImportError:
    _speedups = None


def letter_series(genus, K):
    out = {}
    for i in range(2 * genus):
        out[i + 1] = {(): 1, (i,): 1}
        out[-(i + 1)] = {(i,) * j: (-1) ** j for j in range(K + 1)}
    return out


def relator(genus):
    word = []
    for k in range(genus):
        a, b = 2 * k + 1, 2 * k + 2
        word += [a, b, -a, -b]
    return word


def commutator(u, v):
    return u + v + [-x for x in reversed(u)] + [-x for x in reversed(v)]


def group_ring_rule(genus, K, kernel):
    """Rule of the truncated group ring (graded part + relator tail)."""
    lead = (2 * genus - 1, 2 * genus - 2)
    series = letter_series(genus, K)
    img = {(): 1}
    for l in relator(genus):
        # plain truncated multiplication: an inert rule that never fires
        nxt = {}
        for wa, ca in img.items():
            for wb, cb in series[l].items():
                if len(wa) + len(wb) <= K:
                    w = wa + wb
                    nxt[w] = nxt.get(w, 0) + ca * cb
        img = {w: c for w, c in nxt.items() if c}
    img[()] = img.get((), 0) - 1
    defect = {w: c for w, c in img.items() if c}
    rhs = [(w, c) for w, c in defect.items() if w != lead]
    return lead, tuple(w for w, _ in rhs), tuple(c for _, c in rhs)


def bench_expansions(kernel, genus, K, words):
    lead, rw, rc = group_ring_rule(genus, K, kernel)
    series = letter_series(genus, K)
    memo = {}
    start = time.perf_counter()
    for word in words:
        acc = {(): 1}
        for l in word:
            acc = kernel.mul_reduce(acc, series[l], K, lead[0], lead[1], rw, rc, memo, K)
    return time.perf_counter() - start


def bench_graded_reduce(kernel, genus, polys):
    lead = (2 * genus - 1, 2 * genus - 2)
    rel = {}
    for k in range(genus):
        rel[(2 * k, 2 * k + 1)] = 1
        rel[(2 * k + 1, 2 * k)] = -1
    rhs = [(w, c) for w, c in rel.items() if w != lead]
    rw = tuple(w for w, _ in rhs)
    rc = tuple(c for _, c in rhs)
    memo = {}
    start = time.perf_counter()
    for p in polys:
        kernel.reduce_terms(p, lead[0], lead[1], rw, rc, memo)
    return time.perf_counter() - start


def expansion_workload(genus, count):
    rng = random.Random(2024)
    gens = list(range(1, 2 * genus + 1))
    words = []
    for _ in range(count):
        u = [rng.choice(gens) for _ in range(3)]
        v = [rng.choice(gens) for _ in range(3)]
        words.append(commutator(commutator(u, v), [rng.choice(gens)]))
    return words

def reduction_workload(genus, count):
    rng = random.Random(77)
    polys = []
    for _ in range(count):
        polys.append(
            {
                tuple(rng.randrange(2 * genus) for _ in range(rng.randint(3, 7))): rng.randint(-9, 9)
                for _ in range(12)
            }
        )
    return polys


def main():
    rows = []
    cases = [
        ("relator-like expansions g=2 K=5", 2, 5, expansion_workload(2, 40), bench_expansions),
        ("relator-like expansions g=3 K=4", 3, 4, expansion_workload(3, 40), bench_expansions),
    ]
    for name, genus, K, work, fn in cases:
        pure_t = fn(_pure, genus, K, work)
        line = f"{name:38} pure {pure_t * 1000:8.1f} ms"
        if _speedups is not None:
            fast_t = fn(_speedups, genus, K, work)
            line += f"   cython {fast_t * 1000:8.1f} ms   speedup {pure_t / fast_t:4.2f}x"
        rows.append(line)
    for genus in (2, 3):
        work = reduction_workload(genus, 4000)
        pure_t = bench_graded_reduce(_pure, genus, work)
        line = f"{f'graded reduction g={genus}':38} pure {pure_t * 1000:8.1f} ms"
        if _speedups is not None:
            fast_t = bench_graded_reduce(_speedups, genus, work)
            line += f"   cython {fast_t * 1000:8.1f} ms   speedup {pure_t / fast_t:4.2f}x"
        rows.append(line)
    print("\n".join(rows))
    if _speedups is None:
        print("compiled kernel not built; run: python setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
