"""Benchmark the compiled alignment kernel against the pure-Python fallback.

The NW dynamic program dominates pipeline runtime (25 candidates x 4 targets
x segments). Run:

    python benchmarks/bench_alignment.py
"""

import random
import statistics
import time

from speechcut import alignment as al
from speechcut.alignment import _nw_py

try:
    from speechcut.alignment import _nw_cy
except ImportError:
    _nw_cy = None

VOCAB = [f"tok{i}" for i in range(500)]


def make_pair(rng, original_len, removal=0.25):
    original = [rng.choice(VOCAB) for _ in range(original_len)]
    candidate = [t for t in original if rng.random() > removal]
    return original, candidate


def encode(a, b):
    ids = {}
    return (
        [ids.setdefault(t, len(ids)) for t in a],
        [ids.setdefault(t, len(ids)) for t in b],
    )


def bench(kernel, pairs, repeats=3):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for a_ids, b_ids in pairs:
            kernel.nw_align_ids(a_ids, b_ids)
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    rng = random.Random(42)
    for original_len in (40, 100, 250):
        pairs = [encode(*make_pair(rng, original_len)) for _ in range(100)]
        py_time = bench(_nw_py, pairs)
        line = f"len {original_len:>4}: pure-python {py_time * 10:7.2f} ms/alignment"
        if _nw_cy is not None:
            cy_time = bench(_nw_cy, pairs)
            line += (
                f"   cython {cy_time * 10:7.2f} ms/alignment"
                f"   speedup {py_time / cy_time:5.1f}x"
            )
        print(line)

    # agreement spot-check on the benchmark inputs
    rng = random.Random(7)
    for _ in range(200):
        a, b = make_pair(rng, 60)
        a_ids, b_ids = encode(a, b)
        py = _nw_py.nw_align_ids(a_ids, b_ids)
        if _nw_cy is not None:
            cy = _nw_cy.nw_align_ids(a_ids, b_ids)
            assert (py[0], list(py[1])) == (cy[0], list(cy[1]))
    print(f"kernels agree on 200 pairs; active kernel: {al.KERNEL_NAME}")


if __name__ == "__main__":
    main()
