#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py

Workloads cover the three hot shapes: a deep unsolvability exhaust, a
brute-force enumeration campaign, and a capped max-unsolvable tree search.
"""

import time

from pebbling import (build_cycle, build_jahangir, build_path,
                      pebbling_number, pebbling_number_rooted)
from pebbling._backend import available_backends
from pebbling.extremal import build_jahangir_lower_bound


def bench(name, fn, backends):
    row = {"workload": name}
    for be in backends:
        t0 = time.perf_counter()
        fn(be)
        row[be] = time.perf_counter() - t0
    return row


def main():
    backends = available_backends()
    workloads = [
        ("lower-bound exhaust on J(2,8), 25 pebbles",
         lambda be: build_jahangir_lower_bound(2, 8, backend=be).verify(
             budget=10**8, backend=be)),
        ("f(J(2,3)) by full enumeration",
         lambda be: pebbling_number(build_jahangir(2, 3)[0],
                                    method="enumerate", backend=be)),
        ("f(path_7, end) by capped DFS (value 128)",
         lambda be: pebbling_number_rooted(build_path(7), 0, backend=be)),
        ("f_2(C_6, v0) by full enumeration",
         lambda be: pebbling_number_rooted(build_cycle(6), 0, t=2,
                                           method="enumerate", backend=be)),
    ]
    print(f"backends: {', '.join(backends)}")
    width = max(len(w[0]) for w in workloads) + 2
    header = "workload".ljust(width) + "".join(be.rjust(12) for be in backends)
    if len(backends) > 1:
        header += "speedup".rjust(12)
    print(header)
    print("-" * len(header))
    for name, fn in workloads:
        row = bench(name, fn, backends)
        line = name.ljust(width)
        for be in backends:
            line += f"{row[be]:10.3f}s "
        if len(backends) > 1:
            line += f"{row['python'] / max(row['c'], 1e-9):9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
