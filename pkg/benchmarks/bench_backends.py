"""Time each hot kernel under the numba and numpy backends.

    python3 benchmarks/bench_backends.py --repeat 5
    python3 benchmarks/bench_backends.py --json bench.json

Each kernel runs once untimed per backend (this triggers numba compilation),
then ``--repeat`` times; the best wall time is reported.
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from ggcode import kernels
from ggcode.codes import bz_search
from ggcode.graphcode import fixture_k777
from ggcode.graphs import adjacency_matrix, complete_multipartite


@dataclass
class Timing:
    kernel: str
    backend: str
    best_s: float
    result: str


def _cases(rng: np.random.Generator):
    gc = fixture_k777()
    parity = gc.global_parity.packed
    generator = gc.generator().packed
    dense20 = kernels.pack_rows(rng.integers(0, 2, size=(20, 64)))
    adj30 = adjacency_matrix(complete_multipartite(3, 10)).dense()
    sym60 = rng.normal(size=(60, 60))
    sym60 = sym60 + sym60.T
    code = gc.as_linear_code()
    return [
        ("rref 126x147", lambda: kernels.gf2_rref(parity, 147)[1].size),
        ("min weight, all 2^20 messages", lambda: kernels.gf2_min_weight_all(dense20)[0]),
        ("weight-3 combos of K777 generator", lambda: kernels.gf2_min_weight_combos(generator, 3)[0]),
        ("jacobi K_{10,10,10}", lambda: round(float(kernels.jacobi_eigh(adj30, 1e-12, 100)[0].max()), 6)),
        ("jacobi random 60x60", lambda: round(float(kernels.jacobi_eigh(sym60, 1e-12, 100)[0].max()), 6)),
        ("BZ on K777 graph code", lambda: bz_search(code).upper),
    ]


def bench(repeat: int, seed: int) -> list[Timing]:
    out = []
    for backend in kernels.BACKENDS:
        previous = kernels.set_backend(backend)
        try:
            for name, fn in _cases(np.random.default_rng(seed)):
                result = fn()
                best = float("inf")
                for _ in range(repeat):
                    t0 = time.perf_counter()
                    fn()
                    best = min(best, time.perf_counter() - t0)
                out.append(Timing(name, backend, best, str(result)))
        finally:
            kernels.set_backend(previous)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", dest="json_path")
    args = ap.parse_args(argv)

    rows = bench(args.repeat, args.seed)
    by_kernel: dict[str, dict[str, Timing]] = {}
    for t in rows:
        by_kernel.setdefault(t.kernel, {})[t.backend] = t
    print(f"{'kernel':36s} {'numba s':>10s} {'numpy s':>10s} {'ratio':>7s}  result")
    for name, pair in by_kernel.items():
        nb, npy = pair["numba"], pair["numpy"]
        agree = "" if nb.result == npy.result else f"  MISMATCH numpy={npy.result}"
        print(f"{name:36s} {nb.best_s:10.4f} {npy.best_s:10.4f} {npy.best_s / nb.best_s:7.1f}  {nb.result}{agree}")
    if args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump([asdict(t) for t in rows], fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
