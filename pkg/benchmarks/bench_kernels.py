"""Time the hot kernels with numba and with the plain-Python fallback.

Each backend runs in its own interpreter because the backend is fixed at
import time by ``POLYCOLOR_DISABLE_NUMBA``. Numba timings exclude the first
(compiling) call.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from polycolor import _jit
from polycolor.colorability import is_poly_colorable, min_heavy_poly
from polycolor.search import paper_hypergraph, p_search, _extension_chunk, _seven_chunk

repeat = int(sys.argv[1])
h = paper_hypergraph()
cases = {
    "poly-3 on the 8-vertex hypergraph": lambda: is_poly_colorable(h, 3),
    "m_3 threshold scan": lambda: min_heavy_poly(h, 3),
    "Fano extension, 2000 candidates": lambda: _extension_chunk(2000, 0),
    "seven-vertex sweep, 4096 candidates": lambda: _seven_chunk(4096, 7),
    "p(3,2) sweep up to 5 edges": lambda: p_search(3, 2, 5),
}
out = {"backend": _jit.backend_name(), "times": {}}
for name, fn in cases.items():
    fn()  # warm up / compile
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("POLYCOLOR_DISABLE_NUMBA", None)
    if disable:
        env["POLYCOLOR_DISABLE_NUMBA"] = "1"
    r = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(r.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    width = max(len(k) for k in fast["times"])
    print(f"{'kernel':<{width}}  {fast['backend']:>12}  {slow['backend']:>12}  speedup")
    for name, t in fast["times"].items():
        s = slow["times"][name]
        print(f"{name:<{width}}  {t * 1e3:10.2f}ms  {s * 1e3:10.2f}ms  {s / t:7.1f}x")


if __name__ == "__main__":
    main()
