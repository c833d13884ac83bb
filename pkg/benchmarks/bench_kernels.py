"""Compare the numba kernels with the plain-Python fallback.

Each backend runs in its own interpreter (the ``ENCLOSE_NUMBA`` flag is read
at import). Compilation is excluded by a warm-up call; numba's on-disk cache
makes later runs start fast anyway.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from enclosure import _jit
from enclosure._kernels import max_flow
from enclosure.enclose import enclose
from enclosure.extend import addibility_network
from enclosure.oracle import oracle_exists, random_instance

repeat = int(sys.argv[1])


def timed(fn, reps):
    fn()  # warm-up (and compilation)
    t = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t) / reps


rng = np.random.default_rng(0)
counts = {(u, v): int(rng.integers(0, 3)) for u in range(7) for v in range(u + 1, 7)}
net = addibility_network(counts, 1, 3, 7)
k4 = random_instance(2, 4, 1, 6, strong=True)
k5 = random_instance(2, 5, 1, 7)
cases = {
    "max_flow (44-node network)": (lambda: max_flow(net.cap, net.source, net.sink), 20 * repeat),
    "oracle K_5 -> 2K_8 (2-factors, ~5e5 nodes)": (lambda: oracle_exists(k5, 2, 3, "twofactor"), 1),
    "oracle K_4 -> 2K_7 (Hamiltonian)": (lambda: oracle_exists(k4, 2, 3, "hamiltonian"), repeat),
    "enclose K_4 -> 2K_7 (Hamiltonian)": (lambda: enclose(k4, 2, 3, "hamiltonian"), repeat),
}
print(json.dumps({"numba": _jit.USE_NUMBA, "times": {k: timed(f, r) for k, (f, r) in cases.items()}}))
"""


def run(flag: str, repeat: int) -> dict:
    env = dict(os.environ, ENCLOSE_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True,
                          check=True)
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    python = run("0", args.repeat)
    compiled = run("1", args.repeat)
    if not compiled["numba"]:
        print("numba is not installed; only the Python backend was timed")
    width = max(map(len, python["times"]))
    print(f"{'kernel':<{width}}  {'python':>10}  {'numba':>10}  {'speedup':>8}")
    for name, slow in python["times"].items():
        fast = compiled["times"][name]
        print(f"{name:<{width}}  {slow * 1e3:>8.2f}ms  {fast * 1e3:>8.2f}ms  {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
