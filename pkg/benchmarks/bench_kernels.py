"""Benchmark the compiled two-site update kernel against the numpy fallback.

Times the hot bond update over representative (d, chi) shapes for both the
wavefunction (complex, d=2) and density-coefficient (real, d=4) paths, and
a short end-to-end TEBD run per backend.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import os
import time

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

import numpy as np

from tebdkit.kernels import available_backends


def time_kernel(mod, left, right, gate, chi_max, repeats):
    best = float("inf")
    for _ in range(5):
        mod.two_site_update(left, right, gate, chi_max, 0.0, True, False)
    for _ in range(repeats):
        t0 = time.perf_counter()
        mod.two_site_update(left, right, gate, chi_max, 0.0, True, False)
        best = min(best, time.perf_counter() - t0)
    return best


def random_case(rng, dtype, chi, d):
    def rnd(*shape):
        x = rng.normal(size=shape)
        if dtype == np.complex128:
            x = x + 1j * rng.normal(size=shape)
        return np.ascontiguousarray(x.astype(dtype))

    return rnd(chi, d, chi), rnd(chi, d, chi), rnd(d * d, d * d)


def time_tebd_run(backend_env, length=32, chi=16, steps=25):
    # separate process so the backend choice is made at import
    import subprocess
    import sys

    code = (
        "import os, time\n"
        "os.environ.setdefault('OPENBLAS_NUM_THREADS', '1')\n"
        "from tebdkit.config import ExperimentConfig\n"
        "from tebdkit.runner import simulate\n"
        "import tebdkit.kernels as k\n"
        f"cfg = ExperimentConfig(model='free_fermion', method='rtebd', scheme='fermionic',\n"
        f"    length={length}, chi_max={chi}, gamma=1.5, dt=0.08, t_final={steps * 0.08},\n"
        "    initial_state='fock_pattern', observables=('n_tot',), measure_every=1000000)\n"
        "t0 = time.perf_counter()\n"
        "simulate(cfg)\n"
        "print(f'{k.BACKEND} {time.perf_counter() - t0:.3f}')\n"
    )
    env = dict(os.environ)
    env["TEBDKIT_KERNEL"] = backend_env
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True
    )
    name, seconds = out.stdout.split()
    return name, float(seconds)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    backends = available_backends()
    rng = np.random.default_rng(7)

    print(f"backends: {', '.join(backends)}")
    print()
    header = f"{'path':>14} {'chi':>5}" + "".join(f"{name:>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for dtype, d, label in [
        (np.complex128, 2, "mps (z, d=2)"),
        (np.float64, 4, "mpdo (d, d=4)"),
    ]:
        for chi in (4, 8, 16, 32, 64):
            left, right, gate = random_case(rng, dtype, chi, d)
            row = f"{label:>14} {chi:>5}"
            times = {}
            for name, mod in backends.items():
                times[name] = time_kernel(mod, left, right, gate, chi, args.repeats)
                row += f"{times[name] * 1e6:>11.1f} us"
            if len(times) == 2:
                row += f"{times['python'] / times['compiled']:>9.2f}x"
            print(row)

    print()
    print("end-to-end rTEBD (L=32, chi=16, 25 steps):")
    for env_name in ("python", "compiled") if "compiled" in backends else ("python",):
        name, seconds = time_tebd_run(env_name)
        print(f"  {name:>9}: {seconds:.3f} s")


if __name__ == "__main__":
    main()
