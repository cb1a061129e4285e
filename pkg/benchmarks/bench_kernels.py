#!/usr/bin/env python3
"""Benchmark the compiled scan kernel against the pure-numpy fallback.

Times the raw candidate scan on a mid-sized codebook and a full Monte Carlo
run with each backend swapped in, and checks that both produce identical
output.  Run after `pip install -e . --no-build-isolation`:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from bislab import kernels
from bislab.probability import AuxiliaryPair, Channel, FiniteDistribution, SystemModel
from bislab.simulate import CodeParams, generate_codebook, run_trials
from bislab.typicality import TypicalityParams


def time_fn(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    impls = kernels.backends()
    print(f"active backend: {kernels.BACKEND}; available: {sorted(impls)}")
    if "compiled" not in impls:
        print("compiled kernel not built; nothing to compare")
        return

    model = SystemModel(FiniteDistribution.uniform(2), Channel.bsc(0.1), Channel.bsc(0.2))
    aux = AuxiliaryPair(Channel.bsc(0.05), Channel.bsc(0.1))

    # raw scan: one enrollment-sized candidate sweep
    n, n_v, n_b, m_s = 12, 128, 16, 2
    params = CodeParams(
        n=n, delta_rate=0.05, m_i=4, m_s=m_s, m_j_c=n_v * n_b * m_s,
        m_j_g=n_v * n_b, n_v=n_v, n_u=n_b * m_s, n_b=n_b,
    )
    cb = generate_codebook(model, aux, params, seed=1)
    rng = np.random.default_rng(2)
    y = rng.integers(0, 2, size=n)
    args = (y, cb.scan_v_rows, cb.scan_u_rows, cb.p_yvu, cb.v_size, cb.u_size, 0.1)

    masks = {name: impl(*args) for name, impl in impls.items()}
    assert np.array_equal(masks["pure"], masks["compiled"]), "backends disagree"

    n_cand = cb.scan_v_rows.shape[0]
    print(f"\nraw scan over {n_cand} candidates (n={n}):")
    times = {}
    for name, impl in sorted(impls.items()):
        times[name] = time_fn(lambda: impl(*args), repeats=50)
        print(f"  {name:9s} {times[name] * 1e6:9.1f} us  "
              f"({times[name] / n_cand * 1e9:7.1f} ns/candidate)")
    print(f"  speedup   {times['pure'] / times['compiled']:9.1f}x")

    # end-to-end Monte Carlo with the backend swapped in place
    typ = TypicalityParams(0.1)
    print("\nrun_trials (200 trials, 4 individuals):")
    reports = {}
    results = {}
    original = kernels.scan_triples
    try:
        for name, impl in sorted(impls.items()):
            kernels.scan_triples = impl
            start = time.perf_counter()
            reports[name] = run_trials(model, aux, params, typ, 200, seed=7, exact="skip")
            results[name] = time.perf_counter() - start
            print(f"  {name:9s} {results[name]:9.3f} s")
    finally:
        kernels.scan_triples = original
    assert reports["pure"] == reports["compiled"], "backends disagree end to end"
    print(f"  speedup   {results['pure'] / results['compiled']:9.1f}x")
    print("\nbackends agree bit-for-bit on every output above")


if __name__ == "__main__":
    main()
