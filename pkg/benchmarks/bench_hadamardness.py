"""Compare the compiled and numpy backends of the dephased sign-matrix scan.

    python3 benchmarks/bench_hadamardness.py --dims 3 4 5 --repeat 3
"""

import argparse
import statistics
import time

from ldoi.hadamardness import BACKENDS, exhaustive_min


def bench(d, backend, repeat):
    times, res = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = exhaustive_min(d, backend=backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), res


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", type=int, nargs="+", default=[3, 4, 5])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    names = [b for b in ("compiled", "python") if b in BACKENDS]
    if "compiled" not in BACKENDS:
        print("compiled kernel not built; timing the numpy fallback only")
    print(f"{'d':>2} {'candidates':>11} " + " ".join(f"{n + ' [s]':>14}" for n in names) + f" {'speedup':>8}  result")
    for d in args.dims:
        timings, results = {}, {}
        for name in names:
            timings[name], results[name] = bench(d, name, args.repeat)
        keys = {(r.min_value, r.argmin_count, r.first_index) for r in results.values()}
        if len(keys) != 1:
            raise SystemExit(f"backends disagree at d={d}: {keys}")
        speed = timings["python"] / timings["compiled"] if len(names) == 2 else float("nan")
        r = next(iter(results.values()))
        cols = " ".join(f"{timings[n]:14.4f}" for n in names)
        print(f"{d:>2} {1 << (d - 1) ** 2:>11} {cols} {speed:8.1f}x  min={r.min_value} count={r.argmin_count}")


if __name__ == "__main__":
    main()
