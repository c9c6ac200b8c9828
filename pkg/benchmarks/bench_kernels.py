"""Time the pure-Python kernels against the compiled extension.

Runs the four hot kernels (carve, BFS, path enumeration, path counting)
on every available backend and prints per-call times plus the speedup of
the compiled lane over the pure one.

    python3 benchmarks/bench_kernels.py --sizes 5 10 20 --repeats 50
"""

import argparse
import statistics
import time

from labyrinth._kernels import backends


def time_call(fn, repeats):
    samples = []
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - started)
    return statistics.median(samples)


def bench_backend(module, size, repeats):
    """Median seconds per call for each kernel at a square size."""
    vwalls, hwalls = module.generate_perfect(size, size, seed=1)
    # an open grid gives enumerate/count real work; cap keeps it bounded
    open_v = vwalls * 0
    open_h = hwalls * 0
    timings = {
        "generate_perfect": time_call(
            lambda: module.generate_perfect(size, size, seed=1), repeats),
        "bfs_tree": time_call(
            lambda: module.bfs_tree(vwalls, hwalls, size - 1, 0), repeats),
        "enumerate_paths": time_call(
            lambda: module.enumerate_paths(open_v, open_h, size - 1, 0, 0, size - 1, 2000),
            repeats),
        "count_paths_up_to": time_call(
            lambda: module.count_paths_up_to(open_v, open_h, size - 1, 0, 0, size - 1, 2000),
            repeats),
    }
    return timings


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[5, 10, 20],
                        help="square maze sizes to benchmark")
    parser.add_argument("--repeats", type=int, default=30,
                        help="calls per measurement (median is reported)")
    args = parser.parse_args(argv)

    lanes = backends()
    if "compiled" not in lanes:
        print("[WARN] compiled extension not importable; timing pure lane only")

    for size in args.sizes:
        print(f"\n{size}x{size} maze, median of {args.repeats} calls")
        results = {name: bench_backend(module, size, args.repeats)
                   for name, module in lanes.items()}
        kernels = results["pure"].keys()
        for kernel in kernels:
            line = f"  {kernel:<18}"
            for name in results:
                line += f" {name} {results[name][kernel] * 1e6:9.1f} us"
            if "compiled" in results:
                ratio = results["pure"][kernel] / results["compiled"][kernel]
                line += f"  speedup {ratio:5.1f}x"
            print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
