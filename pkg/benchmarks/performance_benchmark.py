#!/usr/bin/env python3
"""
Timing benchmark for the expensive paths: subgroup lattices, point closures,
coordinate groups and a corpus suite run serially and in parallel.
"""

import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from src.config import Config
from src.coordinate import coordinate_group
from src.corpus import CorpusSpec, corpus_verify, resolve_corpus
from src.families import alternating, dihedral, symmetric
from src.lattice import enumerate_subgroups
from src.zariski import Mode, make_set, point_closure


def _time(label: str, fn, repeats: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    print(f"  {label:<40} {best * 1000:9.2f} ms")
    return result


def benchmark_lattices(config: Config) -> None:
    print("\n📐 Subgroup lattices")
    for G in (dihedral(24, config), symmetric(4, config), alternating(5, config)):
        _time(f"{G.name} ({G.order})", lambda G=G: (G._cache.clear(), enumerate_subgroups(G, config)))


def benchmark_closures(config: Config) -> None:
    print("\n🔒 Point closures")
    rng = np.random.default_rng(config.seed)
    for G in (symmetric(3, config), dihedral(8, config), alternating(5, config)):
        for mode in Mode:
            z = rng.integers(0, G.order, size=2).tolist()
            _time(f"{G.name} {mode.value} n=2",
                  lambda G=G, z=z, mode=mode: (G._cache.clear(),
                                               point_closure(G, z, mode, config)))


def benchmark_coordinate_groups(config: Config) -> None:
    print("\n🧮 Coordinate groups")
    A5 = alternating(5, config)
    for m in (1, 2):
        Y = make_set(A5, 1, [(i + 1,) for i in range(m)])
        gamma = _time(f"A5, {m} points", lambda Y=Y: coordinate_group(Y, config))
        print(f"    carrier order {gamma.order}")


def benchmark_suite(config: Config) -> None:
    print("\n🧪 domain-equivalence over the builtin corpus")
    corpus = resolve_corpus(CorpusSpec(sweep_order=16), config)
    _time("serial", lambda: corpus_verify(corpus, ["domain-equivalence"], config), repeats=1)
    parallel = config.replace(jobs=os.cpu_count() or 1)
    _time(f"{parallel.jobs} jobs", lambda: corpus_verify(corpus, ["domain-equivalence"], parallel),
          repeats=1)


def main() -> None:
    print("🚀 grpgeo performance benchmark")
    print("=" * 50)
    config = Config.from_env()
    benchmark_lattices(config)
    benchmark_closures(config)
    benchmark_coordinate_groups(config)
    benchmark_suite(config)


if __name__ == "__main__":
    main()
