"""Brute-force enumeration oracle.

Deliberately dumb: walk every image vector (odometer order), decompose
its functional graph, tally by the multiset of cycle lengths. The census
is shared by every cycle-set query at the same n, which keeps repeated
verification runs cheap without making the oracle any cleverer.

Vertices are 0..n-1 throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import factorial

from .cycle_sets import CycleSet

MAX_MAPPING_SIZE = 8     # n^n enumeration: 8^8 ~ 1.7e7
MAX_PERMUTATION_SIZE = 9  # 9! = 362880


@dataclass(frozen=True)
class FunctionalGraph:
    """A mapping of {0..n-1} with its cyclic vertices and cycle lengths."""

    image: tuple
    cyclic: frozenset
    cycle_lengths: tuple  # sorted multiset

    @property
    def n(self) -> int:
        return len(self.image)


def analyze(image) -> FunctionalGraph:
    """Decompose a mapping given as image[v] in {0..n-1}."""
    image = tuple(image)
    n = len(image)
    if n == 0:
        raise ValueError("mappings of the empty set are not supported")
    for v in image:
        if not isinstance(v, int) or not 0 <= v < n:
            raise ValueError("image value %r outside 0..%d" % (v, n - 1))
    state = [0] * n  # 0 unseen, 1 on current path, 2 finished
    pos = [0] * n
    cyclic = []
    lengths = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            pos[v] = len(path)
            path.append(v)
            v = image[v]
        if state[v] == 1:  # closed a new cycle at pos[v]
            cycle = path[pos[v]:]
            cyclic.extend(cycle)
            lengths.append(len(cycle))
        for u in path:
            state[u] = 2
    return FunctionalGraph(image, frozenset(cyclic), tuple(sorted(lengths)))


def _census_block(n: int, start: int, stop: int) -> dict:
    """Cycle-type census of the image vectors with odometer index in [start, stop)."""
    counts: dict = {}
    state = [0] * n
    pos = [0] * n
    # seed the odometer at `start` (most-significant digit first)
    image = [0] * n
    idx = start
    for d in range(n - 1, -1, -1):
        image[d] = idx % n
        idx //= n
    for _ in range(stop - start):
        for v in range(n):
            state[v] = 0
        lengths = []
        for v0 in range(n):
            if state[v0]:
                continue
            path = []
            v = v0
            while state[v] == 0:
                state[v] = 1
                pos[v] = len(path)
                path.append(v)
                v = image[v]
            if state[v] == 1:
                lengths.append(len(path) - pos[v])
            for u in path:
                state[u] = 2
        key = tuple(sorted(lengths))
        counts[key] = counts.get(key, 0) + 1
        # odometer increment
        for d in range(n - 1, -1, -1):
            image[d] += 1
            if image[d] < n:
                break
            image[d] = 0
    return counts


def merge_censuses(parts) -> dict:
    """Sum per-block censuses; associative, so any partition gives the same result."""
    total: dict = {}
    for part in parts:
        for key, cnt in part.items():
            total[key] = total.get(key, 0) + cnt
    return total


@lru_cache(maxsize=None)
def mapping_cycle_census(n: int) -> dict:
    """Census of all n^n mappings by sorted cycle-length multiset."""
    if not 1 <= n <= MAX_MAPPING_SIZE:
        raise ValueError("mapping census capped at n <= %d" % MAX_MAPPING_SIZE)
    return _census_block(n, 0, n**n)


def mapping_cycle_census_blocks(n: int, blocks: int = 1, workers: int = 1) -> dict:
    """Same census, computed over `blocks` contiguous index ranges.

    With workers > 1 the blocks run in separate processes; the merge is
    a plain sum, so the result does not depend on the partitioning.
    """
    if not 1 <= n <= MAX_MAPPING_SIZE:
        raise ValueError("mapping census capped at n <= %d" % MAX_MAPPING_SIZE)
    total = n**n
    blocks = max(1, min(blocks, total))
    bounds = [total * i // blocks for i in range(blocks + 1)]
    jobs = [(n, bounds[i], bounds[i + 1]) for i in range(blocks)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_census_block, *zip(*jobs)))
    else:
        parts = [_census_block(*job) for job in jobs]
    return merge_censuses(parts)


@lru_cache(maxsize=None)
def permutation_cycle_census(k: int) -> dict:
    """Census of all k! permutations by sorted cycle-length multiset."""
    if not 1 <= k <= MAX_PERMUTATION_SIZE:
        raise ValueError("permutation census capped at k <= %d" % MAX_PERMUTATION_SIZE)
    counts: dict = {}
    for perm in permutations(range(k)):
        seen = [False] * k
        lengths = []
        for v0 in range(k):
            if seen[v0]:
                continue
            ln = 0
            v = v0
            while not seen[v]:
                seen[v] = True
                ln += 1
                v = perm[v]
            lengths.append(ln)
        key = tuple(sorted(lengths))
        counts[key] = counts.get(key, 0) + 1
    assert sum(counts.values()) == factorial(k)
    return counts


def brute_count_mappings(A: CycleSet, n: int):
    """(total, per_k) census of mappings whose cycle lengths all lie in A.

    per_k maps the cyclic-element count k to the number of such mappings.
    """
    census = mapping_cycle_census(n)
    allowed = [False] + [A.contains(m) for m in range(1, n + 1)]
    total = 0
    per_k: dict = {}
    for lengths, cnt in census.items():
        if all(allowed[ln] for ln in lengths):
            total += cnt
            k = sum(lengths)
            per_k[k] = per_k.get(k, 0) + cnt
    return total, per_k


def brute_count_permutations(A: CycleSet, k: int) -> int:
    """Number of permutations of k elements with every cycle length in A."""
    if k == 0:
        return 1
    census = permutation_cycle_census(k)
    allowed = [False] + [A.contains(m) for m in range(1, k + 1)]
    return sum(
        cnt for lengths, cnt in census.items() if all(allowed[ln] for ln in lengths)
    )
