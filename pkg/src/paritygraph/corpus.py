"""Deterministic test corpora: exhaustive small multigraphs and seeded
random ones.

The exhaustive generator produces every connected multigraph (loops and
parallel edges included) up to isomorphism within the given vertex and
edge bounds, by canonical augmentation from spanning trees.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

from .graphs import Multigraph

GraphKey = tuple[int, tuple[tuple[int, int], ...]]


@lru_cache(maxsize=8)
def _perms(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(n)))


def canonical_key(g: Multigraph) -> GraphKey:
    """A label-independent key: lexicographically least relabeled edge list."""
    n = g.n_vertices
    index = {v: i for i, v in enumerate(g.vertex_ids)}
    pairs = [(index[e.u], index[e.v]) for e in g.edges]
    best = None
    for p in _perms(n):
        relabeled = sorted(
            (p[a], p[b]) if p[a] <= p[b] else (p[b], p[a]) for a, b in pairs
        )
        key = tuple(relabeled)
        if best is None or key < best:
            best = key
    return (n, best or ())


def _from_key(key: GraphKey) -> Multigraph:
    n, pairs = key
    return Multigraph.build(
        range(1, n + 1), [(i + 1, a + 1, b + 1) for i, (a, b) in enumerate(pairs)]
    )


def _labeled_trees(n: int) -> list[tuple[tuple[int, int], ...]]:
    if n == 1:
        return [()]
    if n == 2:
        return [((0, 1),)]
    trees = []
    for seq in _all_sequences(n - 2, n):
        trees.append(_tree_from_pruefer(seq, n))
    return trees


def _all_sequences(length: int, n: int):
    if length == 0:
        yield ()
        return
    for rest in _all_sequences(length - 1, n):
        for x in range(n):
            yield rest + (x,)


def _tree_from_pruefer(seq: tuple[int, ...], n: int) -> tuple[tuple[int, int], ...]:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    ptr = 0
    leaf = -1
    # linear-time decoding
    degree2 = degree[:]
    import heapq

    leaves = [i for i in range(n) if degree2[i] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree2[x] -= 1
        if degree2[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return tuple(sorted(edges))


@lru_cache(maxsize=4)
def connected_multigraphs(max_vertices: int, max_edges: int) -> tuple[Multigraph, ...]:
    """Every connected multigraph with at most the given sizes, one per
    isomorphism class, in a deterministic order."""
    out: list[GraphKey] = []
    for n in range(1, max_vertices + 1):
        if n - 1 > max_edges:
            break
        seeds = set()
        for tree in _labeled_trees(n):
            g = Multigraph.build(
                range(1, n + 1),
                [(i + 1, a + 1, b + 1) for i, (a, b) in enumerate(tree)],
            )
            seeds.add(canonical_key(g))
        slots = [(a, b) for a in range(n) for b in range(a, n)]
        level = sorted(seeds)
        seen_all = set(level)
        out.extend(level)
        m = n - 1
        while m < max_edges and level:
            next_level = set()
            for key in level:
                _, pairs = key
                for slot in slots:
                    new_pairs = tuple(sorted(pairs + (slot,)))
                    new_key = canonical_key(_from_key((n, new_pairs)))
                    if new_key not in seen_all:
                        seen_all.add(new_key)
                        next_level.add(new_key)
            level = sorted(next_level)
            out.extend(level)
            m += 1
    return tuple(_from_key(k) for k in out)


def random_connected_multigraph(
    rng: random.Random, n_vertices: int, n_edges: int, loops: bool = True
) -> Multigraph:
    """A random connected multigraph: a uniform random tree plus extra edges."""
    if n_edges < n_vertices - 1:
        raise ValueError("too few edges for connectivity")
    n = n_vertices
    pairs: list[tuple[int, int]] = []
    if n >= 2:
        seq = [rng.randrange(n) for _ in range(n - 2)]
        pairs.extend(_tree_from_pruefer(tuple(seq), n))
    while len(pairs) < n_edges:
        a = rng.randrange(n)
        b = rng.randrange(n)
        if a == b and not loops:
            continue
        pairs.append((min(a, b), max(a, b)))
    return Multigraph.build(
        range(1, n + 1), [(i + 1, a + 1, b + 1) for i, (a, b) in enumerate(pairs)]
    )
