"""Shared graph fixtures and independent oracles."""

from __future__ import annotations

import itertools

import pytest

from paritygraph import Multigraph, Orientation, clockwise_parity, even_circuits


def k23() -> Multigraph:
    return Multigraph.from_pairs([(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])


def k4() -> Multigraph:
    return Multigraph.from_pairs([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


def k33() -> Multigraph:
    return Multigraph.from_pairs(
        [(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)]
    )


def triangle() -> Multigraph:
    return Multigraph.from_pairs([(1, 2), (2, 3), (1, 3)])


def square() -> Multigraph:
    return Multigraph.from_pairs([(1, 2), (2, 3), (3, 4), (4, 1)])


def triple_edge() -> Multigraph:
    return Multigraph.from_pairs([(1, 2), (1, 2), (1, 2)])


def grid(rows: int, cols: int) -> Multigraph:
    pairs = []

    def vid(r, c):
        return r * cols + c + 1

    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                pairs.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                pairs.append((vid(r, c), vid(r + 1, c)))
    return Multigraph.from_pairs(pairs)


# -- independent oracles -------------------------------------------------


def circuits_by_brute_force(g: Multigraph) -> set[frozenset[int]]:
    """Every edge subset that is connected and 2-regular."""
    ids = sorted(g.edge_id_set)
    out = set()
    for r in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, r):
            sub = g.subgraph(combo)
            if all(sub.degree(v) == 2 for v in sub.vertex_ids) and sub.is_connected():
                out.add(frozenset(combo))
    return out


def compatible_by_brute_force(g: Multigraph, j) -> bool:
    """Try all 2^|E| orientations."""
    evens = even_circuits(g)
    if not evens:
        return True
    ids = [e.id for e in g.edges]
    base = Orientation.reference(g)
    for flips in itertools.product([0, 1], repeat=len(ids)):
        o = base.with_flipped([i for i, f in zip(ids, flips) if f])
        if all(clockwise_parity(o, c) == j.parity_for(c) for c in evens):
            return True
    return False


def two_connected_by_brute_force(g: Multigraph) -> bool:
    """g - v connected for every vertex v, plus connectivity."""
    if not g.is_connected() or g.n_vertices < 2:
        return False
    for v in g.vertex_ids:
        rest_edges = [e for e in g.edges if v not in (e.u, e.v)]
        rest_vertices = [w for w in g.vertex_ids if w != v]
        h = Multigraph.build(rest_vertices, [(e.id, e.u, e.v) for e in rest_edges])
        seen = set()
        if rest_vertices:
            stack = [rest_vertices[0]]
            seen = {rest_vertices[0]}
            while stack:
                w = stack.pop()
                for e in h.incidence[w]:
                    x = e.other(w)
                    if x not in seen:
                        seen.add(x)
                        stack.append(x)
        if len(seen) != len(rest_vertices):
            return False
    return True


@pytest.fixture(scope="session")
def small_corpus():
    from paritygraph.corpus import connected_multigraphs

    return connected_multigraphs(4, 7)
