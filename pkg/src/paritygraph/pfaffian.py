"""Matching counting through orientations: alternating circuits, Pfaffian
orientations, and the skew-determinant count.

An orientation under which every alternating circuit (the symmetric
difference of two perfect matchings) is clockwise odd makes the number of
perfect matchings computable as the square root of the determinant of the
skew adjacency matrix.  The orientation itself is found with the same
GF(2) machinery as the general parity solver, with constraint rows
restricted to alternating circuits.
"""

from __future__ import annotations

import math
from typing import Union

from . import gf2
from .circuits import (
    DEFAULT_CIRCUIT_CAP,
    Circuit,
    Parity,
    circuit_from_edges,
    clockwise_parity,
)
from .errors import ContractError, ResourceLimitError
from .graphs import Multigraph, Orientation
from .solver import IntractableCertificate


def enumerate_perfect_matchings(
    g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP
) -> tuple[frozenset[int], ...]:
    """All perfect matchings as edge-id sets, deterministic order.

    Odd vertex counts give the empty tuple; loops never participate.
    """
    if g.n_vertices % 2:
        return ()
    out: list[frozenset[int]] = []

    def extend(uncovered: tuple[int, ...], chosen: tuple[int, ...]) -> None:
        if not uncovered:
            out.append(frozenset(chosen))
            if len(out) > cap:
                raise ResourceLimitError(
                    f"more than {cap} perfect matchings", cap
                )
            return
        v = uncovered[0]
        rest = set(uncovered[1:])
        for e in g.incidence[v]:
            if e.is_loop:
                continue
            w = e.other(v)
            if w in rest:
                extend(tuple(x for x in uncovered[1:] if x != w), chosen + (e.id,))

    extend(g.vertex_ids, ())
    out.sort(key=sorted)
    return tuple(out)


def alternating_circuits(
    g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP
) -> tuple[Circuit, ...]:
    """Circuits that are the symmetric difference of two perfect matchings."""
    matchings = enumerate_perfect_matchings(g, cap)
    seen: set[frozenset[int]] = set()
    out: list[Circuit] = []
    for i in range(len(matchings)):
        for k in range(i + 1, len(matchings)):
            diff = matchings[i] ^ matchings[k]
            if not diff or diff in seen:
                continue
            seen.add(diff)
            try:
                c = circuit_from_edges(g, diff)
            except Exception:
                continue  # the difference is a union of several circuits
            out.append(c)
    out.sort(key=lambda c: (len(c), c.edge_ids))
    return tuple(out)


def find_pfaffian_orientation(
    g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP
) -> Union[Orientation, IntractableCertificate]:
    """An orientation making every alternating circuit clockwise odd, or a
    certificate (over alternating circuits) that none exists."""
    base = Orientation.reference(g)
    circs = alternating_circuits(g, cap)
    if not circs:
        return base
    cols = sorted({eid for c in circs for eid in c.edge_ids})
    idx = {eid: i for i, eid in enumerate(cols)}
    masks = []
    rhs = []
    for c in circs:
        bits = 0
        for eid in c.edge_ids:
            bits |= 1 << idx[eid]
        masks.append(bits)
        rhs.append(1 if clockwise_parity(base, c) != Parity.ODD else 0)
    a = gf2.Gf2Matrix.from_bitmasks(masks, len(cols))
    result = gf2.solve(a, tuple(rhs))
    if isinstance(result, gf2.Inconsistency):
        from .solver import _minimal_odd_combination

        rows = _minimal_odd_combination(a, tuple(rhs), result.row_combination)
        chosen = tuple(circs[i] for i in sorted(rows))
        observed = sum(
            1 for c in chosen if clockwise_parity(base, c) == Parity.EVEN
        ) % 2
        # the all-odd target prescribes zero clockwise-even circuits
        return IntractableCertificate(chosen, Parity(observed), Parity.EVEN)
    flips = [cols[i] for i, bit in enumerate(result) if bit]
    return base.with_flipped(flips)


def verify_pfaffian(g: Multigraph, o: Orientation, cap: int = DEFAULT_CIRCUIT_CAP) -> bool:
    return all(
        clockwise_parity(o, c) == Parity.ODD for c in alternating_circuits(g, cap)
    )


def skew_adjacency(g: Multigraph, o: Orientation) -> list[list[int]]:
    """Entry (u, v): edges oriented u->v minus edges oriented v->u."""
    index = {v: i for i, v in enumerate(g.vertex_ids)}
    n = g.n_vertices
    m = [[0] * n for _ in range(n)]
    for e in g.edges:
        if e.is_loop:
            continue
        t, h = o.direction[e.id]
        m[index[t]][index[h]] += 1
        m[index[h]][index[t]] -= 1
    return m


def _bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def kasteleyn_count(g: Multigraph, o: Orientation) -> int:
    """Number of perfect matchings under a Pfaffian orientation: the
    integer square root of det(skew adjacency)."""
    det = _bareiss_determinant(skew_adjacency(g, o))
    if det < 0:
        raise ContractError("skew determinant is negative: orientation is not Pfaffian")
    root = math.isqrt(det)
    if root * root != det:
        raise ContractError("skew determinant is not a perfect square: orientation is not Pfaffian")
    return root
