"""Circuit enumeration, clockwise parities, cycle space, even-circuit connectivity."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .errors import ContractError, InputError, ResourceLimitError
from .graphs import Multigraph, Orientation

DEFAULT_CIRCUIT_CAP = 100_000


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __str__(self) -> str:  # used by the CLI emitters
        return "even" if self is Parity.EVEN else "odd"


@dataclass(frozen=True)
class Circuit:
    """A connected 2-regular edge set with one stored traversal sense.

    ``sense`` lists (vertex, edge) steps: leave ``vertex`` along ``edge``
    to reach the vertex of the next step.  A loop is a circuit of length 1.
    """

    edge_ids: tuple[int, ...]
    sense: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.edge_ids)

    @property
    def is_even(self) -> bool:
        return len(self.edge_ids) % 2 == 0

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edge_ids)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.sense)

    def reversed(self) -> "Circuit":
        verts = [v for v, _ in self.sense]
        eids = [e for _, e in self.sense]
        n = len(eids)
        rev = tuple((verts[(i + 1) % n], eids[i]) for i in range(n - 1, -1, -1))
        return Circuit(self.edge_ids, rev)


def circuit_from_edges(g: Multigraph, edge_ids: Iterable[int]) -> Circuit:
    """Validate an edge set as a circuit and give it its canonical sense.

    The canonical sense is the lexicographically least closed walk starting
    from the smallest vertex.
    """
    ids = sorted(set(edge_ids))
    if not ids:
        raise InputError("a circuit needs at least one edge")
    unknown = set(ids) - g.edge_id_set
    if unknown:
        raise InputError(f"unknown edge ids in circuit: {sorted(unknown)}")
    edges = [g.by_id[i] for i in ids]

    deg: dict[int, int] = {}
    for e in edges:
        deg[e.u] = deg.get(e.u, 0) + (2 if e.is_loop else 1)
        if not e.is_loop:
            deg[e.v] = deg.get(e.v, 0) + 1
    if any(d != 2 for d in deg.values()):
        raise InputError(f"edge set {ids} is not 2-regular")

    incident: dict[int, list[int]] = {}
    for e in edges:
        incident.setdefault(e.u, []).append(e.id)
        if not e.is_loop:
            incident.setdefault(e.v, []).append(e.id)

    start = min(deg)
    by_id = {e.id: e for e in edges}

    def walk(first_edge: int) -> Optional[tuple[tuple[int, int], ...]]:
        steps = [(start, first_edge)]
        used = {first_edge}
        cur = by_id[first_edge].other(start)
        while cur != start:
            nxt = [i for i in incident[cur] if i not in used]
            if len(nxt) != 1:
                return None
            steps.append((cur, nxt[0]))
            used.add(nxt[0])
            cur = by_id[nxt[0]].other(cur)
        if len(used) != len(ids):
            return None  # disconnected: closed early
        return tuple(steps)

    walks = [w for w in (walk(i) for i in sorted(incident[start])) if w is not None]
    if not walks:
        raise InputError(f"edge set {ids} is not a single circuit")
    return Circuit(tuple(ids), min(walks))


@lru_cache(maxsize=4096)
def enumerate_circuits(g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP) -> tuple[Circuit, ...]:
    """All circuits of ``g``, each once by edge set.

    Sorted by (length, edge ids).  Enumeration walks simple paths closing
    each circuit at its smallest edge id, so no deduplication is needed.
    Exceeding ``cap`` raises ResourceLimitError.
    """
    if cap <= 0:
        raise InputError("circuit cap must be positive")
    found: list[frozenset[int]] = []

    incident: dict[int, list] = {v: [] for v in g.vertex_ids}
    for e in g.edges:
        incident[e.u].append(e)
        if not e.is_loop:
            incident[e.v].append(e)

    def check_cap() -> None:
        if len(found) > cap:
            raise ResourceLimitError(
                f"more than {cap} circuits; raise the cap to enumerate them all", cap
            )

    for e0 in g.edges:
        if e0.is_loop:
            found.append(frozenset([e0.id]))
            check_cap()
            continue
        target = e0.u
        # simple paths from e0.v back to target using edge ids above e0.id
        stack = [(e0.v, frozenset([e0.v]), (e0.id,))]
        while stack:
            cur, visited, path = stack.pop()
            for e in incident[cur]:
                if e.id <= e0.id or e.id in path or e.is_loop:
                    continue
                nxt = e.other(cur)
                if nxt == target:
                    found.append(frozenset(path + (e.id,)))
                    check_cap()
                elif nxt not in visited and nxt != target:
                    stack.append((nxt, visited | {nxt}, path + (e.id,)))

    circuits = [circuit_from_edges(g, ids) for ids in found]
    circuits.sort(key=lambda c: (len(c), c.edge_ids))
    return tuple(circuits)


def even_circuits(g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP) -> tuple[Circuit, ...]:
    return tuple(c for c in enumerate_circuits(g, cap) if c.is_even)


def clockwise_parity(o: Orientation, c: Circuit) -> Parity:
    """Parity of the number of edges directed in agreement with the sense.

    Only defined for even circuits: for odd ones the value would depend on
    which of the two senses is stored.
    """
    if not c.is_even:
        raise ContractError("clockwise parity is only defined for even circuits")
    n = len(c.sense)
    agree = 0
    for i, (v, eid) in enumerate(c.sense):
        head = c.sense[(i + 1) % n][0]
        if o.agrees(eid, v, head):
            agree += 1
    return Parity(agree % 2)


def cycle_space_basis(g: Multigraph) -> tuple[frozenset[int], ...]:
    """Fundamental circuits of a spanning tree, as GF(2) edge-id sets."""
    if not g.is_connected():
        raise InputError("cycle space basis requires a connected graph")
    root = g.vertex_ids[0] if g.vertex_ids else 0
    parent_edge: dict[int, Optional[int]] = {root: None}
    parent: dict[int, Optional[int]] = {root: None}
    tree_edges: set[int] = set()
    queue = [root]
    qi = 0
    while qi < len(queue):
        w = queue[qi]
        qi += 1
        for e in g.incidence[w]:
            if e.is_loop:
                continue
            x = e.other(w)
            if x not in parent:
                parent[x] = w
                parent_edge[x] = e.id
                tree_edges.add(e.id)
                queue.append(x)

    depth: dict[int, int] = {root: 0}
    for w in queue[1:]:
        depth[w] = depth[parent[w]] + 1

    basis = []
    for e in g.edges:
        if e.id in tree_edges:
            continue
        if e.is_loop:
            basis.append(frozenset([e.id]))
            continue
        ids = {e.id}
        a, b = e.u, e.v
        while depth[a] > depth[b]:
            ids.add(parent_edge[a])
            a = parent[a]
        while depth[b] > depth[a]:
            ids.add(parent_edge[b])
            b = parent[b]
        while a != b:
            ids.add(parent_edge[a])
            ids.add(parent_edge[b])
            a, b = parent[a], parent[b]
        basis.append(frozenset(ids))
    return tuple(basis)


def even_circuit_connectivity_witness(
    g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP
) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """None when even-circuit-connected, else a bipartition no even circuit crosses."""
    if g.has_isolated_vertices():
        raise InputError("even-circuit connectivity requires no isolated vertices")
    if g.n_edges == 0:
        raise InputError("even-circuit connectivity requires at least one edge")
    evens = even_circuits(g, cap)
    all_ids = g.edge_id_set

    uncovered = set(all_ids)
    for c in evens:
        uncovered -= c.edge_set
    if uncovered:
        e = min(uncovered)
        side = frozenset([e])
        if len(all_ids) == 1:
            # single-edge graph: the definition still rejects it, and the
            # degenerate bipartition has an empty complement
            return side, frozenset()
        return side, frozenset(all_ids - side)

    parent = {i: i for i in all_ids}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in evens:
        ids = sorted(c.edge_set)
        for other in ids[1:]:
            ra, rb = find(ids[0]), find(other)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    roots = {find(i) for i in all_ids}
    if len(roots) <= 1:
        return None
    r0 = min(roots)
    side = frozenset(i for i in all_ids if find(i) == r0)
    return side, frozenset(all_ids - side)


def is_even_circuit_connected(g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP) -> bool:
    """Every bipartition of the edge set is crossed by some even circuit."""
    return even_circuit_connectivity_witness(g, cap) is None
