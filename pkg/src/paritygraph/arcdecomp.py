"""Arc decompositions of even-circuit-connected graphs.

A decomposition grows from one even circuit to the whole graph by
adjoining even circuits contributing one or two arcs, every stage staying
even-circuit-connected, with every even circuit of a stage that meets the
new edges containing all of them.  Bipartite graphs decompose with 1-arc
adjunctions only; non-bipartite ones need exactly one 2-arc adjunction,
placed at stage 1.

A Menger-style vertex-disjoint path finder is included as the standalone
connectivity subroutine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .circuits import (
    DEFAULT_CIRCUIT_CAP,
    Circuit,
    circuit_from_edges,
    enumerate_circuits,
    even_circuit_connectivity_witness,
)
from .errors import ContractError, InputError
from .graphs import Multigraph, is_bipartite


@dataclass(frozen=True)
class Arc:
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]


@dataclass(frozen=True)
class Adjunction:
    circuit: Circuit
    arcs: tuple[Arc, ...]


@dataclass(frozen=True)
class ArcDecomposition:
    stages: tuple[frozenset[int], ...]
    adjunctions: tuple[Adjunction, ...]


# -- Menger subroutine --------------------------------------------------


def disjoint_paths(
    g: Multigraph, s_set: Sequence[int], t_set: Sequence[int], n: int
) -> Optional[list[Arc]]:
    """n vertex-disjoint paths from ``s_set`` to ``t_set`` with no inner
    vertex in either set, via unit-capacity vertex-split max flow.

    Returns None when infeasible.
    """
    s_set, t_set = list(dict.fromkeys(s_set)), list(dict.fromkeys(t_set))
    if set(s_set) & set(t_set):
        raise InputError("source and target sets must be disjoint")
    for v in list(s_set) + list(t_set):
        if v not in g.incidence:
            raise InputError(f"unknown vertex {v}")
    if n <= 0:
        return []

    # nodes: ("in", v) / ("out", v) with unit vertex capacity, plus
    # ("S",) and ("T",).  S/T vertices cannot be traversed: their in->out
    # arc is reachable only from the supersource / leads only to the sink.
    INF = 1 << 30
    cap: dict[tuple, dict[tuple, int]] = {}

    def add(a, b, c):
        cap.setdefault(a, {}).setdefault(b, 0)
        cap.setdefault(b, {}).setdefault(a, 0)
        cap[a][b] += c

    sset, tset = set(s_set), set(t_set)
    for v in g.vertex_ids:
        add(("in", v), ("out", v), 1)
    for e in g.edges:
        if e.is_loop:
            continue
        for a, b in ((e.u, e.v), (e.v, e.u)):
            if b in sset or a in tset:
                continue  # nothing may enter a source or leave a target
            add(("out", a), ("in", b), 1)
    for s in s_set:
        add(("S",), ("in", s), 1)
    for t in t_set:
        add(("out", t), ("T",), 1)

    flow: dict[tuple, dict[tuple, int]] = {
        a: {b: 0 for b in nbrs} for a, nbrs in cap.items()
    }

    def bfs_augment() -> bool:
        parent: dict[tuple, tuple] = {("S",): ("S",)}
        queue = [("S",)]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            for b in sorted(cap[a]):
                if b not in parent and cap[a][b] - flow[a][b] > 0:
                    parent[b] = a
                    if b == ("T",):
                        while b != ("S",):
                            a = parent[b]
                            flow[a][b] += 1
                            flow[b][a] -= 1
                            b = a
                        return True
                    queue.append(b)
        return False

    sent = 0
    while sent < n and bfs_augment():
        sent += 1
    if sent < n:
        return None

    # decompose the flow into vertex paths
    paths = []
    for s in sorted(s_set):
        if flow[("S",)][("in", s)] <= 0:
            continue
        verts = [s]
        cur = s
        while cur not in tset:
            nxt = None
            for b, f in sorted(flow[("out", cur)].items()):
                if f > 0 and b[0] == "in":
                    nxt = b[1]
                    flow[("out", cur)][b] -= 1
                    break
            assert nxt is not None
            verts.append(nxt)
            cur = nxt
        edge_ids = []
        for a, b in zip(verts, verts[1:]):
            eid = min(
                e.id for e in g.incidence[a] if not e.is_loop and e.other(a) == b
            )
            edge_ids.append(eid)
        paths.append(Arc(tuple(verts), tuple(edge_ids)))
    return paths[:n]


# -- arcs of a circuit relative to a stage ------------------------------


def circuit_arcs(g: Multigraph, c: Circuit, h_edges: frozenset[int]) -> tuple[Arc, ...]:
    """Maximal subpaths of ``c`` outside ``h_edges`` whose interiors avoid
    the stage's vertices."""
    vh = set()
    for eid in h_edges:
        e = g.by_id[eid]
        vh.add(e.u)
        vh.add(e.v)
    n = len(c.sense)
    in_h = [c.sense[i][1] in h_edges for i in range(n)]
    if all(in_h):
        return ()
    if not any(in_h):
        raise InputError("circuit does not meet the stage")
    start = next(i for i in range(n) if in_h[i] and not in_h[(i + 1) % n])
    arcs = []
    i = (start + 1) % n
    cur_vertices: list[int] = []
    cur_edges: list[int] = []
    while True:
        v, eid = c.sense[i]
        if eid in h_edges:
            if cur_edges:
                arcs.append(Arc(tuple(cur_vertices + [v]), tuple(cur_edges)))
                cur_vertices, cur_edges = [], []
        else:
            if cur_edges and v in vh:
                # interior vertex on the stage splits the run
                arcs.append(Arc(tuple(cur_vertices + [v]), tuple(cur_edges)))
                cur_vertices, cur_edges = [], []
            cur_vertices.append(v)
            cur_edges.append(eid)
        i = (i + 1) % n
        if i == (start + 1) % n:
            break
    if cur_edges:
        arcs.append(Arc(tuple(cur_vertices + [c.sense[(start + 1) % n][0]]), tuple(cur_edges)))
    return tuple(arcs)


# -- decomposition ------------------------------------------------------


def _containment_ok(
    new_edges: frozenset[int],
    stage_mask_edges: frozenset[int],
    evens: Sequence[Circuit],
) -> bool:
    """Every even circuit inside the grown stage that meets the new edges
    must contain all of them."""
    for c in evens:
        if not c.edge_set <= stage_mask_edges:
            continue
        hit = c.edge_set & new_edges
        if hit and hit != new_edges:
            return False
    return True


def find_adjunction(
    g: Multigraph,
    h_edges: frozenset[int],
    cap: int = DEFAULT_CIRCUIT_CAP,
    _evens: Optional[Sequence[Circuit]] = None,
) -> tuple[Circuit, tuple[Arc, ...]]:
    """The next adjunction circuit for the stage, preferring one arc.

    Candidates are even circuits in increasing length; a candidate is
    accepted when it meets the stage, contributes one or two arcs, and the
    grown stage keeps the whole-new-edge-set containment property.
    """
    h_edges = frozenset(h_edges)
    if not h_edges or not h_edges < g.edge_id_set:
        raise ContractError("stage must be a nonempty proper edge subset")
    evens = _evens if _evens is not None else [
        c for c in enumerate_circuits(g, cap) if c.is_even
    ]
    best_two: Optional[tuple[Circuit, tuple[Arc, ...]]] = None
    for c in evens:
        new = c.edge_set - h_edges
        if not new or not (c.edge_set & h_edges):
            continue
        arcs = circuit_arcs(g, c, h_edges)
        if len(arcs) == 1:
            return c, arcs
        if len(arcs) == 2 and best_two is None:
            if _containment_ok(new, h_edges | c.edge_set, evens):
                best_two = (c, arcs)
    if best_two is not None:
        return best_two
    raise ContractError("no 1- or 2-arc adjunction extends the stage")


def decompose(g: Multigraph, cap: int = DEFAULT_CIRCUIT_CAP) -> ArcDecomposition:
    """An arc decomposition with any 2-arc adjunction at stage 1 only."""
    witness = even_circuit_connectivity_witness(g, cap)
    if witness is not None:
        side1, side2 = witness
        raise InputError(
            "graph is not even-circuit-connected: no even circuit crosses "
            f"the bipartition {sorted(side1)} | {sorted(side2)}"
        )
    evens = [c for c in enumerate_circuits(g, cap) if c.is_even]
    all_edges = g.edge_id_set
    bipartite, _ = is_bipartite(g)

    def greedy(stages, adjunctions, allow_two: bool):
        while stages[-1] != all_edges:
            h = stages[-1]
            c, arcs = find_adjunction(g, h, cap, _evens=evens)
            if len(arcs) == 2 and not allow_two:
                raise ContractError("needed a second 2-arc adjunction")
            stages.append(h | c.edge_set)
            adjunctions.append(Adjunction(c, arcs))
        return ArcDecomposition(tuple(stages), tuple(adjunctions))

    if bipartite:
        return greedy([evens[0].edge_set], [], allow_two=False)

    # non-bipartite: the single 2-arc adjunction must come first
    for c0 in evens:
        for d in evens:
            if d.edge_set == c0.edge_set:
                continue
            new = d.edge_set - c0.edge_set
            if not new or not (d.edge_set & c0.edge_set):
                continue
            arcs = circuit_arcs(g, d, c0.edge_set)
            if len(arcs) != 2:
                continue
            grown = c0.edge_set | d.edge_set
            if not _containment_ok(new, grown, evens):
                continue
            stages = [c0.edge_set, grown]
            adjunctions = [Adjunction(d, arcs)]
            try:
                return greedy(stages, adjunctions, allow_two=False)
            except ContractError:
                continue
    raise ContractError("no valid starting 2-arc adjunction found")


def validate(g: Multigraph, d: ArcDecomposition, cap: int = DEFAULT_CIRCUIT_CAP) -> Optional[str]:
    """Recheck every decomposition invariant; None when all hold."""
    from .circuits import is_even_circuit_connected

    if not d.stages:
        return "no stages"
    try:
        c0 = circuit_from_edges(g, d.stages[0])
    except InputError:
        return "stage 0 is not a circuit"
    if not c0.is_even:
        return "stage 0 is not an even circuit"
    if d.stages[-1] != g.edge_id_set:
        return "last stage is not the whole edge set"
    if len(d.adjunctions) != len(d.stages) - 1:
        return "adjunction count does not match stage count"
    two_arc_stages = []
    for i, adj in enumerate(d.adjunctions, start=1):
        prev, cur = d.stages[i - 1], d.stages[i]
        if not prev < cur:
            return f"stage {i} does not strictly grow"
        diff = cur - prev
        c = adj.circuit
        try:
            circuit_from_edges(g, c.edge_set)
        except InputError:
            return f"adjunction {i} circuit is not a circuit"
        if not c.is_even:
            return f"adjunction {i} circuit is odd"
        if not diff <= c.edge_set:
            return f"adjunction {i} circuit does not include the new edges"
        if not c.edge_set & prev:
            return f"adjunction {i} circuit does not meet the previous stage"
        arcs = circuit_arcs(g, c, prev)
        if len(arcs) not in (1, 2):
            return f"adjunction {i} has {len(arcs)} arcs"
        if len(arcs) != len(adj.arcs):
            return f"adjunction {i} arc count mismatch"
        if frozenset().union(*(set(a.edge_ids) for a in arcs)) != diff:
            return f"adjunction {i} arcs do not cover the new edges"
        if len(arcs) == 2:
            two_arc_stages.append(i)
        sub_evens = [
            c2 for c2 in enumerate_circuits(g, cap)
            if c2.is_even and c2.edge_set <= cur
        ]
        for c2 in sub_evens:
            hit = c2.edge_set & diff
            if hit and hit != diff:
                return f"stage {i}: an even circuit meets but does not contain the new edges"
        sub = g.subgraph(cur)
        if not is_even_circuit_connected(sub, cap):
            return f"stage {i} is not even-circuit-connected"
    if len(two_arc_stages) > 1:
        return "more than one 2-arc adjunction"
    if two_arc_stages and two_arc_stages != [1]:
        return "a 2-arc adjunction occurs after stage 1"
    sub0 = g.subgraph(d.stages[0])
    if not is_even_circuit_connected(sub0, cap):
        return "stage 0 is not even-circuit-connected"
    return None
