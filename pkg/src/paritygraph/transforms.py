"""Even vertex splitting machinery: degree-2 contractions, double
subdivisions, splitting detection, circuit lifting, induced assignments.

Contracting the two edges at a degree-2 vertex is the inverse of an even
vertex splitting; chains of such contractions are searched to decide
whether one graph is an even splitting of another.  Even circuits lift
uniquely backwards through both this contraction and the contraction of
an odd circuit, which is what makes parity assignments transportable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .circuits import (
    DEFAULT_CIRCUIT_CAP,
    Circuit,
    circuit_from_edges,
    even_circuits,
)
from .errors import CapabilityError, InputError
from .graphs import ContractionMap, Multigraph, find_isomorphism
from .solver import ParityAssignment

SPLITTING_VERTEX_LIMIT = 14


@dataclass(frozen=True)
class Degree2Contraction:
    vertex: int
    edge_pair: tuple[int, int]


@dataclass(frozen=True)
class OddCircuitContraction:
    edge_ids: tuple[int, ...]


Step = Union[Degree2Contraction, OddCircuitContraction]


@dataclass(frozen=True)
class SplittingTrace:
    """A replayable chain of contractions from one graph to another."""

    from_graph: Multigraph
    to_graph: Multigraph
    steps: tuple[Step, ...]

    def replay_states(self) -> list[Multigraph]:
        """All intermediate graphs, from from_graph to to_graph inclusive."""
        states = [self.from_graph]
        for step in self.steps:
            states.append(apply_step(states[-1], step))
        return states

    def replay(self) -> Multigraph:
        return self.replay_states()[-1]


def apply_step(g: Multigraph, step: Step) -> Multigraph:
    if isinstance(step, Degree2Contraction):
        h, _ = contract_degree2_pair(g, step.vertex)
        return h
    h, _ = contract_odd_circuit(g, frozenset(step.edge_ids))
    return h


def contract_degree2_pair(g: Multigraph, v: int) -> tuple[Multigraph, ContractionMap]:
    """Contract the two edges at a degree-2 vertex (inverse of splitting)."""
    if v not in g.incidence:
        raise InputError(f"unknown vertex {v}")
    inc = g.incidence[v]
    if g.degree(v) != 2 or len(inc) != 2:
        raise InputError(f"vertex {v} does not have two distinct non-loop edges")
    e, f = inc
    return g.contract_edges({e.id, f.id})


def degree2_options(g: Multigraph) -> list[int]:
    """Vertices where contract_degree2_pair applies, ascending."""
    out = []
    for v in g.vertex_ids:
        inc = g.incidence[v]
        if len(inc) == 2 and not inc[0].is_loop and not inc[1].is_loop:
            out.append(v)
    return out


def contract_odd_circuit(
    g: Multigraph, edge_ids: frozenset[int]
) -> tuple[Multigraph, ContractionMap]:
    c = circuit_from_edges(g, edge_ids)
    if c.is_even:
        raise InputError("expected an odd circuit to contract")
    return g.contract_edges(edge_ids)


def subdivide_edge_twice(g: Multigraph, eid: int) -> Multigraph:
    """Replace one edge by a three-edge path through two new vertices."""
    if eid not in g.edge_id_set:
        raise InputError(f"unknown edge id {eid}")
    e = g.by_id[eid]
    a = max(g.vertex_ids) + 1
    b = a + 1
    m = max(x.id for x in g.edges)
    edges = [(x.id, x.u, x.v) for x in g.edges if x.id != eid]
    edges += [(m + 1, e.u, a), (m + 2, a, b), (m + 3, b, e.v)]
    return Multigraph.build(list(g.vertex_ids) + [a, b], edges)


def _graph_invariant(g: Multigraph) -> tuple:
    mult: dict[tuple[int, int], int] = {}
    loops = 0
    for e in g.edges:
        if e.is_loop:
            loops += 1
        key = (e.u, e.v)
        mult[key] = mult.get(key, 0) + 1
    degrees = tuple(sorted(g.degree(v) for v in g.vertex_ids))
    return (
        g.n_vertices,
        g.n_edges,
        loops,
        degrees,
        tuple(sorted(mult.values())),
    )


def is_even_splitting_of(
    h: Multigraph, b: Multigraph, vertex_limit: int = SPLITTING_VERTEX_LIMIT
) -> Optional[SplittingTrace]:
    """A chain of degree-2 contractions from ``h`` to a graph isomorphic to
    ``b``, or None when no chain exists."""
    if h.n_vertices > vertex_limit:
        raise CapabilityError(
            f"splitting search supported up to {vertex_limit} vertices"
        )
    diff = h.n_edges - b.n_edges
    if diff < 0 or diff % 2:
        return None
    # each contraction drops two edges and one or two vertices
    k = diff // 2
    vdiff = h.n_vertices - b.n_vertices
    if not k <= vdiff <= 2 * k:
        return None

    target_inv = _graph_invariant(b)
    dead: dict[tuple, list[Multigraph]] = {}

    def same(g1: Multigraph, g2: Multigraph) -> bool:
        # exact equality for states too large for the isomorphism search;
        # that only weakens deduplication, never correctness
        if g1.n_vertices > 12 or g2.n_vertices > 12:
            return g1 == g2
        return find_isomorphism(g1, g2) is not None

    def seen_dead(g: Multigraph) -> bool:
        bucket = dead.get(_graph_invariant(g), [])
        return any(same(g, other) for other in bucket)

    def mark_dead(g: Multigraph) -> None:
        dead.setdefault(_graph_invariant(g), []).append(g)

    def search(g: Multigraph, steps: list[Step]) -> Optional[tuple[Step, ...]]:
        if g.n_edges == b.n_edges:
            if _graph_invariant(g) == target_inv and find_isomorphism(g, b):
                return tuple(steps)
            return None
        if seen_dead(g):
            return None
        for v in degree2_options(g):
            inc = g.incidence[v]
            step = Degree2Contraction(v, (inc[0].id, inc[1].id))
            child, _ = contract_degree2_pair(g, v)
            steps.append(step)
            found = search(child, steps)
            if found is not None:
                return found
            steps.pop()
        mark_dead(g)
        return None

    steps = search(h, [])
    if steps is None:
        return None
    reached = h
    for s in steps:
        reached = apply_step(reached, s)
    return SplittingTrace(h, reached, steps)


def lift_even_circuit(c: Circuit, g_before: Multigraph, step: Step) -> Circuit:
    """The unique even circuit of ``g_before`` whose intersection with the
    contracted graph's edges is ``c``."""
    g_after = apply_step(g_before, step)
    if not c.edge_set <= g_after.edge_id_set:
        raise InputError("circuit does not live in the contracted graph")
    check = circuit_from_edges(g_after, c.edge_set)
    if not check.is_even:
        raise InputError("only even circuits lift uniquely")

    if isinstance(step, Degree2Contraction):
        e_id, f_id = step.edge_pair
        e, f = g_before.by_id[e_id], g_before.by_id[f_id]
        v = step.vertex
        a = e.other(v)
        bvert = f.other(v)
        merged = min(a, v, bvert)
        if merged not in check.vertex_set:
            return circuit_from_edges(g_before, c.edge_set)
        touching = [
            eid
            for eid in c.edge_ids
            if merged in _endpoints_after(g_after, eid)
        ]
        anchor_ends = []
        for eid in touching:
            edge = g_before.by_id[eid]
            for end in (edge.u, edge.v):
                if end in (a, bvert):
                    anchor_ends.append(end)
        if len(set(anchor_ends)) <= 1:
            return circuit_from_edges(g_before, c.edge_set)
        return circuit_from_edges(g_before, c.edge_set | {e_id, f_id})

    # odd circuit contraction
    ring = circuit_from_edges(g_before, frozenset(step.edge_ids))
    merged = min(ring.vertex_set)
    image = {v: merged for v in ring.vertex_set}
    if merged not in check.vertex_set:
        return circuit_from_edges(g_before, c.edge_set)
    attach = []
    for eid in c.edge_ids:
        edge = g_before.by_id[eid]
        for end in (edge.u, edge.v):
            if end in ring.vertex_set:
                attach.append(end)
    attach = sorted(set(attach))
    if len(attach) <= 1:
        return circuit_from_edges(g_before, c.edge_set)
    if len(attach) > 2:
        raise InputError("circuit meets the contracted vertex more than twice")
    p, q = attach
    path = _even_path_on_circuit(g_before, ring, p, q)
    return circuit_from_edges(g_before, c.edge_set | path)


def _endpoints_after(g_after: Multigraph, eid: int) -> tuple[int, int]:
    e = g_after.by_id[eid]
    return (e.u, e.v)


def _even_path_on_circuit(g: Multigraph, ring: Circuit, p: int, q: int) -> frozenset[int]:
    """Of the two paths joining p and q along an odd circuit, the even one."""
    steps = ring.sense
    n = len(steps)
    verts = [v for v, _ in steps]
    ip, iq = verts.index(p), verts.index(q)
    if ip > iq:
        ip, iq = iq, ip
    side1 = frozenset(steps[i][1] for i in range(ip, iq))
    side2 = ring.edge_set - side1
    return side1 if len(side1) % 2 == 0 else side2


def lift_through_trace(c: Circuit, trace: SplittingTrace) -> Circuit:
    """Lift an even circuit of trace.to_graph all the way to trace.from_graph."""
    states = trace.replay_states()
    cur = c
    for i in range(len(trace.steps) - 1, -1, -1):
        cur = lift_even_circuit(cur, states[i], trace.steps[i])
    return cur


def induce_assignment(
    j: ParityAssignment,
    g_before: Multigraph,
    step: Step,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> ParityAssignment:
    """The assignment on the contracted graph matching ``j`` through lifting."""
    if j.kind in ("all-odd", "all-even"):
        return j
    g_after = apply_step(g_before, step)
    mapping = {}
    for c in even_circuits(g_after, cap):
        lifted = lift_even_circuit(c, g_before, step)
        mapping[c.edge_set] = j.parity_for(lifted)
    return ParityAssignment.from_map(mapping, j.default)
