"""Search a multigraph for catalog witnesses of J-incompatibility.

A witness is a connected subgraph that, optionally after contracting one
odd circuit inside it, is an even splitting of a catalog base whose
parity rule the assignment triggers.  The scan enumerates connected edge
subsets in ascending size, so the first witness found is edge-minimal
among those the search accepts; everything downstream of the subset
enumeration is independent of the assignment, which lets one scan serve
many assignments cheaply.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .catalog import EVEN_CIRCUIT_COUNT, PARITY_RULE, WITNESS_BASES, base_graph
from .circuits import (
    DEFAULT_CIRCUIT_CAP,
    Circuit,
    Parity,
    circuit_from_edges,
    enumerate_circuits,
)
from .errors import ResourceLimitError
from .graphs import Multigraph, find_isomorphism
from .solver import ParityAssignment
from .transforms import (
    Degree2Contraction,
    OddCircuitContraction,
    SplittingTrace,
    _graph_invariant,
    contract_degree2_pair,
    degree2_options,
)

DEFAULT_SCAN_BUDGET = 200_000


@dataclass(frozen=True)
class ForbiddenWitness:
    """A verified incompatibility witness inside a scanned graph."""

    base_name: str
    subgraph_edges: frozenset[int]
    odd_circuit_contracted: Optional[frozenset[int]]
    splitting_trace: SplittingTrace
    circuit_parities: tuple[tuple[frozenset[int], Parity], ...]


@dataclass(frozen=True)
class _Candidate:
    subset: frozenset[int]
    base_name: str
    odd_circuit: Optional[frozenset[int]]
    trace: SplittingTrace
    lifted: tuple[Circuit, ...]  # even circuits of the scanned graph


def _splitting_matches(
    h: Multigraph, bases: tuple[str, ...]
) -> list[tuple[str, SplittingTrace]]:
    """All catalog bases ``h`` can be contracted to, with one trace each.

    A single exploration of the contraction tree serves every base; the
    first trace found per base (breadth order, ascending vertices) wins.
    """
    applicable = []
    for name in bases:
        b = base_graph(name)
        diff = h.n_edges - b.n_edges
        if diff < 0 or diff % 2:
            continue
        # each contraction drops two edges and one or two vertices
        vdiff = h.n_vertices - b.n_vertices
        if not diff // 2 <= vdiff <= diff:
            continue
        applicable.append(name)
    if not applicable:
        return []
    min_edges = min(base_graph(n).n_edges for n in applicable)
    by_size: dict[int, list[str]] = {}
    for name in applicable:
        by_size.setdefault(base_graph(name).n_edges, []).append(name)

    found: dict[str, SplittingTrace] = {}
    seen: dict[tuple, list[Multigraph]] = {}

    def register(g: Multigraph) -> bool:
        bucket = seen.setdefault(_graph_invariant(g), [])
        for other in bucket:
            if find_isomorphism(g, other) is not None:
                return False
        bucket.append(g)
        return True

    frontier: list[tuple[Multigraph, tuple]] = [(h, ())]
    register(h)
    while frontier:
        next_frontier = []
        for g, steps in frontier:
            for name in by_size.get(g.n_edges, []):
                if name not in found and find_isomorphism(g, base_graph(name)):
                    found[name] = SplittingTrace(h, g, steps)
            if g.n_edges - 2 < min_edges:
                continue
            for v in degree2_options(g):
                inc = g.incidence[v]
                child, _ = contract_degree2_pair(g, v)
                if register(child):
                    step = Degree2Contraction(v, (inc[0].id, inc[1].id))
                    next_frontier.append((child, steps + (step,)))
        frontier = next_frontier
        if len(found) == len(applicable):
            break
    return [(name, found[name]) for name in bases if name in found]


def _lift_base_circuits(
    g: Multigraph,
    subset: frozenset[int],
    odd_circuit: Optional[frozenset[int]],
    trace: SplittingTrace,
) -> tuple[Circuit, ...]:
    """Lift the matched base's even circuits back to circuits of ``g``."""
    from .circuits import even_circuits as _evens
    from .transforms import lift_even_circuit

    states = trace.replay_states()
    lifted = list(_evens(states[-1]))
    for i in range(len(trace.steps) - 1, -1, -1):
        lifted = [lift_even_circuit(c, states[i], trace.steps[i]) for c in lifted]
    if odd_circuit is not None:
        sub = g.subgraph(subset)
        step = OddCircuitContraction(tuple(sorted(odd_circuit)))
        lifted = [lift_even_circuit(c, sub, step) for c in lifted]
    # re-anchor on the full graph so senses are canonical there
    out = [circuit_from_edges(g, c.edge_set) for c in lifted]
    out.sort(key=lambda c: (len(c), c.edge_ids))
    return tuple(out)


def _connected_mask(bit_edges, mask: int) -> bool:
    verts = {}
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(bit_edges):
        if not (mask >> i) & 1:
            continue
        for w in (u, v):
            if w not in parent:
                parent[w] = w
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    roots = {find(x) for x in parent}
    return len(roots) == 1


@lru_cache(maxsize=64)
def witness_candidates(
    g: Multigraph,
    budget: int = DEFAULT_SCAN_BUDGET,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> tuple[_Candidate, ...]:
    """Every (subset, base, optional odd contraction) match in the graph.

    Assignment-independent: pairing these with a parity rule is all a scan
    per assignment has to do.
    """
    edges = g.edges
    m = len(edges)
    bit_of = {e.id: i for i, e in enumerate(edges)}
    bit_edges = [(e.u, e.v) for e in edges]
    loop_bits = 0
    for e in edges:
        if e.is_loop:
            loop_bits |= 1 << bit_of[e.id]

    circuits = enumerate_circuits(g, cap)
    even_masks = []
    odd_list = []  # (mask, edge id frozenset)
    for c in circuits:
        mask = 0
        for eid in c.edge_ids:
            mask |= 1 << bit_of[eid]
        if c.is_even:
            even_masks.append(mask)
        else:
            odd_list.append((mask, c.edge_set))

    base_sizes = {name: base_graph(name).n_edges for name in WITNESS_BASES}
    min_base_edges = min(base_sizes.values())
    min_count = min(EVEN_CIRCUIT_COUNT[n] for n in WITNESS_BASES)

    masks = sorted(range(1, 1 << m), key=lambda x: (x.bit_count(), x))
    candidates: list[_Candidate] = []
    examined = 0
    for mask in masks:
        size = mask.bit_count()
        if size < min(3, min_base_edges):
            continue
        examined += 1
        if examined > budget:
            raise ResourceLimitError(
                f"witness scan budget of {budget} subsets exhausted; "
                f"the search covered subsets of at most {size} edges", budget
            )
        # every vertex of the subset needs degree >= 2 for it to be a
        # splitting of a base or to carry an odd circuit plus arcs
        deg: dict[int, int] = {}
        for i in range(m):
            if (mask >> i) & 1:
                u, v = bit_edges[i]
                deg[u] = deg.get(u, 0) + (2 if u == v else 1)
                if u != v:
                    deg[v] = deg.get(v, 0) + 1
        if any(d < 2 for d in deg.values()):
            continue
        if not _connected_mask(bit_edges, mask):
            continue
        n_even_inside = sum(1 for em in even_masks if em & ~mask == 0)

        subset = frozenset(e.id for e in edges if (mask >> bit_of[e.id]) & 1)
        direct: list[tuple[str, SplittingTrace]] = []
        if mask & loop_bits == 0 and n_even_inside >= min_count:
            h = g.subgraph(subset)
            direct = _splitting_matches(h, WITNESS_BASES)
            for name, trace in direct:
                lifted = _lift_base_circuits(g, subset, None, trace)
                candidates.append(_Candidate(subset, name, None, trace, lifted))
        if direct:
            continue
        # one odd-circuit contraction inside the subset
        for omask, oset in odd_list:
            if omask & ~mask:
                continue
            rest = mask & ~omask
            if rest.bit_count() < min_base_edges:
                continue
            sub = g.subgraph(subset)
            contracted, _ = sub.contract_edges(oset)
            if any(e.is_loop for e in contracted.edges):
                continue
            for name, trace in _splitting_matches(contracted, WITNESS_BASES):
                lifted = _lift_base_circuits(g, subset, oset, trace)
                candidates.append(_Candidate(subset, name, oset, trace, lifted))
    return tuple(candidates)


def _rule_triggered(base_name: str, lifted, j: ParityAssignment) -> bool:
    prescribed_even = sum(1 for c in lifted if j.parity_for(c) == Parity.EVEN) % 2
    return Parity(prescribed_even) == PARITY_RULE[base_name]


def _witness_from(cand: _Candidate, j: ParityAssignment) -> ForbiddenWitness:
    parities = tuple(
        (c.edge_set, j.parity_for(c))
        for c in cand.lifted
    )
    return ForbiddenWitness(
        cand.base_name, cand.subset, cand.odd_circuit, cand.trace, parities
    )


def find_witness(
    g: Multigraph,
    j: ParityAssignment,
    budget: int = DEFAULT_SCAN_BUDGET,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> Optional[ForbiddenWitness]:
    """The first catalog witness whose parity rule ``j`` triggers, if any."""
    for cand in witness_candidates(g, budget, cap):
        if _rule_triggered(cand.base_name, cand.lifted, j):
            return _witness_from(cand, j)
    return None


# -- specialised all-odd / all-even scans ------------------------------


def _theta_paths(g: Multigraph) -> Optional[tuple[int, int, int]]:
    """Path lengths when ``g`` is a theta graph, else None."""
    if any(e.is_loop for e in g.edges):
        return None
    branch = [v for v in g.vertex_ids if g.degree(v) != 2]
    if len(branch) != 2 or any(g.degree(v) != 3 for v in branch):
        return None
    if not g.is_connected():
        return None
    u, w = branch
    lengths = []
    used: set[int] = set()
    for e in g.incidence[u]:
        if e.id in used:
            continue
        length = 1
        used.add(e.id)
        cur = e.other(u)
        while cur not in (u, w):
            nxt = [f for f in g.incidence[cur] if f.id not in used]
            if len(nxt) != 1:
                return None
            used.add(nxt[0].id)
            cur = nxt[0].other(cur)
            length += 1
        if cur == u:
            return None
        lengths.append(length)
    if len(lengths) != 3 or len(used) != g.n_edges:
        return None
    return tuple(sorted(lengths))


def _reduced_parity_form(g: Multigraph) -> Optional[Multigraph]:
    """Suppress degree-2 chains, keeping each chain's length parity.

    Odd chains become single edges, even chains become 2-edge paths, so a
    graph is an even subdivision of a catalog base iff its reduced form is
    isomorphic to that base.  Returns None when there is no branch vertex.
    """
    branch = [v for v in g.vertex_ids if g.degree(v) != 2]
    if not branch or any(e.is_loop for e in g.edges):
        return None
    branch_set = set(branch)
    chains = []  # (endpoint a, endpoint b, length)
    used: set[int] = set()
    for v in branch:
        for e in g.incidence[v]:
            if e.id in used:
                continue
            used.add(e.id)
            length = 1
            cur = e.other(v)
            while cur not in branch_set:
                nxt = [f for f in g.incidence[cur] if f.id not in used]
                if len(nxt) != 1:
                    return None
                used.add(nxt[0].id)
                cur = nxt[0].other(cur)
                length += 1
            chains.append((v, cur, length))
    if len(used) != g.n_edges:
        return None  # leftover all-degree-2 component
    pairs: list[tuple[int, int]] = []
    fresh = max(g.vertex_ids) + 1
    for a, b, length in chains:
        if length % 2:
            pairs.append((a, b))
        else:
            pairs.append((a, fresh))
            pairs.append((fresh, b))
            fresh += 1
    return Multigraph.from_pairs(pairs, vertices=branch)


def _subdivision_scan(
    g: Multigraph,
    bases: tuple[str, ...],
    j: ParityAssignment,
    budget: int,
    cap: int,
) -> Optional[ForbiddenWitness]:
    """Ascending-size search for even subdivisions of the given bases,
    directly or after contracting one odd circuit inside the subgraph."""
    from .transforms import is_even_splitting_of

    edges = g.edges
    m = len(edges)
    bit_of = {e.id: i for i, e in enumerate(edges)}
    bit_edges = [(e.u, e.v) for e in edges]
    circuits = enumerate_circuits(g, cap)
    odd_list = []
    for c in circuits:
        if not c.is_even:
            mask = 0
            for eid in c.edge_ids:
                mask |= 1 << bit_of[eid]
            odd_list.append((mask, c.edge_set))
    loop_bits = 0
    for e in edges:
        if e.is_loop:
            loop_bits |= 1 << bit_of[e.id]

    min_base = min(base_graph(b).n_edges for b in bases)
    masks = sorted(range(1, 1 << m), key=lambda x: (x.bit_count(), x))
    examined = 0
    for mask in masks:
        if mask.bit_count() < min_base:
            continue
        examined += 1
        if examined > budget:
            raise ResourceLimitError(
                f"scan budget of {budget} subsets exhausted", budget
            )
        deg: dict[int, int] = {}
        for i in range(m):
            if (mask >> i) & 1:
                u, v = bit_edges[i]
                deg[u] = deg.get(u, 0) + (2 if u == v else 1)
                if u != v:
                    deg[v] = deg.get(v, 0) + 1
        if any(d < 2 for d in deg.values()):
            continue
        if not _connected_mask(bit_edges, mask):
            continue
        subset = frozenset(e.id for e in edges if (mask >> bit_of[e.id]) & 1)

        if mask & loop_bits == 0:
            sub = g.subgraph(subset)
            reduced = _reduced_parity_form(sub)
            if reduced is not None:
                for name in bases:
                    if find_isomorphism(reduced, base_graph(name)):
                        trace = is_even_splitting_of(sub, base_graph(name))
                        assert trace is not None
                        lifted = _lift_base_circuits(g, subset, None, trace)
                        cand = _Candidate(subset, name, None, trace, lifted)
                        if _rule_triggered(name, lifted, j):
                            return _witness_from(cand, j)
        for omask, oset in odd_list:
            if omask & ~mask:
                continue
            if (mask & ~omask).bit_count() < min_base:
                continue
            sub = g.subgraph(subset)
            contracted, _ = sub.contract_edges(oset)
            if any(e.is_loop for e in contracted.edges):
                continue
            reduced = _reduced_parity_form(contracted)
            if reduced is None:
                continue
            for name in bases:
                if find_isomorphism(reduced, base_graph(name)):
                    trace = is_even_splitting_of(contracted, base_graph(name))
                    assert trace is not None
                    lifted = _lift_base_circuits(g, subset, oset, trace)
                    cand = _Candidate(subset, name, oset, trace, lifted)
                    if _rule_triggered(name, lifted, j):
                        return _witness_from(cand, j)
    return None


def scan_all_odd(
    g: Multigraph,
    budget: int = DEFAULT_SCAN_BUDGET,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> Optional[ForbiddenWitness]:
    """Witness against the all-odd assignment: an even subdivision of
    K_{2,3} after at most one odd-circuit contraction."""
    return _subdivision_scan(g, ("O1",), ParityAssignment.all_odd(), budget, cap)


def scan_all_even(
    g: Multigraph,
    budget: int = DEFAULT_SCAN_BUDGET,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> Optional[ForbiddenWitness]:
    """Witness against the all-even assignment: an even subdivision of the
    triple edge or of E3, after at most one odd-circuit contraction."""
    return _subdivision_scan(g, ("E1", "E3"), ParityAssignment.all_even(), budget, cap)


def verify_witness(g: Multigraph, j: ParityAssignment, w: ForbiddenWitness) -> bool:
    """Independently re-check a witness: replay the trace, re-match the
    base, recount the parity rule, and confirm the lifted circuits form an
    intractable set for ``j``."""
    from .solver import is_intractable_set

    sub = g.subgraph(w.subgraph_edges)
    start = sub
    if w.odd_circuit_contracted is not None:
        start, _ = sub.contract_edges(w.odd_circuit_contracted)
        ring = circuit_from_edges(sub, w.odd_circuit_contracted)
        if ring.is_even:
            return False
    if w.splitting_trace.from_graph != start:
        return False
    reached = w.splitting_trace.replay()
    if not find_isomorphism(reached, base_graph(w.base_name)):
        return False
    expected = EVEN_CIRCUIT_COUNT[w.base_name]
    if len(w.circuit_parities) != expected:
        return False
    prescribed_even = sum(1 for _, p in w.circuit_parities if p == Parity.EVEN) % 2
    if Parity(prescribed_even) != PARITY_RULE[w.base_name]:
        return False
    for edge_set, parity in w.circuit_parities:
        c = circuit_from_edges(g, edge_set)
        if not c.is_even or j.parity_for(c) != parity:
            return False
    return is_intractable_set(g, j, [s for s, _ in w.circuit_parities])
