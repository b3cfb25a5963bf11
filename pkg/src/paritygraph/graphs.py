"""Multigraph primitives: subgraphs, contractions, orientations, isomorphism.

Vertices and edges are identified by small integers.  Parallel edges and
loops are permitted everywhere; all iteration is in ascending-id order so
every algorithm built on top is deterministic.  Instances are immutable
after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .errors import CapabilityError, InputError

ISO_VERTEX_LIMIT = 12


class Edge(NamedTuple):
    id: int
    u: int
    v: int

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, w: int) -> int:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise InputError(f"vertex {w} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class ContractionMap:
    """Bookkeeping for a contraction: where vertices went, which edges survive."""

    vertex_image: dict[int, int]
    surviving_edges: dict[int, int]


@dataclass(frozen=True)
class Multigraph:
    vertex_ids: tuple[int, ...]
    edges: tuple[Edge, ...]

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[tuple[int, int, int]]) -> "Multigraph":
        vs = tuple(sorted(set(vertices)))
        es = []
        for eid, u, v in edges:
            a, b = (u, v) if u <= v else (v, u)
            es.append(Edge(int(eid), a, b))
        es.sort(key=lambda e: e.id)
        g = Multigraph(vs, tuple(es))
        g._validate()
        return g

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Multigraph":
        """Build with edge ids 1..m assigned in input order."""
        pairs = list(pairs)
        vs = set(vertices)
        for u, v in pairs:
            vs.add(u)
            vs.add(v)
        return Multigraph.build(vs, [(i + 1, u, v) for i, (u, v) in enumerate(pairs)])

    def _validate(self) -> None:
        vset = set(self.vertex_ids)
        prev = None
        for e in self.edges:
            if prev is not None and e.id <= prev:
                raise InputError(f"edge ids must be unique and increasing, got {e.id} after {prev}")
            prev = e.id
            if e.u not in vset or e.v not in vset:
                raise InputError(f"edge {e.id} references unknown vertex")

    # -- basic accessors ------------------------------------------------

    @cached_property
    def by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def edge_id_set(self) -> frozenset[int]:
        return frozenset(e.id for e in self.edges)

    @cached_property
    def incidence(self) -> dict[int, tuple[Edge, ...]]:
        inc: dict[int, list[Edge]] = {v: [] for v in self.vertex_ids}
        for e in self.edges:
            inc[e.u].append(e)
            if not e.is_loop:
                inc[e.v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def degree(self, v: int) -> int:
        d = 0
        for e in self.incidence[v]:
            d += 2 if e.is_loop else 1
        return d

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_isolated_vertices(self) -> bool:
        return any(not self.incidence[v] for v in self.vertex_ids)

    def is_connected(self) -> bool:
        if not self.vertex_ids:
            return True
        seen = {self.vertex_ids[0]}
        stack = [self.vertex_ids[0]]
        while stack:
            w = stack.pop()
            for e in self.incidence[w]:
                x = e.other(w)
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
        return len(seen) == self.n_vertices

    # -- subgraph and contraction ---------------------------------------

    def subgraph(self, keep: Iterable[int]) -> "Multigraph":
        """Subgraph spanned by an edge-id set; isolated vertices are dropped."""
        keep = set(keep)
        unknown = keep - self.edge_id_set
        if unknown:
            raise InputError(f"unknown edge ids in subgraph: {sorted(unknown)}")
        es = [e for e in self.edges if e.id in keep]
        vs = set()
        for e in es:
            vs.add(e.u)
            vs.add(e.v)
        return Multigraph(tuple(sorted(vs)), tuple(es))

    def contract_edges(self, contracted: Iterable[int]) -> tuple["Multigraph", ContractionMap]:
        """Identify the endpoints of every contracted edge.

        Surviving edges keep their ids; edges whose endpoints merge become
        loops and are retained.  Merged vertex classes are named by their
        smallest member.
        """
        contracted = set(contracted)
        unknown = contracted - self.edge_id_set
        if unknown:
            raise InputError(f"unknown edge ids in contraction: {sorted(unknown)}")

        parent = {v: v for v in self.vertex_ids}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra == rb:
                return
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra  # smaller id becomes the class representative

        for e in self.edges:
            if e.id in contracted:
                union(e.u, e.v)

        image = {v: find(v) for v in self.vertex_ids}
        new_vertices = sorted(set(image.values()))
        new_edges = []
        surviving: dict[int, int] = {}
        for e in self.edges:
            if e.id in contracted:
                continue
            u, v = image[e.u], image[e.v]
            if u > v:
                u, v = v, u
            new_edges.append(Edge(e.id, u, v))
            surviving[e.id] = e.id
        h = Multigraph(tuple(new_vertices), tuple(new_edges))
        return h, ContractionMap(image, surviving)


@dataclass(frozen=True)
class Orientation:
    """A tail/head choice for every edge of some multigraph."""

    direction: dict[int, tuple[int, int]]

    @staticmethod
    def reference(g: Multigraph) -> "Orientation":
        """The deterministic baseline: every edge points small id to large."""
        return Orientation({e.id: (e.u, e.v) for e in g.edges})

    def validate_for(self, g: Multigraph) -> None:
        if set(self.direction) != g.edge_id_set:
            raise InputError("orientation domain does not match the edge set")
        for e in g.edges:
            t, h = self.direction[e.id]
            if {t, h} != {e.u, e.v}:
                raise InputError(f"orientation of edge {e.id} is not a permutation of its endpoints")

    def with_flipped(self, flips: Iterable[int]) -> "Orientation":
        d = dict(self.direction)
        for eid in flips:
            t, h = d[eid]
            d[eid] = (h, t)
        return Orientation(d)

    def agrees(self, eid: int, tail: int, head: int) -> bool:
        return self.direction[eid] == (tail, head)


# -- bipartiteness -----------------------------------------------------


def is_bipartite(g: Multigraph) -> tuple[bool, Optional[frozenset[int]]]:
    """2-colorability; when false, also return one odd circuit's edge ids."""
    color: dict[int, int] = {}
    parent_edge: dict[int, Optional[Edge]] = {}
    parent: dict[int, Optional[int]] = {}

    for e in g.edges:
        if e.is_loop:
            return False, frozenset([e.id])

    for root in g.vertex_ids:
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        parent_edge[root] = None
        queue = [root]
        qi = 0
        while qi < len(queue):
            w = queue[qi]
            qi += 1
            for e in g.incidence[w]:
                x = e.other(w)
                if x not in color:
                    color[x] = color[w] ^ 1
                    parent[x] = w
                    parent_edge[x] = e
                    queue.append(x)
                elif color[x] == color[w]:
                    witness = _odd_circuit_from_conflict(w, x, e, parent, parent_edge)
                    return False, witness
    return True, None


def _odd_circuit_from_conflict(w, x, conflict_edge, parent, parent_edge) -> frozenset[int]:
    # Both BFS-tree paths to the lowest common ancestor plus the conflict
    # edge close an odd circuit (equal colors mean equal depth parities).
    ancestors = {}
    cur = w
    depth = 0
    while cur is not None:
        ancestors[cur] = depth
        cur = parent[cur]
        depth += 1
    cur = x
    path_x = []
    while cur not in ancestors:
        path_x.append(parent_edge[cur].id)
        cur = parent[cur]
    lca = cur
    edges = [conflict_edge.id]
    cur = w
    while cur != lca:
        edges.append(parent_edge[cur].id)
        cur = parent[cur]
    edges.extend(path_x)
    return frozenset(edges)


# -- 2-connectivity ----------------------------------------------------


def is_two_connected(g: Multigraph) -> bool:
    """Connected with no cutvertex.

    A 2-vertex multigraph counts as 2-connected exactly when at least two
    parallel edges join its vertices.  Single vertices are not 2-connected.
    """
    n = g.n_vertices
    if n == 0 or n == 1:
        return False
    if not g.is_connected():
        return False
    if n == 2:
        return sum(1 for e in g.edges if not e.is_loop) >= 2

    # Iterative Hopcroft-Tarjan lowpoint computation.  Parallel edges are
    # handled by skipping the tree edge by id, not the parent vertex.
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    timer = 0
    root = g.vertex_ids[0]
    stack: list[tuple[int, Optional[int], int]] = [(root, None, 0)]
    children_of_root = 0
    parent_of: dict[int, Optional[int]] = {root: None}
    tree_edge: dict[int, Optional[int]] = {root: None}
    order: list[int] = []

    while stack:
        v, via_edge, idx = stack.pop()
        if idx == 0:
            disc[v] = low[v] = timer
            timer += 1
            order.append(v)
        inc = g.incidence[v]
        advanced = False
        for i in range(idx, len(inc)):
            e = inc[i]
            if e.is_loop:
                continue
            x = e.other(v)
            if x not in disc:
                parent_of[x] = v
                tree_edge[x] = e.id
                if v == root:
                    children_of_root += 1
                stack.append((v, via_edge, i + 1))
                stack.append((x, e.id, 0))
                advanced = True
                break
            elif e.id != via_edge:
                low[v] = min(low[v], disc[x])
        if not advanced and parent_of.get(v) is not None:
            p = parent_of[v]
            low[p] = min(low[p], low[v])

    if len(disc) != n:
        return False
    if children_of_root >= 2:
        return False
    for v in order:
        p = parent_of[v]
        if p is None or p == root:
            continue
        if low[v] >= disc[p]:
            return False
    return True


# -- isomorphism -------------------------------------------------------


def _pair_multiplicities(g: Multigraph) -> dict[tuple[int, int], int]:
    mult: dict[tuple[int, int], int] = {}
    for e in g.edges:
        key = (e.u, e.v)
        mult[key] = mult.get(key, 0) + 1
    return mult


def _vertex_signature(g: Multigraph, mult) -> dict[int, tuple]:
    sig = {}
    for v in g.vertex_ids:
        loops = mult.get((v, v), 0)
        to_neighbors = sorted(
            m for (a, b), m in mult.items() if a != b and (a == v or b == v)
        )
        sig[v] = (g.degree(v), loops, tuple(to_neighbors))
    return sig


def find_isomorphism(g1: Multigraph, g2: Multigraph) -> Optional[dict[int, int]]:
    """A vertex bijection preserving edge multiplicities, or None.

    Exhaustive backtracking with degree-signature pruning; supported up to
    ISO_VERTEX_LIMIT vertices.
    """
    if g1.n_vertices > ISO_VERTEX_LIMIT or g2.n_vertices > ISO_VERTEX_LIMIT:
        raise CapabilityError(
            f"isomorphism supported up to {ISO_VERTEX_LIMIT} vertices"
        )
    if g1.n_vertices != g2.n_vertices or g1.n_edges != g2.n_edges:
        return None
    m1, m2 = _pair_multiplicities(g1), _pair_multiplicities(g2)
    s1, s2 = _vertex_signature(g1, m1), _vertex_signature(g2, m2)
    if sorted(s1.values()) != sorted(s2.values()):
        return None

    vs1 = sorted(g1.vertex_ids, key=lambda v: (s1[v], v))
    candidates = {v: [w for w in g2.vertex_ids if s2[w] == s1[v]] for v in vs1}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(vs1):
            return True
        v = vs1[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            if m1.get((v, v), 0) != m2.get((w, w), 0):
                ok = False
            if ok:
                for v2, w2 in mapping.items():
                    a, b = (v, v2) if v <= v2 else (v2, v)
                    c, d = (w, w2) if w <= w2 else (w2, w)
                    if m1.get((a, b), 0) != m2.get((c, d), 0):
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    if extend(0):
        return dict(mapping)
    return None


def isomorphic(g1: Multigraph, g2: Multigraph) -> bool:
    return find_isomorphism(g1, g2) is not None
