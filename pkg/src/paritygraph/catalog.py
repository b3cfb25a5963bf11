"""The minimal-obstruction catalog and its transcription self-check.

Fourteen small multigraphs are shipped as data files.  Nine of them (O1,
O2, E1, E2, E3, D1..D4) are the bases the witness scanner matches
against; A1..A5 are the extra shapes a first-stage 2-arc adjunction can
produce in an arc decomposition.  The drawings behind the D and A entries
were transcribed from the source material's figures via the structural
constraints they must satisfy, and catalog_selfcheck verifies every one
of those constraints by direct computation, so a bad transcription cannot
go unnoticed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations, product

from . import fileio
from .circuits import Parity, even_circuits
from .errors import FixtureError
from .gf2 import Gf2Matrix, nullspace_combinations
from .graphs import Multigraph, isomorphic
from .solver import IntractableCertificate, ParityAssignment, decide

CATALOG_NAMES = (
    "O1", "O2", "E1", "E2", "E3",
    "D1", "D2", "D3", "D4",
    "A1", "A2", "A3", "A4", "A5",
)

#: bases eligible as incompatibility witnesses, in deterministic scan order
WITNESS_BASES = ("O1", "O2", "E1", "E2", "E3", "D1", "D2", "D3", "D4")

#: shapes a non-bipartite decomposition's first 2-arc stage may take
ADJUNCTION_BASES = ("O1", "O2", "E1", "E2", "E3", "A1", "A2", "A3", "A4", "A5")

EVEN_CIRCUIT_COUNT = {
    "O1": 3, "O2": 3, "E1": 3, "E2": 3, "E3": 3,
    "D1": 4, "D2": 4, "D3": 4, "D4": 4,
}

#: a base certifies incompatibility when the number of its even circuits
#: prescribed clockwise-even has this parity
PARITY_RULE = {
    "O1": Parity.EVEN, "O2": Parity.EVEN,
    "E1": Parity.ODD, "E2": Parity.ODD, "E3": Parity.ODD,
    "D1": Parity.ODD, "D2": Parity.ODD, "D3": Parity.ODD, "D4": Parity.ODD,
}


@lru_cache(maxsize=1)
def catalog() -> dict[str, Multigraph]:
    out = {}
    for name in CATALOG_NAMES:
        text = (
            resources.files("paritygraph").joinpath(f"fixtures/{name}.graph").read_text()
        )
        out[name] = fileio.parse_graph(text)
    return out


def base_graph(name: str) -> Multigraph:
    return catalog()[name]


@dataclass(frozen=True)
class SelfcheckReport:
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)


def _k4() -> Multigraph:
    return Multigraph.from_pairs([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


def _k23() -> Multigraph:
    return Multigraph.from_pairs([(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])


def _unique_full_dependency(g: Multigraph) -> bool:
    evens = even_circuits(g)
    cols = sorted({eid for c in evens for eid in c.edge_ids})
    idx = {eid: i for i, eid in enumerate(cols)}
    masks = []
    for c in evens:
        b = 0
        for eid in c.edge_ids:
            b |= 1 << idx[eid]
        masks.append(b)
    deps = nullspace_combinations(Gf2Matrix.from_bitmasks(masks, len(cols)))
    return deps == [frozenset(range(len(evens)))]


def _incompatibility_pattern_matches(name: str, g: Multigraph) -> bool:
    evens = even_circuits(g)
    rule = PARITY_RULE[name]
    for bits in product([Parity.ODD, Parity.EVEN], repeat=len(evens)):
        j = ParityAssignment.from_map(dict(zip((c.edge_set for c in evens), bits)))
        incompatible = isinstance(decide(g, j), IntractableCertificate)
        prescribed_even = sum(1 for p in bits if p == Parity.EVEN) % 2
        if incompatible != (Parity(prescribed_even) == rule):
            return False
    return True


def catalog_selfcheck() -> SelfcheckReport:
    """Verify every catalog invariant by direct computation.

    Raises FixtureError naming the first failed entry, and also returns
    the full report when everything passes.
    """
    cat = catalog()
    checks: list[tuple[str, bool]] = []

    def check(label: str, passed: bool) -> None:
        checks.append((label, passed))
        if not passed:
            raise FixtureError(f"catalog selfcheck failed: {label}")

    check("O1 is K_{2,3}", isomorphic(cat["O1"], _k23()))
    check("E1 is the triple edge", cat["E1"].n_vertices == 2
          and cat["E1"].n_edges == 3
          and all(not e.is_loop for e in cat["E1"].edges))
    check("E2 is K4", isomorphic(cat["E2"], _k4()))

    # O2: subdivide once every K4 edge at one fixed vertex.  A single
    # subdivision is half of subdivide_edge_twice; build it directly.
    k4 = _k4()
    o2 = k4
    fresh_v = 5
    for eid in [e.id for e in k4.edges if 4 in (e.u, e.v)]:
        e = o2.by_id[eid]
        edges = [(x.id, x.u, x.v) for x in o2.edges if x.id != eid]
        m = max(x.id for x in o2.edges)
        edges += [(m + 1, e.u, fresh_v), (m + 2, fresh_v, e.v)]
        o2 = Multigraph.build(list(o2.vertex_ids) + [fresh_v], edges)
        fresh_v += 1
    check("O2 arises from K4 by subdividing the edges at one vertex",
          isomorphic(cat["O2"], o2))

    e3 = k4
    fresh_v = 5
    for eid in [1, 4, 6, 3]:  # the 4-circuit 1-2, 2-3, 3-4, 4-1 of _k4()
        e = e3.by_id[eid]
        edges = [(x.id, x.u, x.v) for x in e3.edges if x.id != eid]
        m = max(x.id for x in e3.edges)
        edges += [(m + 1, e.u, fresh_v), (m + 2, fresh_v, e.v)]
        e3 = Multigraph.build(list(e3.vertex_ids) + [fresh_v], edges)
        fresh_v += 1
    check("E3 arises from K4 by subdividing a fixed even circuit once",
          isomorphic(cat["E3"], e3))

    for name, expected in EVEN_CIRCUIT_COUNT.items():
        check(f"{name} has exactly {expected} even circuits",
              len(even_circuits(cat[name])) == expected)

    # D2..D4 arise from D1 by contracting edges
    d1 = cat["D1"]
    for name in ("D2", "D3", "D4"):
        found = False
        for k in range(1, 4):
            for ids in combinations(sorted(d1.edge_id_set), k):
                contracted, _ = d1.contract_edges(set(ids))
                if (contracted.n_edges == cat[name].n_edges
                        and isomorphic(contracted, cat[name])):
                    found = True
                    break
            if found:
                break
        check(f"{name} arises from D1 by contracting edges", found)

    for name in ("D1", "D2", "D3", "D4"):
        check(f"{name}: the four even circuits form the only dependent set",
              _unique_full_dependency(cat[name]))

    for name in WITNESS_BASES:
        check(f"{name} incompatible exactly per its parity rule",
              _incompatibility_pattern_matches(name, cat[name]))

    # contraction relations within the O/E families
    o2g = cat["O2"]
    triangle = None
    from .circuits import enumerate_circuits
    for c in enumerate_circuits(o2g):
        if len(c) == 3:
            triangle = c.edge_set
            break
    contracted, _ = o2g.contract_edges(triangle)
    check("contracting the triangle in O2 gives O1", isomorphic(contracted, _k23()))
    e2g = cat["E2"]
    for c in enumerate_circuits(e2g):
        if len(c) == 3:
            triangle = c.edge_set
            break
    contracted, _ = e2g.contract_edges(triangle)
    check("contracting a triangle in E2 gives E1", isomorphic(contracted, cat["E1"]))

    # A-entries: each is the union of its two even circuits, is
    # even-circuit-connected and contains an odd circuit, as a first-stage
    # 2-arc adjunction must be
    from .circuits import is_even_circuit_connected
    from .graphs import is_bipartite
    for name in ("A1", "A2", "A3", "A4", "A5"):
        g = cat[name]
        ev = even_circuits(g)
        union = set()
        for c in ev:
            union |= c.edge_set
        check(f"{name} is the union of its two even circuits",
              len(ev) == 2 and union == set(g.edge_id_set))
        check(f"{name} is even-circuit-connected and non-bipartite",
              is_even_circuit_connected(g) and not is_bipartite(g)[0])

    return SelfcheckReport(tuple(checks))
