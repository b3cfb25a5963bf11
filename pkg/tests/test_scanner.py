import itertools
import random

import pytest

from paritygraph import (
    IntractableCertificate,
    Multigraph,
    Parity,
    ParityAssignment,
    decide,
    even_circuits,
)
from paritygraph.catalog import base_graph
from paritygraph.errors import ResourceLimitError
from paritygraph.scanner import (
    find_witness,
    scan_all_even,
    scan_all_odd,
    verify_witness,
    witness_candidates,
)
from paritygraph.transforms import is_even_splitting_of, subdivide_edge_twice

from conftest import k23, k4, square, triple_edge


def test_k23_all_odd_witness_is_direct_o1():
    g = k23()
    w = find_witness(g, ParityAssignment.all_odd())
    assert w is not None
    assert w.base_name == "O1"
    assert w.splitting_trace.steps == ()
    assert w.odd_circuit_contracted is None
    assert verify_witness(g, ParityAssignment.all_odd(), w)


def test_square_never_has_a_witness():
    g = square()
    for j in (ParityAssignment.all_odd(), ParityAssignment.all_even()):
        assert find_witness(g, j) is None


def test_k4_all_even_witness():
    g = k4()
    w = find_witness(g, ParityAssignment.all_even())
    assert w is not None and w.base_name in ("E1", "E2")
    assert verify_witness(g, ParityAssignment.all_even(), w)


def test_scan_all_odd_examples():
    assert scan_all_odd(k23()) is not None
    # K4 has no all-odd witness and the solver agrees
    assert scan_all_odd(k4()) is None
    assert not isinstance(decide(k4(), ParityAssignment.all_odd()), IntractableCertificate)


def test_scan_all_odd_o2_via_triangle_contraction():
    o2 = base_graph("O2")
    w = scan_all_odd(o2)
    assert w is not None
    assert w.base_name == "O1"
    assert w.odd_circuit_contracted is not None
    assert len(w.odd_circuit_contracted) == 3
    assert verify_witness(o2, ParityAssignment.all_odd(), w)


def test_scan_all_even_examples():
    assert scan_all_even(triple_edge()) is not None
    assert scan_all_even(k23()) is None
    w = scan_all_even(k4())
    assert w is not None and w.base_name == "E1"
    assert w.odd_circuit_contracted is not None  # a contracted triangle
    assert verify_witness(k4(), ParityAssignment.all_even(), w)


def test_delta_fixtures_produce_delta_witnesses():
    for name in ("D1", "D2", "D3", "D4"):
        g = base_graph(name)
        evens = even_circuits(g)
        j = ParityAssignment.from_map(
            {c.edge_set: (Parity.EVEN if i == 0 else Parity.ODD) for i, c in enumerate(evens)}
        )
        assert isinstance(decide(g, j), IntractableCertificate)
        w = find_witness(g, j)
        assert w is not None and w.base_name == name
        assert verify_witness(g, j, w)


def test_splitting_of_d4_is_caught():
    g = subdivide_edge_twice(base_graph("D4"), 1)
    evens = even_circuits(g)
    j = ParityAssignment.from_map(
        {c.edge_set: (Parity.EVEN if i == 0 else Parity.ODD) for i, c in enumerate(evens)}
    )
    incompatible = isinstance(decide(g, j), IntractableCertificate)
    w = find_witness(g, j)
    assert incompatible == (w is not None)
    if w is not None:
        assert w.base_name == "D4"
        assert verify_witness(g, j, w)


def test_witness_iff_incompatible_on_small_corpus(small_corpus):
    rng = random.Random(2)
    for g in small_corpus[::6]:
        evens = even_circuits(g)
        js = [ParityAssignment.all_odd(), ParityAssignment.all_even()]
        if evens:
            js.append(
                ParityAssignment.from_map(
                    {c.edge_set: Parity(rng.randrange(2)) for c in evens}
                )
            )
        for j in js:
            incompatible = isinstance(decide(g, j), IntractableCertificate)
            w = find_witness(g, j)
            assert (w is not None) == incompatible
            if w is not None:
                assert verify_witness(g, j, w)


def test_specialised_scans_agree_with_general_scan(small_corpus):
    for g in small_corpus[::15]:
        wo = scan_all_odd(g)
        wg = find_witness(g, ParityAssignment.all_odd())
        assert (wo is None) == (wg is None)
        we = scan_all_even(g)
        wge = find_witness(g, ParityAssignment.all_even())
        assert (we is None) == (wge is None)


def test_budget_is_enforced():
    with pytest.raises(ResourceLimitError):
        witness_candidates.__wrapped__(k4(), 3, 100_000)


def test_theta_parity_patterns_match_splitting_detector():
    # a theta graph is a splitting of O1 iff all three path lengths are
    # even, and of E1 iff all three are odd
    def theta(a, b, c):
        pairs = []
        nxt = 3

        def path(length):
            nonlocal nxt
            seq = [1] + [nxt + i for i in range(length - 1)] + [2]
            nxt += length - 1
            return list(zip(seq, seq[1:]))

        for L in (a, b, c):
            pairs.extend(path(L))
        return Multigraph.from_pairs(pairs)

    for a, b, c in itertools.combinations_with_replacement(range(1, 7), 3):
        if a == 1 and b == 1 and c == 1:
            g = triple_edge()
        else:
            g = theta(a, b, c)
        all_even = a % 2 == 0 and b % 2 == 0 and c % 2 == 0
        all_odd = a % 2 == 1 and b % 2 == 1 and c % 2 == 1
        limit = 2 + a + b + c
        assert (
            is_even_splitting_of(g, base_graph("O1"), vertex_limit=limit) is not None
        ) == all_even, (a, b, c)
        assert (
            is_even_splitting_of(g, base_graph("E1"), vertex_limit=limit) is not None
        ) == all_odd, (a, b, c)


def _random_vertex_splitting(g, rng):
    """One even vertex splitting: replace a vertex of degree >= 4 by two
    vertices joined through a fresh degree-2 vertex, edges distributed."""
    candidates = [v for v in g.vertex_ids if g.degree(v) >= 4]
    if not candidates:
        return None
    v = rng.choice(candidates)
    inc = [e for e in g.incidence[v]]
    rng.shuffle(inc)
    cut = rng.randrange(1, len(inc))
    keep, move = inc[:cut], inc[cut:]
    v2 = max(g.vertex_ids) + 1
    mid = v2 + 1
    m = max(e.id for e in g.edges)
    edges = []
    for e in g.edges:
        if e in move:
            u = e.other(v) if not e.is_loop else v2
            edges.append((e.id, v2, u))
        else:
            edges.append((e.id, e.u, e.v))
    edges += [(m + 1, v, mid), (m + 2, mid, v2)]
    return Multigraph.build(list(g.vertex_ids) + [v2, mid], edges)


def test_vertex_splittings_of_delta_bases_are_caught():
    # degree-4 vertices make these splittings that are not subdivisions
    rng = random.Random(31)
    for name in ("D3", "D4"):
        g = base_graph(name)
        for _ in range(4):
            h = _random_vertex_splitting(g, rng)
            assert h is not None
            evens = even_circuits(h)
            j = ParityAssignment.from_map(
                {c.edge_set: (Parity.EVEN if i == 0 else Parity.ODD) for i, c in enumerate(evens)}
            )
            incompatible = isinstance(decide(h, j), IntractableCertificate)
            w = find_witness(h, j)
            assert (w is not None) == incompatible
            if w is not None:
                assert verify_witness(h, j, w)


def test_witness_subgraph_is_edge_minimal_among_candidates():
    # the first witness comes from the subset enumeration in ascending
    # size, so no strictly smaller subset can carry a witness
    g = Multigraph.from_pairs(
        [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (1, 2)]
    )  # K_{2,3} plus an extra edge
    w = find_witness(g, ParityAssignment.all_odd())
    assert w is not None
    assert len(w.subgraph_edges) == 6
