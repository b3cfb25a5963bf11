import itertools

from paritygraph import (
    IntractableCertificate,
    Parity,
    ParityAssignment,
    decide,
    even_circuits,
    isomorphic,
)
from paritygraph.catalog import (
    CATALOG_NAMES,
    EVEN_CIRCUIT_COUNT,
    PARITY_RULE,
    WITNESS_BASES,
    base_graph,
    catalog,
    catalog_selfcheck,
)

from conftest import k23, k4, triple_edge


def test_selfcheck_passes():
    report = catalog_selfcheck()
    assert report.ok
    assert len(report.checks) > 25


def test_all_fixtures_load():
    cat = catalog()
    assert set(cat) == set(CATALOG_NAMES)


def test_named_constructions():
    assert isomorphic(base_graph("O1"), k23())
    assert isomorphic(base_graph("E2"), k4())
    assert isomorphic(base_graph("E1"), triple_edge())


def test_even_circuit_counts():
    for name, count in EVEN_CIRCUIT_COUNT.items():
        assert len(even_circuits(base_graph(name))) == count


def _pattern(name):
    g = base_graph(name)
    evens = even_circuits(g)
    incompatible_parities = set()
    for bits in itertools.product([Parity.ODD, Parity.EVEN], repeat=len(evens)):
        j = ParityAssignment.from_map(dict(zip((c.edge_set for c in evens), bits)))
        if isinstance(decide(g, j), IntractableCertificate):
            incompatible_parities.add(sum(1 for p in bits if p == Parity.EVEN) % 2)
    return incompatible_parities


def test_o_family_incompatible_iff_even_count_prescribed():
    assert _pattern("O1") == {0}
    assert _pattern("O2") == {0}


def test_e_family_incompatible_iff_odd_count_prescribed():
    for name in ("E1", "E2", "E3"):
        assert _pattern(name) == {1}


def test_delta_family_incompatible_iff_odd_count_prescribed():
    for name in ("D1", "D2", "D3", "D4"):
        assert _pattern(name) == {1}


def test_parity_rule_table_matches_behaviour():
    for name in WITNESS_BASES:
        assert _pattern(name) == {int(PARITY_RULE[name])}
