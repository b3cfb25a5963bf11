"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.  The heavy corpora are
session fixtures shared between criteria.
"""

from __future__ import annotations

import itertools
import random
import time

import numpy as np
import pytest

from paritygraph import (
    IntractableCertificate,
    Multigraph,
    Orientation,
    Parity,
    ParityAssignment,
    clockwise_parity,
    decide,
    even_circuits,
)
from paritygraph.arcdecomp import decompose, validate
from paritygraph.catalog import (
    ADJUNCTION_BASES,
    EVEN_CIRCUIT_COUNT,
    PARITY_RULE,
    WITNESS_BASES,
    base_graph,
    catalog_selfcheck,
)
from paritygraph.circuits import is_even_circuit_connected
from paritygraph.cli import main
from paritygraph.corpus import connected_multigraphs, random_connected_multigraph
from paritygraph.fileio import emit_graph, parse_graph
from paritygraph.graphs import find_isomorphism, is_bipartite
from paritygraph.pfaffian import (
    alternating_circuits,
    enumerate_perfect_matchings,
    find_pfaffian_orientation,
    kasteleyn_count,
)
from paritygraph.scanner import (
    _reduced_parity_form,
    find_witness,
    scan_all_even,
    scan_all_odd,
    verify_witness,
)
from paritygraph.solver import certificate_is_valid

SEED = 20250810
_PARITY8 = np.array([bin(i).count("1") & 1 for i in range(256)], dtype=np.uint8)


def _report(number: int, name: str, started: float) -> None:
    print(f"\nACCEPTANCE {number} ({name}): PASS  [{time.time() - started:.1f}s]")


@pytest.fixture(scope="session")
def corpus():
    return connected_multigraphs(5, 8)


@pytest.fixture(scope="session")
def random_corpus():
    rng = random.Random(SEED)
    out = []
    for _ in range(200):
        n = rng.choice([7, 8])
        m = n + rng.randrange(1, 5)
        out.append(random_connected_multigraph(rng, n, m))
    return out


def _assignments_for(g, rng, count):
    evens = even_circuits(g)
    js = [ParityAssignment.all_odd(), ParityAssignment.all_even()]
    for _ in range(count):
        if evens:
            js.append(
                ParityAssignment.from_map(
                    {c.edge_set: Parity(rng.randrange(2)) for c in evens}
                )
            )
    return js


def _brute_force_compatible(g, j) -> bool:
    """Vectorised search over all 2^|E| orientations."""
    evens = even_circuits(g)
    if not evens:
        return True
    m = g.n_edges
    bit_of = {e.id: i for i, e in enumerate(g.edges)}
    base = Orientation.reference(g)
    flips = np.arange(1 << m, dtype=np.uint32)
    rows = []
    targets = []
    for c in evens:
        mask = 0
        for eid in c.edge_ids:
            mask |= 1 << bit_of[eid]
        p0 = int(clockwise_parity(base, c))
        acc = np.zeros(1 << m, dtype=np.uint8)
        masked = flips & np.uint32(mask)
        # popcount parity byte by byte
        acc ^= _PARITY8[masked & 0xFF]
        if m > 8:
            acc ^= _PARITY8[(masked >> 8) & 0xFF]
        rows.append(acc ^ p0)
        targets.append(int(j.parity_for(c)))
    parities = np.vstack(rows)
    t = np.array(targets, dtype=np.uint8)[:, None]
    return bool(np.any(np.all(parities == t, axis=0)))


def test_criterion_1_oracle_equivalence(corpus):
    started = time.time()
    for gi, g in enumerate(corpus):
        rng = random.Random(SEED * 1000 + gi)
        for j in _assignments_for(g, rng, 5):
            fast = isinstance(decide(g, j), Orientation)
            slow = _brute_force_compatible(g, j)
            assert fast == slow, (gi, [(e.id, e.u, e.v) for e in g.edges], j.kind)
    _report(1, "solver equals orientation brute force", started)


def test_criterion_2_catalog_fixtures():
    started = time.time()
    report = catalog_selfcheck()
    assert report.ok
    for name in WITNESS_BASES:
        g = base_graph(name)
        evens = even_circuits(g)
        assert len(evens) == EVEN_CIRCUIT_COUNT[name]
        for bits in itertools.product([Parity.ODD, Parity.EVEN], repeat=len(evens)):
            j = ParityAssignment.from_map(dict(zip((c.edge_set for c in evens), bits)))
            incompatible = isinstance(decide(g, j), IntractableCertificate)
            prescribed_even = Parity(sum(1 for p in bits if p == Parity.EVEN) % 2)
            assert incompatible == (prescribed_even == PARITY_RULE[name]), (name, bits)
    _report(2, "catalog incompatibility patterns", started)


def test_criterion_3_witness_iff_incompatible(corpus, random_corpus):
    started = time.time()
    for gi, g in enumerate(itertools.chain(corpus, random_corpus)):
        rng = random.Random(SEED * 2000 + gi)
        for j in _assignments_for(g, rng, 3):
            incompatible = isinstance(decide(g, j), IntractableCertificate)
            w = find_witness(g, j)
            assert (w is not None) == incompatible, (
                gi, [(e.id, e.u, e.v) for e in g.edges], j.kind,
            )
            if w is not None:
                assert verify_witness(g, j, w), (gi, j.kind)
    _report(3, "witness scan equals solver verdict", started)


def test_criterion_4_all_odd_scan(corpus, random_corpus):
    started = time.time()
    for g in itertools.chain(corpus, random_corpus):
        incompatible = isinstance(
            decide(g, ParityAssignment.all_odd()), IntractableCertificate
        )
        w = scan_all_odd(g)
        assert (w is not None) == incompatible, [(e.id, e.u, e.v) for e in g.edges]
        if w is not None:
            assert verify_witness(g, ParityAssignment.all_odd(), w)
    w = scan_all_odd(base_graph("O1"))
    assert w is not None and w.base_name == "O1" and w.odd_circuit_contracted is None
    w = scan_all_odd(base_graph("O2"))
    assert w is not None and w.base_name == "O1" and w.odd_circuit_contracted is not None
    _report(4, "all-odd scan equals solver, K23 and O2 witnessed", started)


def test_criterion_5_all_even_scan(corpus, random_corpus):
    started = time.time()
    for g in itertools.chain(corpus, random_corpus):
        incompatible = isinstance(
            decide(g, ParityAssignment.all_even()), IntractableCertificate
        )
        w = scan_all_even(g)
        assert (w is not None) == incompatible, [(e.id, e.u, e.v) for e in g.edges]
        if w is not None:
            assert verify_witness(g, ParityAssignment.all_even(), w)
    assert scan_all_even(base_graph("E1")) is not None
    w = scan_all_even(base_graph("E2"))
    assert w is not None and w.base_name == "E1"
    _report(5, "all-even scan equals solver, E1 and K4 witnessed", started)


def test_criterion_6_arc_decomposition(corpus, random_corpus):
    started = time.time()
    checked = bip_count = nonbip_count = 0
    for g in itertools.chain(corpus, random_corpus):
        if g.n_edges == 0 or g.has_isolated_vertices():
            continue
        if not is_even_circuit_connected(g):
            continue
        checked += 1
        d = decompose(g)
        assert validate(g, d) is None, [(e.id, e.u, e.v) for e in g.edges]
        bip, _ = is_bipartite(g)
        two_arc_stages = [i for i, a in enumerate(d.adjunctions, 1) if len(a.arcs) == 2]
        if bip:
            bip_count += 1
            assert not two_arc_stages
        else:
            nonbip_count += 1
            assert two_arc_stages == [1]
            g1 = g.subgraph(d.stages[1])
            reduced = _reduced_parity_form(g1)
            assert reduced is not None
            assert any(
                find_isomorphism(reduced, base_graph(name)) is not None
                for name in ADJUNCTION_BASES
            ), [(e.id, e.u, e.v) for e in g.edges]
    assert checked > 50 and bip_count > 0 and nonbip_count > 0
    _report(6, f"arc decompositions valid on {checked} graphs", started)


def test_criterion_7_certificate_soundness(corpus):
    started = time.time()
    rng = random.Random(SEED * 77)
    checked = 0
    for gi, g in enumerate(corpus):
        jrng = random.Random(SEED * 1000 + gi)
        for j in _assignments_for(g, jrng, 2):
            r = decide(g, j)
            if not isinstance(r, IntractableCertificate):
                continue
            checked += 1
            assert certificate_is_valid(g, j, r)
            sym = 0
            bit_of = {e.id: i for i, e in enumerate(g.edges)}
            for c in r.circuits:
                mask = 0
                for eid in c.edge_ids:
                    mask |= 1 << bit_of[eid]
                sym ^= mask
            assert sym == 0
            ids = [e.id for e in g.edges]
            for _ in range(10):
                o = Orientation.reference(g).with_flipped(
                    [i for i in ids if rng.random() < 0.5]
                )
                observed = sum(
                    1 for c in r.circuits if clockwise_parity(o, c) == Parity.EVEN
                ) % 2
                assert Parity(observed) == r.observed_even_count_parity
    assert checked > 500
    _report(7, f"{checked} certificates re-verified", started)


def test_criterion_8_pfaffian_counts():
    started = time.time()

    def grid(rows, cols):
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

    square = Multigraph.from_pairs([(1, 2), (2, 3), (3, 4), (4, 1)])
    for g, expected in ((square, 2), (grid(2, 3), 3), (grid(4, 4), 36)):
        o = find_pfaffian_orientation(g)
        assert isinstance(o, Orientation)
        assert kasteleyn_count(g, o) == expected
        assert len(enumerate_perfect_matchings(g)) == expected

    k33 = Multigraph.from_pairs(
        [(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)]
    )
    r = find_pfaffian_orientation(k33)
    assert isinstance(r, IntractableCertificate)
    alts = alternating_circuits(k33)
    base = Orientation.reference(k33)
    ids = [e.id for e in k33.edges]
    for flips in itertools.product([0, 1], repeat=9):
        o = base.with_flipped([i for i, f in zip(ids, flips) if f])
        assert not all(clockwise_parity(o, c) == Parity.ODD for c in alts)
    _report(8, "matching counts 2/3/36 and K33 refuted by brute force", started)


def test_criterion_9_cli_determinism(tmp_path, capsys):
    started = time.time()
    graphs = {
        "k23": base_graph("O1"),
        "k4": base_graph("E2"),
        "o2": base_graph("O2"),
        "d1": base_graph("D1"),
    }
    outputs = {}
    for rounds in range(2):
        for name, g in graphs.items():
            gpath = tmp_path / f"{name}.graph"
            gpath.write_text(emit_graph(g))
            apath = tmp_path / "a.j"
            apath.write_text("j-all odd\n")
            for argv in (
                ["check", str(gpath), str(apath)],
                ["scan", str(gpath), "--all-odd"],
                ["scan", str(gpath), "--all-even"],
                ["decompose", str(gpath)],
                ["pfaffian", str(gpath)],
            ):
                code = main(argv)
                out = capsys.readouterr().out
                key = (name, tuple(argv[:1]), tuple(argv[1:]))
                if rounds == 0:
                    outputs[key] = (code, out)
                else:
                    assert outputs[key] == (code, out), key
    # canonical round trip on every fixture file
    from paritygraph.catalog import catalog

    for name, g in catalog().items():
        canonical = emit_graph(g)
        assert emit_graph(parse_graph(canonical)) == canonical
    _report(9, "CLI byte determinism and canonical round trips", started)
