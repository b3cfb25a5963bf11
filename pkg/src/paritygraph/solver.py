"""Decide whether a multigraph can be oriented so every even circuit gets
its prescribed clockwise parity, producing an orientation or a certificate.

The decision reduces to a GF(2) linear system: one variable per edge lying
on an even circuit, one equation per even circuit whose right-hand side
says whether the reference orientation already gives the prescribed
parity.  Reorienting the edges of any solution fixes every even circuit at
once; an inconsistency names a dependent set of circuits that no
orientation can satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from . import gf2
from .circuits import (
    DEFAULT_CIRCUIT_CAP,
    Circuit,
    Parity,
    circuit_from_edges,
    clockwise_parity,
    even_circuits,
)
from .errors import InputError
from .graphs import Multigraph, Orientation


@dataclass(frozen=True)
class ParityAssignment:
    """The map from even circuits to target clockwise parities.

    ``kind`` is "all-odd", "all-even" or "explicit".  Explicit assignments
    map circuit edge-id sets to parities and must cover every even circuit
    of the graph they are solved against, unless a default parity is set.
    """

    kind: str
    explicit: Optional[Mapping[frozenset[int], Parity]] = None
    default: Optional[Parity] = None

    @staticmethod
    def all_odd() -> "ParityAssignment":
        return ParityAssignment("all-odd")

    @staticmethod
    def all_even() -> "ParityAssignment":
        return ParityAssignment("all-even")

    @staticmethod
    def from_map(
        mapping: Mapping[frozenset[int], Parity], default: Optional[Parity] = None
    ) -> "ParityAssignment":
        for key in mapping:
            if len(key) % 2:
                raise InputError(f"assignment key {sorted(key)} has odd cardinality")
        return ParityAssignment("explicit", dict(mapping), default)

    def parity_for(self, circuit: Circuit) -> Parity:
        if self.kind == "all-odd":
            return Parity.ODD
        if self.kind == "all-even":
            return Parity.EVEN
        assert self.explicit is not None
        value = self.explicit.get(circuit.edge_set)
        if value is None:
            value = self.default
        if value is None:
            raise InputError(
                f"assignment does not cover even circuit {list(circuit.edge_ids)}"
            )
        return value


@dataclass(frozen=True)
class IntractableCertificate:
    """Even circuits with empty symmetric difference whose observed
    clockwise-even count parity differs from the prescribed one."""

    circuits: tuple[Circuit, ...]
    observed_even_count_parity: Parity
    prescribed_even_count_parity: Parity


def build_system(
    g: Multigraph,
    j: ParityAssignment,
    base: Orientation,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> tuple[gf2.Gf2Matrix, tuple[int, ...], tuple[Circuit, ...], tuple[int, ...]]:
    """The even-circuit constraint system.

    Returns (matrix, rhs, circuits, columns): row i is the incidence vector
    of circuits[i] over ``columns`` (the edges lying on even circuits), and
    rhs[i] is 1 iff the base orientation disagrees with the assignment.
    """
    circs = even_circuits(g, cap)
    cols = sorted({eid for c in circs for eid in c.edge_ids})
    col_index = {eid: i for i, eid in enumerate(cols)}
    masks = []
    rhs = []
    for c in circs:
        bits = 0
        for eid in c.edge_ids:
            bits |= 1 << col_index[eid]
        masks.append(bits)
        rhs.append(1 if clockwise_parity(base, c) != j.parity_for(c) else 0)
    return gf2.Gf2Matrix.from_bitmasks(masks, len(cols)), tuple(rhs), circs, tuple(cols)


def _minimal_odd_combination(
    a: gf2.Gf2Matrix, rhs: tuple[int, ...], seed: frozenset[int]
) -> frozenset[int]:
    """Smallest row set summing to zero with odd rhs sum, best effort.

    With few independent dependencies the search is exhaustive, so the
    result is a true minimum; otherwise a greedy descent from the seed.
    """
    basis = gf2.left_nullspace_basis(a)
    d = len(basis)
    if d <= gf2.EXHAUSTIVE_NULLSPACE_DIM:
        packed = []
        for s in basis:
            bits = 0
            for i in s:
                bits |= 1 << i
            packed.append(bits)
        best: Optional[frozenset[int]] = None
        for mask in range(1, 1 << d):
            bits = 0
            for k in range(d):
                if (mask >> k) & 1:
                    bits ^= packed[k]
            rows = [i for i in range(a.n_rows) if (bits >> i) & 1]
            if sum(rhs[i] for i in rows) % 2 == 0:
                continue
            cand = frozenset(rows)
            if best is None or (len(cand), sorted(cand)) < (len(best), sorted(best)):
                best = cand
        assert best is not None
        return best

    current = set(seed)
    improved = True
    while improved:
        improved = False
        for s in basis:
            cand = current ^ s
            if cand and sum(rhs[i] for i in cand) % 2 == 1 and len(cand) < len(current):
                current = cand
                improved = True
    return frozenset(current)


def decide(
    g: Multigraph, j: ParityAssignment, cap: int = DEFAULT_CIRCUIT_CAP
) -> Union[Orientation, IntractableCertificate]:
    """A compatible orientation, or a certificate that none exists.

    Edges on no even circuit keep the reference direction.  Certificates
    are shrunk to the smallest dependent circuit set the solver can find.
    """
    base = Orientation.reference(g)
    a, rhs, circs, cols = build_system(g, j, base, cap)
    if not circs:
        return base  # no even circuits: vacuously compatible
    result = gf2.solve(a, rhs)
    if isinstance(result, gf2.Inconsistency):
        rows = _minimal_odd_combination(a, rhs, result.row_combination)
        chosen = tuple(circs[i] for i in sorted(rows))
        observed = sum(
            1 for c in chosen if clockwise_parity(base, c) == Parity.EVEN
        ) % 2
        prescribed = sum(1 for c in chosen if j.parity_for(c) == Parity.EVEN) % 2
        return IntractableCertificate(chosen, Parity(observed), Parity(prescribed))
    flips = [cols[i] for i, bit in enumerate(result) if bit]
    return base.with_flipped(flips)


def verify_orientation(
    g: Multigraph,
    j: ParityAssignment,
    o: Orientation,
    cap: int = DEFAULT_CIRCUIT_CAP,
) -> Optional[Circuit]:
    """None when every even circuit has its prescribed parity, else the
    first violating circuit in enumeration order."""
    o.validate_for(g)
    for c in even_circuits(g, cap):
        if clockwise_parity(o, c) != j.parity_for(c):
            return c
    return None


def is_intractable_set(
    g: Multigraph, j: ParityAssignment, circuits: Iterable[frozenset[int] | Circuit]
) -> bool:
    """Empty symmetric difference plus a parity mismatch against ``j``.

    The observed count parity is evaluated under the reference orientation;
    for a dependent set it does not depend on that choice, because
    reorienting one edge flips the parity of an even number of members.
    """
    circs: list[Circuit] = []
    for item in circuits:
        edge_ids = item.edge_set if isinstance(item, Circuit) else frozenset(item)
        c = circuit_from_edges(g, edge_ids)  # raises InputError if not a circuit
        if not c.is_even:
            raise InputError(f"circuit {sorted(edge_ids)} is odd")
        circs.append(c)
    if not circs:
        return False
    sym: set[int] = set()
    for c in circs:
        sym ^= c.edge_set
    if sym:
        return False
    base = Orientation.reference(g)
    observed = sum(1 for c in circs if clockwise_parity(base, c) == Parity.EVEN) % 2
    prescribed = sum(1 for c in circs if j.parity_for(c) == Parity.EVEN) % 2
    return observed != prescribed


def certificate_is_valid(
    g: Multigraph, j: ParityAssignment, cert: IntractableCertificate
) -> bool:
    """Re-check a certificate's invariants from scratch."""
    if not is_intractable_set(g, j, cert.circuits):
        return False
    base = Orientation.reference(g)
    observed = sum(
        1 for c in cert.circuits if clockwise_parity(base, c) == Parity.EVEN
    ) % 2
    prescribed = sum(1 for c in cert.circuits if j.parity_for(c) == Parity.EVEN) % 2
    return (
        Parity(observed) == cert.observed_even_count_parity
        and Parity(prescribed) == cert.prescribed_even_count_parity
    )
