"""
Long A-Cycles
Pigeonhole gluing of disjoint A-cycles through connector paths, and the
extraction pipeline that produces a verified cycle of value in A and length >= d.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from glarb.abelian import INFINITE
from glarb.arboricity import arb_exact, disjoint_a_cycles
from glarb.bounds import g_omega
from glarb.certificates import CycleCert, assemble_walk, verify_cycle
from glarb.errors import InputConsistencyError, InvariantViolation, PreconditionError, StageError
from glarb.graph import LGraph, SubgroupComplement, ValueSet, cycle_value, quotient_reduction
from glarb.leveling import NestedChain, StageInput, cycle_arcs, nested_sequence

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


def split_cycle(cycle: Sequence[int]) -> Tuple[int, int, Path, Path]:
    """(a, b, P, P') with a, b the two lowest vertices and P the forward arc a -> b"""
    return cycle_arcs(tuple(cycle))


def _rev(path: Sequence[int]) -> Path:
    return tuple(reversed(path))


@dataclass(frozen=True)
class PigeonholeArcs:
    """Split cycles C_i = P_i ∪ P'_i and connectors Q_i (a_i -> a_{i+1}), R_i (b_i -> b_{i+1})"""

    P: Tuple[Path, ...]
    P_prime: Tuple[Path, ...]
    Q: Tuple[Path, ...]
    R: Tuple[Path, ...]

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], Q: Sequence[Path], R: Sequence[Path]) -> "PigeonholeArcs":
        splits = [split_cycle(c) for c in cycles]
        return cls(tuple(s[2] for s in splits), tuple(s[3] for s in splits),
                   tuple(tuple(q) for q in Q), tuple(tuple(r) for r in R))

    @property
    def count(self) -> int:
        return len(self.P)

    def cycle(self, i: int) -> Path:
        """C_i as a closed walk starting at a_i"""
        return tuple(self.P[i]) + _rev(self.P_prime[i])[1:-1]

    def validate(self, graph: LGraph) -> None:
        def fail(message: str):
            raise StageError("pigeonhole-arcs", message)

        if len(self.P) != len(self.P_prime) or len(self.Q) != len(self.P) - 1 or len(self.R) != len(self.Q):
            fail(f"{len(self.P)} cycles need {len(self.P) - 1} connectors of each kind")
        used = {}

        def claim(v: int, owner: str):
            if v in used:
                fail(f"vertex {v} is shared by {used[v]} and {owner}")
            used[v] = owner

        for i, (p, q) in enumerate(zip(self.P, self.P_prime)):
            if p[0] != q[0] or p[-1] != q[-1] or p[0] == p[-1]:
                fail(f"arcs of cycle {i + 1} must share two distinct endpoints")
            for v in p + q[1:-1]:
                claim(v, f"cycle {i + 1}")
        for name, family, ends in (("Q", self.Q, lambda i: (self.P[i][0], self.P[i + 1][0])),
                                   ("R", self.R, lambda i: (self.P[i][-1], self.P[i + 1][-1]))):
            for i, path in enumerate(family):
                if (path[0], path[-1]) != ends(i):
                    fail(f"{name}_{i + 1} must run from {ends(i)[0]} to {ends(i)[1]}")
                for v in path[1:-1]:
                    claim(v, f"{name}_{i + 1}")
        for path in list(self.P) + list(self.P_prime) + list(self.Q) + list(self.R):
            for u, v in zip(path, path[1:]):
                if not graph.has_edge(u, v):
                    fail(f"{u} {v} is not an edge")


def _h_walk(arcs: PigeonholeArcs, i: int) -> List[int]:
    """H_i = P_1 ∪ P_{i+1} ∪ Q_1..Q_i ∪ R_1..R_i, for 1 <= i <= count-1"""
    pieces = [arcs.P[0]] + [arcs.R[j] for j in range(i)] + [_rev(arcs.P[i])]
    pieces += [_rev(arcs.Q[j]) for j in reversed(range(i))]
    return assemble_walk(*pieces)[:-1]


def _swap_walk(arcs: PigeonholeArcs, a: int, b: int) -> List[int]:
    """P'_{a+1} ∪ P_{b+1} ∪ Q_{a+1..b} ∪ R_{a+1..b}"""
    pieces = [arcs.P_prime[a]] + [arcs.R[j] for j in range(a, b)] + [_rev(arcs.P[b])]
    pieces += [_rev(arcs.Q[j]) for j in reversed(range(a, b))]
    return assemble_walk(*pieces)[:-1]


def glue_pigeonhole_cycle(graph: LGraph, arcs: PigeonholeArcs, values: ValueSet,
                          omega: int, d: int = 3) -> CycleCert:
    """The first H_i with value in A, or the swapped cycle of the first colliding pair.

    Raises:
        InputConsistencyError: the H_i take more than omega values outside A
    """
    arcs.validate(graph)
    if arcs.count < omega + 2:
        raise PreconditionError(f"need {omega + 2} cycles for omega = {omega}, got {arcs.count}")

    h_values = []
    for i in range(1, arcs.count):
        walk = _h_walk(arcs, i)
        value = cycle_value(graph, walk)
        if values.contains(value):
            logger.info(f"H_{i} has value {value} in A (length {len(walk)})")
            return CycleCert(tuple(walk), value, d)
        h_values.append(value)

    for b in range(len(h_values)):
        for a in range(b):
            if h_values[a] != h_values[b]:
                continue
            walk = _swap_walk(arcs, a + 1, b + 1)
            value = cycle_value(graph, walk)
            expected = cycle_value(graph, arcs.cycle(a + 1))
            if value != expected:
                raise InvariantViolation(f"swapped cycle has value {value}, expected {expected}")
            logger.info(f"H_{a + 1} and H_{b + 1} collide on {h_values[a]}; "
                        f"swapped cycle has length {len(walk)}")
            return CycleCert(tuple(walk), value, d)
    raise InputConsistencyError(f"{len(h_values)} distinct values outside A, but omega = {omega}")


# ===================== Extraction pipeline =====================

def effective_omega(values: ValueSet) -> int:
    omega = values.omega
    if omega == INFINITE:
        raise PreconditionError(f"value set {values.describe()} has an infinite complement")
    return max(1, int(omega))


def heaviest_component(graph: LGraph, values: ValueSet, budget: Optional[int]) -> Tuple[LGraph, int]:
    best: Tuple[Optional[LGraph], int] = (None, 0)
    for component in graph.components():
        sub = graph.induced(component)
        arb = arb_exact(sub, values, budget).value
        if arb > best[1]:
            best = (sub, arb)
    return best


def validate_staged_cycles(chain: NestedChain, values: ValueSet, cycles: Sequence[Path],
                           needed: int, inside: frozenset) -> List[Path]:
    if len(cycles) < needed:
        raise StageError("cycles", f"need {needed} disjoint A-cycles, got {len(cycles)}")
    chosen = [tuple(c) for c in cycles[:needed]]
    seen = set()
    for index, cycle in enumerate(chosen):
        if len(cycle) < 3 or len(set(cycle)) != len(cycle):
            raise StageError("cycles", f"cycle {index + 1} is not a simple cycle")
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            if not chain.graph.has_edge(u, v):
                raise StageError("cycles", f"cycle {index + 1} uses the non-edge {u} {v}")
        if not values.contains(cycle_value(chain.graph, cycle)):
            raise StageError("cycles", f"cycle {index + 1} has value outside A")
        if not set(cycle) <= inside:
            raise StageError("cycles", f"cycle {index + 1} leaves the core set")
        if seen & set(cycle):
            raise StageError("cycles", f"cycle {index + 1} meets an earlier cycle")
        seen |= set(cycle)
    return chosen


def extract_long_a_cycle(graph: LGraph, values: ValueSet, d: int,
                         stage: Optional[StageInput] = None, budget: Optional[int] = None) -> CycleCert:
    """A verified cycle with value in A and length >= d.

    Args:
        graph: the labelled graph
        values: A with finite complement of size omega, or a subgroup complement
        d: required length
        stage: staged chain and cycles; without it the arboricity threshold is checked
        budget: node budget for the arboricity computations

    Raises:
        PreconditionError: full mode below g_omega(d)
        StageError: a staged hypothesis fails validation
    """
    if d < 1:
        raise PreconditionError(f"d must be positive, got {d}")
    if isinstance(values, SubgroupComplement):
        reduced, reduced_values = quotient_reduction(graph, values)
        found = extract_long_a_cycle(reduced, reduced_values, d, stage, budget)
        cert = CycleCert(found.vertices, cycle_value(graph, found.vertices), d)
        return _checked(graph, values, cert, d)

    values.require_nonempty()
    omega = effective_omega(values)
    ell = max(1, d // 2)
    m = 2 * (omega + 1)
    needed = omega + 2

    if stage is None:
        threshold = g_omega(omega, d)
        component, arb = heaviest_component(graph, values, budget)
        if arb < threshold:
            raise PreconditionError(f"arboricity {arb} < g_{omega}({d}) = {threshold}")
        chain = nested_sequence(component, values, ell, m, arb)
        cycles = [c.vertices for c in disjoint_a_cycles(component.induced(chain.core), values, needed,
                                                        require_hypothesis=False)]
    else:
        if stage.ell < d // 2:
            raise StageError("chain", f"ell = {stage.ell} is below floor(d/2) = {d // 2}")
        chain = stage.chain(graph)
        if chain.m < m:
            raise StageError("chain", f"need m >= {m} nested steps, got {chain.m}")
        cycles = validate_staged_cycles(chain, values, stage.cycles, needed, chain.core)
    logger.info(f"Long-cycle pipeline: omega={omega}, d={d}, ell={chain.ell}, {len(cycles)} cycles")

    splits = [split_cycle(c) for c in cycles]
    q_paths = [chain.path(i + 1, splits[i][0], splits[i + 1][0]) for i in range(omega + 1)]
    r_paths = [chain.path(i + omega + 2, splits[i][1], splits[i + 1][1]) for i in range(omega + 1)]
    arcs = PigeonholeArcs.from_cycles(cycles, q_paths, r_paths)
    cert = glue_pigeonhole_cycle(graph, arcs, values, omega, d)
    return _checked(graph, values, cert, d)


def _checked(graph: LGraph, values: ValueSet, cert: CycleCert, d: int) -> CycleCert:
    verdict = verify_cycle(graph, values, cert, d)
    if not verdict:
        raise InvariantViolation(f"extracted cycle fails verification: {verdict.rule}: {verdict.detail}")
    return cert
