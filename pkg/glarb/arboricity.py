"""
Vertex Arboricity
Exact (Γ,A)-vertex-arboricity by branch-and-bound, a partition-enumeration
oracle, and the structural laws on components, deletion and disjoint cycles.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from glarb import config
from glarb.certificates import CycleCert, PartitionCert
from glarb.cycles import find_a_cycle, has_a_cycle, has_a_cycle_through
from glarb.errors import InvariantViolation, OracleGuardError, PreconditionError, ResourceExhaustedError
from glarb.graph import LGraph, ValueSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchExhaustion:
    """Record that every partition into k_refuted parts was searched and failed"""

    k_refuted: int
    nodes: int


@dataclass(frozen=True)
class ArbResult:
    value: int
    witness: PartitionCert
    lower_bound_proof: Optional[SearchExhaustion] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "parts": len(self.witness.groups()),
            "lower_bound": ("search-exhaustion" if self.lower_bound_proof else "trivial"),
            "nodes": self.lower_bound_proof.nodes if self.lower_bound_proof else 0,
        }


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> bool:
        self.used += 1
        return self.used <= self.limit


def _greedy_partition(graph: LGraph, values: ValueSet) -> Dict[int, int]:
    """First-fit in input order; an upper bound to start from"""
    parts: List[set] = []
    assignment: Dict[int, int] = {}
    for v in graph.vertices:
        for index, members in enumerate(parts):
            if not has_a_cycle_through(graph, values, v, members | {v}):
                members.add(v)
                assignment[v] = index + 1
                break
        else:
            parts.append({v})
            assignment[v] = len(parts)
    return assignment


def _search(graph: LGraph, values: ValueSet, k: int, budget: _Budget) -> Optional[Dict[int, int]]:
    """Backtracking assignment into at most k parts, or None if impossible.

    Vertex i may only open part (used + 1), which removes part relabellings.
    """
    order = graph.vertices
    parts: List[set] = [set() for _ in range(k)]
    assignment: Dict[int, int] = {}

    def place(index: int, used: int) -> bool:
        if not budget.tick():
            raise _OutOfBudget()
        if index == len(order):
            return True
        v = order[index]
        for p in range(min(used + 1, k)):
            if has_a_cycle_through(graph, values, v, parts[p] | {v}):
                continue
            parts[p].add(v)
            assignment[v] = p + 1
            if place(index + 1, max(used, p + 1)):
                return True
            parts[p].discard(v)
            del assignment[v]
        return False

    if place(0, 0):
        return dict(assignment)
    return None


class _OutOfBudget(Exception):
    pass


def arb_exact(graph: LGraph, values: ValueSet, budget: Optional[int] = None) -> ArbResult:
    """Exact (Γ,A)-vertex-arboricity with a verifying partition.

    Args:
        graph: a non-empty labelled graph
        values: the value set A (non-empty)
        budget: node budget shared by all rounds (default GLARB_ARB_BUDGET)

    Returns:
        ArbResult whose lower_bound_proof records the exhausted k-1 round

    Raises:
        ResourceExhaustedError: budget ran out; carries the best known bounds
    """
    if graph.n == 0:
        raise PreconditionError("arboricity needs a non-empty graph")
    values.require_nonempty()
    budget_state = _Budget(config.ARB_BUDGET if budget is None else budget)

    if not has_a_cycle(graph, values):
        return ArbResult(1, PartitionCert({v: 1 for v in graph.vertices}))

    greedy = _greedy_partition(graph, values)
    upper = max(greedy.values())
    logger.debug(f"Greedy partition uses {upper} parts on {graph.n} vertices")

    for k in range(2, upper):
        try:
            assignment = _search(graph, values, k, budget_state)
        except _OutOfBudget:
            raise ResourceExhaustedError(f"node budget {budget_state.limit} exhausted at k={k}", k, upper)
        if assignment is not None:
            logger.info(f"arb = {k} ({budget_state.used} nodes)")
            return ArbResult(k, PartitionCert(assignment), SearchExhaustion(k - 1, budget_state.used))

    logger.info(f"arb = {upper} ({budget_state.used} nodes, greedy witness)")
    return ArbResult(upper, PartitionCert(greedy), SearchExhaustion(upper - 1, budget_state.used))


def arb_oracle(graph: LGraph, values: ValueSet, max_vertices: Optional[int] = None) -> int:
    """Minimum part count over all set partitions, by restricted growth strings"""
    guard = config.ORACLE_MAX_VERTICES if max_vertices is None else max_vertices
    if graph.n > guard:
        raise OracleGuardError(f"oracle accepts at most {guard} vertices, got {graph.n}")
    if graph.n == 0:
        raise PreconditionError("arboricity needs a non-empty graph")
    values.require_nonempty()

    order = graph.vertices
    clean_cache: Dict[frozenset, bool] = {}

    def clean(block: frozenset) -> bool:
        if block not in clean_cache:
            clean_cache[block] = not has_a_cycle(graph.induced(block), values)
        return clean_cache[block]

    blocks: List[frozenset] = []
    best = graph.n + 1

    def walk(index: int) -> None:
        nonlocal best
        if len(blocks) >= best:
            return
        if index == len(order):
            best = len(blocks)
            return
        v = order[index]
        for b in range(len(blocks)):
            grown = blocks[b] | {v}
            if clean(grown):
                previous = blocks[b]
                blocks[b] = grown
                walk(index + 1)
                blocks[b] = previous
        blocks.append(frozenset([v]))
        walk(index + 1)
        blocks.pop()

    walk(0)
    logger.debug(f"Oracle checked {len(clean_cache)} blocks on {graph.n} vertices")
    return best


ArbSolver = Callable[[LGraph, ValueSet], int]


def _exact_value(graph: LGraph, values: ValueSet) -> int:
    return arb_exact(graph, values).value


def check_component_law(graph: LGraph, values: ValueSet, solve: ArbSolver = _exact_value) -> bool:
    """arb(G) equals the maximum over connected components"""
    whole = solve(graph, values)
    per_component = [solve(graph.induced(c), values) for c in graph.components()]
    return whole == max(per_component)


def check_deletion_law(graph: LGraph, values: ValueSet, v: int, solve: ArbSolver = _exact_value) -> bool:
    """arb(G - v) >= arb(G) - 1; the empty graph counts as 0"""
    whole = solve(graph, values)
    rest = graph.without([v])
    remaining = solve(rest, values) if rest.n else 0
    return remaining >= whole - 1


def disjoint_a_cycles(graph: LGraph, values: ValueSet, t: int,
                      require_hypothesis: bool = True, budget: Optional[int] = None) -> List[CycleCert]:
    """t vertex-disjoint cycles with values in A, taking a shortest one each round.

    With require_hypothesis the arboricity must be at least 2t, and a greedy
    failure is then an internal error; without it a failure is reported as an
    unmet precondition.
    """
    if t < 1:
        raise PreconditionError(f"t must be positive, got {t}")
    if require_hypothesis:
        arb = arb_exact(graph, values, budget).value
        if arb < 2 * t:
            raise PreconditionError(f"arboricity {arb} < 2t = {2 * t}")

    remaining = graph
    cycles: List[CycleCert] = []
    for round_index in range(t):
        cycle = find_a_cycle(remaining, values, 3) if remaining.n else None
        if cycle is None:
            message = f"only {round_index} disjoint A-cycles found, {t} requested"
            if require_hypothesis:
                raise InvariantViolation(message)
            raise PreconditionError(message)
        cycles.append(cycle)
        remaining = remaining.without(cycle.vertices)
    return cycles

