"""
Simple Cycles
Enumeration of simple cycles and shortest-first search for cycles whose
γ-value lies in A.
"""

import logging
from typing import Iterator, List, Optional, Set, Tuple

from glarb import config
from glarb.abelian import Elem
from glarb.errors import CapacityError, PreconditionError
from glarb.graph import LGraph, ValueSet

logger = logging.getLogger(__name__)

Cycle = Tuple[int, ...]


def cycle_sort_key(cycle: Cycle) -> Tuple[Tuple[int, ...], Cycle]:
    return tuple(sorted(cycle)), cycle


def _anchored_cycles(graph: LGraph, max_len: Optional[int] = None,
                     exact_len: Optional[int] = None) -> Iterator[Tuple[Cycle, Elem]]:
    """Each simple cycle exactly once, with its γ-value.

    A cycle is reported from its smallest vertex, walking only through larger
    vertices, and only in the direction where the second vertex is smaller
    than the last.
    """
    zero = graph.group.zero()
    limit = exact_len or max_len or graph.n

    for anchor in graph.vertices:
        path = [anchor]
        on_path = {anchor}

        def extend(value: Elem) -> Iterator[Tuple[Cycle, Elem]]:
            tail = path[-1]
            for w in graph.neighbors(tail):
                if w == anchor:
                    if len(path) >= 3 and path[1] < path[-1]:
                        if exact_len is None or len(path) == exact_len:
                            yield tuple(path), value + graph.label(tail, anchor)
                    continue
                if w < anchor or w in on_path or len(path) >= limit:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend(value + graph.label(tail, w))
                path.pop()
                on_path.discard(w)

        yield from extend(zero)


def enumerate_simple_cycles(graph: LGraph, max_count: Optional[int] = None) -> List[Cycle]:
    """All simple cycles, sorted by their sorted vertex lists.

    Raises:
        CapacityError: when more than max_count cycles exist
    """
    max_count = config.CYCLE_CAPACITY if max_count is None else max_count
    if max_count < 1:
        raise PreconditionError(f"max_count must be at least 1, got {max_count}")
    found: List[Cycle] = []
    for cycle, _ in _anchored_cycles(graph):
        found.append(cycle)
        if len(found) > max_count:
            raise CapacityError(f"graph has more than {max_count} simple cycles")
    found.sort(key=cycle_sort_key)
    return found


def find_a_cycle(graph: LGraph, values: ValueSet, min_len: int = 3):
    """A shortest cycle of length >= min_len whose γ-value is in A, or None.

    Ties between cycles of the same length go to the smallest sorted vertex list.
    """
    from glarb.certificates import CycleCert

    if min_len < 3:
        raise PreconditionError(f"min_len must be at least 3, got {min_len}")
    for length in range(min_len, graph.n + 1):
        hits = [(cycle, value) for cycle, value in _anchored_cycles(graph, exact_len=length)
                if values.contains(value)]
        if hits:
            cycle, value = min(hits, key=lambda hit: cycle_sort_key(hit[0]))
            logger.debug(f"Shortest A-cycle has length {length}: {cycle}")
            return CycleCert(cycle, value, min_len)
    return None


def has_a_cycle(graph: LGraph, values: ValueSet) -> bool:
    return any(values.contains(value) for _, value in _anchored_cycles(graph))


def has_a_cycle_through(graph: LGraph, values: ValueSet, v: int, allowed: Set[int]) -> bool:
    """Whether G[allowed] has a cycle through v with γ-value in A"""
    zero = graph.group.zero()
    path = [v]
    on_path = {v}

    def extend(value: Elem) -> bool:
        tail = path[-1]
        for w in graph.neighbors(tail):
            if w not in allowed:
                continue
            if w == v:
                if len(path) >= 3 and path[1] < path[-1] and values.contains(value + graph.label(tail, v)):
                    return True
                continue
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if extend(value + graph.label(tail, w)):
                return True
            path.pop()
            on_path.discard(w)
        return False

    return extend(zero)
