"""
Extremal Constructions
Generators for labelled graphs of large (Γ,A)-vertex-arboricity: uniform
cliques, the two-case unbounded family, block cliques and parity encodings.
Generators never check their own claims; verification is a separate step.
"""

import itertools
import logging
import math
from functools import reduce
from typing import Iterable, List, Optional, Tuple

from glarb.abelian import INFINITE, Elem, GroupDesc, order, quotient
from glarb.errors import InvariantViolation, PreconditionError, UniquenessUndecidableError
from glarb.graph import CofiniteSet, FiniteSet, LGraph, SubgroupComplement, ValueSet, edge_key

logger = logging.getLogger(__name__)

Z2 = GroupDesc(0, (2,))


def uniform_clique(group: GroupDesc, x: Elem, n: int) -> LGraph:
    """K_n with every edge labelled x"""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if x.group != group:
        raise PreconditionError(f"label {x} is not an element of {group}")
    return LGraph.build(group, n, ((u, v, x) for u, v in itertools.combinations(range(n), 2)))


def blocks_construction(group: GroupDesc, y: Elem, t: int, values: Optional[ValueSet] = None) -> LGraph:
    """K_{t²} made of t blocks K_t labelled y inside and 0 across; block i holds ids i*t .. i*t+t-1"""
    if t < 1:
        raise PreconditionError(f"t must be positive, got {t}")
    if order(y) != INFINITE:
        raise PreconditionError(f"{y} has finite order; the uniform clique applies instead")
    if values is not None and not values.contains(y):
        raise PreconditionError(f"{y} is not in A")
    zero = group.zero()
    edges = []
    for u, v in itertools.combinations(range(t * t), 2):
        edges.append((u, v, y if u // t == v // t else zero))
    return LGraph.build(group, t * t, edges)


def eta_encoding(n: int, edges: Iterable[Tuple[int, int]],
                 marked: Iterable[Tuple[int, int]]) -> Tuple[LGraph, FiniteSet]:
    """The Z/2-labelling of a plain graph whose A-cycles are the cycles meeting F oddly"""
    edge_list = [edge_key(u, v) for u, v in edges]
    marked_set = {edge_key(u, v) for u, v in marked}
    unknown = sorted(marked_set - set(edge_list))
    if unknown:
        raise PreconditionError(f"marked pairs {unknown} are not edges of the graph")
    one, zero = Z2.elem(1), Z2.zero()
    graph = LGraph.build(Z2, n, ((u, v, one if (u, v) in marked_set else zero) for u, v in edge_list))
    return graph, FiniteSet(Z2, [one])


# ===================== Lower-bound cliques =====================

def lower_bound_params(values: ValueSet, x: Elem) -> Optional[int]:
    """The unique d > 2 with d*x in A, or None when there is none or more than one.

    A co-subgroup never has a unique d: the d with d*x in Λ form a subgroup of Z,
    so either every d misses A or infinitely many d hit it.

    Raises:
        UniquenessUndecidableError: A is not one of the listed value-set forms
    """
    if isinstance(values, SubgroupComplement):
        logger.info(f"A is a co-subgroup: the multiples of {x} in A are never unique")
        return None
    x_order = order(x)
    if x_order != INFINITE:
        hits = [d for d in range(3, int(x_order) + 3) if values.contains(d * x)]
        if hits:
            logger.info(f"{x} has order {x_order}: d = {hits[0]} repeats every {x_order} steps")
        return None
    if isinstance(values, CofiniteSet):
        logger.info(f"{x} has infinite order and A is cofinite: infinitely many d")
        return None
    if not isinstance(values, FiniteSet):
        raise UniquenessUndecidableError(f"cannot certify uniqueness of d for A = {values.describe()}")

    r = x.group.free_rank
    pivot = next(i for i in range(r) if x.coords[i])
    found = set()
    for a in values.elements:
        if a.coords[pivot] % x.coords[pivot]:
            continue
        d = a.coords[pivot] // x.coords[pivot]
        if d > 2 and d * x == a:
            found.add(d)
    if len(found) != 1:
        logger.info(f"{len(found)} values of d > 2 put a multiple of {x} into A")
        return None
    return found.pop()


def lower_bound_instance(values: ValueSet, x: Elem, t: int) -> LGraph:
    """K_n uniform x with n = (t-1)(d-1)+1: arboricity at least t, no A-cycle longer than d"""
    if t < 1:
        raise PreconditionError(f"t must be positive, got {t}")
    d = lower_bound_params(values, x)
    if d is None:
        raise PreconditionError(f"no unique d > 2 with d*{x} in A")
    n = (t - 1) * (d - 1) + 1
    logger.info(f"Lower-bound instance: d={d}, n={n}")
    return uniform_clique(values.group, x, n)


# ===================== Unbounded family =====================

def _divide(a: Elem, q: int) -> Optional[Elem]:
    """Some x with q*x = a, or None"""
    group = a.group
    r = group.free_rank
    coords = []
    for c in a.coords[:r]:
        if c % q:
            return None
        coords.append(c // q)
    for c, n in zip(a.coords[r:], group.torsion_moduli):
        root = next((s for s in range(n) if (q * s - c) % n == 0), None)
        if root is None:
            return None
        coords.append(root)
    return group.elem(*coords)


def _multiplier(x: Elem, values: ValueSet, horizon: int) -> Optional[int]:
    return next((q for q in range(3, horizon + 1) if values.contains(q * x)), None)


def _candidates(values: ValueSet) -> List[Tuple[int, Elem]]:
    """Pairs (ℓ, x) with ℓ >= 3 the smallest multiplier putting x into A"""
    group = values.group
    found = []

    def consider(x: Elem, horizon: int) -> None:
        ell = _multiplier(x, values, horizon)
        if ell is not None:
            found.append((ell, x))

    if group.is_finite:
        for x in group.elements():
            consider(x, int(order(x)) + 2)
    elif isinstance(values, FiniteSet):
        exponent = reduce(math.lcm, group.torsion_moduli, 1)
        r = group.free_rank
        for a in values.elements:
            free = [abs(c) for c in a.coords[:r] if c]
            top = max(free) if free else exponent + 2
            for q in range(3, top + 1):
                x = _divide(a, q)
                if x is not None:
                    consider(x, q)
    elif isinstance(values, CofiniteSet):
        consider(group.unit(0), 3 + len(values.elements))
    else:
        _, projection = quotient(group, values.subgroup)
        for i in range(group.rank):
            x = group.unit(i)
            image_order = order(projection(x))
            consider(x, 3 if image_order == INFINITE else int(image_order) + 2)
    return found


def unbounded_instance(values: ValueSet, t: int) -> Tuple[LGraph, int, Elem, Optional[int]]:
    """A labelled graph with arboricity at least t for any non-empty A.

    Returns:
        (graph, case, element, ℓ): case 1 is the uniform clique on (ℓ-1)(t-1)+1
        vertices labelled x, case 2 the block clique labelled y (ℓ is None)
    """
    if t < 1:
        raise PreconditionError(f"t must be positive, got {t}")
    values.require_nonempty()
    group = values.group
    candidates = _candidates(values)
    if candidates:
        ell, x = min(candidates)
        logger.info(f"Case 1: {ell} * {x} lies in A")
        return uniform_clique(group, x, (ell - 1) * (t - 1) + 1), 1, x, ell
    y = next((a for a in values.elements if order(a) == INFINITE), None)
    if y is None:
        raise InvariantViolation(f"no multiple of any element reaches A = {values.describe()}, "
                                 "yet A holds no element of infinite order")
    logger.info(f"Case 2: blocks labelled {y}")
    return blocks_construction(group, y, t, values), 2, y, None
