"""
A-Subdivisions
Subdivisions of K_t whose branching paths have values in A: the uniform-value
shortcut, the staged extraction pipeline, and long A-cycles inside a given
(A,1)-subdivision.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from glarb import bounds
from glarb.abelian import INFINITE, Elem, SubgroupDesc, combination, count_order_at_most_two, order
from glarb.arboricity import disjoint_a_cycles
from glarb.bounds import RamseyBound, create_ramsey_bound
from glarb.certificates import CycleCert, SubdivCert, assemble_walk, verify_cycle, verify_subdivision
from glarb.errors import (
    CounterexampleError,
    InputConsistencyError,
    InvariantViolation,
    PreconditionError,
    StageError,
)
from glarb.graph import LGraph, SubgroupComplement, ValueSet, cycle_value, edge_key, path_value, quotient_reduction
from glarb.leveling import (
    NestedChain,
    Split,
    StageInput,
    arcs_between,
    branch_pairs,
    link_path_avoiding_subgroup,
    link_path_via_vertex,
    nested_sequence,
)
from glarb.long_cycle import (
    PigeonholeArcs,
    effective_omega,
    glue_pigeonhole_cycle,
    heaviest_component,
    validate_staged_cycles,
)
from glarb.ramsey import IN_A, EdgeColoredClique, any_mono, mono_clique

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


@dataclass(frozen=True)
class StageReport:
    """A staged run stopped because a finite search came back empty"""

    stage: str
    detail: str

    def to_dict(self) -> dict:
        return {"success": False, "stage": self.stage, "detail": self.detail}


def _oriented(stored: Path, start: int) -> Path:
    return stored if stored[0] == start else tuple(reversed(stored))


def _cert_from_paths(branch: Sequence[int], paths: Dict[Tuple[int, int], Path], d: int) -> SubdivCert:
    """Certificate over `branch` from paths keyed by vertex pair"""
    chosen = {}
    for i, j in branch_pairs(len(branch)):
        chosen[(i, j)] = _oriented(paths[edge_key(branch[i], branch[j])], branch[i])
    return SubdivCert(tuple(branch), chosen, d)


def _checked(graph: LGraph, values: ValueSet, cert: SubdivCert, d: int) -> SubdivCert:
    verdict = verify_subdivision(graph, values, cert, d)
    if not verdict:
        raise InvariantViolation(f"constructed subdivision fails verification: {verdict.rule}: {verdict.detail}")
    return cert


# ===================== Uniform subdivisions =====================

def subdivision_from_uniform(graph: LGraph, uniform: SubdivCert, values: ValueSet, omega: int, t: int,
                             d: Optional[int] = None) -> SubdivCert:
    """Chain p branching paths of a uniform-value K_q subdivision into each pair of K_t.

    Every branching path of `uniform` has the same value g outside A, and
    p <= omega + 1 is the smallest multiplier with p*g in A.
    """
    d = uniform.d if d is None else d
    q = uniform.t
    needed = t + math.comb(t, 2) * omega
    if q < needed:
        raise PreconditionError(f"need a subdivision of K_{needed}, got K_{q}")
    path_values = {path_value(graph, path) for path in uniform.paths.values()}
    if len(path_values) != 1:
        raise PreconditionError(f"branching paths carry {len(path_values)} different values")
    g = path_values.pop()
    if values.contains(g):
        raise PreconditionError(f"uniform value {g} lies in A")
    for path in uniform.paths.values():
        if len(path) - 1 < d:
            raise PreconditionError(f"branching path {list(path)} is shorter than {d}")

    p = next((p for p in range(2, omega + 2) if values.contains(p * g)), None)
    if p is None:
        raise InputConsistencyError(f"no p in 2..{omega + 1} puts {g} times p into A")
    logger.info(f"Uniform value {g}: chaining {p} paths per pair")

    paths = {}
    for phi, (a, b) in enumerate(branch_pairs(t), start=1):
        zeta = t + (phi - 1) * (p - 1)
        route = [a] + list(range(zeta, zeta + p - 1)) + [b]
        pieces = [uniform.branch_path(route[s], route[s + 1]) for s in range(len(route) - 1)]
        paths[(a, b)] = tuple(assemble_walk(*pieces))
    cert = SubdivCert(uniform.branch[:t], paths, d)
    return _checked(graph, values, cert, d)


# ===================== Multi-path subdivisions =====================

@dataclass
class MultiSubdivision:
    """Branch vertices with k internally disjoint families of paths, family j of value a_j"""

    branch: Tuple[int, ...]
    families: List[Dict[Tuple[int, int], Path]] = field(default_factory=list)
    family_values: List[Elem] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.families)

    def path(self, j: int, x: int, y: int) -> Path:
        return _oriented(self.families[j][edge_key(x, y)], x)

    def restrict(self, vertices: Sequence[int]) -> "MultiSubdivision":
        keep = tuple(vertices)
        families = [{edge_key(x, y): fam[edge_key(x, y)] for x, y in itertools.combinations(keep, 2)}
                    for fam in self.families]
        return MultiSubdivision(keep, families, list(self.family_values))

    def add_family(self, paths: Dict[Tuple[int, int], Path], value: Elem) -> None:
        self.families.append({edge_key(x, y): paths[edge_key(x, y)]
                              for x, y in itertools.combinations(self.branch, 2)})
        self.family_values.append(value)


def find_combination(family_values: Sequence[Elem], values: ValueSet, omega: int) -> Optional[Tuple[int, ...]]:
    """Coefficients p_j < min(ord(a_j), omega+1), not all zero, with Σ p_j a_j in A.

    The smallest total Σ p_j wins; ties go to the lexicographically first vector.
    """
    group = family_values[0].group
    limits = []
    for a in family_values:
        a_order = order(a)
        limits.append(omega + 1 if a_order == INFINITE else min(int(a_order), omega + 1))
    candidates = [c for c in itertools.product(*(range(n) for n in limits)) if any(c)]
    candidates.sort(key=lambda c: (sum(c), c))
    for coefficients in candidates:
        if values.contains(combination(coefficients, family_values, group)):
            return coefficients
    return None


def glue_relay_routes(multi: MultiSubdivision, t: int, coefficients: Sequence[int],
                      d: int) -> SubdivCert:
    """K_t on the first t branch vertices; each pair is routed through λ - 1 relays.

    The route of the θ-th pair uses coefficients[0] paths of family 1, then
    coefficients[1] paths of family 2, and so on.
    """
    lam = sum(coefficients)
    budget = t + math.comb(t, 2) * (lam - 1)
    if len(multi.branch) < budget:
        raise StageError("relay-budget", f"{len(multi.branch)} branch vertices, need {budget}")
    hops = [j for j, p in enumerate(coefficients) for _ in range(p)]
    z = multi.branch
    paths = {}
    for theta, (a, b) in enumerate(branch_pairs(t), start=1):
        first = t + (theta - 1) * (lam - 1)
        route = [z[a]] + [z[i] for i in range(first, first + lam - 1)] + [z[b]]
        pieces = [multi.path(hops[s], route[s], route[s + 1]) for s in range(lam)]
        paths[(a, b)] = tuple(assemble_walk(*pieces))
    return SubdivCert(z[:t], paths, d)


# ===================== Extraction pipeline =====================

class _Cursor:
    """Hands out staged cycles and bands in order"""

    def __init__(self, chain: NestedChain, cycles: Sequence[Path]):
        self.chain = chain
        self.cycles = list(cycles)
        self.next_cycle = 0
        self.next_band = 0

    def cycle(self, offset: int) -> Path:
        index = self.next_cycle + offset
        if index >= len(self.cycles):
            raise StageError("cycles", f"ran out of disjoint A-cycles after {len(self.cycles)}")
        return self.cycles[index]

    def band(self, offset: int) -> int:
        index = self.next_band + offset
        if index > self.chain.m:
            raise StageError("band", f"band {index} exceeds m = {self.chain.m}")
        return index

    def advance(self, pairs: int) -> None:
        self.next_cycle += pairs
        self.next_band += 4 * pairs


def _size(sizes: Sequence[int], k: int) -> int:
    return sizes[k - 1] if k <= len(sizes) else sizes[-1]


def _colouring(graph: LGraph, paths: Dict[Tuple[int, int], Path], vertices: Sequence[int],
               values: ValueSet) -> EdgeColoredClique:
    return EdgeColoredClique.from_values(vertices, lambda u, v: path_value(graph, paths[edge_key(u, v)]), values)


def _run_pipeline(graph: LGraph, values: ValueSet, t: int, d: int, omega: int, chain: NestedChain,
                  split: Split, cycles: Sequence[Path], sizes: Sequence[int]) -> Union[SubdivCert, StageReport]:
    cursor = _Cursor(chain, cycles)
    t1 = split.t1
    group = graph.group

    # J: one path per pair of T1 through a vertex of its own cycle
    j_paths: Dict[Tuple[int, int], Path] = {}
    pairs = branch_pairs(len(t1))
    for phi, (a, b) in enumerate(pairs, start=1):
        z = min(cursor.cycle(phi - 1))
        bands = (cursor.band(4 * phi - 3), cursor.band(4 * phi - 2))
        j_paths[edge_key(t1[a], t1[b])] = link_path_via_vertex(chain, t1[a], t1[b], z, bands, split)
    cursor.advance(len(pairs))

    found = mono_clique(_colouring(graph, j_paths, t1, values), t, _size(sizes, 1))
    if found is None:
        return StageReport("ramsey-J", f"no IN_A K_{t} and no single-colour K_{_size(sizes, 1)} among {len(t1)}")
    clique, colour = found
    if colour == IN_A:
        logger.info(f"J already holds an A-subdivision of K_{t} on {clique}")
        return _checked(graph, values, _cert_from_paths(clique, j_paths, d), d)

    g = colour
    if values.meets_subgroup(SubgroupDesc(group, (g,))):
        logger.info(f"Uniform value {g} generates an element of A; chaining paths")
        return subdivision_from_uniform(graph, _cert_from_paths(clique, j_paths, d), values, omega, t, d)

    multi = MultiSubdivision(tuple(clique))
    multi.add_family(j_paths, g)
    while True:
        k = multi.k
        subgroup = SubgroupDesc(group, tuple(multi.family_values))
        z = multi.branch
        star_paths: Dict[Tuple[int, int], Path] = {}
        pairs = branch_pairs(len(z))
        for phi, (a, b) in enumerate(pairs, start=1):
            cycle = cursor.cycle(phi - 1)
            bands = tuple(cursor.band(4 * phi - 4 + i) for i in range(1, 5))
            cert = CycleCert(cycle, cycle_value(graph, cycle), 3)
            star_paths[edge_key(z[a], z[b])] = link_path_avoiding_subgroup(
                chain, z[a], z[b], cert, subgroup, bands, values, split)
        cursor.advance(len(pairs))
        logger.info(f"Round {k}: {len(pairs)} paths avoiding {subgroup}")

        found = mono_clique(_colouring(graph, star_paths, z, values), t, _size(sizes, k + 1))
        if found is None:
            return StageReport(f"ramsey-{k}", f"no IN_A K_{t} and no single-colour K_{_size(sizes, k + 1)} "
                                              f"among {len(z)}")
        clique, colour = found
        if colour == IN_A:
            return _checked(graph, values, _cert_from_paths(clique, star_paths, d), d)

        multi = multi.restrict(clique)
        multi.add_family(star_paths, colour)
        grown = SubgroupDesc(group, tuple(multi.family_values))
        if values.meets_subgroup(grown):
            break
        if multi.k > omega:
            raise CounterexampleError(f"{multi.k} independent values outside A with omega = {omega}",
                                      multi.family_values)

    coefficients = find_combination(multi.family_values, values, omega)
    if coefficients is None:
        raise CounterexampleError("no small combination of the family values lies in A", multi.family_values)
    logger.info(f"Gluing relay routes with coefficients {coefficients}")
    cert = glue_relay_routes(multi, t, coefficients, d)
    return _checked(graph, values, cert, d)


def extract_a_subdivision(graph: LGraph, values: ValueSet, t: int, d: int,
                          stage: Optional[StageInput] = None, ramsey: Optional[RamseyBound] = None,
                          budget: Optional[int] = None) -> Union[SubdivCert, StageReport]:
    """A verified (A,d)-subdivision of K_t, or the stage at which a finite search came back empty.

    Raises:
        PreconditionError: full mode below f_omega(t, d)
        StageError: a staged hypothesis fails validation
    """
    if t < 2 or d < 1:
        raise PreconditionError(f"need t >= 2 and d >= 1, got t={t}, d={d}")
    if isinstance(values, SubgroupComplement):
        reduced, reduced_values = quotient_reduction(graph, values)
        result = extract_a_subdivision(reduced, reduced_values, t, d, stage, ramsey, budget)
        if isinstance(result, StageReport):
            return result
        return _checked(graph, values, result, d)

    values.require_nonempty()
    omega = effective_omega(values)
    ell = max(1, (d + 1) // 2)

    if stage is None:
        ramsey = ramsey or create_ramsey_bound()
        r_values = bounds.r_sequence(omega, t, ramsey)
        c_last = bounds.c_sequence(r_values)[-1]
        threshold = bounds.f_omega(omega, t, d, ramsey)
        component, arb = heaviest_component(graph, values, budget)
        if arb < threshold:
            raise PreconditionError(f"arboricity {arb} < f_{omega}({t},{d}) = {threshold}")
        chain = nested_sequence(component, values, ell, 4 * c_last, arb)
        core = sorted(chain.core)
        split = Split.of(core, core[:r_values[0]])
        rest = component.induced(split.t2)
        cycles = [c.vertices for c in disjoint_a_cycles(rest, values, c_last, require_hypothesis=False)]
        sizes = r_values[1:]
    else:
        if stage.t1 is None:
            raise StageError("split", "a staged subdivision run needs an ordered T1")
        if stage.ell < (d + 1) // 2:
            raise StageError("chain", f"ell = {stage.ell} is below floor((d+1)/2) = {(d + 1) // 2}")
        chain = stage.chain(graph)
        split = Split.of(chain.core, stage.t1)
        cycles = validate_staged_cycles(chain, values, stage.cycles, len(stage.cycles), split.t2)
        sizes = list(stage.sizes) if stage.sizes else [bounds.r_top(omega, t)]
    if len(split.t1) < t:
        raise StageError("split", f"T1 has {len(split.t1)} vertices, need at least {t}")
    logger.info(f"Subdivision pipeline: omega={omega}, t={t}, d={d}, |T1|={len(split.t1)}, "
                f"{len(cycles)} cycles, m={chain.m}")
    return _run_pipeline(graph, values, t, d, omega, chain, split, cycles, sizes)


# ===================== Long cycles inside a subdivision =====================

def double_path_identity(graph: LGraph, subdivision: SubdivCert, a: int, b: int, x: int, y: int) -> Tuple[Elem, Elem]:
    """(2γ(P_ab), γ(T_abx) + γ(T_aby) - γ(Q_yaxb)) for branch positions a, b, x, y"""
    if len({a, b, x, y}) != 4:
        raise PreconditionError(f"positions {a}, {b}, {x}, {y} must be distinct")

    def value(*route: int) -> Elem:
        return path_value(graph, assemble_walk(*(subdivision.branch_path(route[i], route[i + 1])
                                                 for i in range(len(route) - 1))))

    lhs = 2 * value(a, b)
    rhs = value(a, b, x, a) + value(a, b, y, a) - value(y, a, x, b, y)
    return lhs, rhs


def _route_cycle(graph: LGraph, subdivision: SubdivCert, positions: Sequence[int]) -> CycleCert:
    route = list(positions) + [positions[0]]
    walk = assemble_walk(*(subdivision.branch_path(route[i], route[i + 1]) for i in range(len(route) - 1)))[:-1]
    return CycleCert(tuple(walk), cycle_value(graph, walk), 3)


def _block_a_cycle(graph: LGraph, subdivision: SubdivCert, block: Sequence[int], values: ValueSet,
                   beta_size: int, mu_size: int) -> Union[CycleCert, StageReport]:
    """An A-cycle inside the sub-subdivision on the branch positions `block`"""
    for a, b, x in itertools.combinations(block, 3):
        cycle = _route_cycle(graph, subdivision, (a, b, x))
        if values.contains(cycle.value):
            return cycle
    for a, b in itertools.combinations(block, 2):
        others = [p for p in block if p not in (a, b)]
        for x, y in itertools.permutations(others, 2):
            cycle = _route_cycle(graph, subdivision, (y, a, x, b))
            if values.contains(cycle.value):
                return cycle

    def doubled(u: int, v: int) -> Elem:
        others = [p for p in block if p not in (u, v)]
        lhs, rhs = double_path_identity(graph, subdivision, u, v, others[0], others[1])
        if lhs != rhs:
            raise InvariantViolation(f"2γ(P) = {lhs} but the cycle identity gives {rhs}")
        return lhs

    first = EdgeColoredClique.from_function(block, doubled)
    found = any_mono(first, beta_size)
    if found is None:
        return StageReport("ramsey-doubled", f"no K_{beta_size} with constant 2γ in block {list(block)}")
    h1, _ = found

    def value(u: int, v: int) -> Elem:
        return path_value(graph, subdivision.branch_path(u, v))

    s = value(h1[0], h1[1])
    second = EdgeColoredClique.from_function(h1, lambda u, v: value(u, v) - s)
    found = any_mono(second, mu_size)
    if found is None:
        return StageReport("ramsey-order-two", f"no K_{mu_size} with constant offset in block {list(block)}")
    h2, offset = found
    h = s + offset
    for q in range(3, len(h2) + 1):
        if values.contains(q * h):
            return _route_cycle(graph, subdivision, h2[:q])
    return StageReport("uniform-cycle", f"no q in 3..{len(h2)} with q*{h} in A")


def long_cycle_in_subdivision(graph: LGraph, subdivision: SubdivCert, values: ValueSet, p: int, k: int,
                              r: Optional[int] = None, beta: Optional[int] = None, mu: Optional[int] = None,
                              ramsey: Optional[RamseyBound] = None) -> Union[CycleCert, StageReport]:
    """An (A,k)-cycle inside an (A,1)-subdivision of K_t.

    Args:
        p: bound on the number of elements of order at most two
        k: required cycle length
        r, beta, mu: staged block and clique sizes; derived from the bounds when omitted
    """
    verdict = verify_subdivision(graph, values, subdivision, 1)
    if not verdict:
        raise PreconditionError(f"not an (A,1)-subdivision: {verdict.rule}: {verdict.detail}")
    omega = effective_omega(values)
    involutions = count_order_at_most_two(graph.group)
    if involutions > p:
        raise PreconditionError(f"{graph.group} has {involutions} elements of order at most two, p = {p}")
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    ramsey = ramsey or create_ramsey_bound()
    mu = bounds.mu(omega) if mu is None else mu
    beta = bounds.beta(omega, p, ramsey) if beta is None else beta
    r = bounds.r_subdivision(omega, p, ramsey) if r is None else r
    if r < 4:
        raise PreconditionError(f"blocks need r >= 4 positions, got r = {r}")
    if beta < 3 or mu < 3:
        raise PreconditionError(f"clique sizes must be at least 3, got beta = {beta}, mu = {mu}")
    needed = bounds.subdivision_order(r, omega, k)
    if subdivision.t < needed:
        raise PreconditionError(f"need a subdivision of K_{needed}, got K_{subdivision.t}")

    branch = subdivision.branch
    position = {v: i for i, v in enumerate(branch)}
    cycles: List[CycleCert] = []
    for index in range(omega + 2):
        block = list(range(index * r, (index + 1) * r))
        found = _block_a_cycle(graph, subdivision, block, values, beta, mu)
        if isinstance(found, StageReport):
            return found
        cycles.append(found)
        logger.debug(f"Block {index + 1}: A-cycle {found.vertices}")

    ell = max(1, k // 2)
    P, P_prime, ends = [], [], []
    for cycle in cycles:
        a, b = sorted(v for v in cycle.vertices if v in position)[:2]
        forward, backward = arcs_between(cycle.vertices, a, b)
        P.append(forward)
        P_prime.append(backward)
        ends.append((a, b))

    def relay_path(start: int, relays: Sequence[int], end: int) -> Path:
        route = [position[start]] + list(relays) + [position[end]]
        return tuple(assemble_walk(*(subdivision.branch_path(route[i], route[i + 1])
                                     for i in range(len(route) - 1))))

    Y, Z = [], []
    for i in range(omega + 1):
        first = r * (omega + 2) + i * k
        relays = list(range(first, first + k))
        Y.append(relay_path(ends[i][0], relays[:ell - 1], ends[i + 1][0]))
        Z.append(relay_path(ends[i][1], relays[ell - 1:2 * (ell - 1)], ends[i + 1][1]))

    arcs = PigeonholeArcs(tuple(P), tuple(P_prime), tuple(Y), tuple(Z))
    cert = glue_pigeonhole_cycle(graph, arcs, values, omega, k)
    verdict = verify_cycle(graph, values, cert, k)
    if not verdict:
        raise InvariantViolation(f"cycle fails verification: {verdict.rule}: {verdict.detail}")
    return cert
