"""
Levelings and Nested Sets
Breadth-first levelings, heavy level components, nested vertex sets with long
X-paths between any two of their vertices, and the linking paths built from them.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from glarb.abelian import Elem, SubgroupDesc, in_subgroup
from glarb.arboricity import arb_exact
from glarb.certificates import CycleCert
from glarb.errors import CounterexampleError, InvariantViolation, PreconditionError, StageError
from glarb.graph import LGraph, ValueSet, cycle_value, path_value

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]
BandKey = Tuple[int, int, int]


@dataclass(frozen=True)
class Leveling:
    """Distance layers (L_0, ..., L_p) of a connected graph from `start`"""

    start: int
    levels: Tuple[Tuple[int, ...], ...]

    @property
    def p(self) -> int:
        return len(self.levels) - 1

    def level_of(self, v: int) -> int:
        for i, level in enumerate(self.levels):
            if v in level:
                return i
        raise PreconditionError(f"vertex {v} is not in the leveling")

    def path_to(self, graph: LGraph, u: int) -> Path:
        """Path start -> u with one vertex per level, always stepping to the lowest-id parent"""
        i = self.level_of(u)
        path = [u]
        current = u
        while i > 0:
            previous = set(self.levels[i - 1])
            current = min(w for w in graph.neighbors(current) if w in previous)
            path.append(current)
            i -= 1
        return tuple(reversed(path))


def bfs_leveling(graph: LGraph, v: int) -> Leveling:
    if v not in graph:
        raise PreconditionError(f"start vertex {v} is not in the graph")
    layers = [tuple(sorted(layer)) for layer in nx.bfs_layers(graph.to_networkx(), [v])]
    reached = {u for layer in layers for u in layer}
    if len(reached) != graph.n:
        stray = min(u for u in graph.vertices if u not in reached)
        raise PreconditionError(f"graph is not connected: vertex {stray} is unreachable from {v}")
    return Leveling(v, tuple(layers))


def _arb(graph: LGraph, values: ValueSet) -> int:
    return arb_exact(graph, values).value


def heavy_level_component(graph: LGraph, values: ValueSet, leveling: Leveling,
                          arb_value: Optional[int] = None) -> Tuple[int, FrozenSet[int]]:
    """First level component (smallest level, then smallest component) with arb >= ceil(arb(G)/2).

    Returns:
        (level index, vertex set of the component)
    """
    if graph.n == 1:
        return 0, frozenset(graph.vertices)
    whole = _arb(graph, values) if arb_value is None else arb_value
    target = (whole + 1) // 2
    for i in range(1, len(leveling.levels)):
        layer = graph.induced(leveling.levels[i])
        for component in layer.components():
            if _arb(graph.induced(component), values) >= target:
                logger.debug(f"Heavy component at level {i}: {component}")
                return i, frozenset(component)
    raise InvariantViolation(f"no level component reaches arboricity {target}")


# ===================== Nested chains =====================

@dataclass
class NestedChain:
    """Nested vertex sets S_0 ⊇ S_1 ⊇ ... ⊇ S_m.

    A single-step chain (from nested_long_path_sets) keeps its anchors x_j and
    connector paths P_{x_{j-1},u}; a multi-step chain (from nested_sequence)
    keeps one single-step chain per step. A staged chain carries band paths
    supplied by the caller instead.
    """

    graph: LGraph
    sets: Tuple[FrozenSet[int], ...]
    ell: int
    anchors: Tuple[int, ...] = ()
    connectors: Dict[int, Dict[int, Path]] = field(default_factory=dict)
    sub_chains: Tuple["NestedChain", ...] = ()
    band_paths: Dict[BandKey, Path] = field(default_factory=dict)
    arb_values: Tuple[int, ...] = ()

    @property
    def m(self) -> int:
        return len(self.sets) - 1

    @property
    def core(self) -> FrozenSet[int]:
        """The innermost set S_m"""
        return self.sets[-1]

    def level(self, i: int) -> FrozenSet[int]:
        """L_i = S_{i-1} minus S_i"""
        if not 1 <= i <= self.m:
            raise PreconditionError(f"level index {i} outside 1..{self.m}")
        return self.sets[i - 1] - self.sets[i]

    def x_path(self, x: int, y: int) -> Path:
        """An X-path from x to y of length >= ell, glued from the stored connectors"""
        core = self.core
        if x == y or x not in core or y not in core:
            raise PreconditionError(f"x_path needs two distinct vertices of X, got {x} and {y}")
        if self.ell == 0:
            return tuple(nx.shortest_path(self.graph.to_networkx(), x, y))

        stops = list(self.anchors[1:]) + [y]
        to_x = self.connectors[1][x]
        to_first = self.connectors[1][stops[0]]
        common = 0
        while common + 1 < min(len(to_x), len(to_first)) and to_x[common + 1] == to_first[common + 1]:
            common += 1
        walk = list(reversed(to_x[common:])) + list(to_first[common + 1:])
        for j in range(1, len(stops)):
            walk.extend(self.connectors[j + 1][stops[j]][1:])
        return tuple(walk)

    def path(self, i: int, x: int, y: int) -> Path:
        """An S_m-path x -> y of length >= ell inside S_m ∪ L_i"""
        key = (i, x, y)
        if key in self.band_paths:
            found = self.band_paths[key]
        elif (i, y, x) in self.band_paths:
            found = tuple(reversed(self.band_paths[(i, y, x)]))
        elif self.sub_chains:
            found = self.sub_chains[i - 1].x_path(x, y)
        else:
            raise StageError("band", f"no path supplied for band {i} between {x} and {y}")
        self._check_band_path(i, x, y, found)
        return found

    def _check_band_path(self, i: int, x: int, y: int, path: Path) -> None:
        core = self.core
        band = self.level(i)
        where = f"band {i} path {x}..{y}"
        if len(path) < 2 or path[0] != x or path[-1] != y:
            raise StageError("band", f"{where} must run from {x} to {y}")
        if x not in core or y not in core:
            raise StageError("band", f"{where} has an endpoint outside S_{self.m}")
        if len(set(path)) != len(path):
            raise StageError("band", f"{where} is not simple")
        for v in path[1:-1]:
            if v not in band:
                raise StageError("band", f"{where} leaves level {i} at vertex {v}")
        for u, v in zip(path, path[1:]):
            if not self.graph.has_edge(u, v):
                raise StageError("band", f"{where} uses the non-edge {u} {v}")
        if len(path) - 1 < self.ell:
            raise StageError("band", f"{where} has length {len(path) - 1} < {self.ell}")

    @classmethod
    def from_stage(cls, graph: LGraph, ell: int, sets: Sequence[Iterable[int]],
                   band_paths: Mapping[BandKey, Sequence[int]]) -> "NestedChain":
        """A chain read from a stage file; sets must nest and every band path must validate"""
        frozen = tuple(frozenset(s) for s in sets)
        if not frozen:
            raise StageError("chain", "no sets supplied")
        outside = frozen[0] - set(graph.vertices)
        if outside:
            raise StageError("chain", f"S_0 contains vertices {sorted(outside)} outside the graph")
        for i in range(1, len(frozen)):
            if not frozen[i] <= frozen[i - 1]:
                extra = sorted(frozen[i] - frozen[i - 1])
                raise StageError("chain", f"S_{i} is not contained in S_{i - 1}: {extra}")
        if ell < 0:
            raise StageError("chain", f"ell must be non-negative, got {ell}")
        chain = cls(graph, frozen, ell, band_paths={k: tuple(p) for k, p in band_paths.items()})
        for (i, x, y), path in sorted(chain.band_paths.items()):
            if not 1 <= i <= chain.m:
                raise StageError("band", f"band index {i} outside 1..{chain.m}")
            chain._check_band_path(i, x, y, path)
        logger.info(f"Staged chain: m={chain.m}, ell={ell}, |S_m|={len(chain.core)}, "
                    f"{len(chain.band_paths)} band paths")
        return chain


def nested_long_path_sets(graph: LGraph, values: ValueSet, ell: int,
                          arb_value: Optional[int] = None) -> NestedChain:
    """X = X_ell with long X-paths between any two of its vertices.

    Each step levels G[X_j] from its lowest vertex x_j and keeps the heavy
    level component as X_{j+1}; the connectors are the leveling paths from x_j.
    """
    if ell < 0:
        raise PreconditionError(f"ell must be non-negative, got {ell}")
    if not graph.is_connected():
        raise PreconditionError("nested sets need a connected graph")
    whole = _arb(graph, values) if arb_value is None else arb_value
    if whole < 2 ** ell:
        raise PreconditionError(f"arboricity {whole} < 2^ell = {2 ** ell}")

    current = frozenset(graph.vertices)
    current_arb = whole
    sets = [current]
    anchors: List[int] = []
    connectors: Dict[int, Dict[int, Path]] = {}
    arb_values = [whole]
    for j in range(ell):
        sub = graph.induced(current)
        anchor = min(current)
        leveling = bfs_leveling(sub, anchor)
        _, component = heavy_level_component(sub, values, leveling, current_arb)
        connectors[j + 1] = {u: leveling.path_to(sub, u) for u in sorted(component)}
        anchors.append(anchor)
        current = component
        current_arb = _arb(graph.induced(current), values)
        sets.append(current)
        arb_values.append(current_arb)
        logger.debug(f"Step {j + 1}: |X| = {len(current)}, arb = {current_arb}")

    chain = NestedChain(graph, tuple(sets), ell, tuple(anchors), connectors, arb_values=tuple(arb_values))
    logger.info(f"Nested long-path sets: ell={ell}, |X|={len(current)}, arb(G[X])={current_arb}")
    return chain


def nested_sequence(graph: LGraph, values: ValueSet, ell: int, m: int,
                    arb_value: Optional[int] = None) -> NestedChain:
    """S_0 ⊇ ... ⊇ S_m with an S_m-path in every band L_i between any two vertices of S_m"""
    if ell < 1:
        raise PreconditionError(f"ell must be positive, got {ell}")
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    if not graph.is_connected():
        raise PreconditionError("nested sets need a connected graph")
    whole = _arb(graph, values) if arb_value is None else arb_value
    if whole < 2 ** (ell * m):
        raise PreconditionError(f"arboricity {whole} < 2^(ell*m) = {2 ** (ell * m)}")

    sets = [frozenset(graph.vertices)]
    sub_chains: List[NestedChain] = []
    arb_values = [whole]
    current_arb = whole
    for step in range(m):
        sub = graph.induced(sets[-1])
        step_chain = nested_long_path_sets(sub, values, ell, current_arb)
        sub_chains.append(step_chain)
        sets.append(step_chain.core)
        current_arb = step_chain.arb_values[-1]
        arb_values.append(current_arb)
    logger.info(f"Nested sequence: ell={ell}, m={m}, |S_m|={len(sets[-1])}")
    return NestedChain(graph, tuple(sets), ell, sub_chains=tuple(sub_chains), arb_values=tuple(arb_values))


# ===================== Linking paths =====================

@dataclass(frozen=True)
class Split:
    """A partition of S_m into an ordered T_1 and the rest T_2"""

    t1: Tuple[int, ...]
    t2: FrozenSet[int]

    @classmethod
    def of(cls, core: Iterable[int], t1: Sequence[int]) -> "Split":
        core_set = frozenset(core)
        missing = [v for v in t1 if v not in core_set]
        if missing:
            raise StageError("split", f"T1 vertices {missing} are not in S_m")
        if len(set(t1)) != len(t1):
            raise StageError("split", "T1 repeats a vertex")
        return cls(tuple(t1), core_set - set(t1))


def _join(first: Path, second: Path) -> Path:
    """first ends where second ends; walk first, then second backwards"""
    return tuple(first) + tuple(reversed(second))[1:]


def _check_pair(x: int, y: int, split: Optional[Split]) -> None:
    if x == y:
        raise PreconditionError(f"x and y must be distinct, got {x} twice")
    if split is not None and (x not in split.t1 or y not in split.t1):
        raise PreconditionError(f"{x} and {y} must both lie in T1")


def _check_bands(chain: NestedChain, bands: Sequence[int], size: int) -> None:
    if len(bands) != size or len(set(bands)) != size:
        raise PreconditionError(f"need {size} distinct band indices, got {list(bands)}")
    for i in bands:
        if not 1 <= i <= chain.m:
            raise PreconditionError(f"band index {i} outside 1..{chain.m}")


def link_path_via_vertex(chain: NestedChain, x: int, y: int, z: int, bands: Sequence[int],
                         split: Optional[Split] = None) -> Path:
    """P_{x,z} in the first band followed by P_{z,y} in the second; length >= 2*ell"""
    _check_pair(x, y, split)
    _check_bands(chain, bands, 2)
    if split is not None and z not in split.t2:
        raise PreconditionError(f"z = {z} must lie in T2")
    if z in (x, y):
        raise PreconditionError(f"z = {z} coincides with an endpoint")
    i1, i2 = bands
    return _join(chain.path(i1, x, z), chain.path(i2, y, z))


def arcs_between(cycle: Sequence[int], u: int, v: int) -> Tuple[Path, Path]:
    """The two u -> v arcs of a cycle, the one following the cycle order first"""
    cycle = tuple(cycle)
    n = len(cycle)
    iu, iv = cycle.index(u), cycle.index(v)
    forward = [cycle[(iu + s) % n] for s in range((iv - iu) % n + 1)]
    backward = [cycle[(iu - s) % n] for s in range((iu - iv) % n + 1)]
    return tuple(forward), tuple(backward)


def cycle_arcs(cycle: Sequence[int]) -> Tuple[int, int, Path, Path]:
    """The two lowest vertices u, v of a cycle and its two u -> v arcs (forward first)"""
    u, v = sorted(cycle)[:2]
    forward, backward = arcs_between(cycle, u, v)
    return u, v, forward, backward


def arc_sum_from_candidates(c1: Elem, c2: Elem, c3: Elem, c4: Elem) -> Elem:
    """(a1+q1+a4) + (a2+q2+a3) - (a1+a3) - (a2+a4) = q1 + q2 = γ(C)"""
    return c3 + c4 - c1 - c2


def link_path_avoiding_subgroup(chain: NestedChain, x: int, y: int, cycle: CycleCert,
                                subgroup: SubgroupDesc, bands: Sequence[int], values: ValueSet,
                                split: Optional[Split] = None) -> Path:
    """An (x, y)-path of length >= 2*ell whose value is outside the subgroup.

    The four candidates are tried in a fixed order:
    P_xu+P_uy, P_xv+P_vy, P_xu+Q1+P_vy, P_xv+Q2+P_uy.
    """
    _check_pair(x, y, split)
    _check_bands(chain, bands, 4)
    if values.meets_subgroup(subgroup):
        raise PreconditionError(f"subgroup {subgroup} meets A")
    graph = chain.graph
    cycle_vertices = tuple(cycle.vertices)
    gamma_c = cycle_value(graph, cycle_vertices)
    if not values.contains(gamma_c):
        raise PreconditionError(f"cycle value {gamma_c} is not in A")
    if split is not None and not set(cycle_vertices) <= split.t2:
        raise PreconditionError("the cycle must lie inside T2")
    if x in cycle_vertices or y in cycle_vertices:
        raise PreconditionError("x and y must avoid the cycle")

    u, v, q1, q2 = cycle_arcs(cycle_vertices)
    i1, i2, i3, i4 = bands
    p_xu = chain.path(i1, x, u)
    p_xv = chain.path(i2, x, v)
    p_yu = chain.path(i3, y, u)
    p_yv = chain.path(i4, y, v)

    candidates = [
        _join(p_xu, p_yu),
        _join(p_xv, p_yv),
        _join(tuple(p_xu) + tuple(q1[1:]), p_yv),
        _join(tuple(p_xv) + tuple(reversed(q2))[1:], p_yu),
    ]
    found_values = [path_value(graph, path) for path in candidates]
    for index, (path, value) in enumerate(zip(candidates, found_values)):
        if not in_subgroup(value, subgroup):
            logger.debug(f"Candidate {index + 1} avoids {subgroup}: value {value}")
            return path
    implied = arc_sum_from_candidates(*found_values)
    raise CounterexampleError(f"all four candidates lie in {subgroup}, forcing γ(C) = {implied} into it",
                              found_values)


def branch_pairs(count: int) -> List[Tuple[int, int]]:
    """Lexicographic pairs of 0..count-1, the fixed enumeration of branch pairs"""
    return list(itertools.combinations(range(count), 2))


@dataclass(frozen=True)
class StageInput:
    """Intermediate hypotheses supplied for a staged pipeline run"""

    ell: int
    sets: Tuple[FrozenSet[int], ...]
    bands: Mapping[BandKey, Path] = field(default_factory=dict)
    cycles: Tuple[Path, ...] = ()
    t1: Optional[Tuple[int, ...]] = None
    sizes: Optional[Tuple[int, ...]] = None

    def chain(self, graph: LGraph) -> NestedChain:
        return NestedChain.from_stage(graph, self.ell, self.sets, self.bands)
