"""
Group-Labelled Graphs
Simple undirected graphs with an abelian-group label on every edge, the value
sets A that cycle values are tested against, and relabelling over a quotient group.
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from glarb.abelian import (
    INFINITE,
    Elem,
    GroupDesc,
    Order,
    SubgroupDesc,
    format_elem_list,
    in_subgroup,
    quotient,
    subgroup_elements,
)
from glarb.errors import DescriptorMismatchError, MalformedInputError, PreconditionError, UnknownEdgeError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class LGraph:
    """An immutable Γ-labelled simple graph.

    Vertices are integer ids; induced subgraphs keep the ids of the parent so
    certificates found in a subgraph refer to the original graph.
    """

    __slots__ = ["group", "vertices", "_labels", "_adjacency"]

    def __init__(self, group: GroupDesc, vertices: Iterable[int], labels: Mapping[Edge, Elem]):
        self.group = group
        self.vertices: Tuple[int, ...] = tuple(sorted(set(vertices)))
        vertex_set = set(self.vertices)
        self._labels: Dict[Edge, Elem] = {}
        adjacency: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for (u, v), label in labels.items():
            if u == v:
                raise MalformedInputError(f"loop at vertex {u}")
            if u not in vertex_set or v not in vertex_set:
                raise MalformedInputError(f"edge {u} {v} uses a vertex outside the graph")
            if label.group != group:
                raise DescriptorMismatchError(f"label {label} on edge {u} {v} is not an element of {group}")
            key = edge_key(u, v)
            if key in self._labels:
                raise MalformedInputError(f"duplicate edge {u} {v}")
            self._labels[key] = label
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._adjacency = {v: tuple(sorted(ns)) for v, ns in adjacency.items()}

    @classmethod
    def build(cls, group: GroupDesc, n: int, edges: Iterable[Tuple[int, int, Elem]]) -> "LGraph":
        """Graph on the dense ids 0..n-1"""
        labels: Dict[Edge, Elem] = {}
        for u, v, label in edges:
            if edge_key(u, v) in labels:
                raise MalformedInputError(f"duplicate edge {u} {v}")
            labels[edge_key(u, v)] = label
        return cls(group, range(n), labels)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self._adjacency

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._labels

    def label(self, u: int, v: int) -> Elem:
        try:
            return self._labels[edge_key(u, v)]
        except KeyError:
            raise UnknownEdgeError(f"{u} {v} is not an edge")

    def edges(self) -> List[Tuple[int, int, Elem]]:
        return [(u, v, self._labels[(u, v)]) for (u, v) in sorted(self._labels)]

    def edge_count(self) -> int:
        return len(self._labels)

    def induced(self, subset: Iterable[int]) -> "LGraph":
        keep = set(subset)
        missing = keep - set(self.vertices)
        if missing:
            raise PreconditionError(f"vertices {sorted(missing)} are not in the graph")
        labels = {e: a for e, a in self._labels.items() if e[0] in keep and e[1] in keep}
        return LGraph(self.group, keep, labels)

    def without(self, removed: Iterable[int]) -> "LGraph":
        gone = set(removed)
        return self.induced(v for v in self.vertices if v not in gone)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for (u, v), label in self._labels.items():
            graph.add_edge(u, v, label=label)
        return graph

    def is_connected(self) -> bool:
        return self.n > 0 and nx.is_connected(self.to_networkx())

    def components(self) -> List[Tuple[int, ...]]:
        """Vertex sets of the connected components, ordered by smallest vertex"""
        comps = [tuple(sorted(c)) for c in nx.connected_components(self.to_networkx())]
        return sorted(comps)

    def relabel(self, target: GroupDesc, projection) -> "LGraph":
        return LGraph(target, self.vertices, {e: projection(a) for e, a in self._labels.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, LGraph) and self.group == other.group
                and self.vertices == other.vertices and self._labels == other._labels)

    def __hash__(self) -> int:
        return hash((self.group, self.vertices, tuple(sorted(self._labels.items()))))

    def __repr__(self) -> str:
        return f"LGraph(group={self.group}, n={self.n}, m={self.edge_count()})"


def disjoint_union(first: LGraph, second: LGraph) -> LGraph:
    """Union with the second graph's vertices shifted past the first's"""
    if first.group != second.group:
        raise DescriptorMismatchError(f"cannot join graphs over {first.group} and {second.group}")
    shift = (max(first.vertices) + 1) if first.vertices else 0
    labels = {(u, v): a for u, v, a in first.edges()}
    labels.update({(u + shift, v + shift): a for u, v, a in second.edges()})
    vertices = list(first.vertices) + [v + shift for v in second.vertices]
    return LGraph(first.group, vertices, labels)


# ===================== γ-values =====================

def gamma_value(graph: LGraph, edges: Iterable[Edge]) -> Elem:
    """Sum of the labels of an edge set; the empty set gives zero"""
    total = graph.group.zero()
    for u, v in edges:
        total = total + graph.label(u, v)
    return total


def path_edges(path: Sequence[int]) -> List[Edge]:
    return [(path[i], path[i + 1]) for i in range(len(path) - 1)]


def cycle_edges(cycle: Sequence[int]) -> List[Edge]:
    return path_edges(cycle) + [(cycle[-1], cycle[0])]


def path_value(graph: LGraph, path: Sequence[int]) -> Elem:
    return gamma_value(graph, path_edges(path))


def cycle_value(graph: LGraph, cycle: Sequence[int]) -> Elem:
    return gamma_value(graph, cycle_edges(cycle))


# ===================== Value sets =====================

class ValueSet(ABC):
    """A decidable subset A of the label group"""

    kind = ""

    def __init__(self, group: GroupDesc, elements: Iterable[Elem]):
        self.group = group
        self.elements: Tuple[Elem, ...] = tuple(sorted(set(elements)))
        for e in self.elements:
            if e.group != group:
                raise DescriptorMismatchError(f"{e} is not an element of {group}")

    @abstractmethod
    def contains(self, a: Elem) -> bool:
        pass

    def __contains__(self, a: Elem) -> bool:
        return self.contains(a)

    @property
    @abstractmethod
    def omega(self) -> Order:
        """|Γ∖A|, possibly INFINITE"""
        pass

    @abstractmethod
    def is_empty(self) -> bool:
        pass

    @abstractmethod
    def meets_subgroup(self, subgroup: SubgroupDesc) -> bool:
        """Whether A ∩ Λ is non-empty"""
        pass

    def require_nonempty(self) -> None:
        if self.is_empty():
            raise PreconditionError(f"value set A = {self.describe()} is empty")

    def complement(self) -> Optional[Tuple[Elem, ...]]:
        """Γ∖A when it is finite and listable"""
        if self.group.is_finite:
            return tuple(a for a in self.group.elements() if not self.contains(a))
        return None

    def describe(self) -> str:
        return f"{self.kind} {format_elem_list(self.elements)}"

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.group == other.group and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((self.kind, self.group, self.elements))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"


class FiniteSet(ValueSet):
    """A listed finite set"""

    kind = "finite"

    def contains(self, a: Elem) -> bool:
        return a in self.elements

    @property
    def omega(self) -> Order:
        if not self.group.is_finite:
            return INFINITE
        return self.group.order() - len(self.elements)

    def is_empty(self) -> bool:
        return not self.elements

    def meets_subgroup(self, subgroup: SubgroupDesc) -> bool:
        return any(in_subgroup(a, subgroup) for a in self.elements)


class CofiniteSet(ValueSet):
    """Everything except a listed finite complement"""

    kind = "cofinite"

    def contains(self, a: Elem) -> bool:
        if a.group != self.group:
            raise DescriptorMismatchError(f"{a} is not an element of {self.group}")
        return a not in self.elements

    @property
    def omega(self) -> Order:
        return len(self.elements)

    def is_empty(self) -> bool:
        return self.group.is_finite and len(self.elements) == self.group.order()

    def meets_subgroup(self, subgroup: SubgroupDesc) -> bool:
        if not subgroup.is_finite:
            return True
        return any(a not in self.elements for a in subgroup_elements(subgroup))

    def complement(self) -> Optional[Tuple[Elem, ...]]:
        return self.elements


class SubgroupComplement(ValueSet):
    """A = Γ∖Λ for the subgroup Λ generated by the listed elements"""

    kind = "co-subgroup"

    def __init__(self, group: GroupDesc, generators: Iterable[Elem]):
        super().__init__(group, generators)
        self.subgroup = SubgroupDesc(group, self.elements)

    def contains(self, a: Elem) -> bool:
        return not in_subgroup(a, self.subgroup)

    @property
    def omega(self) -> Order:
        if not self.subgroup.is_finite:
            return INFINITE
        return len(subgroup_elements(self.subgroup))

    def is_empty(self) -> bool:
        return all(in_subgroup(self.group.unit(i), self.subgroup) for i in range(self.group.rank))

    def meets_subgroup(self, subgroup: SubgroupDesc) -> bool:
        return any(not in_subgroup(g, self.subgroup) for g in subgroup.generators)

    def complement(self) -> Optional[Tuple[Elem, ...]]:
        if not self.subgroup.is_finite:
            return None
        return tuple(subgroup_elements(self.subgroup))


# ===================== Quotients =====================

def quotient_relabel(graph: LGraph, subgroup: SubgroupDesc) -> LGraph:
    """The same graph over Γ/Λ with labels γ(e) + Λ"""
    target, projection = quotient(graph.group, subgroup)
    return graph.relabel(target, projection)


def quotient_reduction(graph: LGraph, values: SubgroupComplement) -> Tuple[LGraph, CofiniteSet]:
    """Reduce A = Γ∖Λ to A* = (Γ/Λ)∖{0}; A-cycles are preserved in both directions"""
    values.require_nonempty()
    target, projection = quotient(graph.group, values.subgroup)
    reduced = graph.relabel(target, projection)
    logger.info(f"Reduced {graph.group} modulo {values.subgroup} to {target}")
    return reduced, CofiniteSet(target, [target.zero()])

