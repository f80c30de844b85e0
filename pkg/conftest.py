"""
Shared fixtures and strategies for the test suites.
"""

import itertools
from typing import Iterable, Optional, Sequence, Tuple, Union

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from glarb.abelian import GroupDesc
from glarb.graph import CofiniteSet, FiniteSet, LGraph

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)

Z = GroupDesc(1)
Z2 = GroupDesc(0, (2,))
Z3 = GroupDesc(0, (3,))
Z4 = GroupDesc(0, (4,))
Z5 = GroupDesc(0, (5,))
Z2xZ2 = GroupDesc(0, (2, 2))

SMALL_GROUPS = [Z, Z2, Z3, Z4, Z2xZ2]

Label = Union[int, Sequence[int]]


def elem(group: GroupDesc, label: Label):
    if isinstance(label, int):
        return group.elem(label)
    return group.elem(*label)


def labelled(group: GroupDesc, n: int, edges: Iterable[Tuple[int, int, Label]]) -> LGraph:
    """LGraph on 0..n-1 from (u, v, label) triples; labels as ints or coordinate tuples"""
    return LGraph.build(group, n, [(u, v, elem(group, a)) for u, v, a in edges])


def uniform(group: GroupDesc, n: int, label: Label) -> LGraph:
    return labelled(group, n, [(u, v, label) for u, v in itertools.combinations(range(n), 2)])


def finite(group: GroupDesc, *labels: Label) -> FiniteSet:
    return FiniteSet(group, [elem(group, a) for a in labels])


def cofinite(group: GroupDesc, *labels: Label) -> CofiniteSet:
    return CofiniteSet(group, [elem(group, a) for a in labels])


def small_labels(group: GroupDesc):
    if group.free_rank:
        return st.tuples(*([st.integers(-2, 2)] * group.rank))
    return st.tuples(*(st.integers(0, n - 1) for n in group.torsion_moduli))


def _value_set(draw, group: GroupDesc, kind: Optional[str]):
    listed = draw(st.lists(small_labels(group), min_size=1, max_size=2, unique=True))
    if kind is None:
        kind = draw(st.sampled_from(["finite", "cofinite"]))
    if kind == "finite":
        return finite(group, *listed)
    values = cofinite(group, *listed)
    return cofinite(group, listed[0]) if values.is_empty() else values


def labelled_graphs(max_n: int = 7, groups: Sequence[GroupDesc] = tuple(SMALL_GROUPS),
                    kind: Optional[str] = None):
    """(graph, A) over one of the small groups; `kind` pins A to one form, finite or cofinite"""
    return _labelled_graphs(max_n, tuple(groups), kind)


@st.composite
def _labelled_graphs(draw, max_n, groups, kind):
    group = draw(st.sampled_from(list(groups)))
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    edges = [(u, v, draw(small_labels(group))) for u, v in chosen]
    return labelled(group, n, edges), _value_set(draw, group, kind)


@st.composite
def connected_graphs(draw, max_n: int = 7, groups: Sequence[GroupDesc] = tuple(SMALL_GROUPS)):
    """(graph, A) on a random spanning tree plus random chords"""
    group = draw(st.sampled_from(list(groups)))
    n = draw(st.integers(2, max_n))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    chords = [p for p in itertools.combinations(range(n), 2) if p not in tree]
    chosen = draw(st.lists(st.sampled_from(chords), unique=True, max_size=len(chords))) if chords else []
    edges = [(u, v, draw(small_labels(group))) for u, v in tree + chosen]
    return labelled(group, n, edges), _value_set(draw, group, None)


@st.composite
def dense_graphs(draw, cores: Sequence[int] = (7, 8), max_extra: int = 3):
    """(graph, A = {3}) over Z: a K_c of 1-labels with random pendant structure.

    Triangles are the only A-cycles of the clique, so arb >= ceil(c / 2).
    """
    core = draw(st.sampled_from(list(cores)))
    extra = draw(st.integers(0, max_extra))
    edges = [(u, v, 1) for u, v in itertools.combinations(range(core), 2)]
    for v in range(core, core + extra):
        anchors = draw(st.lists(st.integers(0, v - 1), min_size=1, max_size=3, unique=True))
        edges += [(u, v, draw(st.integers(-2, 2))) for u in anchors]
    return labelled(Z, core + extra, edges), finite(Z, 3)


@pytest.fixture
def k4_z3():
    """K_4 over Z/3 with every label 1"""
    return uniform(Z3, 4, 1)


@pytest.fixture
def k5_lower_bound_instance():
    """K_5 over Z with every label 1 and A = {3}"""
    return uniform(Z, 5, 1), finite(Z, 3)
