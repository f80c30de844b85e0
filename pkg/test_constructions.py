import itertools

import networkx as nx
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import PROPERTY_SETTINGS, Z, Z2, Z3, Z5, cofinite, finite
from glarb.abelian import INFINITE, GroupDesc
from glarb.arboricity import arb_exact
from glarb.constructions import (
    blocks_construction,
    eta_encoding,
    lower_bound_instance,
    lower_bound_params,
    unbounded_instance,
    uniform_clique,
)
from glarb.cycles import find_a_cycle
from glarb.errors import PreconditionError, UniquenessUndecidableError
from glarb.graph import SubgroupComplement, ValueSet


class PrimeMultiples(ValueSet):
    """Elements of Z whose absolute value is prime"""

    kind = "primes"

    def contains(self, a):
        return bool(sympy.isprime(abs(a.coords[0])))

    @property
    def omega(self):
        return INFINITE

    def is_empty(self):
        return False

    def meets_subgroup(self, subgroup):
        return True


@st.composite
def plain_graphs(draw, max_n=8):
    """(n, edges, marked) with marked a random subset of the edges"""
    n = draw(st.integers(3, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    marked = [e for e in edges if draw(st.booleans())]
    return n, edges, marked


def has_odd_cycle(n, edges, marked):
    """Some cycle meets `marked` an odd number of times; parity is linear on the cycle space,
    so checking a cycle basis suffices"""
    plain = nx.Graph()
    plain.add_nodes_from(range(n))
    plain.add_edges_from(edges)
    marked = {frozenset(e) for e in marked}
    for cycle in nx.cycle_basis(plain):
        crossings = sum(frozenset(e) in marked for e in zip(cycle, cycle[1:] + cycle[:1]))
        if crossings % 2:
            return True
    return False


class TestCliques:
    def test_uniform_clique(self, k4_z3):
        assert uniform_clique(Z3, Z3.elem(1), 4) == k4_z3
        with pytest.raises(PreconditionError):
            uniform_clique(Z3, Z3.elem(1), 0)
        with pytest.raises(PreconditionError):
            uniform_clique(Z3, Z.elem(1), 3)

    def test_blocks_layout(self):
        graph = blocks_construction(Z, Z.elem(1), 3)
        assert graph.n == 9
        assert graph.label(3, 5) == Z.elem(1)
        assert graph.label(2, 3) == Z.zero()

    def test_blocks_need_arboricity_t(self):
        values = finite(Z, 1)
        assert arb_exact(blocks_construction(Z, Z.elem(1), 2, values), values).value == 2
        assert arb_exact(blocks_construction(Z, Z.elem(1), 3, values), values).value == 3

    def test_blocks_preconditions(self):
        with pytest.raises(PreconditionError, match="finite order"):
            blocks_construction(Z3, Z3.elem(1), 2)
        with pytest.raises(PreconditionError, match="not in A"):
            blocks_construction(Z, Z.elem(1), 2, finite(Z, 2))


class TestParityEncoding:
    def test_triangle_with_one_marked_edge(self):
        graph, values = eta_encoding(3, [(0, 1), (1, 2), (0, 2)], [(2, 1)])
        assert graph.group == Z2
        assert graph.label(1, 2) == Z2.elem(1)
        assert values == finite(Z2, 1)
        assert arb_exact(graph, values).value == 2

    def test_evenly_marked_cycles_are_not_a_cycles(self):
        graph, values = eta_encoding(4, [(0, 1), (1, 2), (2, 3), (0, 3)], [(0, 1), (2, 3)])
        assert find_a_cycle(graph, values) is None

    def test_marked_pairs_must_be_edges(self):
        with pytest.raises(PreconditionError, match="not edges"):
            eta_encoding(3, [(0, 1)], [(1, 2)])

    @PROPERTY_SETTINGS
    @given(data=plain_graphs())
    def test_a_cycles_are_the_odd_cycles(self, data):
        n, edges, marked = data
        graph, values = eta_encoding(n, edges, marked)
        found = find_a_cycle(graph, values)
        assert (found is not None) == has_odd_cycle(n, edges, marked)
        if found is not None:
            cycle = found.vertices
            crossings = {frozenset(e) for e in marked} & {frozenset(e) for e in zip(cycle, cycle[1:] + cycle[:1])}
            assert len(crossings) % 2 == 1
        assert (arb_exact(graph, values).value == 1) == (found is None)


class TestLowerBounds:
    @pytest.mark.parametrize("values, x, expected", [
        (finite(Z, 100), Z.elem(1), 100),
        (finite(Z, 3, 6), Z.elem(1), None),
        (finite(Z, -6), Z.elem(-2), 3),
        (finite(Z, 2), Z.elem(1), None),
        (finite(Z5, 1), Z5.elem(2), None),
        (cofinite(Z, 3), Z.elem(1), None),
        (finite(GroupDesc(2), (3, 6), (3, 5)), GroupDesc(2).elem(1, 2), 3),
    ])
    def test_unique_multiplier(self, values, x, expected):
        assert lower_bound_params(values, x) == expected

    @pytest.mark.parametrize("x", [Z.elem(1), Z.elem(2), Z.elem(3)])
    def test_subgroup_complement_has_no_unique_multiplier(self, x):
        assert lower_bound_params(SubgroupComplement(Z, [Z.elem(2)]), x) is None

    def test_unlisted_value_sets_are_undecidable(self):
        with pytest.raises(UniquenessUndecidableError):
            lower_bound_params(PrimeMultiples(Z, []), Z.elem(1))

    def test_instance_reaches_t(self, k5_lower_bound_instance):
        graph, values = k5_lower_bound_instance
        built = lower_bound_instance(values, Z.elem(1), 3)
        assert built == graph
        assert arb_exact(built, values).value == 3

    def test_instance_needs_a_unique_multiplier(self):
        with pytest.raises(PreconditionError):
            lower_bound_instance(finite(Z, 3, 6), Z.elem(1), 3)


class TestUnboundedFamily:
    @pytest.mark.parametrize("values, case, element, ell", [
        (finite(Z3, 0), 1, Z3.elem(0), 3),
        (finite(Z, 6), 1, Z.elem(2), 3),
        (cofinite(Z, 3), 1, Z.elem(1), 4),
        (SubgroupComplement(Z, [Z.elem(2)]), 1, Z.elem(1), 3),
        (finite(Z, 1), 2, Z.elem(1), None),
    ])
    def test_cases(self, values, case, element, ell):
        graph, found_case, found_element, found_ell = unbounded_instance(values, 2)
        assert (found_case, found_element, found_ell) == (case, element, ell)
        assert arb_exact(graph, values).value >= 2

    def test_case_one_clique_size(self):
        graph, _, _, ell = unbounded_instance(cofinite(Z, 3), 3)
        assert graph.n == (ell - 1) * 2 + 1

    def test_case_two_uses_blocks(self):
        graph, case, _, _ = unbounded_instance(finite(Z, 1), 3)
        assert case == 2
        assert graph.n == 9

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            unbounded_instance(finite(Z, 1), 0)
        with pytest.raises(PreconditionError):
            unbounded_instance(finite(Z), 2)
