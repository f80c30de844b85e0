import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    PROPERTY_SETTINGS,
    SMALL_GROUPS,
    Z,
    Z2xZ2,
    Z3,
    Z4,
    Z5,
    cofinite,
    finite,
    labelled,
    small_labels,
    uniform,
)
from glarb.certificates import SubdivCert, verify
from glarb.errors import InputConsistencyError, PreconditionError, StageError
from glarb.graph import SubgroupComplement, path_value
from glarb.leveling import StageInput
from glarb.subdivision import (
    MultiSubdivision,
    StageReport,
    double_path_identity,
    extract_a_subdivision,
    find_combination,
    glue_relay_routes,
    long_cycle_in_subdivision,
    subdivision_from_uniform,
)


def trivial_subdivision(n):
    """K_n as a subdivision of itself: every branching path is an edge"""
    return SubdivCert(tuple(range(n)), {(i, j): (i, j) for i, j in itertools.combinations(range(n), 2)}, 1)


def nested(core, *relays):
    """S_m = core, and S_{i-1} adds relays[i-1] (a vertex, or None for an empty level)"""
    sets = [frozenset(core)]
    for relay in reversed(relays):
        sets.insert(0, sets[0] | ({relay} if relay is not None else set()))
    return tuple(sets)


@st.composite
def subdivided_cliques(draw):
    """A random-labelled subdivision of K_t, t in 4..6, and four distinct branch positions"""
    group = draw(st.sampled_from(SMALL_GROUPS))
    t = draw(st.integers(4, 6))
    paths, edges = {}, []
    fresh = t
    for i, j in itertools.combinations(range(t), 2):
        inner = draw(st.integers(0, 2))
        path = (i, *range(fresh, fresh + inner), j)
        fresh += inner
        paths[(i, j)] = path
        edges += [(u, v, draw(small_labels(group))) for u, v in zip(path, path[1:])]
    positions = draw(st.permutations(range(t)))[:4]
    return labelled(group, fresh, edges), SubdivCert(tuple(range(t)), paths, 1), tuple(positions)


# ===================== Staged extraction =====================

class TestDirectPath:
    """T1 = (0, 1) joined through the triangle (2, 3, 4) by one relay per band"""

    STAGE = StageInput(
        ell=1,
        sets=nested(range(5), 5, 6),
        bands={(1, 0, 2): (0, 5, 2), (2, 1, 2): (1, 6, 2)},
        cycles=((2, 3, 4),),
        t1=(0, 1),
    )

    def graph(self, group=Z3):
        return labelled(group, 7, [(2, 3, 0), (3, 4, 1), (2, 4, 0), (0, 5, 1), (5, 2, 0), (1, 6, 0), (6, 2, 0)])

    def test_joined_path_is_already_in_a(self):
        graph = self.graph()
        values = cofinite(Z3, 0)
        cert = extract_a_subdivision(graph, values, 2, 2, stage=self.STAGE)
        assert cert.branch == (0, 1)
        assert cert.paths[(0, 1)] == (0, 5, 2, 6, 1)
        assert verify(graph, values, cert)

    def test_subgroup_complement(self):
        graph = self.graph(Z)
        values = SubgroupComplement(Z, [Z.elem(3)])
        cert = extract_a_subdivision(graph, values, 2, 2, stage=self.STAGE)
        assert cert.paths[(0, 1)] == (0, 5, 2, 6, 1)
        assert verify(graph, values, cert)

    def test_stage_needs_t1(self):
        stage = StageInput(ell=1, sets=self.STAGE.sets, bands=self.STAGE.bands, cycles=self.STAGE.cycles)
        with pytest.raises(StageError) as info:
            extract_a_subdivision(self.graph(), cofinite(Z3, 0), 2, 2, stage=stage)
        assert info.value.stage == "split"

    def test_t1_must_hold_t_vertices(self):
        stage = StageInput(ell=1, sets=self.STAGE.sets, bands=self.STAGE.bands, cycles=self.STAGE.cycles, t1=(0,))
        with pytest.raises(StageError, match="T1 has 1 vertices"):
            extract_a_subdivision(self.graph(), cofinite(Z3, 0), 2, 2, stage=stage)

    def test_cycles_must_avoid_t1(self):
        stage = StageInput(ell=1, sets=self.STAGE.sets, bands=self.STAGE.bands, cycles=((2, 3, 4),), t1=(0, 2))
        with pytest.raises(StageError, match="leaves the core set"):
            extract_a_subdivision(self.graph(), cofinite(Z3, 0), 2, 2, stage=stage)

    def test_full_mode_checks_the_threshold(self):
        with pytest.raises(PreconditionError, match="f_1\\(2,2\\)"):
            extract_a_subdivision(self.graph(), cofinite(Z3, 0), 2, 2)

    def test_arguments(self):
        with pytest.raises(PreconditionError):
            extract_a_subdivision(self.graph(), cofinite(Z3, 0), 1, 2, stage=self.STAGE)


class TestUniformValue:
    """T1 = (0, 1, 2); every joined path has value 1, and 2 * 1 lies in A"""

    STAGE = StageInput(
        ell=1,
        sets=nested(range(12), 12, 13, None, None, 14, 15, None, None, 16, 17),
        bands={
            (1, 0, 3): (0, 12, 3), (2, 1, 3): (1, 13, 3),
            (5, 0, 6): (0, 14, 6), (6, 2, 6): (2, 15, 6),
            (9, 1, 9): (1, 16, 9), (10, 2, 9): (2, 17, 9),
        },
        cycles=((3, 4, 5), (6, 7, 8), (9, 10, 11)),
        t1=(0, 1, 2),
        sizes=(3, 3),
    )

    @staticmethod
    def graph():
        edges = []
        for a, b, c in ((3, 4, 5), (6, 7, 8), (9, 10, 11)):
            edges += [(a, b, 0), (b, c, 0), (a, c, 0)]
        edges += [(0, 12, 1), (12, 3, 0), (1, 13, 0), (13, 3, 0), (0, 14, 1), (14, 6, 0),
                  (2, 15, 0), (15, 6, 0), (1, 16, 1), (16, 9, 0), (2, 17, 0), (17, 9, 0)]
        return labelled(Z4, 18, edges)

    def test_paths_are_chained(self):
        graph = self.graph()
        values = cofinite(Z4, 1)
        assert self.STAGE.chain(graph).m == 10
        cert = extract_a_subdivision(graph, values, 2, 2, stage=self.STAGE)
        assert cert.branch == (0, 1)
        assert cert.paths[(0, 1)] == (0, 14, 6, 15, 2, 17, 9, 16, 1)
        assert verify(graph, values, cert, d=2)

    def test_missing_clique_is_reported(self):
        stage = StageInput(ell=1, sets=self.STAGE.sets, bands=self.STAGE.bands, cycles=self.STAGE.cycles,
                           t1=self.STAGE.t1, sizes=(4,))
        report = extract_a_subdivision(self.graph(), cofinite(Z4, 1), 2, 2, stage=stage)
        assert isinstance(report, StageReport)
        assert report.stage == "ramsey-J"
        assert report.to_dict()["success"] is False

    def test_chaining_directly(self):
        graph = uniform(Z4, 3, 1)
        cert = subdivision_from_uniform(graph, trivial_subdivision(3), cofinite(Z4, 1), 1, 2)
        assert cert.paths[(0, 1)] == (0, 2, 1)

    def test_chaining_preconditions(self):
        graph = uniform(Z4, 3, 1)
        with pytest.raises(PreconditionError, match="K_5"):
            subdivision_from_uniform(graph, trivial_subdivision(3), finite(Z4, 3), 3, 2)
        with pytest.raises(InputConsistencyError):
            subdivision_from_uniform(graph, trivial_subdivision(3), finite(Z4, 3), 1, 2)
        with pytest.raises(PreconditionError, match="lies in A"):
            subdivision_from_uniform(graph, trivial_subdivision(3), finite(Z4, 1), 1, 2)
        mixed = labelled(Z4, 3, [(0, 1, 1), (1, 2, 1), (0, 2, 2)])
        with pytest.raises(PreconditionError, match="2 different values"):
            subdivision_from_uniform(mixed, trivial_subdivision(3), cofinite(Z4, 1), 1, 2)


class TestGrowingFamilies:
    """The joined path has value (1,0), outside A; a second round escapes ⟨(1,0)⟩"""

    STAGE = StageInput(
        ell=1,
        sets=nested(range(8), 8, 9, None, None, 10, 11, 12, 13),
        bands={
            (1, 0, 2): (0, 8, 2), (2, 1, 2): (1, 9, 2),
            (5, 0, 5): (0, 10, 5), (6, 0, 6): (0, 11, 6), (7, 1, 5): (1, 12, 5), (8, 1, 6): (1, 13, 6),
        },
        cycles=((2, 3, 4), (5, 6, 7)),
        t1=(0, 1),
        sizes=(2, 2, 2),
    )

    @staticmethod
    def graph():
        edges = [(2, 3, (0, 1)), (3, 4, (0, 0)), (2, 4, (0, 0)),
                 (5, 6, (0, 0)), (6, 7, (0, 1)), (5, 7, (0, 0)),
                 (0, 8, (1, 0)), (8, 2, (0, 0)), (1, 9, (0, 0)), (9, 2, (0, 0))]
        edges += [(a, b, (0, 0)) for a, b in ((0, 10), (10, 5), (0, 11), (11, 6), (1, 12), (12, 5), (1, 13), (13, 6))]
        return labelled(Z2xZ2, 14, edges)

    def test_second_round_finds_an_a_path(self):
        graph = self.graph()
        values = cofinite(Z2xZ2, (0, 0), (1, 0))
        cert = extract_a_subdivision(graph, values, 2, 2, stage=self.STAGE)
        assert cert.paths[(0, 1)] == (0, 11, 6, 7, 5, 12, 1)
        assert verify(graph, values, cert)

    def test_running_out_of_cycles(self):
        stage = StageInput(ell=1, sets=self.STAGE.sets, bands=self.STAGE.bands, cycles=((2, 3, 4),),
                           t1=(0, 1), sizes=(2, 2, 2))
        with pytest.raises(StageError) as info:
            extract_a_subdivision(self.graph(), cofinite(Z2xZ2, (0, 0), (1, 0)), 2, 2, stage=stage)
        assert info.value.stage == "cycles"


class TestRelayGluing:
    def test_smallest_combination(self):
        assert find_combination([Z.elem(2), Z.elem(3)], finite(Z, 7), 3) == (2, 1)
        assert find_combination([Z.elem(2), Z.elem(3)], finite(Z, 100), 3) is None
        assert find_combination([Z4.elem(2)], finite(Z4, 0), 3) is None

    def test_routes_take_one_path_per_coefficient(self):
        multi = MultiSubdivision((10, 11, 12))
        multi.add_family({(10, 11): (10, 20, 11), (10, 12): (10, 21, 12), (11, 12): (11, 22, 12)}, Z.elem(2))
        multi.add_family({(10, 11): (10, 30, 11), (10, 12): (10, 31, 12), (11, 12): (11, 32, 12)}, Z.elem(3))
        assert multi.k == 2
        assert multi.path(1, 12, 11) == (12, 32, 11)
        cert = glue_relay_routes(multi, 2, (1, 1), 2)
        assert cert.branch == (10, 11)
        assert cert.paths[(0, 1)] == (10, 21, 12, 32, 11)
        with pytest.raises(StageError) as info:
            glue_relay_routes(multi, 2, (2, 1), 2)
        assert info.value.stage == "relay-budget"

    def test_restriction_keeps_the_chosen_pairs(self):
        multi = MultiSubdivision((1, 2, 3))
        multi.add_family({(1, 2): (1, 2), (1, 3): (1, 3), (2, 3): (2, 3)}, Z.elem(1))
        smaller = multi.restrict((1, 3))
        assert smaller.families == [{(1, 3): (1, 3)}]
        assert smaller.family_values == [Z.elem(1)]


# ===================== Long cycles inside a subdivision =====================

class TestCycleInSubdivision:
    def test_four_cycles_in_each_block(self):
        graph = uniform(Z3, 21, 1)
        values = cofinite(Z3, 0)
        cert = long_cycle_in_subdivision(graph, trivial_subdivision(21), values, 1, 3, r=4, beta=4, mu=4)
        assert cert.vertices == (0, 2, 1, 5, 9, 10, 8, 4)
        assert cert.value == Z3.elem(2)
        assert verify(graph, values, cert, d=3)

    def test_uniform_blocks(self):
        graph = uniform(Z5, 32, 1)
        values = cofinite(Z5, 3, 4)
        cert = long_cycle_in_subdivision(graph, trivial_subdivision(32), values, 1, 3, r=5, beta=5, mu=5)
        assert cert.vertices == (0, 1, 6, 11, 10, 5)
        assert cert.value == Z5.elem(1)

    def test_offset_clique_missing(self):
        graph = uniform(Z5, 32, 1)
        report = long_cycle_in_subdivision(graph, trivial_subdivision(32), cofinite(Z5, 3, 4), 1, 3,
                                           r=5, beta=5, mu=6)
        assert report == StageReport("ramsey-order-two", "no K_6 with constant offset in block [0, 1, 2, 3, 4]")

    def test_preconditions(self):
        graph = uniform(Z3, 21, 1)
        with pytest.raises(PreconditionError, match="not an \\(A,1\\)-subdivision"):
            long_cycle_in_subdivision(graph, trivial_subdivision(21), finite(Z3, 0), 1, 3, r=4, beta=4, mu=4)
        with pytest.raises(PreconditionError, match="K_24"):
            long_cycle_in_subdivision(graph, trivial_subdivision(21), cofinite(Z3, 0), 1, 3, r=5, beta=4, mu=4)
        klein = uniform(Z2xZ2, 4, (0, 1))
        with pytest.raises(PreconditionError, match="order at most two"):
            long_cycle_in_subdivision(klein, trivial_subdivision(4), cofinite(Z2xZ2, (0, 0)), 1, 3)

    def test_blocks_need_four_positions(self):
        graph = uniform(Z3, 15, 2)
        with pytest.raises(PreconditionError, match="r = 3"):
            long_cycle_in_subdivision(graph, trivial_subdivision(15), cofinite(Z3, 1), 1, 3, r=3, beta=3, mu=3)

    def test_clique_sizes_need_three_vertices(self):
        graph = uniform(Z3, 21, 1)
        with pytest.raises(PreconditionError, match="beta = 2"):
            long_cycle_in_subdivision(graph, trivial_subdivision(21), cofinite(Z3, 0), 1, 3, r=4, beta=2, mu=4)

    def test_relay_positions_are_counted_per_block(self):
        graph = uniform(Z3, 20, 1)
        with pytest.raises(PreconditionError, match="K_21, got K_20"):
            long_cycle_in_subdivision(graph, trivial_subdivision(20), cofinite(Z3, 0), 1, 3, r=4, beta=4, mu=4)

    @PROPERTY_SETTINGS
    @given(labels=st.lists(st.integers(0, 3), min_size=6, max_size=6))
    def test_doubled_path_identity(self, labels):
        pairs = list(itertools.combinations(range(4), 2))
        graph = labelled(Z4, 4, [(u, v, a) for (u, v), a in zip(pairs, labels)])
        lhs, rhs = double_path_identity(graph, trivial_subdivision(4), 0, 1, 2, 3)
        assert lhs == rhs == 2 * Z4.elem(labels[0])

    @settings(PROPERTY_SETTINGS, max_examples=200)
    @given(data=subdivided_cliques())
    def test_doubled_path_identity_on_random_subdivisions(self, data):
        graph, subdivision, (a, b, x, y) = data
        lhs, rhs = double_path_identity(graph, subdivision, a, b, x, y)
        assert lhs == rhs == 2 * path_value(graph, subdivision.branch_path(a, b))

    def test_identity_needs_four_positions(self):
        with pytest.raises(PreconditionError):
            double_path_identity(uniform(Z4, 4, 1), trivial_subdivision(4), 0, 1, 1, 3)
