import pytest

from conftest import Z, Z2, Z3, cofinite, finite, labelled
from glarb.abelian import INFINITE
from glarb.certificates import verify
from glarb.errors import InputConsistencyError, PreconditionError, StageError
from glarb.graph import SubgroupComplement
from glarb.leveling import StageInput
from glarb.long_cycle import (
    PigeonholeArcs,
    effective_omega,
    extract_long_a_cycle,
    glue_pigeonhole_cycle,
    heaviest_component,
    split_cycle,
)

CYCLES = ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11))

# relay 12 + i sits alone in level i + 1
STAGE = StageInput(
    ell=2,
    sets=(
        frozenset(range(16)),
        frozenset(range(12)) | {13, 14, 15},
        frozenset(range(12)) | {14, 15},
        frozenset(range(12)) | {15},
        frozenset(range(12)),
    ),
    bands={(1, 0, 4): (0, 12, 4), (2, 4, 8): (4, 13, 8), (3, 1, 5): (1, 14, 5), (4, 5, 9): (5, 15, 9)},
    cycles=CYCLES,
)


def three_cycles(group=Z2, heavy=((2, 3), (6, 7), (10, 11)), extra=None):
    """Three 4-cycles joined through single relays; `heavy` edges carry label 1"""
    extra = extra or {}
    pairs = []
    for cycle in CYCLES:
        pairs += [(cycle[i], cycle[(i + 1) % 4]) for i in range(4)]
    pairs += [(0, 12), (12, 4), (4, 13), (13, 8), (1, 14), (14, 5), (5, 15), (15, 9)]
    edges = []
    for u, v in pairs:
        label = extra.get((u, v), 1 if (u, v) in heavy else 0)
        edges.append((u, v, label))
    return labelled(group, 16, edges)


def arcs_for_stage():
    return PigeonholeArcs.from_cycles(CYCLES, [(0, 12, 4), (4, 13, 8)], [(1, 14, 5), (5, 15, 9)])


class TestPigeonholeGluing:
    def test_split_cycle(self):
        assert split_cycle((0, 1, 2, 3)) == (0, 1, (0, 1), (0, 3, 2, 1))

    def test_colliding_values_give_the_swapped_cycle(self):
        graph = three_cycles()
        values = cofinite(Z2, 0)
        cert = glue_pigeonhole_cycle(graph, arcs_for_stage(), values, 1, 4)
        assert cert.vertices == (4, 7, 6, 5, 15, 9, 8, 13)
        assert cert.value == Z2.elem(1)
        assert verify(graph, values, cert)

    def test_first_h_cycle_in_a(self):
        graph = three_cycles(heavy=((0, 1), (6, 7), (10, 11)))
        cert = glue_pigeonhole_cycle(graph, arcs_for_stage(), cofinite(Z2, 0), 1, 4)
        assert cert.vertices == (0, 1, 14, 5, 4, 12)

    def test_omega_too_small_is_reported(self):
        graph = three_cycles(group=Z3, extra={(5, 15): 2})
        with pytest.raises(InputConsistencyError, match="omega = 1"):
            glue_pigeonhole_cycle(graph, arcs_for_stage(), finite(Z3, 1), 1)

    def test_needs_omega_plus_two_cycles(self):
        graph = three_cycles()
        arcs = PigeonholeArcs.from_cycles(CYCLES[:2], [(0, 12, 4)], [(1, 14, 5)])
        with pytest.raises(PreconditionError):
            glue_pigeonhole_cycle(graph, arcs, cofinite(Z2, 0), 1)

    def test_overlapping_connectors_are_rejected(self):
        arcs = PigeonholeArcs.from_cycles(CYCLES, [(0, 12, 4), (4, 13, 8)], [(1, 14, 5), (5, 14, 9)])
        with pytest.raises(StageError, match="vertex 14 is shared"):
            arcs.validate(three_cycles())


class TestExtraction:
    def test_staged_run(self):
        graph = three_cycles()
        values = cofinite(Z2, 0)
        cert = extract_long_a_cycle(graph, values, 4, stage=STAGE)
        assert cert.vertices == (4, 7, 6, 5, 15, 9, 8, 13)
        assert cert.d == 4
        assert verify(graph, values, cert)

    @pytest.mark.parametrize("ell", [1, 2])
    def test_staged_run_for_odd_length(self, ell):
        graph = three_cycles()
        values = cofinite(Z2, 0)
        stage = StageInput(ell=ell, sets=STAGE.sets, bands=STAGE.bands, cycles=CYCLES)
        cert = extract_long_a_cycle(graph, values, 3, stage=stage)
        assert cert.vertices == (4, 7, 6, 5, 15, 9, 8, 13)
        assert cert.d == 3
        assert verify(graph, values, cert, d=3)

    def test_subgroup_complement_is_reduced_first(self):
        graph = three_cycles(group=Z)
        values = SubgroupComplement(Z, [Z.elem(2)])
        cert = extract_long_a_cycle(graph, values, 4, stage=STAGE)
        assert cert.vertices == (4, 7, 6, 5, 15, 9, 8, 13)
        assert cert.value == Z.elem(1)

    def test_full_mode_checks_the_threshold(self):
        with pytest.raises(PreconditionError, match="g_1\\(4\\) = 1536"):
            extract_long_a_cycle(three_cycles(), cofinite(Z2, 0), 4)

    def test_short_stage_chain(self):
        stage = StageInput(ell=1, sets=STAGE.sets, bands=STAGE.bands, cycles=CYCLES)
        with pytest.raises(StageError) as info:
            extract_long_a_cycle(three_cycles(), cofinite(Z2, 0), 4, stage=stage)
        assert info.value.stage == "chain"

    def test_stage_cycles_must_be_a_cycles(self):
        graph = three_cycles(heavy=((2, 3), (6, 7)))
        with pytest.raises(StageError, match="cycle 3 has value outside A"):
            extract_long_a_cycle(graph, cofinite(Z2, 0), 4, stage=STAGE)

    def test_stage_needs_enough_cycles(self):
        stage = StageInput(ell=2, sets=STAGE.sets, bands=STAGE.bands, cycles=CYCLES[:2])
        with pytest.raises(StageError, match="need 3"):
            extract_long_a_cycle(three_cycles(), cofinite(Z2, 0), 4, stage=stage)

    def test_infinite_complement_is_rejected(self):
        assert finite(Z, 1).omega == INFINITE
        with pytest.raises(PreconditionError, match="infinite complement"):
            extract_long_a_cycle(three_cycles(group=Z), finite(Z, 1), 4, stage=STAGE)

    def test_length_must_be_positive(self):
        with pytest.raises(PreconditionError):
            extract_long_a_cycle(three_cycles(), cofinite(Z2, 0), 0, stage=STAGE)


def test_effective_omega_and_heaviest_component():
    assert effective_omega(cofinite(Z2, 0)) == 1
    assert effective_omega(cofinite(Z3)) == 1
    graph = labelled(Z3, 7, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (4, 5, 1), (5, 6, 1), (4, 6, 0)])
    component, arb = heaviest_component(graph, finite(Z3, 0), None)
    assert component.vertices == (0, 1, 2)
    assert arb == 2
