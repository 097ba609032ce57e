"""Constraint graph construction and the GLP deciders."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_force_glp
from snfglp.cyclotomic import cyc_sub, zeta
from snfglp.glp import (
    DisconnectedSpec,
    Labeling,
    LabelingError,
    build_constraint_graph,
    check_labeling,
    classify_k,
    cycle_weight,
    decide_glp,
    decide_glp_even,
    decide_glp_odd,
    edge_weight,
    fundamental_cycles,
    odd_cycle_scan,
)
from snfglp.construct import generate_counterexample, random_valid_spec
from snfglp.model import catalog, make_spec


def two_cell_path(k: int):
    if k % 2 == 0:
        delta = zeta(k, 0, 2)
    else:
        delta = cyc_sub(zeta(k, 0), zeta(k, (k + 1) // 2))
    return make_spec(k, [zeta(k, 0, 0), delta], partial=True)


class TestConstraintGraph:
    def test_hexagon_six_edges_weight_three(self):
        graph = build_constraint_graph(catalog("sierpinski-hexagon"))
        assert len(graph.edges) == 6
        assert all(edge_weight(e, 6) == 3 for e in graph.edges)

    def test_gasket_triangle_weights_sum_zero(self):
        spec = catalog("sierpinski-gasket")
        graph = build_constraint_graph(spec)
        assert len(graph.edges) == 3
        cycles = fundamental_cycles(graph)
        assert len(cycles) == 1 and len(cycles[0]) == 3
        assert cycle_weight(spec, cycles[0]) == 0

    def test_two_cell_path_has_no_cycles(self):
        graph = build_constraint_graph(two_cell_path(5))
        assert len(graph.edges) == 1
        assert graph.nontree == ()

    def test_reversed_edge_negates_weight(self):
        graph = build_constraint_graph(catalog("sierpinski-gasket"))
        for e in graph.edges:
            assert (graph.weight(e.a, e.b) + graph.weight(e.b, e.a)) % 3 == 0

    def test_even_k_weights_always_half_turn(self):
        for seed in range(5):
            spec = random_valid_spec(8, 25, seed)
            graph = build_constraint_graph(spec)
            assert all(edge_weight(e, 8) == 4 for e in graph.edges)

    def test_odd_k_weights_in_two_classes(self):
        legal = {(9 + 1) // 2, (9 - 1) // 2}
        for seed in range(5):
            spec = random_valid_spec(9, 25, seed)
            graph = build_constraint_graph(spec)
            assert all((e.jb - e.ja) % 9 in legal for e in graph.edges)


class TestDecideGlp:
    def test_catalog_verdicts(self):
        assert decide_glp(catalog("sierpinski-hexagon")).glp
        assert decide_glp(catalog("sierpinski-gasket")).glp
        assert decide_glp(catalog("vicsek-cross")).glp
        assert decide_glp(catalog("pentagon-ring")).glp
        v = decide_glp(catalog("lindstrom-snowflake"))
        assert not v.glp and len(v.witness) == 3

    def test_witness_resums_nonzero(self):
        spec = catalog("lindstrom-snowflake")
        v = decide_glp(spec)
        assert cycle_weight(spec, v.witness) != 0

    def test_glp_labeling_checks_out(self):
        for name in ("sierpinski-gasket", "sierpinski-hexagon", "vicsek-cross"):
            spec = catalog(name)
            v = decide_glp(spec)
            assert check_labeling(spec, v.labeling)

    def test_offsets_normalized_at_first_cell(self):
        for name in ("sierpinski-gasket", "pentagon-ring"):
            v = decide_glp(catalog(name))
            assert v.labeling.offsets[0] == 0

    def test_disconnected_nonpartial_raises(self):
        spec = make_spec(
            6,
            [(0,) * 6, (9, 0, 0, 0, 0, 0)] + [tuple(zeta(6, j, 2).coeffs) for j in range(4)],
        )
        with pytest.raises(DisconnectedSpec):
            decide_glp(spec)

    def test_disconnected_partial_labeled_per_component(self):
        spec = make_spec(6, [(0,) * 6, (9, 0, 0, 0, 0, 0)], partial=True)
        v = decide_glp(spec)
        assert v.glp
        assert v.labeling.offsets == {0: 0, 1: 0}

    def test_serialization_round(self):
        v = decide_glp(catalog("sierpinski-hexagon"))
        text = v.serialize()
        assert text.splitlines()[0] == "GLP"
        assert "offset 1 3" in text
        w = decide_glp(catalog("lindstrom-snowflake"))
        assert w.serialize().splitlines()[0] == "NOGLP"


class TestEvenDecider:
    def test_hexagon_bipartition_alternates(self):
        v = decide_glp_even(catalog("sierpinski-hexagon"))
        assert v.glp
        ring = [v.classes[i] for i in range(6)]
        assert ring == [1, 2, 1, 2, 1, 2]
        for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]:
            assert v.classes[a] != v.classes[b]

    def test_snowflake_odd_triangle(self):
        v = decide_glp_even(catalog("lindstrom-snowflake"))
        assert not v.glp and len(v.witness) == 3

    def test_vicsek_star_bipartite(self):
        v = decide_glp_even(catalog("vicsek-cross"))
        assert v.glp

    def test_odd_k_rejected(self):
        with pytest.raises(ValueError):
            decide_glp_even(catalog("sierpinski-gasket"))


class TestOddDecider:
    def test_pentagon_ring(self):
        assert decide_glp_odd(catalog("pentagon-ring")).glp

    def test_k9_counterexample(self):
        spec = generate_counterexample(9)
        v = decide_glp_odd(spec)
        assert not v.glp and len(v.witness) == 3

    def test_k9_six_cycle_labelable(self):
        # hexagonal ring of 9-gons alternating the two rotation classes:
        # c = d = 3, so the cycle is labelable despite its even length < k
        from snfglp.cyclotomic import cyc_add, cyc_is_zero, zero

        k = 9
        steps = [
            cyc_sub(zeta(k, 5), zeta(k, 0)),
            cyc_sub(zeta(k, 7), zeta(k, 3)),
            cyc_sub(zeta(k, 8), zeta(k, 3)),
            cyc_sub(zeta(k, 1), zeta(k, 6)),
            cyc_sub(zeta(k, 2), zeta(k, 6)),
            cyc_sub(zeta(k, 4), zeta(k, 0)),
        ]
        pos = zero(k)
        cells = []
        for step in steps:
            cells.append(pos)
            pos = cyc_add(pos, step)
        assert cyc_is_zero(pos)  # the ring closes exactly
        spec = make_spec(k, cells, partial=True)
        graph = build_constraint_graph(spec)
        assert len(graph.edges) == 6  # a single 6-cycle, no chords
        assert decide_glp_odd(spec).glp
        assert decide_glp(spec).glp

    def test_even_k_rejected(self):
        with pytest.raises(ValueError):
            decide_glp_odd(catalog("sierpinski-hexagon"))


class TestClassify:
    @pytest.mark.parametrize("k,reason", [(3, "prime"), (5, "prime"), (7, "prime"),
                                          (11, "prime"), (13, "prime")])
    def test_primes(self, k, reason):
        got = classify_k(k)
        assert got.always_glp and got.reason == reason

    @pytest.mark.parametrize("k", [4, 8, 16, 32])
    def test_powers_of_two(self, k):
        got = classify_k(k)
        assert got.always_glp and got.reason == "power_of_two"

    @pytest.mark.parametrize("k", [6, 9, 10, 12, 15, 18, 21])
    def test_conditional(self, k):
        assert not classify_k(k).always_glp

    def test_small_k_rejected(self):
        with pytest.raises(ValueError):
            classify_k(2)


class TestOddCycleScan:
    def test_counterexample_cycle_found(self):
        cycles = odd_cycle_scan(generate_counterexample(9))
        assert len(cycles) == 1 and len(cycles[0]) == 3

    def test_pentagon_ring_inconclusive(self):
        # its one cycle has length 5, not below k=5
        assert odd_cycle_scan(catalog("pentagon-ring")) == []

    def test_tree_shaped_spec_empty(self):
        assert odd_cycle_scan(two_cell_path(7)) == []


class TestCheckLabeling:
    def test_decider_witness_passes(self):
        spec = catalog("sierpinski-gasket")
        assert check_labeling(spec, decide_glp(spec).labeling)

    def test_swapped_labels_fail(self):
        spec = catalog("sierpinski-gasket")
        lab = decide_glp(spec).labeling
        from snfglp.model import vertices

        tampered = dict(lab.labels)
        verts = vertices(spec.cells[0])
        tampered[verts[0]], tampered[verts[1]] = tampered[verts[1]], tampered[verts[0]]
        broken = Labeling(lab.k, dict(lab.offsets), tampered)
        assert not check_labeling(spec, broken)

    def test_alternating_hexagon_offsets(self):
        # alternating offsets 0/3 around the ring form a good labeling
        spec = catalog("sierpinski-hexagon")
        from snfglp.glp import make_labeling

        lab = make_labeling(spec, {i: (i % 2) * 3 for i in range(6)})
        assert check_labeling(spec, lab)

    def test_missing_vertex_raises(self):
        spec = catalog("sierpinski-gasket")
        with pytest.raises(LabelingError):
            check_labeling(spec, Labeling(3, {}, {}))

    def test_global_offset_shift_keeps_labeling_good(self):
        spec = catalog("pentagon-ring")
        base = decide_glp(spec).labeling
        from snfglp.glp import make_labeling

        for shift in range(1, 5):
            shifted = make_labeling(
                spec, {i: (r + shift) % 5 for i, r in base.offsets.items()}
            )
            assert check_labeling(spec, shifted)


class TestBruteForceOracle:
    @pytest.mark.parametrize(
        "name", ["sierpinski-gasket", "vicsek-cross", "sierpinski-hexagon",
                 "lindstrom-snowflake", "pentagon-ring"]
    )
    def test_catalog_agreement(self, name):
        spec = catalog(name)
        assert brute_force_glp(spec) == decide_glp(spec).glp

    def test_counterexample_agreement(self):
        for k in (6, 9):
            spec = generate_counterexample(k)
            assert brute_force_glp(spec) is False
            assert not decide_glp(spec).glp

    @given(st.integers(3, 9), st.integers(2, 8), st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_random_small_specs_agree(self, k, cells, seed):
        spec = random_valid_spec(k, cells, seed)
        assert brute_force_glp(spec) == decide_glp(spec).glp


class TestDeciderEquivalence:
    @given(st.integers(0, 10_000), st.integers(2, 30))
    @settings(max_examples=30, deadline=None)
    def test_even_matches_general(self, seed, cells):
        for k in (6, 8):
            spec = random_valid_spec(k, cells, seed)
            assert decide_glp(spec).glp == decide_glp_even(spec).glp

    @given(st.integers(0, 10_000), st.integers(2, 30))
    @settings(max_examples=30, deadline=None)
    def test_odd_matches_general(self, seed, cells):
        for k in (5, 9):
            spec = random_valid_spec(k, cells, seed)
            assert decide_glp(spec).glp == decide_glp_odd(spec).glp

    @given(st.integers(3, 10), st.integers(4, 25), st.integers(0, 10_000))
    @settings(max_examples=25, deadline=None)
    def test_unlabelable_prefix_poisons_grown_spec(self, k, cells, seed):
        # growth prefixes are connected sub-configurations: a prefix with no
        # labeling forces the full grown spec to have none
        spec = random_valid_spec(k, cells, seed)
        prefix = make_spec(k, [c.barycenter for c in spec.cells[: cells // 2]], partial=True)
        if not decide_glp(prefix).glp:
            assert not decide_glp(spec).glp

    def test_weight_sum_tracks_rotation_count(self):
        # along any cycle: weight sum = -(k+1)/2 * (c - d) mod k
        for k, seed in ((9, 3), (5, 7), (7, 11)):
            spec = random_valid_spec(k, 30, seed)
            graph = build_constraint_graph(spec)
            plus = (k + 1) // 2
            for cyc in fundamental_cycles(graph):
                total, c_minus_d = 0, 0
                for i, u in enumerate(cyc):
                    v = cyc[(i + 1) % len(cyc)]
                    w = graph.weight(u, v)
                    total += w
                    c_minus_d += 1 if (-w) % k == plus else -1
                assert total % k == (-plus * c_minus_d) % k
