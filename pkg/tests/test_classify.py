import random

import pytest

from conftest import random_graph
from haarforge.autsearch import automorphism_group, is_automorphism
from haarforge.classify import (
    analyze,
    delta_automorphism,
    find_regular_subgroup,
    is_arc_transitive,
    is_cayley,
    is_haar,
    is_vertex_transitive,
    iter_regular_subgroups,
    predict_dnr,
    standard_automorphisms,
    verify_haar_witness,
    verify_theorems,
)
from haarforge.constructions import (
    DoublePetersenLayout,
    bipartition,
    cayley_graph,
    complete_bipartite,
    cycle_graph,
    double_generalized_petersen,
    generalized_petersen,
    haar_graph,
    path_graph,
)
from haarforge.groups import cyclic, semidirect_cyclic
from haarforge.permgroups import PermGroup, generate_elements, membership


class TestRegularSubgroupSearch:
    def test_cycle_has_rotation_subgroup(self):
        sub = find_regular_subgroup(automorphism_group(cycle_graph(6)))
        assert sub is not None
        assert sub.order() == 6
        assert sub.is_regular_on(range(6))

    def test_petersen_has_none(self):
        assert find_regular_subgroup(automorphism_group(generalized_petersen(5, 2))) is None

    def test_f40_has_none(self):
        g, _ = double_generalized_petersen(10, 2)
        assert find_regular_subgroup(automorphism_group(g)) is None

    def test_intransitive_absent_immediately(self):
        assert find_regular_subgroup(automorphism_group(path_graph(4))) is None

    def test_enumeration_matches_bruteforce_on_small_graphs(self):
        # independent oracle: scan all subsets of the full automorphism group
        # via its element list, keeping those that form regular subgroups
        rng = random.Random(8)
        checked = 0
        while checked < 8:
            g = random_graph(rng, rng.randint(4, 6), 0.5)
            aut = automorphism_group(g)
            if not aut.is_transitive() or aut.order() > 400:
                continue
            checked += 1
            elems = list(aut.elements())
            found = set()
            n = g.n
            import itertools

            for size in (n,):
                for cand in itertools.combinations(elems, size):
                    ident_count = sum(1 for p in cand if p.is_identity())
                    if ident_count != 1:
                        continue
                    images = {p.images[0] for p in cand}
                    if len(images) != n:
                        continue
                    as_set = set(cand)
                    if all(p * q in as_set for p in cand for q in cand):
                        found.add(frozenset(as_set))
            got = {frozenset(sub.elements()) for sub in iter_regular_subgroups(aut)}
            got = {frozenset(s) for s in got}
            assert got == found, (g.edges(),)


class TestVertexTransitivity:
    def test_dodecahedral_vt(self):
        g, _ = double_generalized_petersen(5, 2)
        assert is_vertex_transitive(g)

    def test_d72_not_vt(self):
        g, _ = double_generalized_petersen(7, 2)
        assert not is_vertex_transitive(g)
        assert len(automorphism_group(g).orbits()) == 2

    def test_d125_vt(self):
        g, _ = double_generalized_petersen(12, 5)
        assert is_vertex_transitive(g)

    def test_two_orbit_bound(self):
        # the rotation/flip/reflection subgroup alone gives at most two orbits
        for n, r in [(7, 2), (9, 4), (8, 3)]:
            rot, flip, refl = standard_automorphisms(n, r)
            sub = PermGroup([rot, flip, refl])
            orbs = sub.orbits()
            assert len(orbs) == 2
            lay = DoublePetersenLayout(n, r)
            uz = tuple(sorted([lay.u(i) for i in range(n)] + [lay.z(i) for i in range(n)]))
            vw = tuple(sorted([lay.v(i) for i in range(n)] + [lay.w(i) for i in range(n)]))
            assert sorted(orbs) == sorted([uz, vw])
        g, _ = double_generalized_petersen(7, 2)
        assert len(automorphism_group(g).orbits()) <= 2


class TestArcTransitivity:
    def test_f40_arc_transitive(self):
        g, _ = double_generalized_petersen(10, 2)
        assert is_arc_transitive(g)

    def test_dodecahedron_arc_transitive(self):
        g, _ = double_generalized_petersen(5, 2)
        assert is_arc_transitive(g)

    def test_d125_not_arc_transitive(self):
        g, _ = double_generalized_petersen(12, 5)
        assert not is_arc_transitive(g)

    def test_rejects_edgeless(self):
        from haarforge.constructions import Graph

        with pytest.raises(ValueError):
            is_arc_transitive(Graph(3, []))


class TestCayleyRecognition:
    def test_d125_cayley(self):
        g, _ = double_generalized_petersen(12, 5)
        ok, witness = is_cayley(g)
        assert ok
        assert witness.order() == g.n
        assert witness.is_regular_on(range(g.n))
        assert all(is_automorphism(g, p) for p in witness.generators)

    def test_d52_not_cayley(self):
        g, _ = double_generalized_petersen(5, 2)
        ok, witness = is_cayley(g)
        assert not ok and witness is None

    def test_every_cayley_fixture_recognized(self, small_groups):
        rng = random.Random(14)
        for g in small_groups.values():
            if g.order < 2:
                continue
            for _ in range(2):
                conn = set()
                while not conn:
                    x = rng.randrange(1, g.order)
                    conn |= {x, g.inv[x]}
                graph = cayley_graph(g, sorted(conn))
                ok, witness = is_cayley(graph)
                assert ok
                assert witness.order() == g.order
                assert all(is_automorphism(graph, p) for p in witness.generators)


class TestHaarRecognition:
    def test_every_haar_fixture_recognized(self, small_groups):
        rng = random.Random(15)
        for g in small_groups.values():
            for _ in range(2):
                k = rng.randint(1, g.order)
                s = sorted(rng.sample(range(g.order), k))
                graph = haar_graph(g, s)
                if not graph.is_connected():
                    continue
                ok, witness = is_haar(graph)
                assert ok, (g.name, s)
                parts = bipartition(graph)
                assert witness.is_regular_on(parts.part0)
                assert witness.is_regular_on(parts.part1)

    def test_non_bipartite_is_not_haar(self):
        g, _ = double_generalized_petersen(5, 2)
        ok, witness = is_haar(g)
        assert not ok and witness is None

    def test_f40_is_haar(self):
        g, _ = double_generalized_petersen(10, 2)
        ok, witness = is_haar(g)
        assert ok and witness.order() == 20

    def test_unbalanced_bipartite_is_not_haar(self):
        ok, _ = is_haar(complete_bipartite(2, 3))
        assert not ok

    def test_disconnected_bipartite_raises(self):
        g = haar_graph(cyclic(4), [0, 2])  # two four-cycles
        assert not g.is_connected()
        with pytest.raises(ValueError, match="connected"):
            is_haar(g)

    def test_abelian_haar_graphs_are_cayley(self, small_groups):
        for name in ("z5", "z6", "z8", "klein4", "z4xz2"):
            g = small_groups[name]
            graph = haar_graph(g, range(min(3, g.order)))
            if not graph.is_connected():
                continue
            assert is_cayley(graph)[0]

    def test_cayley_fixture_haar_iff_bipartite(self, small_groups):
        rng = random.Random(16)
        for g in small_groups.values():
            if g.order < 3:
                continue
            for _ in range(2):
                conn = set()
                while not conn:
                    x = rng.randrange(1, g.order)
                    conn |= {x, g.inv[x]}
                graph = cayley_graph(g, sorted(conn))
                if not graph.is_connected():
                    continue
                assert is_haar(graph)[0] == (bipartition(graph) is not None), (g.name, sorted(conn))


class TestStandardAutomorphisms:
    @pytest.mark.parametrize("n,r", [(3, 1), (6, 1), (7, 2), (10, 3), (12, 5)])
    def test_orders_and_commutation(self, n, r):
        rot, flip, refl = standard_automorphisms(n, r)
        assert rot.order() == n
        assert flip.order() == 2
        assert refl.order() == 2
        assert rot * flip == flip * rot

    def test_membership_in_full_group(self):
        for n in range(3, 13):
            for r in (1, n - 1, max(1, n // 2 - 1)):
                g, _ = double_generalized_petersen(n, r)
                aut = automorphism_group(g)
                for p in standard_automorphisms(n, r):
                    assert membership(aut, p), (n, r)

    def test_generated_order_is_4n(self):
        # brute-force closure for small n
        for n, r in [(3, 1), (4, 1), (5, 2), (6, 1)]:
            gens = standard_automorphisms(n, r)
            closure = generate_elements(list(gens), limit=10_000)
            assert len(closure) == 4 * n
            assert PermGroup(list(gens)).order() % (4 * n) == 0


class TestDeltaAutomorphism:
    def test_formula_anchors(self):
        lay = DoublePetersenLayout(10, 3)
        d = delta_automorphism(10, 3)
        assert d.images[lay.u(0)] == lay.v(1)
        assert d.images[lay.u(1)] == lay.w(4)
        g, _ = double_generalized_petersen(10, 3)
        assert lay.u(0) in [e for e in g.neighbors(lay.u(1))]
        assert g.has_edge(lay.v(1), lay.w(4))

    def test_even_half_branch(self):
        d = delta_automorphism(4, 1)
        g, _ = double_generalized_petersen(4, 1)
        assert is_automorphism(g, d)

    def test_membership_after_normalization(self):
        g, _ = double_generalized_petersen(10, 2)
        d = delta_automorphism(10, 2)
        assert membership(automorphism_group(g), d)

    def test_rejects_wrong_residue(self):
        with pytest.raises(ValueError):
            delta_automorphism(12, 5)  # 25 = 1 (mod 6), not -1
        with pytest.raises(ValueError):
            delta_automorphism(9, 2)  # odd n

    @pytest.mark.parametrize("n,r", [(4, 1), (10, 3), (20, 3), (26, 5), (10, 2), (20, 7)])
    def test_preserves_edges_and_parts(self, n, r):
        g, _ = double_generalized_petersen(n, r)
        d = delta_automorphism(n, r)
        assert is_automorphism(g, d)
        parts = bipartition(g)
        p0 = set(parts.part0)
        assert all(d.images[v] in p0 for v in parts.part0)

    @pytest.mark.parametrize("n,r", [(4, 1), (10, 3), (20, 3), (26, 5)])
    def test_witness_report(self, n, r):
        rep = verify_haar_witness(n, r)
        assert rep.ok
        assert rep.group_order == 2 * n
        assert rep.conjugation_exponent in (2 * r % n, (-2 * r) % n)
        assert rep.regular_on_parts
        assert rep.matches_semidirect_model

    def test_witness_20_3_semidirect_shape(self):
        rep = verify_haar_witness(20, 3)
        model = semidirect_cyclic(10, 4, 3)
        assert rep.group_order == model.order


class TestPrediction:
    def test_exceptional_pair(self):
        p = predict_dnr(5, 2)
        assert (p.vertex_transitive, p.cayley, p.haar) == (True, False, False)
        assert p.branch == "dodecahedral-exception"
        assert predict_dnr(5, 3).branch == "dodecahedral-exception"

    def test_square_residue(self):
        p = predict_dnr(12, 5)
        assert (p.vertex_transitive, p.cayley, p.haar) == (True, True, True)
        assert p.m == 6

    def test_negative_residue(self):
        p = predict_dnr(10, 2)
        assert (p.vertex_transitive, p.cayley, p.haar) == (True, False, True)

    def test_off_branch(self):
        p = predict_dnr(7, 2)
        assert (p.vertex_transitive, p.cayley, p.haar) == (False, False, False)

    def test_n4_overlap_resolves_to_cayley(self):
        # 1 = -1 (mod 2): both residue cases fire and the Cayley branch wins,
        # matching the computed classification of the n = 4 graphs
        p = predict_dnr(4, 1)
        assert (p.vertex_transitive, p.cayley, p.haar) == (True, True, True)
        g, _ = double_generalized_petersen(4, 1)
        assert is_cayley(g)[0] and is_haar(g)[0] and is_vertex_transitive(g)


class TestSweep:
    def test_small_sweep_clean(self):
        sweep = verify_theorems(8)
        assert sweep.ok
        assert len(sweep.rows) == sum(n - 1 for n in range(3, 9))

    def test_sweep_rows_sorted(self):
        sweep = verify_theorems(6)
        assert [(r.n, r.r) for r in sweep.rows] == sorted((r.n, r.r) for r in sweep.rows)

    def test_haar_iff_vt_for_even_n(self):
        sweep = verify_theorems(12)
        for row in sweep.rows:
            if row.n % 2 == 0:
                assert row.computed_haar == row.computed_vt

    def test_orbit_count_bound(self):
        # the full automorphism group never has more than two vertex orbits
        for n in range(3, 11):
            for r in range(1, n):
                g, _ = double_generalized_petersen(n, r)
                assert len(automorphism_group(g).orbits()) in (1, 2), (n, r)


class TestAnalyze:
    def test_f40_report(self):
        g, _ = double_generalized_petersen(10, 2)
        rep = analyze(g)
        d = rep.to_json_dict()
        assert d["order"] == 40 and d["edges"] == 60 and d["valency"] == 3
        assert d["bipartite"] and d["girth"] == 8 and d["aut_order"] == 480
        assert d["vertex_transitive"] and d["arc_transitive"]
        assert not d["cayley"] and d["haar"]
        assert d["orbit_count"] == 1
        assert d["witnesses"]["cayley"] is None
        assert d["witnesses"]["haar"]

    def test_report_invariants_on_random_fixtures(self, small_groups):
        rng = random.Random(19)
        graphs = []
        for g in list(small_groups.values())[:6]:
            s = sorted(rng.sample(range(g.order), min(2, g.order)))
            if not s:
                continue
            h = haar_graph(g, s)
            if h.is_connected():
                graphs.append(h)
        graphs.append(cycle_graph(7))
        for graph in graphs:
            rep = analyze(graph)
            if rep.cayley:
                assert rep.vertex_transitive
            if rep.haar:
                assert rep.bipartite
            if rep.arc_transitive and rep.edges > 0:
                assert rep.vertex_transitive
