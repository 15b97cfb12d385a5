import itertools
import json

import pytest

from haarforge.autsearch import canonical_form
from haarforge.census import (
    CensusConfig,
    CensusRecord,
    census_summary,
    enumerate_haar_census,
    realization_is_cayley,
    subset_orbit_representatives,
)
from haarforge.classify import is_cayley, is_haar
from haarforge.constructions import double_generalized_petersen, haar_graph
from haarforge.groups import (
    CatalogGroup,
    cyclic,
    format_group_file,
    generalized_dihedral,
    group_automorphisms,
    load_catalog,
    semidirect_cyclic,
)


def write_catalog(tmp_path, groups, with_auts=True):
    d = tmp_path / "catalog"
    d.mkdir(exist_ok=True)
    for g in groups:
        auts = group_automorphisms(g)[: 3 if with_auts else 0]
        (d / f"{g.name.lower()}.grp").write_text(format_group_file(g, auts if with_auts else ()))
    return d


class TestSubsetReduction:
    def test_reduction_is_sound_small(self):
        # the reduced enumeration must reach exactly the same certificate set
        # as enumerating every subset
        for group in (cyclic(6), generalized_dihedral(cyclic(3)), generalized_dihedral(cyclic(4))):
            entry = CatalogGroup(group=group, automorphisms=tuple(group_automorphisms(group)))
            reps = subset_orbit_representatives(entry, range(1, group.order + 1))
            for k in range(1, group.order + 1):
                full = set()
                for s in itertools.combinations(range(group.order), k):
                    g = haar_graph(group, s)
                    full.add(canonical_form(g).graph6)
                reduced = set()
                for mask in reps[k]:
                    s = [i for i in range(group.order) if mask >> i & 1]
                    reduced.add(canonical_form(haar_graph(group, s)).graph6)
                assert reduced == full, (group.name, k)

    def test_reduction_shrinks(self):
        group = cyclic(8)
        entry = CatalogGroup(group=group, automorphisms=tuple(group_automorphisms(group)))
        reps = subset_orbit_representatives(entry, [3])
        assert 0 < len(reps[3]) < 56  # C(8,3) = 56 subsets collapse to a few orbits

    def test_rejects_oversized_group(self):
        group = cyclic(30)
        entry = CatalogGroup(group=group, automorphisms=())
        with pytest.raises(ValueError, match="order"):
            subset_orbit_representatives(entry, [3])


class TestRealizationCayley:
    def test_abelian_always(self):
        assert realization_is_cayley(cyclic(5), (0, 1, 2))

    def test_f40_realization_is_not(self):
        f20 = semidirect_cyclic(5, 4, 2)
        assert not realization_is_cayley(f20, (0, 1, 4))

    def test_agrees_with_exhaustive_search(self, small_groups):
        # dual route: the affine-extension decision per realization vs the
        # generic regular-subgroup machinery on the built graph
        import random

        rng = random.Random(20)
        for name in ("z6", "s3", "d4", "d5"):
            g = small_groups[name]
            for _ in range(3):
                k = rng.randint(1, g.order - 1)
                s = tuple(sorted(rng.sample(range(g.order), k)))
                graph = haar_graph(g, s)
                if not graph.is_connected():
                    continue
                # realization-level answer can be False while the graph is
                # still Cayley through another realization, so only the
                # True direction is directly comparable
                if realization_is_cayley(g, s):
                    assert is_cayley(graph)[0], (name, s)


class TestCensusRuns:
    def test_single_abelian_group(self, tmp_path):
        cat = write_catalog(tmp_path, [cyclic(5)])
        cfg = CensusConfig(cat, 10, 10, 3, 3, filter="all")
        records = enumerate_haar_census(cfg)
        assert records
        for r in records:
            assert r.cayley  # abelian base: every Haar graph is Cayley
            assert r.haar
            graph = haar_graph(cyclic(5), r.subset)
            assert is_haar(graph)[0]

    def test_trivalent_order40(self, order20_catalog_dir):
        cfg = CensusConfig(order20_catalog_dir, 40, 40, 3, 3, filter="vt-noncayley")
        records = enumerate_haar_census(cfg)
        assert len(records) == 1
        f40, _ = double_generalized_petersen(10, 2)
        assert records[0].certificate == canonical_form(f40).graph6.decode()
        assert records[0].valency == 3
        assert records[0].vertex_transitive and not records[0].cayley

    def test_filters_nest(self, tmp_path):
        cat = write_catalog(tmp_path, [generalized_dihedral(cyclic(3))])
        base = dict(catalog_path=cat, min_order=12, max_order=12, min_valency=2, max_valency=4)
        all_recs = enumerate_haar_census(CensusConfig(**base, filter="all"))
        vt_recs = enumerate_haar_census(CensusConfig(**base, filter="vt"))
        vtnc_recs = enumerate_haar_census(CensusConfig(**base, filter="vt-noncayley"))
        all_certs = {r.certificate for r in all_recs}
        vt_certs = {r.certificate for r in vt_recs}
        vtnc_certs = {r.certificate for r in vtnc_recs}
        assert vtnc_certs <= vt_certs <= all_certs
        assert vt_certs == {r.certificate for r in all_recs if r.vertex_transitive}

    def test_classification_flags_match_direct_computation(self, tmp_path):
        cat = write_catalog(tmp_path, [generalized_dihedral(cyclic(4)), cyclic(8)])
        cfg = CensusConfig(cat, 16, 16, 2, 4, filter="all")
        records = enumerate_haar_census(cfg)
        assert records
        from haarforge.classify import is_vertex_transitive

        for r in records:
            group = cyclic(8) if r.group_name == "Z8" else generalized_dihedral(cyclic(4))
            graph = haar_graph(group, r.subset)
            assert is_vertex_transitive(graph) == r.vertex_transitive
            assert is_cayley(graph)[0] == r.cayley, (r.group_name, r.subset)

    def test_worker_count_invariance(self, tmp_path):
        cat = write_catalog(tmp_path, [generalized_dihedral(cyclic(3)), cyclic(6)])
        base = dict(catalog_path=cat, min_order=12, max_order=12, min_valency=2, max_valency=5)
        serial = enumerate_haar_census(CensusConfig(**base, filter="all", workers=0))
        parallel = enumerate_haar_census(CensusConfig(**base, filter="all", workers=2))
        assert [r.certificate for r in serial] == [r.certificate for r in parallel]
        assert [r.subset for r in serial] == [r.subset for r in parallel]

    def test_env_override_workers(self, tmp_path, monkeypatch):
        cat = write_catalog(tmp_path, [cyclic(5)])
        monkeypatch.setenv("HAARFORGE_WORKERS", "2")
        cfg = CensusConfig(cat, 10, 10, 2, 3, filter="all", workers=0)
        records = enumerate_haar_census(cfg)
        assert records

    def test_checkpoint_resume(self, tmp_path):
        cat = write_catalog(tmp_path, [generalized_dihedral(cyclic(3)), cyclic(6)])
        out1 = tmp_path / "full.jsonl"
        ck1 = tmp_path / "full.ckpt"
        base = dict(catalog_path=cat, min_order=12, max_order=12, min_valency=2, max_valency=6)
        full = enumerate_haar_census(
            CensusConfig(**base, filter="all", output_path=out1, checkpoint_path=ck1)
        )

        # simulate an interrupted run: keep only the first two strata
        out2 = tmp_path / "part.jsonl"
        ck2 = tmp_path / "part.ckpt"
        done = ck1.read_text().splitlines()[:2]
        ck2.write_text("\n".join(done) + "\n")
        cand_lines = (tmp_path / "full.ckpt.candidates").read_text().splitlines()
        keep = [ln for ln in cand_lines if json.loads(ln)["stratum"] in set(done)]
        (tmp_path / "part.ckpt.candidates").write_text("\n".join(keep) + "\n")

        resumed = enumerate_haar_census(
            CensusConfig(**base, filter="all", output_path=out2, checkpoint_path=ck2)
        )
        assert [r.certificate for r in resumed] == [r.certificate for r in full]
        assert out2.read_text().strip().splitlines() == out1.read_text().strip().splitlines()

    def test_validation_errors(self, tmp_path):
        cat = write_catalog(tmp_path, [cyclic(5)])
        with pytest.raises(ValueError, match="filter"):
            CensusConfig(cat, 10, 10, 1, 2, filter="bogus").validate()
        with pytest.raises(ValueError, match="valency"):
            CensusConfig(cat, 10, 10, 0, 2).validate()
        with pytest.raises(ValueError, match="order"):
            CensusConfig(cat, 12, 10, 1, 2).validate()
        # a checkpoint alone is fine: phase 2 rebuilds records from candidates
        CensusConfig(cat, 10, 10, 1, 2, checkpoint_path=tmp_path / "x").validate()

    def test_catalog_failure_names_file_and_line(self, tmp_path):
        d = tmp_path / "cat"
        d.mkdir()
        (d / "bad.grp").write_text("name\n2\n0 1\n")
        cfg = CensusConfig(d, 4, 4, 1, 1)
        with pytest.raises(Exception, match=r"bad\.grp:"):
            enumerate_haar_census(cfg)

    def test_summary(self):
        records = [
            CensusRecord("a", 40, 3, "G", (0,), True, False),
            CensusRecord("b", 40, 5, "G", (0,), True, True),
        ]
        s = census_summary(records)
        assert s["classes"] == 2
        assert s["valencies"] == {"3": 1, "5": 1}
        assert s["cayley"] == 1


class TestProvenanceSpotCheck:
    def test_records_reconstruct_as_haar(self, order20_catalog_dir):
        # 10% random sample contract, applied to the cheap trivalent slice
        import random

        cfg = CensusConfig(order20_catalog_dir, 40, 40, 3, 4, filter="all")
        records = enumerate_haar_census(cfg)
        by_name = {e.group.name: e.group for e in load_catalog(order20_catalog_dir)}
        rng = random.Random(1)
        sample = rng.sample(records, max(1, len(records) // 10))
        for r in sample:
            graph = haar_graph(by_name[r.group_name], r.subset)
            ok, witness = is_haar(graph)
            assert ok and witness is not None
