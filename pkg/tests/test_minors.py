import random

import pytest

from alpha2minor import (
    CliqueJoinIndependent,
    CompleteGraph,
    MinorModel,
    OracleCapExceeded,
    PreconditionError,
    find_minor_bruteforce,
    model_from_json,
    model_through_contraction,
    model_to_json,
    named,
    validate_model,
)
from alpha2minor.graphs import contract_set
from conftest import random_graph
from oracles import naive_model_check


def fs(*vs):
    return frozenset(vs)


class TestValidateModel:
    def test_five_wheel_star(self, five_wheel):
        model = MinorModel((fs(5),), (fs(0), fs(2)))
        assert validate_model(five_wheel, CliqueJoinIndependent(1, 2), model) == []

    def test_overlapping_sets(self, c5):
        model = MinorModel((fs(0, 1), fs(1, 2)), ())
        problems = validate_model(c5, CompleteGraph(2), model)
        assert any("disjoint" in p for p in problems)

    def test_disconnected_branch_set(self, c5):
        model = MinorModel((fs(0, 2),), (fs(1),))
        problems = validate_model(c5, CliqueJoinIndependent(1, 1), model)
        assert any("not connected" in p for p in problems)

    def test_count_mismatch(self, c5):
        model = MinorModel((fs(0),), ())
        problems = validate_model(c5, CompleteGraph(2), model)
        assert any("target needs" in p for p in problems)

    def test_missing_join(self):
        g = named("path", 4)
        model = MinorModel((fs(0), fs(3)), ())
        problems = validate_model(g, CompleteGraph(2), model)
        assert any("no edge" in p for p in problems)

    def test_no_constraint_inside_independent_side(self):
        g = named("clique_join_independent", 1, 3)
        model = MinorModel((fs(0),), (fs(1), fs(2), fs(3)))
        assert validate_model(g, CliqueJoinIndependent(1, 3), model) == []

    def test_agrees_with_naive_checker_on_random_models(self):
        rng = random.Random(99)
        agree = 0
        for trial in range(1000):
            g = random_graph(rng.randrange(2, 9), rng.uniform(0.2, 0.9), trial)
            verts = list(range(g.n))
            rng.shuffle(verts)
            ell = rng.randrange(1, 4)
            m = rng.randrange(0, 3)
            sets = []
            idx = 0
            for _ in range(ell + m):
                size = rng.randrange(0, 3)
                sets.append(frozenset(verts[idx : idx + size]))
                idx += size
            model = MinorModel(tuple(sets[:ell]), tuple(sets[ell:]))
            mine = validate_model(g, CliqueJoinIndependent(ell, m), model) == []
            theirs = naive_model_check(
                g, ell, m, model.clique_side, model.independent_side
            )
            assert mine == theirs
            agree += 1
        assert agree == 1000


class TestBruteForce:
    def test_cycle_has_triangle_minor(self, c5):
        model = find_minor_bruteforce(c5, CompleteGraph(3))
        assert model is not None
        assert validate_model(c5, CompleteGraph(3), model) == []

    def test_cycle_has_no_k4_minor(self, c5):
        assert find_minor_bruteforce(c5, CompleteGraph(4)) is None

    def test_petersen_complement_clique_join(self, petersen_complement):
        target = CliqueJoinIndependent(2, 3)
        model = find_minor_bruteforce(petersen_complement, target)
        assert model is not None
        assert validate_model(petersen_complement, target, model) == []

    def test_more_sets_than_vertices(self, c5):
        assert find_minor_bruteforce(c5, CompleteGraph(6)) is None

    def test_clique_join_found_whenever_complete_found(self, universe):
        for g in universe(6):
            for ell in (1, 2):
                for m in (1, 2):
                    whole = find_minor_bruteforce(g, CompleteGraph(ell + m))
                    if whole is not None:
                        part = find_minor_bruteforce(g, CliqueJoinIndependent(ell, m))
                        assert part is not None

    def test_size_guard(self):
        g = named("complete", 16)
        with pytest.raises(OracleCapExceeded):
            find_minor_bruteforce(g, CompleteGraph(5), max_n=14)

    def test_node_budget(self):
        g = named("cycle", 12)
        with pytest.raises(OracleCapExceeded):
            find_minor_bruteforce(g, CompleteGraph(4), node_budget=10)

    def test_deadline(self):
        import time

        from alpha2minor import SearchDeadlineExceeded

        g = named("cycle", 12)
        with pytest.raises(SearchDeadlineExceeded):
            find_minor_bruteforce(
                g, CompleteGraph(4), deadline=time.monotonic() - 1.0
            )

    def test_multi_vertex_branch_sets_needed(self, petersen):
        # The Petersen graph has clique number 2 but a K5 minor (contract a
        # perfect matching), so the search must grow non-singleton sets.
        model = find_minor_bruteforce(petersen, CompleteGraph(5))
        assert model is not None
        assert validate_model(petersen, CompleteGraph(5), model) == []
        assert any(len(s) > 1 for s in model.all_sets())

    def test_series_parallel_negative(self):
        # Cycles have no complete minor on four vertices; the exhaustive
        # search must prove the absence.
        assert find_minor_bruteforce(named("cycle", 9), CompleteGraph(4)) is None


class TestPullback:
    def test_identity_chain(self, c5):
        model = MinorModel((fs(0, 1),), (fs(3),))
        identity = tuple(frozenset((v,)) for v in range(5))
        assert model_through_contraction([identity], model) == model
        assert model_through_contraction([], model) == model

    def test_single_path_contraction(self, petersen_complement):
        from alpha2minor import find_p3_packing

        g = petersen_complement
        triple = find_p3_packing(g, 1).triples[0]
        h, prov = contract_set(g, triple)
        rep = next(i for i, s in enumerate(prov) if len(s) == 3)
        other = 0 if rep != 0 else 1
        model_small = MinorModel((fs(rep),), (fs(other),))
        pulled = model_through_contraction([prov], model_small)
        assert pulled.clique_side[0] == frozenset(triple)
        assert validate_model(g, CliqueJoinIndependent(1, 1), pulled) == []

    def test_composite_chain_validates_in_original(self):
        g = named("petersen_complement")
        from alpha2minor import find_p3_packing
        from alpha2minor.graphs import induced_subgraph

        u, v = 0, 2
        assert g.has_edge(u, v)
        h1, prov1 = contract_set(g, (u, v))
        # find a disjoint induced path avoiding the merged vertex
        merged = next(i for i, s in enumerate(prov1) if len(s) == 2)
        sub, mapping = induced_subgraph(h1, [x for x in range(h1.n) if x != merged])
        triple_sub = find_p3_packing(sub, 1).triples[0]
        back = {new: old for old, new in mapping.items()}
        triple_h1 = tuple(back[x] for x in triple_sub)
        h2, prov2 = contract_set(h1, triple_h1)
        z_edge = next(i for i, s in enumerate(prov2) if prov1_classes(prov1, s) == 2)
        z_path = next(i for i, s in enumerate(prov2) if len(s) == 3)
        spare = next(
            i
            for i in range(h2.n)
            if i not in (z_edge, z_path) and h2.has_edge(i, z_edge)
        )
        small = MinorModel((fs(z_edge), fs(z_path)), (fs(spare),))
        pulled = model_through_contraction([prov1, prov2], small)
        target = CliqueJoinIndependent(2, 1)
        assert validate_model(g, target, pulled) == []
        assert frozenset((u, v)) in pulled.clique_side

    def test_inconsistent_chain(self):
        model = MinorModel((fs(4),), ())
        with pytest.raises(PreconditionError):
            model_through_contraction([(fs(0), fs(1))], model)


def prov1_classes(prov1, merged_set):
    """Number of original vertices represented by a set of level-1 vertices."""
    return sum(len(prov1[x]) for x in merged_set)


class TestJson:
    def test_fragment_roundtrip(self, c5):
        target = CliqueJoinIndependent(1, 2)
        model = MinorModel((fs(1, 0),), (fs(2), fs(4)))
        data = model_to_json(target, model)
        assert data == {
            "target": {"ell": 1, "m": 2},
            "clique_side": [[0, 1]],
            "independent_side": [[2], [4]],
        }
        back_target, back_model = model_from_json(data)
        assert back_target == target
        assert set(back_model.clique_side) == set(model.clique_side)

    def test_complete_target_fragment(self):
        data = model_to_json(CompleteGraph(3), MinorModel((fs(0), fs(1), fs(2)), ()))
        assert data["target"] == {"k": 3}
        back_target, _ = model_from_json(data)
        assert back_target == CompleteGraph(3)
