from __future__ import annotations

import pytest

from magicsets.gram import is_magic_gram, valid_gram_space
from magicsets.hypergraph import is_proper_eulerian, parse_edge_list
from magicsets.pauli import decode, encode, gram_matrix_of
from magicsets.reduce import (
    RecipeError,
    ReductionRecipe,
    apply_recipe,
    are_isomorphic,
    canonical_edges,
    find_minimal_descendants,
    recipe_from_gram,
    reduce_with,
)


def pulled_back_gram(parent_entry, child_entry):
    """Gram matrix on the parent induced by the child's published assignment
    through the published preimage map (deleted vertices get identity)."""
    h = parent_entry.hypergraph
    k = child_entry.assignment.qubits
    pull = {v: "I" * k for v in range(1, h.vertex_count + 1)}
    for new, pre in child_entry.recipe.identification:
        word = decode(child_entry.assignment.strings[new - 1])
        for v in pre:
            pull[v] = word
    return gram_matrix_of([encode(pull[v]) for v in range(1, h.vertex_count + 1)])


class TestApplyRecipe:
    def test_all_published_replays(self, entries):
        for name in ["MS6-35", "MS3-29", "MS5-26", "MS4-21b", "MS3-27b"]:
            child = entries[name]
            parent = entries[child.recipe_parent]
            out = apply_recipe(parent.hypergraph, child.recipe)
            assert canonical_edges(out) == canonical_edges(child.hypergraph)

    def test_empty_recipe_identity(self, square):
        h = square.hypergraph
        out = apply_recipe(h, ReductionRecipe.build([], {}))
        assert out.vertex_count == h.vertex_count and out.edges == h.edges

    def test_recipe_referencing_deleted_vertex(self, square):
        bad = ReductionRecipe.build([1], {1: [1], 2: [2]})
        with pytest.raises(RecipeError):
            apply_recipe(square.hypergraph, bad)

    def test_recipe_must_cover_survivors(self, square):
        bad = ReductionRecipe.build([], {1: [1], 2: [2]})
        with pytest.raises(RecipeError):
            apply_recipe(square.hypergraph, bad)

    def test_new_ids_must_be_contiguous(self, square):
        bad = ReductionRecipe.build([], {i: [i] for i in [1, 2, 3, 4, 5, 6, 7, 8, 10]})
        with pytest.raises(RecipeError):
            apply_recipe(square.hypergraph, bad)

    def test_json_round_trip(self, entries):
        r = entries["MS5-26"].recipe
        again = ReductionRecipe.from_json_dict(r.to_json_dict())
        assert again == r


class TestReduceWith:
    def test_hd_to_ms3_27b_exact(self, entries):
        hd, child = entries["HD"], entries["MS3-27b"]
        g = pulled_back_gram(hd, child)
        trace = reduce_with(hd.hypergraph, g)
        assert canonical_edges(trace.output) == canonical_edges(child.hypergraph)
        # The derived recipe agrees with the published preimage map.
        assert trace.recipe.identification == child.recipe.identification
        assert is_magic_gram(trace.output, trace.reduced_gram)

    def test_hb_to_ms3_29(self, entries):
        hb, child = entries["HB"], entries["MS3-29"]
        trace = reduce_with(hb.hypergraph, pulled_back_gram(hb, child))
        assert (trace.output.vertex_count, trace.output.num_edges) == (29, 33)
        assert canonical_edges(trace.output) == canonical_edges(child.hypergraph)

    def test_hb_to_ms5_26_with_deletions(self, entries):
        hb, child = entries["HB"], entries["MS5-26"]
        g = pulled_back_gram(hb, child)
        assert any(r == 0 for r in g.rows)  # deleted vertices carry identity
        trace = reduce_with(hb.hypergraph, g)
        assert canonical_edges(trace.output) == canonical_edges(child.hypergraph)
        assert sorted(trace.recipe.deleted_vertices) == [2, 4, 8, 11, 27]

    def test_snapshots_chain(self, entries):
        hd, child = entries["HD"], entries["MS3-27b"]
        trace = reduce_with(hd.hypergraph, pulled_back_gram(hd, child))
        snaps = trace.snapshots
        assert len(snaps.after_deletion) == hd.hypergraph.num_edges
        assert len(snaps.after_identification) == hd.hypergraph.num_edges
        # Duplicate contexts cancel pairwise: 45 -> 27 here.
        assert len(snaps.after_edge_mod2) == 27

    def test_reduced_matrix_rejected(self, entries):
        h = entries["MS3-27b"].hypergraph
        g = valid_gram_space(h).magic_offset
        with pytest.raises(ValueError, match="already reduced"):
            reduce_with(h, g)

    def test_nonmagic_matrix_rejected(self, entries):
        from magicsets.gf2 import BitMatrix

        h = entries["HD"].hypergraph
        with pytest.raises(ValueError, match="not magic"):
            reduce_with(h, BitMatrix.zero(45, 45))

    def test_outputs_always_proper_eulerian(self, entries):
        # Includes the regression case where whole contexts cancel modulo 2
        # and leave would-be isolated vertices: two levels of HB's tree.
        from magicsets.reduce import _reducible_signatures

        hb = entries["HB"].hypergraph
        sp = valid_gram_space(hb)
        stats = {"inspected": 0}
        level1 = []
        for _, matrix in _reducible_signatures(hb, sp.magic_offset, sp.nonmagic_basis, 20, stats):
            trace = reduce_with(hb, matrix)
            ok, diag = is_proper_eulerian(trace.output)
            assert ok, diag
            level1.append(trace.output)
            if len(level1) >= 40:
                break
        checked = 0
        for child in level1:
            csp = valid_gram_space(child)
            stats2 = {"inspected": 0}
            for _, matrix in _reducible_signatures(
                child, csp.magic_offset, csp.nonmagic_basis, 20, stats2
            ):
                trace = reduce_with(child, matrix)
                ok, diag = is_proper_eulerian(trace.output)
                assert ok, diag
                checked += 1
                if checked >= 120:
                    return


class TestRecipeFromGram:
    def test_matches_published_map(self, entries):
        hd, child = entries["HD"], entries["MS3-27b"]
        recipe = recipe_from_gram(hd.hypergraph, pulled_back_gram(hd, child))
        assert recipe.identification == child.recipe.identification
        assert recipe.deleted_vertices == frozenset()


class TestDescendants:
    def test_hd_single_class(self, entries):
        report = find_minimal_descendants(entries["HD"].hypergraph, max_seconds=600)
        assert report.complete
        assert len(report.minimal) == 1
        assert are_isomorphic(report.minimal[0], entries["MS3-27b"].hypergraph)
        assert any(
            canonical_edges(c) == canonical_edges(entries["MS3-27b"].hypergraph)
            for c in report.labeled_copies
        )

    def test_square_already_minimal(self, square):
        report = find_minimal_descendants(square.hypergraph)
        assert report.already_minimal
        assert report.minimal == ()
        assert report.complete

    def test_budget_exhaustion_flagged(self, entries):
        report = find_minimal_descendants(entries["HB"].hypergraph, max_nodes=2, max_seconds=5)
        assert not report.complete


class TestIsomorphism:
    def test_relabelings_detected(self, entries):
        import random

        h = entries["MS3-27b"].hypergraph
        rng = random.Random(17)
        perm = list(range(1, 28))
        rng.shuffle(perm)
        relabeled = parse_edge_list(
            str([sorted(perm[v - 1] for v in e) for e in h.edges])
        )
        assert are_isomorphic(h, relabeled)

    def test_different_structures_distinguished(self, entries):
        from magicsets.orbits import ms327_hypergraph

        assert not are_isomorphic(entries["MS3-27b"].hypergraph, ms327_hypergraph())
