"""Tests for bounded countermodel search."""

import pytest

from kctapes.formats import load_inequality
from kctapes.options import DEFAULT_SEED, SearchOptions
from kctapes.polynomial import Polynomial, Signature
from kctapes.relations import Carrier
from kctapes.search import (
    CountermodelSearch,
    function_from_index,
    refute,
    relation_from_mask,
    search_countermodel,
    size_assignments,
)
from kctapes.sugar import star
from kctapes.terms import TSeq, tape_id
from tests.helpers import fixture_path


@pytest.fixture(name="a2")
def fixture_a2():
    """Return the carrier of ``A`` with two elements."""
    return Carrier.of(Polynomial.mono("A"), {"A": 2})


@pytest.fixture(name="r_signature")
def fixture_r_signature():
    """Return one relation ``R : A → A``."""
    return Signature.build(["A"], {"R": (["A"], ["A"])})


class TestEnumeration:
    """Test the canonical enumeration order."""

    def test_size_assignments(self):
        """Test smallest total size first, then lexicographic."""
        assert size_assignments(["B", "A"], 2) == [
            {"A": 1, "B": 1},
            {"A": 1, "B": 2},
            {"A": 2, "B": 1},
            {"A": 2, "B": 2},
        ]

    def test_masks(self, a2):
        """Test that bit k stands for the pair (k // |cod|, k % |cod|)."""
        assert relation_from_mask(a2, a2, 6).sorted_pairs() == [(0, 1), (1, 0)]
        assert not relation_from_mask(a2, a2, 0).pairs

    def test_functions(self, a2):
        """Test that function indices are big-endian in the domain."""
        assert function_from_index(a2, a2, 1).sorted_pairs() == [(0, 0), (1, 1)]
        assert function_from_index(a2, a2, 2).sorted_pairs() == [(0, 1), (1, 0)]

    def test_space_size(self, r_signature):
        """Test counting relations over all sizes."""
        search = CountermodelSearch(r_signature, SearchOptions(max_size=3, budget=10))

        exhaustive, _ = search.candidates()

        assert search.space_size() == 2 + 16 + 512
        assert not exhaustive

    def test_indices_follow_the_canonical_order(self, r_signature):
        """Test that decoding every index walks the space in enumeration order."""
        search = CountermodelSearch(r_signature, SearchOptions(max_size=2))

        decoded = [search.interpretation_at(i) for i in range(search.space_size())]

        assert decoded == list(search.exhaustive())
        with pytest.raises(IndexError):
            search.interpretation_at(search.space_size())

    def test_sampling_is_uniform_over_the_space(self, r_signature):
        """Test that sizes are drawn in proportion to how many models they hold."""
        search = CountermodelSearch(r_signature, SearchOptions(max_size=3, budget=300))

        sizes = [interp.sizes["A"] for interp in search.sampled()]

        assert len(sizes) == 300
        # 512 of the 530 relations live on three elements.
        assert sizes.count(3) > 250

    def test_restricted_modes(self):
        """Test that complements are derived and functions enumerated as graphs."""
        sig = Signature.build(
            ["A"], {"f": (["A"], ["A"]), "p": (["A"], []), "!p": (["A"], [])}
        )
        search = CountermodelSearch(
            sig, SearchOptions(max_size=2, restricted=True), functions=["f"]
        )

        candidates = list(search.exhaustive())

        assert search.space_size() == 1 * 2 + 4 * 4
        assert len(candidates) == 18
        for interp in candidates:
            assert interp.relation("!p") == interp.relation("p").complement()
            assert len(interp.relation("f")) == interp.sizes["A"]


class TestRefute:
    """Test refutation reports."""

    def test_transitivity_refuted_by_swap(self, r_signature, r_tape):
        """Test that R;R ≤ R is refuted by the swap on two elements."""
        report = refute(TSeq(r_tape, r_tape), r_tape, r_signature, SearchOptions(max_size=2))

        assert not report.holds
        assert report.seed == DEFAULT_SEED
        assert report.witness.bindings == {"|A|": "2", "R": "{(0,1),(1,0)}"}
        assert (report.witness.source, report.witness.target) == ("0", "0")

    def test_reflexivity_of_star_not_refuted(self, r_signature, r_tape):
        """Test that id ≤ R* survives every model up to size 3."""
        a = Polynomial.mono("A")

        report = refute(tape_id(a), star(r_tape), r_signature, SearchOptions(max_size=3))

        assert report.holds
        assert report.detail == "no countermodel up to size 3"

    def test_search_returns_the_model(self, r_signature, r_tape):
        """Test that the countermodel itself is returned."""
        found = search_countermodel(TSeq(r_tape, r_tape), r_tape, r_signature)

        assert found is not None
        assert found.relation("R").sorted_pairs() == [(0, 1), (1, 0)]

    def test_functions_restrict_the_search(self):
        """Test that f is deterministic only when searched among functions."""
        doc = load_inequality(fixture_path("inequalities", "deterministic.json"))
        sig, lhs, rhs = doc.tapes()

        loose = refute(lhs, rhs, sig, SearchOptions(max_size=2), functions=doc.functions)
        strict = refute(
            lhs, rhs, sig, SearchOptions(max_size=2, restricted=True), functions=doc.functions
        )

        assert not loose.holds
        assert strict.holds

    def test_sampling_is_deterministic(self, r_signature, r_tape):
        """Test that the same seed gives the same report."""
        options = SearchOptions(max_size=3, budget=20, seed=7)

        first = refute(star(r_tape), r_tape, r_signature, options)
        second = refute(star(r_tape), r_tape, r_signature, options)

        assert first == second
        assert first.seed == 7
