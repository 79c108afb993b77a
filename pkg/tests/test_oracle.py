import random

import pytest

from conftest import MODAL, PROPOSITIONAL, X1, X2
from teamlogic import oracle
from teamlogic.errors import BoundsExceeded
from teamlogic.formula import DualNeg, GlobalOr, Or
from teamlogic.semantics import Denoter, supports
from teamlogic.teams import Vocabulary


class TestPropositional:
    def test_weak_contradiction_and_negated_nonemptiness(self, f):
        assert oracle.equivalent(f("bot", "plne"), f("neg NE", "plne"), X1, "plne").result

    def test_replacement_fails_under_negation(self, f):
        v = oracle.equivalent(f("neg bot", "plne"), f("neg neg NE", "plne"), X1, "plne")
        assert not v.result
        assert v.witness == 0

    def test_negated_disjunctions_agree(self):
        rng = random.Random(1)
        for _ in range(200):
            a = oracle.random_formula("plnegd", X2, 3, rng=rng)
            b = oracle.random_formula("plnegd", X2, 3, rng=rng)
            assert oracle.equivalent(DualNeg(Or(a, b)), DualNeg(GlobalOr(a, b)), X2, "plnegd").result

    def test_hs_diamond(self, f):
        assert oracle.equivalent(f("neg p", "hs"), f("neg hdia p", "hs"), X1, "hs").result
        v = oracle.equivalent(f("p", "hs"), f("hdia p", "hs"), X1, "hs")
        assert not v.result
        g, h = f("p", "hs"), f("hdia p", "hs")
        assert supports(X1, v.witness, g, "hs") != supports(X1, v.witness, h, "hs")

    def test_bi_equivalence_is_stronger(self, f):
        a, b = f("bot", "plne"), f("neg NE", "plne")
        v = oracle.bi_equivalent(a, b, X1, "plne")
        assert not v.result and v.witness == 0
        assert oracle.bi_equivalent(f("p & q", "pl"), f("q & p", "pl"), X2, "pl").result

    def test_entailment(self, f):
        assert oracle.entails(f("p & NE", "plne"), f("p", "plne"), X1, "plne").result
        v = oracle.entails(f("p", "plne"), f("p & NE", "plne"), X1, "plne")
        assert not v.result and v.witness == 0

    def test_false_verdicts_carry_witnesses(self):
        rng = random.Random(2)
        for _ in range(200):
            a = oracle.random_formula("pldep", X2, 3, rng=rng)
            b = oracle.random_formula("pldep", X2, 3, rng=rng)
            v = oracle.equivalent(a, b, X2, "pldep")
            assert v.bounds
            if not v.result:
                assert supports(X2, v.witness, a, "pldep") != supports(X2, v.witness, b, "pldep")

    def test_vocabulary_cap(self, f):
        with pytest.raises(BoundsExceeded):
            oracle.equivalent(f("p", "pl"), f("p", "pl"), Vocabulary.of("a,b,c,d,e"), "pl")

    @pytest.mark.parametrize("logic", ["plne", "plnegd", "pldep", "inqb"])
    def test_self_consistency(self, logic):
        rng = random.Random(3)
        for _ in range(200):
            a = oracle.random_formula(logic, X2, 2, rng=rng)
            b = oracle.random_formula(logic, X2, 2, rng=rng)
            both = oracle.entails(a, b, X2, logic).result and oracle.entails(b, a, X2, logic).result
            assert oracle.equivalent(a, b, X2, logic).result == both


class TestModal:
    def test_diamond_of_strong_contradiction(self, f):
        v = oracle.modal_equivalent_bounded(f("dia Botbar", "bsml"), f("bot", "bsml"), 3, ["p"], "bsml")
        assert v.result and v.bounds["max_worlds"] == 3

    def test_box_of_strong_contradiction(self, f):
        g, h = f("box Botbar", "bsml"), f("Botbar", "bsml")
        v = oracle.modal_equivalent_bounded(g, h, 2, ["p"], "bsml")
        assert not v.result
        model, team = v.witness
        assert Denoter(model, "bsml").support(g) >> team & 1 != Denoter(model, "bsml").support(h) >> team & 1

    @pytest.mark.parametrize("logic", MODAL)
    def test_reflexive(self, logic):
        rng = random.Random(4)
        for _ in range(10):
            g = oracle.random_formula(logic, ["p", "q"], 3, rng=rng)
            assert oracle.modal_equivalent_bounded(g, g, 2, ["p", "q"], logic).result

    def test_bounds(self, f):
        with pytest.raises(BoundsExceeded):
            oracle.modal_equivalent_bounded(f("p", "ml"), f("p", "ml"), 5, ["p"], "ml")
        with pytest.raises(BoundsExceeded):
            oracle.modal_equivalent_bounded(f("p", "ml"), f("p", "ml"), 2, ["p", "q", "r"], "ml")


class TestGenerator:
    @pytest.mark.parametrize("logic", PROPOSITIONAL + MODAL)
    def test_seeded(self, logic):
        assert oracle.random_formula(logic, X2, 4, seed=9) == oracle.random_formula(logic, X2, 4, seed=9)

    def test_depth_cap(self):
        with pytest.raises(BoundsExceeded):
            oracle.random_formula("pl", X2, 7, seed=1)

    def test_classical_evaluation_matches_flatness(self):
        rng = random.Random(5)
        for _ in range(300):
            g = oracle.random_formula("pl", X2, 4, rng=rng)
            truth = {w for w in range(4) if oracle.classical_truth(X2, w, g)}
            lifted = {t for t in range(16) if all(w in truth for w in range(4) if t >> w & 1)}
            assert oracle.denotation(g, X2, "pl") == lifted
