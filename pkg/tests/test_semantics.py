import random

import pytest

from conftest import BOTH, MODAL, PROPOSITIONAL, X1, X2
from teamlogic import oracle
from teamlogic.errors import TeamLogicError
from teamlogic.formula import (
    BOT,
    And,
    BoolNeg,
    Bot,
    DualNeg,
    GlobalOr,
    HSDia,
    Implies,
    NE,
    Or,
    PropAtom,
    subformulas,
)
from teamlogic.semantics import (
    Denoter,
    Evaluator,
    TeamProperty,
    antisupports,
    check_closure,
    dual_property_of,
    ground_team,
    ground_team_on_model,
    property_of,
    property_on_model,
    supports,
)
from teamlogic.teams import KripkeModel, all_teams

SMALL_MODELS = list(oracle.enumerate_models(2, ("p", "q")))


def _teams(vocab, *literals):
    return {vocab.parse_team(t) for t in literals}


class TestSupportExamples:
    def test_atom(self, f):
        assert supports(X1, X1.parse_team("{1}"), f("p", "bsml"), "pl")
        assert not supports(X1, X1.parse_team("{1,0}"), f("p", "pl"), "pl")

    def test_empty_team(self, f):
        assert not supports(X1, 0, f("NE", "plne"), "plne")
        assert supports(X1, 0, f("bot", "plne"), "plne")

    def test_pair_formula_needs_both_valuations(self, f):
        both = f(BOTH, "plne")
        assert supports(X1, X1.parse_team("{1,0}"), both, "plne")
        assert not supports(X1, X1.parse_team("{1}"), both, "plne")

    def test_bot_is_always_anti_supported(self, f):
        for logic in ("pl", "plne", "pldep"):
            assert all(antisupports(X1, t, f("bot", logic), logic) for t in all_teams(X1))

    def test_dependence_anti_support(self, f):
        g = f("dep(p; q)", "pldep")
        assert antisupports(X2, 0, g, "pldep")
        assert not any(antisupports(X2, t, g, "pldep") for t in range(1, 16))

    def test_hs_diamond_table(self, f):
        # frozen from brute force over the four subteams at |X|=1
        g = f("hdia p", "hs")
        sup = {t for t in all_teams(X1) if supports(X1, t, g, "hs")}
        anti = {t for t in all_teams(X1) if antisupports(X1, t, g, "hs")}
        assert sup == _teams(X1, "{1}", "{0,1}")
        assert anti == _teams(X1, "{}", "{0}")
        assert oracle.denotation(g, X1, "hs") == sup
        assert oracle.denotation(g, X1, "hs", positive=False) == anti

    def test_inqb_has_no_anti_support(self, f):
        with pytest.raises(TeamLogicError):
            antisupports(X1, 0, f("p", "inqb"), "inqb")

    def test_vocabulary_mismatch(self, f):
        with pytest.raises(TeamLogicError):
            supports(X1, 0, f("q", "pl"), "pl")
        with pytest.raises(TeamLogicError):
            supports(X1, 0, f("dia p", "ml"), "ml")


class TestProperties:
    def test_examples(self, f):
        assert set(property_of(f("top", "pl"), X1, "pl")) == set(range(4))
        assert set(property_of(f("NE", "plne"), X1, "plne")) == {1, 2, 3}
        assert property_of(f("Botbar", "plne"), X1, "plne").mask == 0
        assert set(property_of(f("bot", "pl"), X1, "pl")) == {0}

    def test_dual_property_is_property_of_negation(self, f):
        g = f("p & NE", "plne")
        assert dual_property_of(g, X2, "plne") == property_of(DualNeg(g), X2, "plne")

    def test_ground_teams(self, f):
        assert ground_team(f("NE", "plne"), X2, "plne") == X2.full
        assert ground_team(f("p & NE", "plne"), X1, "plne") == X1.parse_team("{1}")
        assert ground_team(f(BOTH, "plne"), X1, "plne") == X1.parse_team("{0,1}")

    def test_modal_profile_needs_a_model(self, f):
        with pytest.raises(TeamLogicError):
            property_of(f("dia p", "ml"), X1, "ml")

    def test_on_model(self, f):
        m = KripkeModel.build(["w1", "w2", "w3"], [("w1", "w2"), ("w3", "w1")], {"p": ["w2"]})
        assert len(property_on_model(m, f("top", "ml"), "ml")) == 8
        assert set(property_on_model(m, f("bot", "ml"), "ml")) == {0}
        # only w1 sees a p-world
        assert set(property_on_model(m, f("dia p", "ml"), "ml")) == {0, m.parse_team("{w1}")}
        assert ground_team_on_model(m, f("dia p", "ml")) == m.parse_team("{w1}")


class TestClosure:
    def test_classical_atom_is_flat(self, f):
        flags = check_closure(property_of(f("p", "pl"), X2, "pl"))
        assert flags.flat and flags.downward_closed and flags.union_closed

    def test_atom_with_nonemptiness(self, f):
        flags = check_closure(property_of(f("p & NE", "plne"), X2, "plne"))
        assert (flags.downward_closed, flags.convex, flags.union_closed, flags.empty_team) == (
            False, True, True, False)

    def test_global_disjunction_breaks_union_closure(self, f):
        m = KripkeModel.build(["u", "v"], [], {"a": ["u"], "b": ["v"], "p": ["u"], "q": ["v"]})
        g = f("(a & ((p & NE) | top)) gor (b & ((q & NE) | top))", "bsmli")
        prop = property_on_model(m, g, "bsmli")
        assert set(prop) == {m.parse_team("{u}"), m.parse_team("{v}")}
        assert not check_closure(prop).union_closed

    def test_lattice_flags_match_brute_force(self):
        for mask in range(1 << 4):
            prop = TeamProperty(X1, mask)
            assert check_closure(prop).__dict__ == oracle.closure_flags(set(prop), 2)
        rng = random.Random(3)
        for _ in range(1500):
            prop = TeamProperty(X2, rng.getrandbits(16))
            assert check_closure(prop).__dict__ == oracle.closure_flags(set(prop), 4)


class TestEvaluatorsAgree:
    @pytest.mark.parametrize("logic", PROPOSITIONAL)
    def test_propositional(self, logic):
        rng = random.Random(40)
        for _ in range(150):
            g = oracle.random_formula(logic, X2, 4, rng=rng)
            ev, den = Evaluator(X2, logic), Denoter(X2, logic)
            sup = den.support(g)
            assert sup == sum(1 << t for t in oracle.denotation(g, X2, logic))
            assert sup == sum(1 << t for t in range(16) if ev.supports(t, g))
            if logic != "inqb" and _anti_defined(g):
                anti = den.antisupport(g)
                assert anti == sum(1 << t for t in oracle.denotation(g, X2, logic, positive=False))
                assert anti == sum(1 << t for t in range(16) if ev.antisupports(t, g))

    @pytest.mark.parametrize("logic", MODAL)
    def test_modal(self, logic):
        rng = random.Random(41)
        models = rng.sample(list(oracle.enumerate_models(3, ("p", "q"))), 12)
        for _ in range(40):
            g = oracle.random_formula(logic, ["p", "q"], 3, rng=rng)
            for m in models:
                n = 1 << len(m.worlds)
                ev, den = Evaluator(m, logic), Denoter(m, logic)
                assert den.support(g) == sum(1 << t for t in oracle.denotation(g, m, logic))
                assert den.support(g) == sum(1 << t for t in range(n) if ev.supports(t, g))
                assert den.antisupport(g) == sum(
                    1 << t for t in oracle.denotation(g, m, logic, positive=False))


class TestInvariants:
    @pytest.mark.parametrize("logic", ["pl", "ml"])
    def test_conservativity(self, logic):
        rng = random.Random(50)
        structures = [X2] if logic == "pl" else list(oracle.enumerate_models(2, ("p", "q")))
        for _ in range(200):
            g = oracle.random_formula(logic, ["p", "q"], 4, rng=rng)
            for s in structures:
                truth = sum(1 << w for w in range(s.npoints) if oracle.classical_truth(s, w, g))
                sup = Denoter(s, logic).support(g)
                assert sup == sum(1 << t for t in range(1 << s.npoints) if t & ~truth == 0)

    # NE* is excluded: it is supported and anti-supported by every nonempty team
    @pytest.mark.parametrize("logic", ["plne", "plnegd", "pldep", "plsim"])
    def test_bilateral_exclusion(self, logic):
        rng = random.Random(51)
        for _ in range(300):
            g = oracle.random_formula(logic, X2, 4, rng=rng)
            d = Denoter(X2, logic)
            if logic == "plsim" and not _anti_defined(g):
                continue
            s_ground = TeamProperty(X2, d.support(g)).ground()
            a_ground = TeamProperty(X2, d.antisupport(g)).ground()
            assert s_ground & a_ground == 0

    def test_bilateral_exclusion_modal(self):
        rng = random.Random(52)
        for _ in range(100):
            g = oracle.random_formula("bsmli", ["p", "q"], 3, rng=rng)
            for m in SMALL_MODELS:
                d = Denoter(m, "bsmli")
                assert TeamProperty(m, d.support(g)).ground() & TeamProperty(m, d.antisupport(g)).ground() == 0

    def test_global_disjunction_has_the_same_anti_support(self):
        rng = random.Random(53)
        for _ in range(200):
            a = oracle.random_formula("plnegd", X2, 3, rng=rng)
            b = oracle.random_formula("plnegd", X2, 3, rng=rng)
            d = Denoter(X2, "plnegd")
            assert d.antisupport(Or(a, b)) == d.antisupport(GlobalOr(a, b))

    @pytest.mark.parametrize("logic", ["bsml", "plne"])
    def test_disjunction_free_formulas_are_union_closed_and_convex(self, logic):
        rng = random.Random(54)
        checked = 0
        structures = [X2] if logic == "plne" else SMALL_MODELS[::8]
        while checked < 150:
            g = oracle.random_formula(logic, ["p", "q"], 4, rng=rng)
            if any(isinstance(n, Or) for n in subformulas(g)):
                continue
            checked += 1
            for s in structures:
                flags = check_closure(TeamProperty(s, Denoter(s, logic).support(g)))
                assert flags.union_closed and flags.convex

    @pytest.mark.parametrize("logic", ["bsmli", "plnegd"])
    def test_ne_free_formulas_are_downward_closed_with_empty_team(self, logic):
        rng = random.Random(55)
        checked = 0
        structures = [X2] if logic == "plnegd" else SMALL_MODELS[::8]
        while checked < 150:
            g = oracle.random_formula(logic, ["p", "q"], 4, rng=rng)
            if any(isinstance(n, NE) for n in subformulas(g)):
                continue
            checked += 1
            for s in structures:
                flags = check_closure(TeamProperty(s, Denoter(s, logic).support(g)))
                assert flags.downward_closed and flags.empty_team

    def test_hs_boolean_negation_is_definable(self):
        rng = random.Random(56)
        for _ in range(300):
            g = oracle.random_formula("hs", X2, 4, rng=rng)
            d = Denoter(X2, "hs")
            assert d.support(HSDia(DualNeg(g))) == 0xFFFF & ~d.support(g)

    def test_inquisitive_double_negation(self, f):
        twice = f("neg neg (p gor q)", "inqb")
        assert oracle.equivalent(twice, f("neg (neg p & neg q)", "inqb"), X2, "inqb").result
        assert not oracle.entails(twice, f("p gor q", "inqb"), X2, "inqb").result
        # p ∨ q is not in InqB's syntax; compare with its PL denotation
        assert property_of(twice, X2, "inqb").mask == property_of(f("p | q", "pl"), X2, "pl").mask

    def test_classical_negations_coincide(self):
        rng = random.Random(57)
        for _ in range(300):
            alpha = oracle.random_formula("pl", X2, 4, rng=rng)
            dual = property_of(DualNeg(alpha), X2, "pl").mask
            assert dual == _restricted_classical_negation(alpha)
            assert dual == property_of(Implies(_to_inqb(alpha), BOT), X2, "inqb").mask


def _anti_defined(g):
    def walk(n, under):
        if isinstance(n, BoolNeg) and under:
            return False
        return all(walk(c, under or isinstance(n, DualNeg)) for c in n.children())

    return walk(DualNeg(g), False)


def _restricted_classical_negation(alpha):
    """Teams whose every member falsifies the classical formula alpha."""
    false_at = sum(1 << w for w in range(X2.npoints) if not oracle.classical_truth(X2, w, alpha))
    return sum(1 << t for t in range(16) if t & ~false_at == 0)


def _to_inqb(alpha):
    """The same classical formula in InqB syntax, with disjunction as a negated conjunction."""
    if isinstance(alpha, (PropAtom, Bot)):
        return alpha
    if isinstance(alpha, DualNeg):
        return Implies(_to_inqb(alpha.child), BOT)
    left, right = _to_inqb(alpha.left), _to_inqb(alpha.right)
    if isinstance(alpha, And):
        return And(left, right)
    return Implies(And(Implies(left, BOT), Implies(right, BOT)), BOT)
