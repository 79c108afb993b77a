"""Constructive Burgess witnesses and the normal forms behind them.

Each ``burgess_*`` function takes a pair (φ, ψ), checks that the pair has the
incompatibility property its logic requires, builds θ, and asks the oracle
whether θ ≡ φ and ¬θ ≡ ψ.  A failed precondition raises :class:`NotApplicable`
carrying a witness (a valuation or a team) rather than returning a bad θ.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle
from .errors import BoundsExceeded, NotApplicable, TeamLogicError
from .formula import (
    BOT,
    BOTBAR,
    NONEMPTY,
    NONEMPTY_STAR,
    TOP,
    And,
    Dia,
    DualNeg,
    Formula,
    GlobalOr,
    HSAnd,
    HSDia,
    HSOr,
    Implies,
    Logic,
    NEStar,
    Or,
    PropAtom,
    BoolNeg,
    big_and,
    big_gor,
    big_or,
    botbar_star,
    con,
    fold,
    modal_depth,
    props,
)
from .incompat import classify_property_pair
from .semantics import Denoter, TeamProperty, check_closure, property_of
from .teams import (
    Vocabulary,
    _canonical,
    hintikka_world,
    members,
    popcount,
    prop_char_team,
    prop_char_val,
)
from .transforms import empty_team_normalize


@dataclass(frozen=True)
class SynthesisResult:
    theta: Formula
    certificate: tuple[bool, bool]
    vocabulary: tuple[str, ...]
    bounds: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.certificate)


def joint_vocabulary(phi: Formula, psi: Formula, vocab: Vocabulary | None = None) -> Vocabulary:
    names = props(phi) | props(psi)
    if vocab is None:
        return Vocabulary(tuple(sorted(names)))
    if not vocab.covers(names):
        raise TeamLogicError("vocabulary does not cover the formulas' propositions")
    return vocab


def certify(theta: Formula, phi: Formula, psi: Formula, vocab: Vocabulary, logic) -> tuple[bool, bool]:
    """Oracle verdicts for θ ≡ φ and ¬θ ≡ ψ over ``vocab``."""
    return (
        oracle.equivalent(theta, phi, vocab, logic).result,
        oracle.equivalent(DualNeg(theta), psi, vocab, logic).result,
    )


def _result(theta, phi, psi, vocab, logic) -> SynthesisResult:
    return SynthesisResult(theta, certify(theta, phi, psi, vocab, logic), vocab.names)


def _ground_overlap(p: TeamProperty, q: TeamProperty) -> int | None:
    shared = p.ground() & q.ground()
    return members(shared)[0] if shared else None


# ---------------------------------------------------------------- separation


def separate_classical(
    phi: Formula, psi: Formula, vocab: Vocabulary | None, logic, max_worlds: int = 3
) -> Formula:
    """A classical γ with φ ⊨ γ and ψ ⊨ ¬γ, for ground-incompatible φ and ψ."""
    logic = Logic.lookup(logic)
    if logic.modal:
        names = tuple(sorted(props(phi) | props(psi))) if vocab is None else vocab.names
        return _modal_separator(phi, psi, names, logic, max_worlds)
    vocab = joint_vocabulary(phi, psi, vocab)
    p, q = property_of(phi, vocab, logic), property_of(psi, vocab, logic)
    w = _ground_overlap(p, q)
    if w is not None:
        raise NotApplicable(
            f"not ground-incompatible: valuation {vocab.bits(w)} lies in both ground teams",
            witness=vocab.bits(w),
        )
    return prop_char_team(p.ground(), vocab)


def _modal_separator(phi, psi, names, logic, max_worlds) -> Formula:
    k = modal_depth(phi)
    if len(names) > 2 or max_worlds > 3 or k > 1:
        raise BoundsExceeded("modal separation is bounded to 2 names, 3 worlds and modal depth 1")
    chis = []
    for model in oracle.enumerate_models(max_worlds, names):
        d = Denoter(model, logic)
        g0 = _ground(d.support(phi))
        g1 = _ground(d.support(psi))
        if g0 & g1:
            w = members(g0 & g1)[0]
            raise NotApplicable(
                f"not ground-incompatible: world {model.worlds[w]} of the model "
                f"[{model.to_text('; ')}] lies in both ground teams",
                witness=(model, w),
            )
        chis.extend(hintikka_world(model, w, names, k) for w in members(g0))
    return big_or(_canonical(chis))


def _ground(prop: int) -> int:
    out = 0
    for t in members(prop):
        out |= t
    return out


THETA_ZERO = Dia(Or(BOTBAR, DualNeg(BOTBAR)))


def burgess_modal(phi: Formula, psi: Formula, logic=Logic.BSMLI, max_worlds: int = 2) -> SynthesisResult:
    """Bounded witness for BSML/BSMLI: θ := (φ′ ∨ θ0) ∧ γ ∨ ¬(ψ′ ∨ θ0)."""
    logic = Logic.lookup(logic)
    if logic not in (Logic.BSML, Logic.BSMLI):
        raise TeamLogicError("burgess_modal handles BSML and BSMLI")
    names = tuple(sorted(props(phi) | props(psi)))
    gamma = separate_classical(phi, psi, Vocabulary(names), logic, max_worlds)
    phi0 = Or(empty_team_normalize(phi), THETA_ZERO)
    psi0 = Or(empty_team_normalize(psi), THETA_ZERO)
    theta = Or(And(phi0, gamma), DualNeg(psi0))
    cert = (
        oracle.modal_equivalent_bounded(theta, phi, max_worlds, names, logic).result,
        oracle.modal_equivalent_bounded(DualNeg(theta), psi, max_worlds, names, logic).result,
    )
    return SynthesisResult(theta, cert, names, {"max_worlds": max_worlds})


# ---------------------------------------------------------------- PL(NE, gor)


def burgess_plne_gd(phi: Formula, psi: Formula, vocab: Vocabulary | None = None) -> SynthesisResult:
    """θ := ¬((¬φ ∨ ⊥̄) ⩒ ¬((¬ψ ∨ ⊥̄) ⩒ γ)) for ground-incompatible φ, ψ."""
    logic = Logic.PLNE_GD
    vocab = joint_vocabulary(phi, psi, vocab)
    if len(vocab) > 3:
        raise BoundsExceeded("exact ground-incompatibility checks stop at 3 names")
    gamma = separate_classical(phi, psi, vocab, logic)
    phi_b = Or(DualNeg(phi), BOTBAR)
    psi_b = Or(DualNeg(psi), BOTBAR)
    theta = DualNeg(GlobalOr(phi_b, DualNeg(GlobalOr(psi_b, gamma))))
    return _result(theta, phi, psi, vocab, logic)


# ---------------------------------------------------------------- PL(NE)


def delta_formula(prop: TeamProperty) -> Formula:
    """⋀ over choice functions w_i ∈ t_i of ((χ_{w_1} ∨ ... ∨ χ_{w_n}) ∧ NE) ∨ ⊤.

    Choices with the same image give the same conjunct, so the conjuncts are
    enumerated by image set; a property containing ∅ has no choices at all.
    """
    vocab = prop.space
    if not isinstance(vocab, Vocabulary) or len(vocab) > 3:
        raise BoundsExceeded("δ formulas are built over at most 3 names")
    images = {0}
    for t in prop.teams():
        images = {img | (1 << w) for img in images for w in members(t)}
    return big_and(Or(And(prop_char_team(img, vocab), NONEMPTY), TOP) for img in sorted(images))


def _plne_form(prop: TeamProperty) -> Formula:
    return And(big_or(prop_char_team(t, prop.space) for t in prop.teams()), delta_formula(prop))


def burgess_plne(phi: Formula, psi: Formula, vocab: Vocabulary | None = None) -> SynthesisResult:
    """Witness for pairs ground-complementary modulo ⊥̄."""
    logic = Logic.PLNE
    vocab = joint_vocabulary(phi, psi, vocab)
    if len(vocab) > 3:
        raise BoundsExceeded("exact checks stop at 3 names")
    p, q = property_of(phi, vocab, logic), property_of(psi, vocab, logic)
    if not classify_property_pair(p, q).ground_complementary_mod_bot:
        bad = members(vocab.full & ~(p.ground() ^ q.ground()))[0]
        where = "both" if p.ground() >> bad & 1 else "neither"
        raise NotApplicable(
            f"not ground-complementary modulo ⊥̄: valuation {vocab.bits(bad)} "
            f"lies in {where} ground team{'s' if where == 'both' else ''}",
            witness=vocab.bits(bad),
        )
    if not q.mask:
        theta = And(phi, DualNeg(BOTBAR))
    elif not p.mask:
        theta = DualNeg(And(psi, DualNeg(BOTBAR)))
    else:
        theta = Or(_plne_form(p), DualNeg(delta_formula(q)))
    return _result(theta, phi, psi, vocab, logic)


# ---------------------------------------------------------------- HS


def burgess_hs(phi: Formula, psi: Formula, vocab: Vocabulary | None = None) -> SynthesisResult:
    """θ := φ ∧̇ ⊤ when ψ is a down-set incompatibility of φ, else ¬(ψ ∧̇ ⊤)."""
    logic = Logic.HS
    vocab = joint_vocabulary(phi, psi, vocab)
    if len(vocab) > 3:
        raise BoundsExceeded("exact checks stop at 3 names")
    p, q = property_of(phi, vocab, logic), property_of(psi, vocab, logic)
    v = classify_property_pair(p, q)
    if v.d_i_1_of_0:
        theta = HSAnd(phi, TOP)
    elif v.d_i_0_of_1:
        theta = DualNeg(HSAnd(psi, TOP))
    else:
        lat = p.lattice
        t1 = members(q.mask ^ (lat.full & ~lat.up(p.mask & ~1)))[0]
        t0 = members(p.mask ^ (lat.full & ~lat.up(q.mask & ~1)))[0]
        raise NotApplicable(
            "not down-set incompatible on either side: "
            f"team {vocab.format_team(t1)} breaks the first direction, "
            f"team {vocab.format_team(t0)} the second",
            witness=(vocab.format_team(t1), vocab.format_team(t0)),
        )
    return _result(theta, phi, psi, vocab, logic)


# ---------------------------------------------------------------- PL(NE*, gor)


def _top_form(f: Formula) -> Formula:
    return DualNeg(GlobalOr(DualNeg(empty_team_normalize(f)), DualNeg(GlobalOr(NONEMPTY_STAR, BOT))))


def burgess_nestar(phi: Formula, psi: Formula, vocab: Vocabulary | None = None) -> SynthesisResult:
    """θ := φ_⊤ ⩒ (⊥̄* ∨ ¬ψ_⊤); needs no incompatibility at all."""
    logic = Logic.PLNEStar_GD
    vocab = joint_vocabulary(phi, psi, vocab)
    theta = GlobalOr(_top_form(phi), Or(botbar_star(), DualNeg(_top_form(psi))))
    return _result(theta, phi, psi, vocab, logic)


# ---------------------------------------------------------------- PL(dep)


def gamma_n(vocab: Vocabulary, n: int) -> Formula:
    """Supported exactly by teams with at most n valuations."""
    if n < 0:
        raise TeamLogicError("γ_n needs n ≥ 0")
    if n == 0:
        return BOT
    one = big_and(con(p) for p in vocab.names)
    return fold(Or, [one] * n, BOT)


def xi_formula(team: int, vocab: Vocabulary) -> Formula:
    """Supported exactly by the teams that do not include ``team``."""
    if team == 0:
        raise TeamLogicError("ξ is defined for nonempty teams")
    return Or(gamma_n(vocab, popcount(team) - 1), prop_char_team(vocab.full & ~team, vocab))


def _xi_conjunction(vocab: Vocabulary, teams) -> Formula:
    return big_and(xi_formula(s, vocab) for s in teams)


def burgess_pldep(phi: Formula, psi: Formula, vocab: Vocabulary | None = None) -> SynthesisResult:
    """θ := ⋀_{s∉P} ξ_s ∨ ¬⋀_{s∉Q, |s|>1} ξ_s for ground-complementary φ, ψ."""
    logic = Logic.PLDep
    vocab = joint_vocabulary(phi, psi, vocab)
    if len(vocab) > 2:
        raise BoundsExceeded("ξ conjunctions are built over at most 2 names")
    p, q = property_of(phi, vocab, logic), property_of(psi, vocab, logic)
    if not classify_property_pair(p, q).ground_complementary:
        bad = members(vocab.full & ~(p.ground() ^ q.ground()))[0]
        where = "both" if p.ground() >> bad & 1 else "neither"
        raise NotApplicable(
            f"not ground-complementary: valuation {vocab.bits(bad)} lies in {where} of the ground teams",
            witness=vocab.bits(bad),
        )
    theta = _pldep_form(p, q)
    return _result(theta, phi, psi, vocab, logic)


def _pldep_form(p: TeamProperty, q: TeamProperty) -> Formula:
    vocab = p.space
    outside_p = p.complement().teams()
    outside_q = [s for s in q.complement().teams() if popcount(s) > 1]
    return Or(_xi_conjunction(vocab, outside_p), DualNeg(_xi_conjunction(vocab, outside_q)))


def chi_complement_form(team: int, vocab: Vocabulary) -> Formula:
    """⋀ over w outside ``team`` of χ_{|⊤| minus w}; equivalent to χ_team."""
    full = vocab.full
    return big_and(prop_char_team(full & ~(1 << w), vocab) for w in members(full & ~team))


# ---------------------------------------------------------------- normal forms


def _require(prop: TeamProperty, *flags: str) -> None:
    c = check_closure(prop)
    for flag in flags:
        if not getattr(c, flag):
            raise NotApplicable(f"property is not {flag.replace('_', ' ')}", witness=flag)


def _exact_team(t: int, vocab: Vocabulary, ne: Formula) -> Formula:
    """Supported by the team ``t`` alone."""
    return And(
        prop_char_team(t, vocab),
        big_and(Or(And(prop_char_val(w, vocab), ne), TOP) for w in members(t)),
    )


def _boolean_exact(t: int, vocab: Vocabulary, neg, conj, disj) -> Formula:
    """χ_t ∧ ⋀_{w∈t} ∼χ_{t∖w}, for logics with a Boolean negation ∼."""
    def chi_w(w):
        lits = [PropAtom(n) if w >> j & 1 else DualNeg(PropAtom(n)) for j, n in enumerate(vocab.names)]
        return fold(conj, lits, TOP)

    def chi(team):
        return fold(disj, [chi_w(w) for w in members(team)], BOT)

    parts = [chi(t)] + [neg(chi(t & ~(1 << w))) for w in members(t)]
    return fold(conj, parts, TOP)


def _inqb_char(t: int, vocab: Vocabulary) -> Formula:
    def literal(name, value):
        return PropAtom(name) if value else Implies(PropAtom(name), BOT)

    def chi_w(w):
        return fold(And, [literal(p, w >> j & 1) for j, p in enumerate(vocab.names)], Implies(BOT, BOT))

    outside = [w for w in range(vocab.npoints) if not t >> w & 1]
    return fold(And, [Implies(chi_w(w), BOT) for w in outside], Implies(BOT, BOT))


def synthesize_from_property(prop: TeamProperty, logic) -> Formula:
    """A formula of ``logic`` whose denotation is exactly ``prop``."""
    logic = Logic.lookup(logic)
    vocab = prop.space
    if not isinstance(vocab, Vocabulary):
        raise TeamLogicError("synthesis works on propositional properties")
    if logic is Logic.PL:
        _require(prop, "flat")
        return prop_char_team(prop.ground(), vocab)
    if logic is Logic.PLNE:
        if not prop.mask:
            return BOTBAR
        _require(prop, "convex", "union_closed")
        return _plne_form(prop)
    if logic is Logic.PLDep:
        _require(prop, "downward_closed", "empty_team")
        if len(vocab) > 2:
            raise BoundsExceeded("ξ conjunctions are built over at most 2 names")
        return _xi_conjunction(vocab, prop.complement().teams())
    if logic is Logic.PLNE_GD:
        if len(vocab) > 2:
            raise BoundsExceeded("exact-team disjunctions are built over at most 2 names")
        return big_gor((_exact_team(t, vocab, NONEMPTY) for t in prop.teams()), BOTBAR)
    if logic is Logic.PLNEStar_GD:
        if len(vocab) > 2:
            raise BoundsExceeded("exact-team disjunctions are built over at most 2 names")
        return big_gor((_exact_team(t, vocab, NEStar()) for t in prop.teams()), botbar_star())
    if logic is Logic.InqB:
        _require(prop, "downward_closed", "empty_team")
        maximal = [t for t in prop.teams() if not any(t != u and t & ~u == 0 for u in prop.teams())]
        return fold(GlobalOr, [_inqb_char(t, vocab) for t in maximal], BOT)
    if logic in (Logic.PLsim, Logic.HS):
        if logic is Logic.PLsim:
            neg, conj, disj = BoolNeg, And, Or
        else:
            neg, conj, disj = (lambda f: HSDia(DualNeg(f))), HSAnd, HSOr
        parts = [neg(_boolean_exact(t, vocab, neg, conj, disj)) for t in prop.teams()]
        return neg(fold(conj, parts, TOP))
    raise TeamLogicError(f"no property synthesis for {logic.name}")


def dual_normal_form_plne(p: TeamProperty, q: TeamProperty) -> Formula:
    """(⋁_{t∈P} χ_t ∧ δ_P) ∨ ¬δ_Q for convex, union-closed P, Q that are
    ground-complementary modulo ⊥̄."""
    for prop in (p, q):
        if not prop.mask:
            raise NotApplicable("property is empty", witness="nonempty")
        _require(prop, "convex", "union_closed")
    if not classify_property_pair(p, q).ground_complementary_mod_bot:
        raise NotApplicable("not ground-complementary modulo ⊥̄", witness="ground_complementary_mod_bot")
    return Or(_plne_form(p), DualNeg(delta_formula(q)))


def dual_normal_form_pldep(p: TeamProperty, q: TeamProperty) -> Formula:
    """⋀_{s∉P} ξ_s ∨ ¬⋀_{s∉Q,|s|>1} ξ_s for downward-closed P, Q with the
    empty team that are ground-complementary."""
    for prop in (p, q):
        _require(prop, "downward_closed", "empty_team")
    if not classify_property_pair(p, q).ground_complementary:
        raise NotApplicable("not ground-complementary", witness="ground_complementary")
    return _pldep_form(p, q)
