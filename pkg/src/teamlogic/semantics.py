"""Bilateral support and anti-support.

Two evaluators live here.  :class:`Evaluator` decides ``s ⊨ φ`` / ``s ⫤ φ`` for
one team at a time, searching splits recursively with a per-call memo.
:class:`Denoter` computes whole denotations bottom-up: a property (a set of
teams) is an ``int`` whose bit ``t`` marks team ``t``, and the connectives act
on those bitmasks directly.  The second is what ``property_of`` uses; the
test-suite checks the two against each other and against the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import BoundsExceeded, TeamLogicError, UndefinedClause
from .formula import (
    And,
    Bot,
    BoolNeg,
    Dep,
    Dia,
    DualNeg,
    Formula,
    GlobalOr,
    HSAnd,
    HSDia,
    HSOr,
    Implies,
    Logic,
    NE,
    NEStar,
    Or,
    PropAtom,
    Regime,
    props,
    validate,
)
from .teams import KripkeModel, Vocabulary, members, submasks

Structure = Vocabulary | KripkeModel

MAX_PROPERTY_POINTS = 16


# ---------------------------------------------------------------- team lattice


class Lattice:
    """Bitmask algebra on properties over ``npoints`` points."""

    def __init__(self, npoints: int):
        self.npoints = npoints
        self.nteams = 1 << npoints
        self.full = (1 << self.nteams) - 1
        self.point_full = (1 << npoints) - 1
        # contains[i]: the property "team contains point i"
        self.contains = []
        for i in range(npoints):
            width = 1 << i
            block = ((1 << width) - 1) << width
            self.contains.append(block * (self.full // ((1 << (2 * width)) - 1)))

    def down(self, prop: int) -> int:
        for i, m in enumerate(self.contains):
            prop |= (prop & m) >> (1 << i)
        return prop

    def up(self, prop: int) -> int:
        for i, m in enumerate(self.contains):
            prop |= (prop & ~m & self.full) << (1 << i)
        return prop

    def powerset(self, team: int) -> int:
        return self.down(1 << team)

    def add_point(self, prop: int, i: int) -> int:
        m = self.contains[i]
        return (prop & m) | ((prop & ~m & self.full) << (1 << i))

    def product(self, p: int, q: int) -> int:
        """The property {t ∪ u : t ∈ p, u ∈ q}."""
        if not p or not q:
            return 0
        if bin(p).count("1") > bin(q).count("1"):
            p, q = q, p
        out = 0
        for t in members(p):
            r = q
            for i in members(t):
                r = self.add_point(r, i)
            out |= r
        return out

    def singletons(self, prop: int) -> int:
        """Team of the points whose singleton team belongs to ``prop``."""
        return sum(1 << i for i in range(self.npoints) if prop >> (1 << i) & 1)


@lru_cache(maxsize=32)
def lattice(npoints: int) -> Lattice:
    if npoints > MAX_PROPERTY_POINTS:
        raise BoundsExceeded(f"{npoints} evaluation points exceed the property cap")
    return Lattice(npoints)


# ---------------------------------------------------------------- properties


@dataclass(frozen=True)
class TeamProperty:
    """A set of teams over one structure, stored as a bitmask of team indices."""

    space: Structure
    mask: int

    @property
    def lattice(self) -> Lattice:
        return lattice(self.space.npoints)

    def teams(self) -> list[int]:
        return members(self.mask)

    def __iter__(self) -> Iterator[int]:
        return iter(self.teams())

    def __contains__(self, team: int) -> bool:
        return bool(self.mask >> team & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def ground(self) -> int:
        out = 0
        for t in members(self.mask):
            out |= t
        return out

    def complement(self) -> TeamProperty:
        return TeamProperty(self.space, self.lattice.full & ~self.mask)

    def format(self) -> str:
        return " ".join(self.space.format_team(t) for t in self.teams())

    @classmethod
    def from_teams(cls, space: Structure, teams) -> TeamProperty:
        mask = 0
        for t in teams:
            mask |= 1 << t
        return cls(space, mask)


@dataclass(frozen=True)
class ClosureFlags:
    downward_closed: bool
    convex: bool
    union_closed: bool
    empty_team: bool
    flat: bool

    def __post_init__(self) -> None:
        expected = self.downward_closed and self.union_closed and self.empty_team
        if self.flat != expected:
            raise AssertionError("flatness must coincide with DC, UC and ET together")

    def names(self) -> list[str]:
        return [k for k, v in self.__dict__.items() if v]


def check_closure(prop: TeamProperty) -> ClosureFlags:
    lat = prop.lattice
    p = prop.mask
    down, up = lat.down(p), lat.up(p)
    singles = lat.singletons(p)
    return ClosureFlags(
        downward_closed=down == p,
        convex=(down & up) == p,
        union_closed=lat.product(p, p) == p,
        empty_team=bool(p & 1),
        flat=p == lat.powerset(singles),
    )


# ---------------------------------------------------------------- shared checks


def _check(structure: Structure, f: Formula, logic: Logic | str) -> Logic:
    logic = Logic.lookup(logic)
    validate(f, logic)
    if logic.modal and not structure.modal:
        raise TeamLogicError(f"{logic.name} formulas are evaluated on Kripke models, not vocabularies")
    missing = props(f) - set(structure.vocab if structure.modal else structure.names)
    if missing:
        raise TeamLogicError(f"propositions {sorted(missing)} are outside the vocabulary")
    return logic


def _dep_conflicts(structure: Structure, f: Dep) -> list[tuple[int, int]]:
    """Pairs of points agreeing on the antecedents but not on the consequent."""
    ants = [structure.atom_mask(a) for a in f.antecedents]
    cons = structure.atom_mask(f.consequent)
    pts = range(structure.npoints)
    return [
        (a, b)
        for a in pts
        for b in pts
        if a < b
        and all((m >> a & 1) == (m >> b & 1) for m in ants)
        and (cons >> a & 1) != (cons >> b & 1)
    ]


# ---------------------------------------------------------------- per-team evaluator


class Evaluator:
    """Decides support and anti-support team by team, memoizing (node, team)."""

    def __init__(self, structure: Structure, logic: Logic | str):
        self.structure = structure
        self.logic = Logic.lookup(logic)
        self.regime = self.logic.regime
        self._sup: dict[tuple[Formula, int], bool] = {}
        self._anti: dict[tuple[Formula, int], bool] = {}
        self._dep: dict[Formula, list[tuple[int, int]]] = {}

    def check(self, f: Formula) -> None:
        _check(self.structure, f, self.logic)

    def supports(self, team: int, f: Formula) -> bool:
        key = (f, team)
        hit = self._sup.get(key)
        if hit is None:
            hit = self._sup[key] = self._support(team, f)
        return hit

    def antisupports(self, team: int, f: Formula) -> bool:
        key = (f, team)
        hit = self._anti.get(key)
        if hit is None:
            hit = self._anti[key] = self._antisupport(team, f)
        return hit

    def _split(self, team: int, left: Formula, right: Formula, test) -> bool:
        # t ∪ u = team: choose t, then u = (team - t) ∪ any subset of t
        for t in submasks(team):
            if not test(t, left):
                continue
            rest = team & ~t
            for extra in submasks(t):
                if test(rest | extra, right):
                    return True
        return False

    def _support(self, s: int, f: Formula) -> bool:
        st = self.structure
        t = type(f)
        if t is PropAtom:
            return s & ~st.atom_mask(f.name) == 0
        if t is Bot:
            return s == 0
        if t is NE or t is NEStar:
            return s != 0
        if t is Dep:
            if f not in self._dep:
                self._dep[f] = _dep_conflicts(st, f)
            return not any(s >> a & 1 and s >> b & 1 for a, b in self._dep[f])
        if t is DualNeg:
            return self.antisupports(s, f.child)
        if t is BoolNeg:
            return not self.supports(s, f.child)
        if t is And or t is HSAnd:
            return self.supports(s, f.left) and self.supports(s, f.right)
        if t is Or or t is HSOr:
            return self._split(s, f.left, f.right, self.supports)
        if t is GlobalOr:
            return self.supports(s, f.left) or self.supports(s, f.right)
        if t is Implies:
            return all(
                self.supports(u, f.right) for u in submasks(s) if self.supports(u, f.left)
            )
        if t is Dia:
            for w in members(s):
                succ = st.successors(w)
                if not any(self.supports(u, f.child) for u in submasks(succ) if u):
                    return False
            return True
        if t is HSDia:
            return not self.antisupports(s, f.child)
        raise TeamLogicError(f"unknown node {f!r}")

    def _antisupport(self, s: int, f: Formula) -> bool:
        t = type(f)
        if t is DualNeg:
            return self.supports(s, f.child)
        if self.regime is Regime.SUPPORT_ONLY:
            raise UndefinedClause(f"{self.logic.name} has no anti-support clauses")
        if self.regime is Regime.HS_DOWNSET:
            return not any(self.supports(u, f) for u in submasks(s) if u)
        st = self.structure
        if t is PropAtom:
            return s & st.atom_mask(f.name) == 0
        if t is Bot:
            return True
        if t is NE or t is Dep:
            return s == 0
        if t is NEStar:
            return s != 0
        if t is And:
            return self._split(s, f.left, f.right, self.antisupports)
        if t is Or or t is GlobalOr:
            return self.antisupports(s, f.left) and self.antisupports(s, f.right)
        if t is Dia:
            return all(self.antisupports(st.successors(w), f.child) for w in members(s))
        raise UndefinedClause(f"anti-support is undefined for {t.__name__}")


def supports(structure: Structure, team: int, f: Formula, logic: Logic | str) -> bool:
    ev = Evaluator(structure, logic)
    ev.check(f)
    return ev.supports(team, f)


def antisupports(structure: Structure, team: int, f: Formula, logic: Logic | str) -> bool:
    ev = Evaluator(structure, logic)
    ev.check(f)
    return ev.antisupports(team, f)


# ---------------------------------------------------------------- compositional denotations


class Denoter:
    """Computes support and anti-support properties bottom-up."""

    def __init__(self, structure: Structure, logic: Logic | str):
        self.structure = structure
        self.logic = Logic.lookup(logic)
        self.regime = self.logic.regime
        self.lat = lattice(structure.npoints)
        self._sup: dict[Formula, int] = {}
        self._anti: dict[Formula, int] = {}

    def check(self, f: Formula) -> None:
        _check(self.structure, f, self.logic)

    def support(self, f: Formula) -> int:
        hit = self._sup.get(f)
        if hit is None:
            hit = self._sup[f] = self._support(f)
        return hit

    def antisupport(self, f: Formula) -> int:
        hit = self._anti.get(f)
        if hit is None:
            hit = self._anti[f] = self._antisupport(f)
        return hit

    def _support(self, f: Formula) -> int:
        lat, st = self.lat, self.structure
        t = type(f)
        if t is PropAtom:
            return lat.powerset(st.atom_mask(f.name))
        if t is Bot:
            return 1
        if t is NE or t is NEStar:
            return lat.full & ~1
        if t is Dep:
            clash = sum(1 << ((1 << a) | (1 << b)) for a, b in _dep_conflicts(st, f))
            return lat.full & ~lat.up(clash)
        if t is DualNeg:
            return self.antisupport(f.child)
        if t is BoolNeg:
            return lat.full & ~self.support(f.child)
        if t is And or t is HSAnd:
            return self.support(f.left) & self.support(f.right)
        if t is Or or t is HSOr:
            return lat.product(self.support(f.left), self.support(f.right))
        if t is GlobalOr:
            return self.support(f.left) | self.support(f.right)
        if t is Implies:
            bad = self.support(f.left) & ~self.support(f.right)
            return lat.full & ~lat.up(bad)
        if t is Dia:
            body = self.support(f.child) & ~1
            good = 0
            for w in range(st.npoints):
                if body & lat.powerset(st.successors(w)):
                    good |= 1 << w
            return lat.powerset(good)
        if t is HSDia:
            return lat.full & ~self.antisupport(f.child)
        raise TeamLogicError(f"unknown node {f!r}")

    def _antisupport(self, f: Formula) -> int:
        lat, st = self.lat, self.structure
        t = type(f)
        if t is DualNeg:
            return self.support(f.child)
        if self.regime is Regime.SUPPORT_ONLY:
            raise UndefinedClause(f"{self.logic.name} has no anti-support clauses")
        if self.regime is Regime.HS_DOWNSET:
            return lat.full & ~lat.up(self.support(f) & ~1)
        if t is PropAtom:
            return lat.powerset(lat.point_full & ~st.atom_mask(f.name))
        if t is Bot:
            return lat.full
        if t is NE or t is Dep:
            return 1
        if t is NEStar:
            return lat.full & ~1
        if t is And:
            return lat.product(self.antisupport(f.left), self.antisupport(f.right))
        if t is Or or t is GlobalOr:
            return self.antisupport(f.left) & self.antisupport(f.right)
        if t is Dia:
            body = self.antisupport(f.child)
            good = sum(1 << w for w in range(st.npoints) if body >> st.successors(w) & 1)
            return lat.powerset(good)
        raise UndefinedClause(f"anti-support is undefined for {t.__name__}")


def _propositional(logic: Logic | str, vocab: Vocabulary) -> Logic:
    logic = Logic.lookup(logic)
    if logic.modal:
        raise TeamLogicError(
            f"{logic.name} denotations range over all models; use property_on_model"
        )
    if len(vocab) > 4:
        raise BoundsExceeded(f"denotations over {len(vocab)} names are not enumerated")
    return logic


def property_of(f: Formula, vocab: Vocabulary, logic: Logic | str) -> TeamProperty:
    logic = _propositional(logic, vocab)
    d = Denoter(vocab, logic)
    d.check(f)
    return TeamProperty(vocab, d.support(f))


def dual_property_of(f: Formula, vocab: Vocabulary, logic: Logic | str) -> TeamProperty:
    return property_of(DualNeg(f), vocab, logic)


def property_on_model(model: KripkeModel, f: Formula, logic: Logic | str) -> TeamProperty:
    if len(model.worlds) > KripkeModel.MAX_WORLDS:
        raise BoundsExceeded(f"model with {len(model.worlds)} worlds exceeds {KripkeModel.MAX_WORLDS}")
    d = Denoter(model, logic)
    d.check(f)
    return TeamProperty(model, d.support(f))


def ground_team(f: Formula, vocab: Vocabulary, logic: Logic | str) -> int:
    return property_of(f, vocab, logic).ground()


def ground_team_on_model(model: KripkeModel, f: Formula, logic: Logic | str = Logic.BSMLI) -> int:
    return property_on_model(model, f, logic).ground()
