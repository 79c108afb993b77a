"""Brute-force ground truth.

Nothing here touches the bitmask machinery of :mod:`teamlogic.semantics`.
Teams are frozensets of points, propositional points are tuples of truth
values, and every split is found by enumerating pairs of subteams.  It is slow
on purpose: its only job is to be obviously right at small sizes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BoundsExceeded, TeamLogicError, UndefinedClause
from .formula import (
    BINARY,
    UNARY,
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
from .teams import KripkeModel, Vocabulary

Team = frozenset


def subsets(team: Iterable) -> Iterator[frozenset]:
    items = sorted(team)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


@dataclass(frozen=True)
class OracleVerdict:
    result: bool
    witness: object = None
    bounds: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.result


class _Frame:
    """Points, atomic truth and successors of one structure."""

    def __init__(self, structure: Vocabulary | KripkeModel):
        self.structure = structure
        if isinstance(structure, Vocabulary):
            names = list(structure.names)
            self.points = list(itertools.product((False, True), repeat=len(names)))
            self.truth = {p: {pt for pt in self.points if pt[j]} for j, p in enumerate(names)}
            self.succ = None
        else:
            names = list(structure.vocab)
            self.points = list(range(len(structure.worlds)))
            self.truth = {
                p: {w for w in self.points if structure.atom_mask(p) >> w & 1} for p in names
            }
            self.succ = {
                w: frozenset(v for v in self.points if structure.succ[w] >> v & 1)
                for w in self.points
            }
        self.names = names

    def encode(self, team: frozenset) -> int:
        """Bitmask form of an oracle team, for reporting witnesses."""
        if self.succ is not None:
            return sum(1 << w for w in team)
        return sum(1 << sum(int(b) << j for j, b in enumerate(pt)) for pt in team)

    def all_teams(self) -> Iterator[frozenset]:
        return subsets(self.points)


class _Oracle:
    def __init__(self, frame: _Frame, logic: Logic):
        self.frame = frame
        self.logic = logic
        self.memo: dict[tuple[Formula, frozenset, bool], bool] = {}

    def sup(self, s: frozenset, f: Formula) -> bool:
        return self.holds(s, f, True)

    def anti(self, s: frozenset, f: Formula) -> bool:
        return self.holds(s, f, False)

    def holds(self, s: frozenset, f: Formula, positive: bool) -> bool:
        key = (f, s, positive)
        if key not in self.memo:
            self.memo[key] = self._sup(s, f) if positive else self._anti(s, f)
        return self.memo[key]

    def _covering_pairs(self, s: frozenset, left: Formula, right: Formula, positive: bool) -> bool:
        for t in subsets(s):
            if not self.holds(t, left, positive):
                continue
            for u in subsets(s):
                if t | u == s and self.holds(u, right, positive):
                    return True
        return False

    def _sup(self, s: frozenset, f: Formula) -> bool:
        fr = self.frame
        if isinstance(f, PropAtom):
            return s <= fr.truth[f.name]
        if isinstance(f, Bot):
            return not s
        if isinstance(f, (NE, NEStar)):
            return bool(s)
        if isinstance(f, Dep):
            def agree(v, w, name):
                return (v in fr.truth[name]) == (w in fr.truth[name])

            return all(
                agree(v, w, f.consequent)
                for v in s
                for w in s
                if all(agree(v, w, a) for a in f.antecedents)
            )
        if isinstance(f, DualNeg):
            return self.anti(s, f.child)
        if isinstance(f, BoolNeg):
            return not self.sup(s, f.child)
        if isinstance(f, (And, HSAnd)):
            return self.sup(s, f.left) and self.sup(s, f.right)
        if isinstance(f, (Or, HSOr)):
            return self._covering_pairs(s, f.left, f.right, True)
        if isinstance(f, GlobalOr):
            return self.sup(s, f.left) or self.sup(s, f.right)
        if isinstance(f, Implies):
            return all(not self.sup(t, f.left) or self.sup(t, f.right) for t in subsets(s))
        if isinstance(f, Dia):
            return all(
                any(t and self.sup(t, f.child) for t in subsets(fr.succ[w])) for w in s
            )
        if isinstance(f, HSDia):
            return not self.anti(s, f.child)
        raise TeamLogicError(f"unknown node {f!r}")

    def _anti(self, s: frozenset, f: Formula) -> bool:
        fr = self.frame
        if isinstance(f, DualNeg):
            return self.sup(s, f.child)
        regime = self.logic.regime
        if regime is Regime.SUPPORT_ONLY:
            raise UndefinedClause(f"{self.logic.name} has no anti-support")
        if regime is Regime.HS_DOWNSET:
            return all(not t or not self.sup(t, f) for t in subsets(s))
        if isinstance(f, PropAtom):
            return not (s & fr.truth[f.name])
        if isinstance(f, Bot):
            return True
        if isinstance(f, (NE, Dep)):
            return not s
        if isinstance(f, NEStar):
            return bool(s)
        if isinstance(f, And):
            return self._covering_pairs(s, f.left, f.right, False)
        if isinstance(f, (Or, GlobalOr)):
            return self.anti(s, f.left) and self.anti(s, f.right)
        if isinstance(f, Dia):
            return all(self.anti(fr.succ[w], f.child) for w in s)
        raise UndefinedClause(f"anti-support is undefined for {type(f).__name__}")


def _setup(structure, fs: Sequence[Formula], logic) -> tuple[_Frame, _Oracle]:
    logic = Logic.lookup(logic)
    frame = _Frame(structure)
    for f in fs:
        validate(f, logic)
        if not props(f) <= set(frame.names):
            raise TeamLogicError("formula mentions propositions outside the vocabulary")
    return frame, _Oracle(frame, logic)


def _vocab_guard(vocab: Vocabulary, logic) -> None:
    if Logic.lookup(logic).modal:
        raise TeamLogicError("modal logics need modal_equivalent_bounded")
    if len(vocab) > 4:
        raise BoundsExceeded(f"oracle enumeration over {len(vocab)} names")


# ---------------------------------------------------------------- propositional checks


def denotation(f: Formula, structure, logic, positive: bool = True) -> set[int]:
    """All teams (as bitmasks) supporting ``f`` (anti-supporting if not positive)."""
    frame, ev = _setup(structure, [f], logic)
    return {frame.encode(s) for s in frame.all_teams() if ev.holds(s, f, positive)}


def supports(structure, team: int, f: Formula, logic) -> bool:
    frame, ev = _setup(structure, [f], logic)
    s = next(t for t in frame.all_teams() if frame.encode(t) == team)
    return ev.sup(s, f)


def entails(phi: Formula, psi: Formula, vocab: Vocabulary, logic) -> OracleVerdict:
    _vocab_guard(vocab, logic)
    frame, ev = _setup(vocab, [phi, psi], logic)
    bounds = {"vocabulary": vocab.names}
    for s in frame.all_teams():
        if ev.sup(s, phi) and not ev.sup(s, psi):
            return OracleVerdict(False, frame.encode(s), bounds)
    return OracleVerdict(True, None, bounds)


def equivalent(phi: Formula, psi: Formula, vocab: Vocabulary, logic) -> OracleVerdict:
    _vocab_guard(vocab, logic)
    frame, ev = _setup(vocab, [phi, psi], logic)
    bounds = {"vocabulary": vocab.names}
    for s in frame.all_teams():
        if ev.sup(s, phi) != ev.sup(s, psi):
            return OracleVerdict(False, frame.encode(s), bounds)
    return OracleVerdict(True, None, bounds)


def bi_equivalent(phi: Formula, psi: Formula, vocab: Vocabulary, logic) -> OracleVerdict:
    first = equivalent(phi, psi, vocab, logic)
    if not first:
        return first
    return equivalent(DualNeg(phi), DualNeg(psi), vocab, logic)


def classical_truth(structure, point: int, f: Formula) -> bool:
    """Single-point truth of a classical (PL or ML) formula."""
    if isinstance(f, PropAtom):
        return bool(structure.atom_mask(f.name) >> point & 1)
    if isinstance(f, Bot):
        return False
    if isinstance(f, DualNeg):
        return not classical_truth(structure, point, f.child)
    if isinstance(f, And):
        return classical_truth(structure, point, f.left) and classical_truth(structure, point, f.right)
    if isinstance(f, Or):
        return classical_truth(structure, point, f.left) or classical_truth(structure, point, f.right)
    if isinstance(f, Dia):
        succ = structure.successors(point)
        return any(
            classical_truth(structure, v, f.child)
            for v in range(structure.npoints)
            if succ >> v & 1
        )
    raise TeamLogicError(f"{type(f).__name__} is not classical")


def closure_flags(teams: set[int], npoints: int) -> dict[str, bool]:
    """Closure properties of a set of bitmask teams, by brute quantification."""
    universe = (1 << npoints) - 1

    def subs(s):
        return [t for t in range(universe + 1) if t & ~s == 0]

    dc = all(t in teams for s in teams for t in subs(s))
    convex = all(
        u in teams for s in teams for t in teams if t & ~s == 0 for u in subs(s) if t & ~u == 0
    )
    uc = all(a | b in teams for a in teams for b in teams)
    et = 0 in teams
    flat = all(
        (s in teams) == all((1 << i) in teams for i in range(npoints) if s >> i & 1)
        for s in range(universe + 1)
    )
    return {
        "downward_closed": dc,
        "convex": convex,
        "union_closed": uc,
        "empty_team": et,
        "flat": flat,
    }


# ---------------------------------------------------------------- models

MAX_MODEL_BITS = 20


@lru_cache(maxsize=16)
def _canonical_codes(n: int, k: int) -> np.ndarray:
    """Codes of models with n worlds and k propositions minimal under relabeling."""
    nbits = n * n + n * k
    if nbits > MAX_MODEL_BITS:
        raise BoundsExceeded(f"{n}-world models over {k} names are too many to enumerate")
    codes = np.arange(1 << nbits, dtype=np.uint32)
    best = codes.copy()
    for perm in itertools.permutations(range(n)):
        if list(perm) == list(range(n)):
            continue
        moved = np.zeros_like(codes)
        for i in range(n):
            for j in range(n):
                moved |= ((codes >> (i * n + j)) & 1) << (perm[i] * n + perm[j])
        for p in range(k):
            for i in range(n):
                base = n * n + p * n
                moved |= ((codes >> (base + i)) & 1) << (base + perm[i])
        np.minimum(best, moved, out=best)
    return codes[codes == best]


def decode_model(code: int, n: int, vocab: Sequence[str]) -> KripkeModel:
    succ = tuple(sum(1 << j for j in range(n) if code >> (i * n + j) & 1) for i in range(n))
    val = tuple(
        (p, sum(1 << i for i in range(n) if code >> (n * n + k * n + i) & 1))
        for k, p in enumerate(vocab)
    )
    return KripkeModel(tuple(f"w{i + 1}" for i in range(n)), succ, val)


def enumerate_models(max_worlds: int, vocab: Sequence[str], min_worlds: int = 1) -> Iterator[KripkeModel]:
    """Every model with min..max worlds over ``vocab``, one per isomorphism class."""
    vocab = tuple(vocab)
    for n in range(min_worlds, max_worlds + 1):
        for code in _canonical_codes(n, len(vocab)):
            yield decode_model(int(code), n, vocab)


def count_models(max_worlds: int, nvocab: int) -> int:
    return sum(len(_canonical_codes(n, nvocab)) for n in range(1, max_worlds + 1))


def modal_equivalent_bounded(
    phi: Formula, psi: Formula, max_worlds: int, vocab: Sequence[str], logic
) -> OracleVerdict:
    """Equivalence on every model with at most ``max_worlds`` worlds over ``vocab``."""
    vocab = tuple(vocab)
    if max_worlds > 4 or len(vocab) > 2:
        raise BoundsExceeded("bounded modal checks need at most 4 worlds and 2 names")
    bounds = {"max_worlds": max_worlds, "vocabulary": vocab}
    for model in enumerate_models(max_worlds, vocab):
        frame, ev = _setup(model, [phi, psi], logic)
        for s in frame.all_teams():
            if ev.sup(s, phi) != ev.sup(s, psi):
                return OracleVerdict(False, (model, frame.encode(s)), bounds)
    return OracleVerdict(True, None, bounds)


# ---------------------------------------------------------------- random formulas


def random_formula(
    logic,
    vocab: Sequence[str] | Vocabulary,
    depth: int,
    seed: int | None = None,
    rng: random.Random | None = None,
) -> Formula:
    """A random formula of the logic with nesting depth at most ``depth``."""
    logic = Logic.lookup(logic)
    if depth > 6:
        raise BoundsExceeded("random formulas are limited to depth 6")
    names = list(vocab.names if isinstance(vocab, Vocabulary) else vocab)
    rng = rng or random.Random(seed)
    return _gen(logic, logic.kinds, names, depth, rng)


_CLASSICAL = frozenset({PropAtom, Bot, DualNeg, And, Or})


def _leaf(kinds, names: list[str], rng: random.Random) -> Formula:
    options: list = []
    if names:
        options += ["atom"] * 4
        if Dep in kinds:
            options += ["dep"] * 2
    options.append(Bot)
    if NE in kinds:
        options += [NE] * 2
    if NEStar in kinds:
        options += [NEStar] * 2
    pick = rng.choice(options)
    if pick == "atom":
        return PropAtom(rng.choice(names))
    if pick == "dep":
        q = rng.choice(names)
        ants = [n for n in names if n != q and rng.random() < 0.5]
        return Dep(tuple(ants), q)
    return pick()


def _gen(logic: Logic, kinds, names: list[str], depth: int, rng: random.Random) -> Formula:
    if depth == 0 or rng.random() < 0.2:
        return _leaf(kinds, names, rng)
    ops = [k for k in UNARY + BINARY if k in kinds]
    weights = [1 if k in UNARY else 2 for k in ops]
    op = rng.choices(ops, weights)[0]
    if op in UNARY:
        child_kinds = _CLASSICAL if (logic is Logic.PLsim and op is DualNeg) else kinds
        return op(_gen(logic, child_kinds, names, depth - 1, rng))
    return op(
        _gen(logic, kinds, names, depth - 1, rng),
        _gen(logic, kinds, names, depth - 1, rng),
    )
