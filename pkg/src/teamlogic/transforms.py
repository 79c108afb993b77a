"""Syntactic transforms: negation normal form, flattening, empty-team normalization.

In negation normal form the dual negation sits directly on an atomic node
(p, bot, NE, NE*, dependence atom), with one exception: a box, which is sugar
for ``neg dia neg``, keeps its three-node shape ``DualNeg(Dia(DualNeg(body)))``
with ``body`` itself in normal form.
"""

from __future__ import annotations

from .errors import ProfileViolation
from .formula import (
    ATOMIC,
    BOT,
    TOP,
    And,
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
    Bot,
    box,
    ne_star_minus,
    subformulas,
)

_HS_NODES = (HSAnd, HSOr, HSDia)


def _is_box(f: Formula) -> bool:
    return (
        isinstance(f, DualNeg)
        and isinstance(f.child, Dia)
        and isinstance(f.child.child, DualNeg)
    )


def nnf(f: Formula, logic: Logic | None = None) -> Formula:
    """Push dual negations to the atoms.

    Uses the dualities of the bilateral clauses.  The rewrite of a negated
    global disjunction preserves support but not anti-support, so the result
    is bi-equivalent to ``f`` only for formulas without ``gor``.  Under the
    HS regime the De Morgan laws fail and only double negations are removed.
    """
    if logic is not None:
        logic = Logic.lookup(logic)
        if not logic.has_dual_negation:
            raise ProfileViolation(f"{logic.name} has no dual negation")
    nodes = list(subformulas(f))
    if any(isinstance(n, Implies) for n in nodes):
        raise ProfileViolation("negation normal form needs a dual-negation logic")
    if logic is Logic.HS or any(isinstance(n, _HS_NODES) for n in nodes):
        return _nnf_hs(f)
    return _pos(f)


def _pos(f: Formula) -> Formula:
    if isinstance(f, DualNeg):
        return _neg(f.child)
    if isinstance(f, ATOMIC):
        return f
    return type(f)(*(_pos(c) for c in f.children()))


def _neg(f: Formula) -> Formula:
    """Negation normal form of DualNeg(f)."""
    if isinstance(f, ATOMIC):
        return DualNeg(f)
    if isinstance(f, DualNeg):
        return _pos(f.child)
    if isinstance(f, And):
        return Or(_neg(f.left), _neg(f.right))
    if isinstance(f, (Or, GlobalOr)):
        return And(_neg(f.left), _neg(f.right))
    if isinstance(f, Dia):
        return box(_neg(f.child))
    raise ProfileViolation(f"cannot push the dual negation through {type(f).__name__}")


def _nnf_hs(f: Formula) -> Formula:
    while isinstance(f, DualNeg) and isinstance(f.child, DualNeg):
        f = f.child.child
    kids = f.children()
    if not kids:
        return f
    return type(f)(*(_nnf_hs(c) for c in kids))


def is_nnf(f: Formula) -> bool:
    if _is_box(f):
        return is_nnf(f.child.child.child)
    if isinstance(f, DualNeg):
        return isinstance(f.child, ATOMIC)
    return all(is_nnf(c) for c in f.children())


_FLATTENABLE = (PropAtom, Bot, NE, Dep, DualNeg, And, Or)


def flatten(f: Formula) -> Formula:
    """Classical formula with NE and dependence atoms replaced by top."""
    if isinstance(f, (NE, Dep)):
        return TOP
    if not isinstance(f, _FLATTENABLE):
        raise ProfileViolation(f"flattening is undefined for {type(f).__name__}")
    kids = f.children()
    if not kids:
        return f
    return type(f)(*(flatten(c) for c in kids))


def empty_team_normalize(f: Formula, logic: Logic | None = None) -> Formula:
    """An equivalent formula whose dual negation is supported by the empty team.

    Takes the negation normal form, then replaces negated NE by bot.  NE* is
    supported and anti-supported by the same teams, so both NE* and its
    negation become the NE-like rendering ``ne_star_minus()``.
    """
    if any(isinstance(n, (BoolNeg, Implies, HSAnd, HSOr, HSDia)) for n in subformulas(f)):
        raise ProfileViolation("empty-team normalization needs a bilateral logic with NE or NE*")
    return _etn(nnf(f, logic))


def _etn(f: Formula) -> Formula:
    if _is_box(f):
        return box(_etn(f.child.child.child))
    if isinstance(f, DualNeg):
        if isinstance(f.child, NE):
            return BOT
        if isinstance(f.child, NEStar):
            return ne_star_minus()
        return f
    if isinstance(f, NEStar):
        return ne_star_minus()
    kids = f.children()
    if not kids:
        return f
    return type(f)(*(_etn(c) for c in kids))
