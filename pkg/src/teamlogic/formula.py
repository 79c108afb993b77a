"""Formula trees and logic profiles.

Every node is an immutable dataclass.  Equality is structural and hashes are
cached, so formulas can key memo tables cheaply even when deeply nested.
Sugar (``top``, ``box``, ``Botbar``, ``con``) never appears as a node kind;
the helpers below build the expanded trees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, ClassVar, Iterable, Iterator

from .errors import ProfileViolation

NAME_RE = re.compile(r"[a-z][a-z0-9_]*\Z")
RESERVED = frozenset(
    "bot top NE NEstar neg bneg dia box hdia dep con and or hand hor gor".split()
)


def check_name(name: str) -> str:
    if not isinstance(name, str) or not NAME_RE.match(name) or name in RESERVED:
        raise ProfileViolation(f"illegal proposition name {name!r}")
    return name


class Formula:
    """Base class of all formula nodes."""

    __match_args__: ClassVar[tuple[str, ...]] = ()

    def children(self) -> tuple[Formula, ...]:
        return ()

    def _key(self) -> tuple:
        return tuple(getattr(self, a) for a in self.__match_args__)

    def __hash__(self) -> int:
        try:
            return self.__dict__["_h"]
        except KeyError:
            h = hash((type(self).__name__, self._key()))
            object.__setattr__(self, "_h", h)
            return h

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return hash(self) == hash(other) and self._key() == other._key()

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __str__(self) -> str:
        from .syntax import to_text

        return to_text(self)


@dataclass(frozen=True, eq=False, repr=False)
class PropAtom(Formula):
    name: str

    def __post_init__(self) -> None:
        check_name(self.name)

    def __repr__(self) -> str:
        return f"PropAtom({self.name!r})"


@dataclass(frozen=True, eq=False)
class Bot(Formula):
    pass


@dataclass(frozen=True, eq=False)
class NE(Formula):
    pass


@dataclass(frozen=True, eq=False)
class NEStar(Formula):
    pass


@dataclass(frozen=True, eq=False)
class Dep(Formula):
    """Dependence atom; ``Dep((), q)`` is the constancy atom con(q)."""

    antecedents: tuple[str, ...]
    consequent: str

    def __post_init__(self) -> None:
        ants = tuple(sorted(check_name(a) for a in self.antecedents))
        if len(set(ants)) != len(ants):
            raise ProfileViolation("dependence atom antecedents must be distinct")
        object.__setattr__(self, "antecedents", ants)
        check_name(self.consequent)


@dataclass(frozen=True, eq=False)
class _Unary(Formula):
    child: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.child,)


@dataclass(frozen=True, eq=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self) -> tuple[Formula, ...]:
        return (self.left, self.right)


class DualNeg(_Unary):
    pass


class BoolNeg(_Unary):
    pass


class Dia(_Unary):
    pass


class HSDia(_Unary):
    pass


class And(_Binary):
    pass


class Or(_Binary):
    pass


class GlobalOr(_Binary):
    pass


class HSAnd(_Binary):
    pass


class HSOr(_Binary):
    pass


class Implies(_Binary):
    pass


ATOMIC = (PropAtom, Bot, NE, NEStar, Dep)
BINARY = (And, Or, GlobalOr, HSAnd, HSOr, Implies)
UNARY = (DualNeg, BoolNeg, Dia, HSDia)


# ---------------------------------------------------------------- profiles


class Regime(Enum):
    BILATERAL = "standard-bilateral"
    HS_DOWNSET = "hs-downset"
    SUPPORT_ONLY = "support-only"


_PL = frozenset({PropAtom, Bot, DualNeg, And, Or})
_ML = _PL | {Dia}

_PROFILE_TABLE: dict[str, tuple[frozenset, Regime, bool]] = {
    "PL": (_PL, Regime.BILATERAL, False),
    "PLsim": (_PL | {BoolNeg}, Regime.BILATERAL, False),
    "InqB": (frozenset({PropAtom, Bot, And, Implies, GlobalOr}), Regime.SUPPORT_ONLY, False),
    "HS": (frozenset({PropAtom, Bot, DualNeg, HSAnd, HSOr, HSDia}), Regime.HS_DOWNSET, False),
    "PLNE": (_PL | {NE}, Regime.BILATERAL, False),
    "PLNE_GD": (_PL | {NE, GlobalOr}, Regime.BILATERAL, False),
    "PLNEStar_GD": (_PL | {NEStar, GlobalOr}, Regime.BILATERAL, False),
    "PLDep": (_PL | {Dep}, Regime.BILATERAL, False),
    "ML": (_ML, Regime.BILATERAL, True),
    "BSML": (_ML | {NE}, Regime.BILATERAL, True),
    "BSMLI": (_ML | {NE, GlobalOr}, Regime.BILATERAL, True),
}


class Logic(Enum):
    """Logic profiles; the value is the command-line name."""

    PL = "pl"
    PLsim = "plsim"
    InqB = "inqb"
    HS = "hs"
    PLNE = "plne"
    PLNE_GD = "plnegd"
    PLNEStar_GD = "nestar"
    PLDep = "pldep"
    ML = "ml"
    BSML = "bsml"
    BSMLI = "bsmli"

    @property
    def kinds(self) -> frozenset:
        return _PROFILE_TABLE[self.name][0]

    @property
    def regime(self) -> Regime:
        return _PROFILE_TABLE[self.name][1]

    @property
    def modal(self) -> bool:
        return _PROFILE_TABLE[self.name][2]

    @property
    def has_dual_negation(self) -> bool:
        return DualNeg in self.kinds

    @classmethod
    def lookup(cls, name: str | Logic) -> Logic:
        if isinstance(name, Logic):
            return name
        for member in cls:
            if name in (member.value, member.name) or name.lower() == member.name.lower():
                return member
        raise ProfileViolation(f"unknown logic {name!r}")


def validate(f: Formula, logic: Logic) -> Formula:
    """Raise ProfileViolation unless every node of ``f`` is legal in ``logic``."""
    allowed = logic.kinds
    for node in subformulas(f):
        if type(node) not in allowed:
            raise ProfileViolation(f"{type(node).__name__} is not a connective of {logic.name}")
        if logic is Logic.PLsim and isinstance(node, DualNeg):
            if any(isinstance(n, BoolNeg) for n in subformulas(node.child)):
                raise ProfileViolation("Boolean negation may not occur under the dual negation")
    return f


# ---------------------------------------------------------------- traversal


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over every node occurrence."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def props(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    for node in subformulas(f):
        if isinstance(node, PropAtom):
            out.add(node.name)
        elif isinstance(node, Dep):
            out.update(node.antecedents)
            out.add(node.consequent)
    return frozenset(out)


def modal_depth(f: Formula) -> int:
    if isinstance(f, Dia):
        return 1 + modal_depth(f.child)
    kids = f.children()
    return max((modal_depth(c) for c in kids), default=0)


def depth(f: Formula) -> int:
    kids = f.children()
    return 1 + max(depth(c) for c in kids) if kids else 0


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


def transform(f: Formula, fn: Callable[[Formula], Formula | None]) -> Formula:
    """Bottom-up rebuild; ``fn`` may return a replacement or None to keep."""
    kids = f.children()
    if kids:
        new_kids = tuple(transform(c, fn) for c in kids)
        if any(a is not b for a, b in zip(new_kids, kids)):
            f = type(f)(*new_kids)
    out = fn(f)
    return f if out is None else out


def substitute(f: Formula, name: str, g: Formula) -> Formula:
    """Replace every occurrence of the atom ``name`` by ``g``."""
    target = PropAtom(name)
    return transform(f, lambda n: g if n == target else None)


# ---------------------------------------------------------------- builders

BOT = Bot()
TOP = DualNeg(BOT)
NONEMPTY = NE()
NONEMPTY_STAR = NEStar()
BOTBAR = And(BOT, NONEMPTY)


def atom(name: str) -> PropAtom:
    return PropAtom(name)


def neg(f: Formula) -> Formula:
    return DualNeg(f)


def box(f: Formula) -> Formula:
    return DualNeg(Dia(DualNeg(f)))


def con(q: str) -> Dep:
    return Dep((), q)


def fold(op: type[_Binary], items: Iterable[Formula], empty: Formula) -> Formula:
    """Left-nested combination; ``empty`` when there are no items."""
    it = iter(items)
    try:
        acc = next(it)
    except StopIteration:
        return empty
    for item in it:
        acc = op(acc, item)
    return acc


def big_and(items: Iterable[Formula], empty: Formula = TOP) -> Formula:
    return fold(And, items, empty)


def big_or(items: Iterable[Formula], empty: Formula = BOT) -> Formula:
    return fold(Or, items, empty)


def big_gor(items: Iterable[Formula], empty: Formula = BOTBAR) -> Formula:
    return fold(GlobalOr, items, empty)


def botbar_star() -> Formula:
    """Strong contradiction written with NE*: neg((NE* gor bot) | top)."""
    return DualNeg(Or(GlobalOr(NONEMPTY_STAR, BOT), TOP))


def ne_star_minus() -> Formula:
    """NE written with NE*: neg((NE* & botbar*) gor bot)."""
    return DualNeg(GlobalOr(And(NONEMPTY_STAR, botbar_star()), BOT))
