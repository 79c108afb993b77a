"""Evaluation structures: vocabularies with their valuation teams, Kripke models.

Both structures expose the same small interface used by the evaluators:
``npoints`` evaluation points (valuations or worlds), ``full`` (the bitmask of
all points), ``atom_mask(name)`` and, for models, ``successors(i)``.  A team is
an ``int`` whose bit ``i`` marks point ``i``.

A valuation over ``X = (x0, ..., x_{n-1})`` is an index whose bit ``j`` is the
truth value of ``x_j``.  Team literals spell valuations as bitstrings in
vocabulary order, so over ``(p, q)`` the literal ``{10}`` is the valuation
making p true and q false.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BoundsExceeded, ParseError, TeamLogicError
from .formula import (
    Dia,
    DualNeg,
    Formula,
    NONEMPTY,
    And,
    PropAtom,
    big_and,
    big_or,
    box,
    check_name,
)
from .syntax import to_text

MAX_VOCABULARY = 6
MAX_ENUMERATION = 4
EMPTY_VALUATION = "λ"


def members(team: int) -> list[int]:
    out = []
    i = 0
    while team:
        if team & 1:
            out.append(i)
        team >>= 1
        i += 1
    return out


def submasks(team: int) -> Iterator[int]:
    """Every subset of ``team``, the team itself first and the empty team last."""
    sub = team
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & team


def popcount(team: int) -> int:
    return bin(team).count("1")


@dataclass(frozen=True)
class Vocabulary:
    """An ordered finite set of proposition names."""

    names: tuple[str, ...]
    _masks: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            check_name(name)
        if len(set(names)) != len(names):
            raise TeamLogicError("vocabulary names must be distinct")
        if len(names) > MAX_VOCABULARY:
            raise BoundsExceeded(f"vocabulary of {len(names)} names exceeds {MAX_VOCABULARY}")
        masks = {}
        for j, name in enumerate(names):
            masks[name] = sum(1 << v for v in range(1 << len(names)) if v >> j & 1)
        object.__setattr__(self, "_masks", masks)

    @classmethod
    def of(cls, names: Iterable[str] | str) -> Vocabulary:
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        return cls(tuple(names))

    modal = False

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    @property
    def npoints(self) -> int:
        return 1 << len(self.names)

    @property
    def full(self) -> int:
        return (1 << self.npoints) - 1

    def atom_mask(self, name: str) -> int:
        try:
            return self._masks[name]
        except KeyError:
            raise TeamLogicError(f"proposition {name!r} is not in the vocabulary") from None

    def successors(self, point: int) -> int:
        raise TeamLogicError("a propositional vocabulary has no accessibility relation")

    def covers(self, names: Iterable[str]) -> bool:
        return set(names) <= set(self.names)

    def bits(self, valuation: int) -> str:
        if not self.names:
            return EMPTY_VALUATION
        return "".join("1" if valuation >> j & 1 else "0" for j in range(len(self.names)))

    def valuation(self, bits: str) -> int:
        if bits == EMPTY_VALUATION and not self.names:
            return 0
        if len(bits) != len(self.names) or set(bits) - {"0", "1"}:
            raise ParseError(f"bad valuation {bits!r} for vocabulary {','.join(self.names)}")
        return sum(1 << j for j, c in enumerate(bits) if c == "1")

    point_label = bits

    def format_team(self, team: int) -> str:
        return "{" + ",".join(sorted(self.bits(v) for v in members(team))) + "}"

    def parse_team(self, text: str) -> int:
        return sum(1 << self.valuation(b) for b in _literal_items(text))

    def parse_point(self, text: str) -> int:
        return self.valuation(text.strip())


def _literal_items(text: str) -> list[str]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"team literal must be written {{...}}: {text!r}")
    return [item.strip() for item in text[1:-1].split(",") if item.strip()]


def all_teams(vocab: Vocabulary) -> range:
    """Every team over ``vocab`` as a bitmask, the empty team first."""
    if len(vocab) > MAX_ENUMERATION:
        raise BoundsExceeded(f"cannot enumerate teams over {len(vocab)} names")
    return range(1 << vocab.npoints)


# ---------------------------------------------------------------- Kripke models


@dataclass(frozen=True)
class KripkeModel:
    """A finite Kripke model; ``succ[i]`` is the successor bitmask of world i."""

    worlds: tuple[str, ...]
    succ: tuple[int, ...]
    valuation: tuple[tuple[str, int], ...]

    modal = True
    MAX_WORLDS = 10

    def __post_init__(self) -> None:
        if len(self.succ) != len(self.worlds) or len(set(self.worlds)) != len(self.worlds):
            raise TeamLogicError("malformed model")
        for name, _ in self.valuation:
            check_name(name)

    @classmethod
    def build(
        cls,
        worlds: Sequence[str] | int,
        edges: Iterable[tuple[str, str]] = (),
        valuation: dict[str, Iterable[str]] | None = None,
    ) -> KripkeModel:
        if isinstance(worlds, int):
            worlds = [f"w{i + 1}" for i in range(worlds)]
        worlds = tuple(worlds)
        index = {w: i for i, w in enumerate(worlds)}
        succ = [0] * len(worlds)
        for a, b in edges:
            succ[index[a]] |= 1 << index[b]
        val = tuple(
            (name, sum(1 << index[w] for w in ws)) for name, ws in (valuation or {}).items()
        )
        return cls(worlds, tuple(succ), val)

    @property
    def vocab(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.valuation)

    @property
    def npoints(self) -> int:
        return len(self.worlds)

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1

    def atom_mask(self, name: str) -> int:
        for n, mask in self.valuation:
            if n == name:
                return mask
        raise TeamLogicError(f"proposition {name!r} is not in the model's vocabulary")

    def covers(self, names: Iterable[str]) -> bool:
        return set(names) <= set(self.vocab)

    def successors(self, point: int) -> int:
        return self.succ[point]

    def point_label(self, point: int) -> str:
        return self.worlds[point]

    def index(self, world: str) -> int:
        try:
            return self.worlds.index(world)
        except ValueError:
            raise ParseError(f"unknown world {world!r}") from None

    def format_team(self, team: int) -> str:
        return "{" + ",".join(self.worlds[i] for i in members(team)) + "}"

    def parse_team(self, text: str) -> int:
        return sum(1 << self.index(w) for w in _literal_items(text))

    def parse_point(self, text: str) -> int:
        return self.index(text.strip())

    def to_text(self, sep: str = "\n") -> str:
        lines = ["worlds: " + " ".join(self.worlds)]
        edges = [
            f"{self.worlds[i]}->{self.worlds[j]}"
            for i in range(len(self.worlds))
            for j in members(self.succ[i])
        ]
        lines.append(("rel: " + " ".join(edges)).rstrip())
        for name, mask in self.valuation:
            lines.append((f"val {name}: " + " ".join(self.worlds[i] for i in members(mask))).rstrip())
        return sep.join(lines)

    @classmethod
    def from_text(cls, text: str) -> tuple[KripkeModel, int | None]:
        """Parse the line format; ``;`` also separates lines.  Returns (model, team)."""
        worlds: list[str] | None = None
        edges: list[tuple[str, str]] = []
        val: dict[str, list[str]] = {}
        team_words: list[str] | None = None
        for raw in re.split(r"[\n;]", text):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, rest = line.partition(":")
            if not sep:
                raise ParseError(f"model line without ':': {line!r}")
            head, words = head.strip(), rest.split()
            if head == "worlds":
                worlds = words
            elif head == "rel":
                for word in words:
                    a, arrow, b = word.partition("->")
                    if not arrow or not a or not b:
                        raise ParseError(f"bad edge {word!r}")
                    edges.append((a, b))
            elif head.startswith("val "):
                val[head[4:].strip()] = words
            elif head == "team":
                team_words = words
            else:
                raise ParseError(f"unknown model line {head!r}")
        if worlds is None:
            raise ParseError("model text lacks a 'worlds:' line")
        known = set(worlds)
        for a, b in edges:
            if a not in known or b not in known:
                raise ParseError(f"edge {a}->{b} mentions an unknown world")
        for ws in val.values():
            if not set(ws) <= known:
                raise ParseError("valuation mentions an unknown world")
        model = cls.build(worlds, edges, val)
        team = None
        if team_words is not None:
            team = model.parse_team("{" + ",".join(team_words) + "}")
        return model, team


def r_image(model: KripkeModel, team: int) -> int:
    out = 0
    for i in members(team):
        out |= model.succ[i]
    return out


def disjoint_union(m1: KripkeModel, m2: KripkeModel) -> tuple[KripkeModel, int]:
    """The disjoint union and the index offset of ``m2``'s worlds in it."""
    if m1.vocab != m2.vocab:
        raise TeamLogicError("disjoint union needs models over the same vocabulary")
    off = len(m1.worlds)
    worlds = tuple(f"a.{w}" for w in m1.worlds) + tuple(f"b.{w}" for w in m2.worlds)
    succ = m1.succ + tuple(s << off for s in m2.succ)
    val = tuple(
        (name, mask | (m2.atom_mask(name) << off)) for name, mask in m1.valuation
    )
    return KripkeModel(worlds, succ, val), off


# ---------------------------------------------------------------- bisimulation


def bisim_levels(
    m1: KripkeModel, m2: KripkeModel, vocab: Sequence[str], k: int
) -> list[list[int]]:
    """``levels[i][w]`` is the bitmask of worlds of ``m2`` i-bisimilar to world w of ``m1``."""
    if k < 0:
        raise TeamLogicError("bisimulation depth must be non-negative")
    n1, n2 = len(m1.worlds), len(m2.worlds)
    masks1 = [m1.atom_mask(p) for p in vocab]
    masks2 = [m2.atom_mask(p) for p in vocab]

    def agree(a: int, b: int) -> bool:
        return all((x >> a & 1) == (y >> b & 1) for x, y in zip(masks1, masks2))

    level = [sum(1 << b for b in range(n2) if agree(a, b)) for a in range(n1)]
    levels = [level]
    for _ in range(k):
        prev = levels[-1]
        nxt = []
        for a in range(n1):
            row = 0
            for b in members(levels[0][a]):
                s1, s2 = m1.succ[a], m2.succ[b]
                forth = all(prev[v] & s2 for v in members(s1))
                back = all(any(prev[v] >> u & 1 for v in members(s1)) for u in members(s2))
                if forth and back:
                    row |= 1 << b
            nxt.append(row)
        levels.append(nxt)
    return levels


def world_bisim_k(
    m1: KripkeModel, w1: int, m2: KripkeModel, w2: int, vocab: Sequence[str], k: int
) -> bool:
    return bool(bisim_levels(m1, m2, vocab, k)[k][w1] >> w2 & 1)


def team_bisim_k(
    m1: KripkeModel, s1: int, m2: KripkeModel, s2: int, vocab: Sequence[str], k: int
) -> bool:
    rel = bisim_levels(m1, m2, vocab, k)[k]
    forth = all(rel[a] & s2 for a in members(s1))
    back = all(any(rel[a] >> b & 1 for a in members(s1)) for b in members(s2))
    return forth and back


# ---------------------------------------------------------------- characteristic formulas


def _literals(truth: Sequence[bool], vocab: Sequence[str]) -> Formula:
    return big_and(
        PropAtom(p) if t else DualNeg(PropAtom(p)) for p, t in zip(vocab, truth)
    )


def _canonical(formulas: Iterable[Formula]) -> list[Formula]:
    return [f for _, f in sorted({to_text(f): f for f in formulas}.items())]


def hintikka_world(model: KripkeModel, world: int, vocab: Sequence[str], k: int) -> Formula:
    """The k-th characteristic formula of (model, world) over ``vocab``."""
    if k < 0:
        raise TeamLogicError("Hintikka depth must be non-negative")
    memo: dict[tuple[int, int], Formula] = {}

    def chi(w: int, j: int) -> Formula:
        key = (w, j)
        if key in memo:
            return memo[key]
        if j == 0:
            truth = [bool(model.atom_mask(p) >> w & 1) for p in vocab]
            out = _literals(truth, vocab)
        else:
            kids = _canonical(chi(v, j - 1) for v in members(model.succ[w]))
            parts = [chi(w, j - 1)] + [Dia(c) for c in kids] + [box(big_or(kids))]
            out = big_and(parts)
        memo[key] = out
        return out

    return chi(world, k)


def hintikka_team(model: KripkeModel, team: int, vocab: Sequence[str], k: int) -> Formula:
    """Disjunction of the members' characteristic formulas; bot for the empty team."""
    return big_or(_canonical(hintikka_world(model, w, vocab, k) for w in members(team)))


def strong_hintikka_team(model: KripkeModel, team: int, vocab: Sequence[str], k: int) -> Formula:
    """Supported exactly by the teams k-bisimilar to ``team`` (uses NE)."""
    return big_or(
        And(chi, NONEMPTY)
        for chi in _canonical(hintikka_world(model, w, vocab, k) for w in members(team))
    )


def prop_char_val(valuation: int, vocab: Vocabulary) -> Formula:
    return _literals([bool(valuation >> j & 1) for j in range(len(vocab))], vocab.names)


def prop_char_team(team: int, vocab: Vocabulary) -> Formula:
    """Supported by exactly the subteams of ``team``."""
    return big_or(prop_char_val(v, vocab) for v in members(team))

