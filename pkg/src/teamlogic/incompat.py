"""Incompatibility notions for pairs of formulas or properties, and the
implication graph among them."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import BoundsExceeded, TeamLogicError
from .formula import Formula, Logic
from .semantics import ClosureFlags, TeamProperty, check_closure, property_of
from .teams import Vocabulary

LABELS = {
    "bot_i": "⊥-I",
    "ground_i": "G-I",
    "strongbot_i": "⊥̄-I",
    "ne_i": "NE-I",
    "world_i": "W-I",
    "team_i": "T-I",
    "flat_i": "F-I",
    "d_i_0_of_1": "D-I(0/1)",
    "d_i_1_of_0": "D-I(1/0)",
    "e_d_i": "E-D-I",
    "ground_complementary": "G-C",
    "ground_complementary_mod_bot": "G-C/⊥̄",
}


@dataclass(frozen=True)
class IncompatibilityVerdict:
    """One flag per notion.  ``d_i_1_of_0`` reads "the second is a down-set
    incompatibility of the first"."""

    bot_i: bool
    ground_i: bool
    strongbot_i: bool
    ne_i: bool
    world_i: bool
    team_i: bool
    flat_i: bool
    d_i_0_of_1: bool
    d_i_1_of_0: bool
    e_d_i: bool
    ground_complementary: bool
    ground_complementary_mod_bot: bool

    def labels(self) -> list[str]:
        return [LABELS[f.name] for f in fields(self) if getattr(self, f.name)]

    def flag(self, label: str) -> bool:
        for name, text in LABELS.items():
            if text == label:
                return getattr(self, name)
        raise KeyError(label)


def classify_property_pair(p: TeamProperty, q: TeamProperty) -> IncompatibilityVerdict:
    if p.space != q.space:
        raise TeamLogicError("properties over different vocabularies")
    lat = p.lattice
    a, b = p.mask, q.mask
    shared = a & b
    g0, g1 = p.ground(), q.ground()
    world = all(
        bool(a >> (1 << i) & 1) != bool(b >> (1 << i) & 1) for i in range(lat.npoints)
    )
    flat0, flat1 = check_closure(p).flat, check_closure(q).flat
    d10 = b == lat.full & ~lat.up(a & ~1)
    d01 = a == lat.full & ~lat.up(b & ~1)
    gc = g0 == lat.point_full & ~g1 and g1 == lat.point_full & ~g0
    return IncompatibilityVerdict(
        bot_i=shared & ~1 == 0,
        ground_i=g0 & g1 == 0,
        strongbot_i=shared == 0,
        ne_i=shared == 1,
        world_i=world,
        team_i=a == lat.full & ~b,
        flat_i=world and flat0 and flat1,
        d_i_0_of_1=d01,
        d_i_1_of_0=d10,
        e_d_i=d01 or d10,
        ground_complementary=gc,
        ground_complementary_mod_bot=gc or a == 0 or b == 0,
    )


def classify_pair(
    f0: Formula, f1: Formula, vocab: Vocabulary, logic: Logic | str
) -> IncompatibilityVerdict:
    if len(vocab) > 3:
        raise BoundsExceeded("pair classification is exhaustive only up to 3 names")
    return classify_property_pair(property_of(f0, vocab, logic), property_of(f1, vocab, logic))


# (antecedent, consequent, closure condition required of both sides)
EDGES: list[tuple[str, str, str | None]] = [
    ("F-I", "D-I(1/0)", None),
    ("F-I", "D-I(0/1)", None),
    ("F-I", "G-C", None),
    ("F-I", "NE-I", None),
    ("D-I(1/0)", "E-D-I", None),
    ("D-I(0/1)", "E-D-I", None),
    ("E-D-I", "W-I", None),
    ("E-D-I", "⊥-I", None),
    ("G-C", "G-C/⊥̄", None),
    ("G-C/⊥̄", "G-I", None),
    ("G-I", "⊥-I", None),
    ("NE-I", "⊥-I", None),
    ("⊥̄-I", "⊥-I", None),
    ("T-I", "⊥̄-I", None),
    ("⊥-I", "G-I", "DC"),
    ("E-D-I", "G-C", "DC"),
    ("G-C", "W-I", "DC"),
    ("W-I", "G-C", "DC"),
    ("⊥-I", "NE-I", "ET"),
    ("G-C/⊥̄", "G-C", "ET"),
    ("NE-I", "G-I", "CONV"),
    ("W-I", "F-I", "UC&ET"),
]


def _holds(condition: str | None, c: ClosureFlags) -> bool:
    if condition is None:
        return True
    return {
        "DC": c.downward_closed,
        "ET": c.empty_team,
        "CONV": c.convex,
        "UC&ET": c.union_closed and c.empty_team,
    }[condition]


def check_implication_graph(
    verdict: IncompatibilityVerdict, c0: ClosureFlags, c1: ClosureFlags
) -> list[str]:
    """Edges whose antecedent holds and whose consequent fails."""
    out = []
    for src, dst, cond in EDGES:
        if not (_holds(cond, c0) and _holds(cond, c1)):
            continue
        if verdict.flag(src) and not verdict.flag(dst):
            out.append(f"{src}→{dst}" + (f" [{cond}]" if cond else ""))
    return out
