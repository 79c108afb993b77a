"""Command-line interface.

Exit codes: 0 affirmative, 1 negative verdict or refusal, 2 usage or parse
error, 3 bounds exceeded.  Every error prints one line starting ``error:``.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import TextIO

from . import oracle
from .errors import BoundsExceeded, NotApplicable, ProfileViolation, TeamLogicError, UndefinedClause
from .formula import DualNeg, Formula, Logic, props
from .incompat import check_implication_graph, classify_property_pair
from .semantics import (
    Denoter,
    TeamProperty,
    check_closure,
    property_of,
    property_on_model,
)
from .synthesis import (
    burgess_hs,
    burgess_modal,
    burgess_nestar,
    burgess_plne,
    burgess_plne_gd,
    burgess_pldep,
    synthesize_from_property,
)
from .syntax import parse, to_text
from .teams import (
    KripkeModel,
    Vocabulary,
    hintikka_team,
    hintikka_world,
    strong_hintikka_team,
    team_bisim_k,
    world_bisim_k,
)
from .transforms import empty_team_normalize, flatten, nnf

LOGIC_NAMES = [logic.value for logic in Logic]

CLOSURE_WORDS = {
    "downward_closed": "downward-closed",
    "convex": "convex",
    "union_closed": "union-closed",
    "empty_team": "empty-team",
    "flat": "flat",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _shared(p: argparse.ArgumentParser, structure: bool = True) -> None:
    p.add_argument("--logic", required=True, choices=LOGIC_NAMES, metavar="LOGIC",
                   help="profile: " + ", ".join(LOGIC_NAMES))
    if structure:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--vars", help="comma-separated proposition names")
        g.add_argument("--model", help="model file, or inline text starting with 'worlds:'")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="teamlogic", description="Team semantics with bilateral negation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, text in (("eval", "does the team support the formula"),
                       ("anti", "does the team anti-support the formula")):
        p = sub.add_parser(name, help=text)
        _shared(p)
        p.add_argument("--team", help="team literal such as {10,01} or {w1,w2}")
        p.add_argument("formula")

    for name, text in (("denote", "list the supporting and anti-supporting teams"),
                       ("ground", "print the ground teams of the formula and its negation"),
                       ("closure", "closure properties of the formula and its negation")):
        p = sub.add_parser(name, help=text)
        _shared(p)
        p.add_argument("formula")

    for name, text in (("classify", "incompatibility notions satisfied by a pair"),
                       ("implgraph", "check the implication graph on a pair")):
        p = sub.add_parser(name, help=text)
        _shared(p)
        p.add_argument("first")
        p.add_argument("second")

    for name, text in (("nnf", "negation normal form"),
                       ("flatten", "replace NE and dependence atoms by top"),
                       ("etnorm", "empty-team normalization")):
        p = sub.add_parser(name, help=text)
        _shared(p, structure=False)
        p.add_argument("formula")

    p = sub.add_parser("hintikka", help="characteristic formula of a world or team")
    _shared(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--team")
    p.add_argument("--strong", action="store_true", help="team version that is exact up to bisimulation")
    p.add_argument("world", nargs="?")

    p = sub.add_parser("bisim", help="k-bisimilarity of two pointed models")
    _shared(p, structure=False)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("left", help="model file or inline text; a 'team:' line selects the team")
    p.add_argument("right")

    p = sub.add_parser("synth", help="formula with exactly the given supporting teams")
    _shared(p)
    p.add_argument("property", help="team literals, e.g. '{} {1}'; 'none' for no teams")

    p = sub.add_parser("burgess", help="find theta with theta ≡ first and neg theta ≡ second")
    _shared(p)
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("equiv", help="oracle equivalence check")
    _shared(p)
    p.add_argument("--max-worlds", type=int, default=2)
    p.add_argument("--bi", action="store_true", help="also compare the negations")
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("random", help="seeded random formulas")
    _shared(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--count", type=int, default=1)
    return parser


# ---------------------------------------------------------------- helpers


def _read_model(text: str) -> tuple[KripkeModel, int | None]:
    if text.lstrip().startswith("worlds:"):
        return KripkeModel.from_text(text)
    try:
        with open(text, encoding="utf-8") as fh:
            return KripkeModel.from_text(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read model file {text!r}: {exc.strerror}") from None


def _formulas(args, *texts: str) -> tuple[Logic, list[Formula]]:
    logic = Logic.lookup(args.logic)
    return logic, [parse(t, logic) for t in texts]


def _structure(args, formulas: list[Formula]):
    """(structure, team from the model text or None)."""
    if getattr(args, "model", None):
        return _read_model(args.model)
    if getattr(args, "vars", None) is not None:
        return Vocabulary.of(args.vars), None
    names = set()
    for f in formulas:
        names |= props(f)
    return Vocabulary(tuple(sorted(names))), None


def _team(args, structure, team):
    if getattr(args, "team", None) is not None:
        return structure.parse_team(args.team)
    if team is None:
        raise UsageError("a team is required (--team, or a 'team:' line in the model)")
    return team


def _property(structure, f: Formula, logic: Logic) -> TeamProperty:
    if isinstance(structure, KripkeModel):
        return property_on_model(structure, f, logic)
    return property_of(f, structure, logic)


def _format_property(prop: TeamProperty) -> str:
    return prop.format() if prop.mask else "none"


def _closure_words(prop: TeamProperty) -> str:
    c = check_closure(prop)
    words = [w for flag, w in CLOSURE_WORDS.items() if getattr(c, flag)]
    return " ".join(words) if words else "none"


def _parse_property(text: str, structure) -> TeamProperty:
    if text.strip() == "none":
        return TeamProperty(structure, 0)
    literals = re.findall(r"\{[^}]*\}", text)
    if not literals or re.sub(r"\{[^}]*\}", "", text).strip():
        raise UsageError(f"property must be a list of team literals: {text!r}")
    return TeamProperty.from_teams(structure, [structure.parse_team(t) for t in literals])


def _format_witness(witness) -> str:
    if isinstance(witness, tuple) and len(witness) == 2 and isinstance(witness[0], KripkeModel):
        model, point = witness
        return f"model [{model.to_text('; ')}] world {model.worlds[point]}"
    if isinstance(witness, tuple):
        return " ".join(str(w) for w in witness)
    return str(witness)


# ---------------------------------------------------------------- commands


def _cmd_eval(args, out) -> int:
    logic, (f,) = _formulas(args, args.formula)
    structure, team = _structure(args, [f])
    team = _team(args, structure, team)
    ev = Denoter(structure, logic)
    if args.command == "anti":
        anti = ev.antisupport(f) >> team & 1
        print("anti-supported" if anti else "not anti-supported", file=out)
        return 0 if anti else 1
    if ev.support(f) >> team & 1:
        print("supported", file=out)
        return 0
    try:
        anti = ev.antisupport(f) >> team & 1
    except UndefinedClause:
        print("not supported", file=out)
        return 1
    print("anti-supported" if anti else "neither", file=out)
    return 1


def _negation(structure, f: Formula, logic: Logic) -> TeamProperty | None:
    """Anti-support property, or None where the logic leaves it undefined."""
    if not logic.has_dual_negation:
        return None
    try:
        return _property(structure, DualNeg(f), logic)
    except (ProfileViolation, UndefinedClause):
        return None


def _cmd_denote(args, out) -> int:
    logic, (f,) = _formulas(args, args.formula)
    structure, _ = _structure(args, [f])
    neg = _negation(structure, f, logic)
    print("support: " + _format_property(_property(structure, f, logic)), file=out)
    print("anti-support: " + (_format_property(neg) if neg else "undefined"), file=out)
    return 0


def _cmd_ground(args, out) -> int:
    logic, (f,) = _formulas(args, args.formula)
    structure, _ = _structure(args, [f])
    neg = _negation(structure, f, logic)
    print("ground: " + structure.format_team(_property(structure, f, logic).ground()), file=out)
    print("anti-ground: " + (structure.format_team(neg.ground()) if neg else "undefined"), file=out)
    return 0


def _cmd_closure(args, out) -> int:
    logic, (f,) = _formulas(args, args.formula)
    structure, _ = _structure(args, [f])
    neg = _negation(structure, f, logic)
    print("closure: " + _closure_words(_property(structure, f, logic)), file=out)
    print("negation: " + (_closure_words(neg) if neg else "undefined"), file=out)
    return 0


def _pair(args):
    logic, (f, g) = _formulas(args, args.first, args.second)
    structure, _ = _structure(args, [f, g])
    if isinstance(structure, Vocabulary) and len(structure) > 3:
        raise BoundsExceeded("pair classification is exhaustive only up to 3 names")
    return _property(structure, f, logic), _property(structure, g, logic)


def _cmd_classify(args, out) -> int:
    p, q = _pair(args)
    labels = classify_property_pair(p, q).labels()
    print("verdict: " + (" ".join(labels) if labels else "none"), file=out)
    return 0


def _cmd_implgraph(args, out) -> int:
    p, q = _pair(args)
    verdict = classify_property_pair(p, q)
    print("verdict: " + (" ".join(verdict.labels()) or "none"), file=out)
    print("closure: " + _closure_words(p) + " / " + _closure_words(q), file=out)
    broken = check_implication_graph(verdict, check_closure(p), check_closure(q))
    if not broken:
        print("violations: none", file=out)
        return 0
    for edge in broken:
        print("violation: " + edge, file=out)
    return 1


def _cmd_transform(args, out) -> int:
    logic, (f,) = _formulas(args, args.formula)
    fn = {"nnf": nnf, "etnorm": empty_team_normalize}.get(args.command)
    print(to_text(fn(f, logic) if fn else flatten(f)), file=out)
    return 0


def _cmd_hintikka(args, out) -> int:
    if not args.model:
        raise UsageError("hintikka needs --model")
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    if args.k > 3:
        raise BoundsExceeded("Hintikka formulas are built up to depth 3")
    model, team = _read_model(args.model)
    if args.world is not None:
        f = hintikka_world(model, model.parse_point(args.world), model.vocab, args.k)
    else:
        team = _team(args, model, team)
        build = strong_hintikka_team if args.strong else hintikka_team
        f = build(model, team, model.vocab, args.k)
    print(to_text(f), file=out)
    return 0


def _cmd_bisim(args, out) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    m1, t1 = _read_model(args.left)
    m2, t2 = _read_model(args.right)
    vocab = tuple(sorted(set(m1.vocab) | set(m2.vocab)))
    if t1 is None or t2 is None:
        pairs = [
            f"{a}~{b}"
            for i, a in enumerate(m1.worlds)
            for j, b in enumerate(m2.worlds)
            if world_bisim_k(m1, i, m2, j, vocab, args.k)
        ]
        print("bisimilar worlds: " + (" ".join(pairs) if pairs else "none"), file=out)
        return 0 if pairs else 1
    same = team_bisim_k(m1, t1, m2, t2, vocab, args.k)
    print(("bisimilar" if same else "not bisimilar") + f" at depth {args.k}", file=out)
    return 0 if same else 1


def _cmd_synth(args, out) -> int:
    logic = Logic.lookup(args.logic)
    if args.model or args.vars is None:
        raise UsageError("synth needs --vars")
    vocab = Vocabulary.of(args.vars)
    prop = _parse_property(args.property, vocab)
    try:
        theta = synthesize_from_property(prop, logic)
    except NotApplicable as exc:
        print(f"refused: {exc}", file=out)
        return 1
    print("theta: " + to_text(theta), file=out)
    ok = oracle.denotation(theta, vocab, logic) == set(prop.teams())
    print("certificate: " + ("ok" if ok else "failed"), file=out)
    return 0 if ok else 1


BURGESS = {
    Logic.PLNE_GD: burgess_plne_gd,
    Logic.PLNE: burgess_plne,
    Logic.PLDep: burgess_pldep,
    Logic.HS: burgess_hs,
    Logic.PLNEStar_GD: burgess_nestar,
}


def _cmd_burgess(args, out) -> int:
    logic, (f, g) = _formulas(args, args.first, args.second)
    if args.model:
        raise UsageError("burgess works over a vocabulary, not a fixed model")
    try:
        if logic in BURGESS:
            vocab = Vocabulary.of(args.vars) if args.vars is not None else None
            result = BURGESS[logic](f, g, vocab)
        elif logic in (Logic.BSML, Logic.BSMLI):
            result = burgess_modal(f, g, logic, max_worlds=args.max_worlds)
        else:
            raise UsageError(f"no Burgess construction for {logic.value}")
    except NotApplicable as exc:
        print(f"refused: {exc}", file=out)
        print(f"witness: {_format_witness(exc.witness)}", file=out)
        return 1
    print("theta: " + to_text(result.theta), file=out)
    if result.ok:
        bound = f" (models up to {args.max_worlds} worlds)" if logic.modal else ""
        print("certificate: ok" + bound, file=out)
        return 0
    a, b = ("yes" if c else "no" for c in result.certificate)
    print(f"certificate: failed (theta ≡ first: {a}, neg theta ≡ second: {b})", file=out)
    return 1


def _cmd_equiv(args, out) -> int:
    logic, (f, g) = _formulas(args, args.first, args.second)
    if logic.modal:
        names = tuple(sorted(props(f) | props(g)))
        if args.vars is not None:
            names = Vocabulary.of(args.vars).names
        verdict = oracle.modal_equivalent_bounded(f, g, args.max_worlds, names, logic)
        if verdict.result and args.bi:
            verdict = oracle.modal_equivalent_bounded(DualNeg(f), DualNeg(g), args.max_worlds, names, logic)
    else:
        if args.model:
            raise UsageError("equiv over a fixed model is not supported; use --vars")
        structure, _ = _structure(args, [f, g])
        check = oracle.bi_equivalent if args.bi else oracle.equivalent
        verdict = check(f, g, structure, logic)
        if not verdict.result:
            verdict = type(verdict)(False, structure.format_team(verdict.witness), verdict.bounds)
    word = "bi-equivalent" if args.bi else "equivalent"
    if verdict.result:
        print(word + (f" (models up to {args.max_worlds} worlds)" if logic.modal else ""), file=out)
        return 0
    print("not " + word, file=out)
    if logic.modal:
        model, team = verdict.witness
        print(f"witness: model [{model.to_text('; ')}] team {model.format_team(team)}", file=out)
    else:
        print(f"witness: {verdict.witness}", file=out)
    return 1


def _cmd_random(args, out) -> int:
    if args.model:
        raise UsageError("random needs --vars, not --model")
    if args.count < 1 or args.depth < 0:
        raise UsageError("--count must be positive and --depth non-negative")
    import random as _random

    rng = _random.Random(args.seed)
    names = Vocabulary.of(args.vars or "p,q").names
    for _ in range(args.count):
        print(to_text(oracle.random_formula(args.logic, names, args.depth, rng=rng)), file=out)
    return 0


COMMANDS = {
    "eval": _cmd_eval,
    "anti": _cmd_eval,
    "denote": _cmd_denote,
    "ground": _cmd_ground,
    "closure": _cmd_closure,
    "classify": _cmd_classify,
    "implgraph": _cmd_implgraph,
    "nnf": _cmd_transform,
    "flatten": _cmd_transform,
    "etnorm": _cmd_transform,
    "hintikka": _cmd_hintikka,
    "bisim": _cmd_bisim,
    "synth": _cmd_synth,
    "burgess": _cmd_burgess,
    "equiv": _cmd_equiv,
    "random": _cmd_random,
}


def run(argv: list[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except BoundsExceeded as exc:
        print(f"error: {exc}", file=err)
        return 3
    except NotApplicable as exc:
        print(f"refused: {exc}", file=out)
        return 1
    except TeamLogicError as exc:
        print(f"error: {exc}", file=err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
