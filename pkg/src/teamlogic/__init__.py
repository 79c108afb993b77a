"""Team semantics for propositional and modal logics with a bilateral
(dual) negation: evaluation, closure properties, incompatibility notions
between a formula and its negation, and constructive Burgess-style synthesis."""

from .errors import (
    BoundsExceeded,
    NotApplicable,
    ParseError,
    ProfileViolation,
    TeamLogicError,
    UndefinedClause,
)
from .formula import Formula, Logic, Regime, validate
from .incompat import IncompatibilityVerdict, classify_pair, classify_property_pair
from .semantics import (
    TeamProperty,
    antisupports,
    check_closure,
    dual_property_of,
    ground_team,
    property_of,
    property_on_model,
    supports,
)
from .syntax import parse, to_text
from .teams import KripkeModel, Vocabulary
from .transforms import empty_team_normalize, flatten, nnf

__all__ = [
    "BoundsExceeded",
    "Formula",
    "IncompatibilityVerdict",
    "KripkeModel",
    "Logic",
    "NotApplicable",
    "ParseError",
    "ProfileViolation",
    "Regime",
    "TeamLogicError",
    "TeamProperty",
    "UndefinedClause",
    "Vocabulary",
    "antisupports",
    "check_closure",
    "classify_pair",
    "classify_property_pair",
    "dual_property_of",
    "empty_team_normalize",
    "flatten",
    "ground_team",
    "nnf",
    "parse",
    "property_of",
    "property_on_model",
    "supports",
    "to_text",
    "validate",
]
