import pytest

from teamlogic.syntax import parse
from teamlogic.teams import Vocabulary

X0 = Vocabulary(())
X1 = Vocabulary.of("p")
X2 = Vocabulary.of("p,q")

# the pair formula supported by {w_p, w_not_p} but by neither singleton alone
BOTH = "(p & NE) | (neg p & NE)"

PROPOSITIONAL = ["pl", "plsim", "inqb", "hs", "plne", "plnegd", "nestar", "pldep"]
MODAL = ["ml", "bsml", "bsmli"]


@pytest.fixture
def f():
    """Parse shorthand: f(text, logic)."""
    return parse
