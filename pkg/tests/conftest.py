import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from argonaut import Atom, Not, Or, TOP
from argonaut.cores import ASPICCore, DefeasibleRule, restrict_satisfiable
from argonaut.engine import Setting
from argonaut.formula import AttackPoints, Contrariness

P = Atom("p")
Q = Atom("q")
R = Atom("r")


MAKINSON_KB = """\
atoms p q
defeasible n0: top => p
defeasible n1: p | q => ~p
setting core=aspic attack=native mode=ddagger
"""


def makinson_core() -> ASPICCore:
    n0 = DefeasibleRule("n0", (TOP,), P)
    n1 = DefeasibleRule("n1", (Or(P, Q),), Not(P))
    return ASPICCore((), (n0, n1), frozenset(), mode="ddagger")


@pytest.fixture
def makinson_setting() -> Setting:
    core = makinson_core()
    return Setting(core, Contrariness("neg-canonical"), AttackPoints("id"))


@pytest.fixture
def makinson_star_setting() -> Setting:
    core = restrict_satisfiable(makinson_core())
    return Setting(core, Contrariness("neg-canonical"), AttackPoints("id"))
