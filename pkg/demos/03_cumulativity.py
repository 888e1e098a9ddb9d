"""Adding a derived conclusion as an axiom can change what follows.

The two-rule knowledge base (a strong rule for p, and a rule that turns
p|q into ~p) entails both p and p|q under preferred semantics.  Making
the harmless-looking disjunction p|q an axiom hands the second rule an
independent trigger, and p is lost.  The engine reproduces the failure
under preferred semantics and its grounded cousin for the
satisfiable-support restriction, and certifies that pointed rule-based
settings never show it for grounded semantics.
"""

from argonaut import Atom, Or, build_graph, entails_in_graph
from argonaut.cores import ABARulesCore, StrictRule, restrict_satisfiable
from argonaut.engine import Setting
from argonaut.formula import AttackPoints, Contrariness
from argonaut.harness import check_cumulativity
from argonaut.kb import load_kb_text

p, q = Atom("p"), Atom("q")

KB = """\
atoms p q
defeasible n0: top => p
defeasible n1: p | q => ~p
setting core=aspic attack=native mode=ddagger
"""

loaded = load_kb_text(KB)
premises = loaded.premises
for axiom in (None, Or(p, q)):
    setting = loaded.setting if axiom is None else loaded.setting.extend_with_axiom(axiom)
    graph = build_graph(setting, premises, frozenset({p, Or(p, q)}))
    tag = f"+ axiom {axiom!r}" if axiom else "base"
    print(f"{tag:16}  p: {entails_in_graph(graph, p, 'prf')}   p|q: {entails_in_graph(graph, Or(p, q), 'prf')}")

print()
report = check_cumulativity(loaded.setting, premises, Or(p, q), [p, Or(p, q)], "prf")
print(report.text())

print()
# a pointed rule-based setting: assumption rules with identity points
a, b = Atom("a"), Atom("b")
core = ABARulesCore((StrictRule("r0", (a,), p), StrictRule("r1", (p, b), q)), frozenset({a, b}))
setting = Setting(core, Contrariness("neg"), AttackPoints("id"))
print(check_cumulativity(setting, frozenset({a, b}), p, [a, b, p, q], "grd").text())
