"""Prioritized defeat: attacks succeed only against points they outrank.

Values follow the weakest-link convention: higher value = weaker.  A
defeat needs the attacker's value to be at most the attacked point's.
With equal values everywhere the defeat graph collapses to the plain
attack graph.
"""

from argonaut import Atom, Not, build_graph, build_prioritized_graph
from argonaut.cores import CLTopCore, ASPICCore, DefeasibleRule
from argonaut.engine import Setting
from argonaut.formula import AttackPoints, Contrariness, Or, TOP
from argonaut.priorities import PriorityAssignment, prioritized_entails

p, q = Atom("p"), Atom("q")

print("== premise strengths decide a standoff")
setting = Setting.from_rule(CLTopCore(), "didef")
premises = frozenset({p, Not(p)})
pi = PriorityAssignment(pi={p: 1, Not(p): 2})  # p is stronger
for query in (p, Not(p)):
    verdict = prioritized_entails(setting, premises, pi, "min-support", query, "grd")
    print(f"   entails {query!r}: {verdict}")

print()
print("== weakest link over rule chains")
n0 = DefeasibleRule("n0", (TOP,), p)
n1 = DefeasibleRule("n1", (Or(p, q),), Not(p))
core = ASPICCore((), (n0, n1), frozenset(), mode="ddagger")
tree_setting = Setting(core, Contrariness("neg-canonical"), AttackPoints("id"))
for strengths in ({"n0": 1, "n1": 3}, {"n0": 2, "n1": 2}):
    pi = PriorityAssignment(rule_pi=strengths)
    verdict = prioritized_entails(
        tree_setting, core.setting_premises(), pi, "weakest-link", p, "grd"
    )
    print(f"   rule values {strengths} -> entails p: {verdict}")

print()
print("== constant values reproduce the plain graph")
pi = PriorityAssignment(pi={p: 1, Not(p): 1})
flat = build_prioritized_graph(setting, premises, pi, "min-support")
plain = build_graph(setting, premises)
print(f"   plain edges:      {len(plain.edges)}")
print(f"   prioritized edges: {len(flat.edges)}")
