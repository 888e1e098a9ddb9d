"""Build an attack graph from a small knowledge base and inspect it.

Arguments are premise-conclusion pairs (support |- conclusion); argument
``a`` attacks ``b`` when a's conclusion is a contrary of one of the attack
points of b's support.  Different attack rules are different choices of
contrariness and attack points over the same deducibility core.
"""

from argonaut import Atom, Not, build_graph, render
from argonaut.cores import CLCore
from argonaut.engine import Setting
from argonaut.export import export_dot

p, q = Atom("p"), Atom("q")
premises = frozenset({p, Not(p), q})

for rule in ("dicodef", "def", "didef"):
    setting = Setting.from_rule(CLCore(), rule)
    graph = build_graph(setting, premises, queries=frozenset({q}))
    print(f"== attack rule {rule}: {len(graph)} arguments, {len(graph.edges)} attacks")
    for argument in graph.arguments:
        attackers = ", ".join(
            graph.arguments[i].text() for i in sorted(graph.attackers_of(argument.id))
        )
        print(f"   {argument.text()}   <- {attackers or 'unattacked'}")
    print()

print("DOT export of the direct-defeat graph:")
print(export_dot(build_graph(Setting.from_rule(CLCore(), 'didef'), premises, frozenset({q}))))
