"""Dung semantics over a conflicting knowledge base.

The grounded extension is the cautious least fixpoint; complete
extensions add defended arguments; preferred extensions are the maximal
complete ones; stable extensions attack everything they exclude.
Skeptical consequence asks every extension to contain an argument for
the query.
"""

from argonaut import Atom, Not, build_graph, entails_in_graph, extension_families
from argonaut.cores import CLCore, CLTopCore
from argonaut.engine import Setting

p, q = Atom("p"), Atom("q")
premises = frozenset({p, Not(p), q})
setting = Setting.from_rule(CLTopCore(), "didef")
graph = build_graph(setting, premises, queries=frozenset({p, q}))

families = extension_families(graph)
for sem in ("grd", "cmp", "prf", "stb"):
    print(f"{sem}: {len(families[sem])} extension(s)")
    for ext in families[sem]:
        print("   {", ", ".join(graph.arguments[i].text() for i in sorted(ext)), "}")

print()
for query in (p, q):
    for sem in ("grd", "prf", "stb"):
        verdict = entails_in_graph(graph, query, sem, families)
        print(f"entails {query!r:4} under {sem}: {verdict}")

# q is accepted skeptically in every semantics: it is untouched by the
# p / ~p standoff.  p itself is credulously possible but not skeptical.
