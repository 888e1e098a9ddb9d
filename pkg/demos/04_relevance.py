"""Non-interference: does syntactically alien information change verdicts?

Plain classical logic explodes on contradictions, so a contradictory
addition about unrelated atoms can interfere with what follows about p.
Restricting derivability to satisfiable supports (or reasoning over
maximal consistent subsets) repairs this: consequences over p-atoms stay
put no matter what disjoint junk arrives.
"""

from argonaut import Atom, Not
from argonaut.cores import CLCore, CLTopCore, MCSCore
from argonaut.engine import Setting
from argonaut.harness import check_crash_resistance_probe, check_non_interference

p, q = Atom("p"), Atom("q")
noise = frozenset({q, Not(q)})

for label, core in (
    ("plain classical", CLCore()),
    ("satisfiable supports", CLTopCore()),
    ("all maximal consistent subsets", MCSCore(universal=True)),
):
    setting = Setting.from_rule(core, "didef")
    report = check_non_interference(setting, frozenset({p}), noise, "grd", [p])
    print(f"{label:32} -> {report.verdict}")
    if report.counterexample:
        print(f"    witness query: {report.counterexample['query']}")

print()
print("probing a contradiction for contaminating behaviour:")
report = check_crash_resistance_probe(
    Setting.from_rule(CLTopCore(), "didef"), frozenset({p, Not(p)}), trials=20, seed=3
)
print(report.text())
