"""Argument and attack-graph construction for a setting.

A setting couples a deducibility core with a contrariness function and an
attack-point function.  Named attack rules expand to the usual pairs:

    dicodef  (neg,        id)      defeat at a premise, by literal negation
    def      (neg,        conj)    defeat at any sub-conjunction
    didef    (entail-neg, id)      direct defeat
    diucut   (equiv-neg,  id)      direct undercut
    ucut     (equiv-neg,  conj)    undercut
    native   contrariness/points taken as configured (rule-based modes)

Classical cores generate infinitely many conclusions, so the graph is
built over the *canonical attacker* reduction: the only conclusions
considered are the negations of possible attack points plus whatever the
caller queries.  Any attacker with support G and conclusion entailing the
negation of a point is dominated by (G, ~point), which the reduction
keeps, so skeptical consequences are preserved; the metatheory suite
cross-checks this against bounded full universes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .cores import DeducibilityCore
from .formula import (
    ArgonautError,
    AttackPoints,
    Contrariness,
    Formula,
    Not,
    atoms_of,
    render,
    truth_atoms,
)

ATTACK_RULES = {
    "dicodef": ("neg", "id"),
    "def": ("neg", "conj"),
    "didef": ("entail-neg", "id"),
    "diucut": ("equiv-neg", "id"),
    "ucut": ("equiv-neg", "conj"),
}


class CapExceeded(ArgonautError):
    pass


@dataclass
class Setting:
    """A deducibility core plus the attack vocabulary built on it."""

    core: DeducibilityCore
    contrariness: Contrariness
    attack_points: AttackPoints
    attack_rule: str = "native"

    @classmethod
    def from_rule(cls, core: DeducibilityCore, rule: str) -> "Setting":
        if rule == "native":
            raise ValueError("native settings need explicit contrariness/points")
        try:
            ckind, pkind = ATTACK_RULES[rule]
        except KeyError:
            raise ValueError(f"unknown attack rule {rule!r}") from None
        contr = Contrariness(ckind, core=core if ckind.endswith("neg") else None)
        return cls(core, contr, AttackPoints(pkind), attack_rule=rule)

    def with_core(self, core: DeducibilityCore) -> "Setting":
        contr = self.contrariness
        if contr.kind in ("entail-neg", "equiv-neg"):
            contr = contr.with_core(core)
        return Setting(core, contr, self.attack_points, self.attack_rule)

    def extend_with_axiom(self, phi: Formula) -> "Setting":
        return self.with_core(self.core.extend_with_axiom(phi))


@dataclass(frozen=True)
class Argument:
    id: int
    support: frozenset[Formula]
    conclusion: Formula
    value: Optional[int] = None

    def key(self) -> tuple[frozenset[Formula], Formula]:
        return (self.support, self.conclusion)

    def text(self) -> str:
        supp = ", ".join(sorted(map(render, self.support)))
        base = f"({{{supp}}}, {render(self.conclusion)})"
        if self.value is not None:
            base += f" @ {self.value}"
        return base


@dataclass
class AttackGraph:
    arguments: tuple[Argument, ...]
    edges: frozenset[tuple[int, int]]
    queries: frozenset[Formula] = frozenset()
    warnings: tuple[str, ...] = ()
    _by_key: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._by_key = {a.key(): a.id for a in self.arguments}

    def __len__(self) -> int:
        return len(self.arguments)

    def id_of(self, support: Iterable[Formula], conclusion: Formula) -> Optional[int]:
        return self._by_key.get((frozenset(support), conclusion))

    def attackers_of(self, arg_id: int) -> frozenset[int]:
        return frozenset(a for (a, b) in self.edges if b == arg_id)

    def targets_of(self, arg_id: int) -> frozenset[int]:
        return frozenset(b for (a, b) in self.edges if a == arg_id)

    def concluders(self, phi: Formula) -> frozenset[int]:
        from .formula import strip_label

        return frozenset(
            a.id for a in self.arguments if strip_label(a.conclusion) == phi
        )


def relevant_conclusions(
    setting: Setting,
    premises: frozenset[Formula],
    queries: frozenset[Formula] = frozenset(),
) -> frozenset[Formula]:
    """The finite conclusion pool the graph is built over.

    Rule-based cores have a finite closure already; classical cores get the
    canonical attacker conclusions (negated attack points) plus queries.
    """
    premises = frozenset(premises)
    queries = frozenset(queries)
    core = setting.core
    if core.rule_based:
        closure = core.conclusions(premises, queries) or frozenset()
        return closure | queries
    points = setting.attack_points.points(premises)
    return frozenset(Not(p) for p in points) | queries


def _premise_subsets(premises: frozenset[Formula]) -> Iterable[frozenset[Formula]]:
    members = sorted(premises, key=render)
    for size in range(0, len(members) + 1):
        for sub in itertools.combinations(members, size):
            yield frozenset(sub)


def build_arguments(
    setting: Setting,
    premises: frozenset[Formula],
    queries: frozenset[Formula] = frozenset(),
    cap: int = 10,
) -> tuple[tuple[Argument, ...], tuple[str, ...], dict]:
    """All arguments over the premise set, deterministically ordered.

    Returns (arguments, warnings, witnesses) where witnesses maps argument
    keys to the derivation objects rule cores produce (used by the
    prioritized layer to compute argument values).
    """
    premises = frozenset(premises)
    queries = frozenset(queries)
    if len(premises) > max(cap, 0):
        raise CapExceeded(f"{len(premises)} premises exceed the cap of {cap}")
    core = setting.core
    witnesses: dict = {}
    entries: set[tuple[frozenset[Formula], Formula]] = set()
    warnings: list[str] = []
    if core.rule_based:
        triples, truncated = core.arguments(premises, queries)
        if truncated:
            warnings.append(
                "tree search hit its depth bound with a growing frontier; "
                "the argument set may be incomplete"
            )
        for support, conclusion, witness in triples:
            entries.add((support, conclusion))
            witnesses[(support, conclusion)] = witness
    else:
        hint = frozenset()
        for f in premises | queries:
            hint |= truth_atoms(f)
        primed = core.primed(hint)
        conclusions = relevant_conclusions(setting, premises, queries)
        for support in _premise_subsets(premises):
            for conclusion in conclusions:
                if primed.holds(support, conclusion):
                    entries.add((support, conclusion))
    ordered = sorted(
        entries, key=lambda e: (sorted(map(render, e[0])), render(e[1]))
    )
    args = tuple(
        Argument(i, support, conclusion) for i, (support, conclusion) in enumerate(ordered)
    )
    return args, tuple(warnings), witnesses


def build_graph(
    setting: Setting,
    premises: frozenset[Formula],
    queries: frozenset[Formula] = frozenset(),
    cap: int = 10,
) -> AttackGraph:
    """The attack graph of the setting over the premise set."""
    args, warnings, _ = build_arguments(setting, premises, queries, cap)
    contr = setting.contrariness
    points_of: dict[frozenset[Formula], frozenset[Formula]] = {}
    for a in args:
        if a.support not in points_of:
            points_of[a.support] = setting.attack_points.points(a.support)
    edges = set()
    for target in args:
        pts = points_of[target.support]
        if not pts:
            continue
        for attacker in args:
            if any(contr.is_contrary(attacker.conclusion, p) for p in pts):
                edges.add((attacker.id, target.id))
    return AttackGraph(args, frozenset(edges), frozenset(queries), tuple(warnings))


def graph_consequence_pool(graph: AttackGraph) -> frozenset[Formula]:
    from .formula import strip_label

    return frozenset(strip_label(a.conclusion) for a in graph.arguments)
