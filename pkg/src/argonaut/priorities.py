"""Prioritized defeat: value labels, liftings, and prioritized consequence.

Value convention: **higher value = weaker**.  An attack succeeds as a
defeat when the attacker's value is less than or equal to the value of
the attacked point (the attacker is at least as strong).  This makes the
"weakest link" of a derivation its maximum value.  Set ``invert=True`` on
an assignment to experiment with the opposite reading.

Liftings determine the value an argument carries:

    conclusion    value of the conclusion formula
    min-support   strongest support member
    max-support   weakest support member
    max-aba       weakest used assumption
    weakest-link  recursive maximum over defeasible rules and premise
                  leaves of the derivation tree

Attack points carry values too: plain members their own assignment,
conjunction points the minimum over their members, combination terms the
maximum.  Points made of rule names or rule literals have no value and
defeat through them is unconditional (the undercut reading).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .cores import ABARulesCore, ASPICCore, DeducibilityCore, TreeProfile, premise_rule
from .engine import Argument, AttackGraph, Setting, build_arguments
from .formula import (
    ConfigurationError,
    Contrariness,
    Formula,
    Labeled,
    OPlus,
    RuleLit,
    RuleName,
    Top,
    render,
    strip_label,
)

LIFTINGS = ("conclusion", "min-support", "max-support", "weakest-link", "max-aba")


@dataclass
class PriorityAssignment:
    """Partial value assignment for formulas and defeasible rules."""

    pi: dict[Formula, int] = field(default_factory=dict)
    rule_pi: dict[str, int] = field(default_factory=dict)
    invert: bool = False

    def leq(self, v1: int, v2: int) -> bool:
        return v1 >= v2 if self.invert else v1 <= v2

    def lt(self, v1: int, v2: int) -> bool:
        return v1 > v2 if self.invert else v1 < v2

    def strongest(self, values: Iterable[int]) -> int:
        """Minimum w.r.t. the value order; 0 on empty input."""
        values = list(values)
        if not values:
            return 0
        return max(values) if self.invert else min(values)

    def weakest(self, values: Iterable[int]) -> int:
        """Maximum w.r.t. the value order; 0 on empty input."""
        values = list(values)
        if not values:
            return 0
        return min(values) if self.invert else max(values)

    def formula_value(self, f: Formula) -> Optional[int]:
        if isinstance(f, Labeled):
            return f.value
        return self.pi.get(f)

    def require(self, f: Formula) -> int:
        v = self.formula_value(f)
        if v is None:
            raise ConfigurationError(f"no priority assigned to {render(f)}")
        return v

    def rule_value(self, rule_id: str) -> int:
        v = self.rule_pi.get(rule_id)
        if v is None:
            raise ConfigurationError(f"no priority assigned to rule {rule_id}")
        return v


def labeled_contrary(
    candidate: Labeled, of: Labeled, contrariness: Contrariness
) -> bool:
    """Base contrariness plus the strength condition v_candidate <= v_of."""
    if not isinstance(candidate, Labeled) or not isinstance(of, Labeled):
        raise ConfigurationError("labeled_contrary needs labeled formulas")
    if not contrariness.is_contrary(candidate.base, of.base):
        return False
    return candidate.value <= of.value


# ---------------------------------------------------------------------------
# Attack points with values


def labeled_points(
    support: frozenset[Formula],
    setting: Setting,
    pi: PriorityAssignment,
    aba_r: bool = False,
) -> tuple[tuple[Formula, Optional[int]], ...]:
    """Attack points of a support with the value each point carries.

    Rule elements yield valueless points (unconditional defeat).  In the
    reverse-defeat mode, combination terms over the assumption part are
    added with the weakest-member value.
    """
    out: list[tuple[Formula, Optional[int]]] = []
    if setting.attack_points.kind == "id":
        for f in sorted(support, key=render):
            if isinstance(f, (RuleLit, RuleName)):
                out.append((f, None))
            elif isinstance(f, Labeled):
                out.append((f.base, f.value))
            else:
                out.append((f, pi.formula_value(f)))
    else:
        for point, members in setting.attack_points.points_with_members(support):
            values = [pi.formula_value(m) for m in members]
            if all(v is not None for v in values):
                out.append((point, pi.strongest(values)))
            else:
                out.append((point, None))
    if aba_r:
        plain = sorted(
            (f for f in support if not isinstance(f, (RuleLit, RuleName, Labeled))),
            key=render,
        )
        for size in range(1, len(plain) + 1):
            for sub in itertools.combinations(plain, size):
                values = [pi.formula_value(m) for m in sub]
                if any(v is None for v in values):
                    continue
                out.append((OPlus(tuple(sub)), pi.weakest(values)))
    return tuple(out)


# ---------------------------------------------------------------------------
# Argument values per lifting


def weakest_link_value(witness: TreeProfile, pi: PriorityAssignment) -> int:
    """Root value of a derivation tree: the weakest of its defeasible
    rules and premise leaves (0 for axiom-only trees)."""
    values = [pi.rule_value(r) for r in witness.def_rules]
    values.extend(pi.formula_value(f) or 0 for f in witness.premises)
    return pi.weakest(values)


def argument_value(
    support: frozenset[Formula],
    conclusion: Formula,
    lifting: str,
    pi: PriorityAssignment,
    witness=None,
    assumptions: Optional[frozenset[Formula]] = None,
) -> int:
    if lifting == "conclusion":
        return pi.require(strip_label(conclusion))
    if lifting in ("min-support", "max-support"):
        plain = [f for f in support if not isinstance(f, (RuleLit, RuleName))]
        values = [pi.require(strip_label(f)) for f in plain]
        return pi.strongest(values) if lifting == "min-support" else pi.weakest(values)
    if lifting == "max-aba":
        pool = support if assumptions is None else support & assumptions
        return pi.weakest(pi.require(f) for f in pool)
    if lifting == "weakest-link":
        if witness is None:
            raise ConfigurationError("weakest-link lifting needs a tree witness")
        return weakest_link_value(witness, pi)
    raise ValueError(f"unknown lifting {lifting!r}")


# ---------------------------------------------------------------------------
# Labeled enumeration for defeasible-rule cores


@dataclass(frozen=True)
class LabeledProfile:
    def_rules: frozenset[str]
    labeled_concs: frozenset[tuple[Formula, int]]
    premises: frozenset[Formula]
    value: int


def labeled_tree_arguments(
    core: ASPICCore, pi: PriorityAssignment, queries: frozenset[Formula] = frozenset()
) -> tuple[tuple[tuple[frozenset[Formula], Formula, int], ...], bool]:
    """Arguments of the weakest-link representation.

    Supports carry the defeasible subconclusions as labeled formulas, so
    rebutting strength is read off the attacked point itself.
    """
    truncated = False
    # a fixpoint like the core's own, but at the labeled level: per pool
    # formula, the set of labeled profile candidates
    pool = core._pool(frozenset(queries))
    lab: dict[Formula, set[LabeledProfile]] = {f: set() for f in pool}
    for f in core.premise_pool:
        lab[f].add(
            LabeledProfile(
                frozenset(), frozenset(), frozenset((f,)), pi.formula_value(f) or 0
            )
        )
    for f in core.axioms:
        lab[f].add(LabeledProfile(frozenset(), frozenset(), frozenset(), 0))

    def merged(combo) -> tuple[frozenset[str], frozenset, frozenset, int]:
        rules: frozenset[str] = frozenset()
        concs: frozenset = frozenset()
        prems: frozenset = frozenset()
        value = 0
        for w in combo:
            rules |= w.def_rules
            concs |= w.labeled_concs
            prems |= w.premises
            value = pi.weakest((value, w.value))
        return rules, concs, prems, value

    from .cores import cl_entails
    from .formula import truth_atoms

    hint = frozenset()
    for f in pool:
        hint |= truth_atoms(f)

    for _ in range(core.depth):
        changed = False
        for r in core.defeasible:
            body = [b for b in r.body if not isinstance(b, Top)]
            pools = [lab.get(b, ()) for b in body]
            if any(not p for p in pools):
                continue
            for combo in itertools.product(*pools):
                rules, concs, prems, value = merged(combo)
                v = pi.weakest((value, pi.rule_value(r.id)))
                w = LabeledProfile(
                    rules | {r.id}, concs | {(r.head, v)}, prems, v
                )
                if w not in lab[r.head]:
                    lab[r.head].add(w)
                    changed = True
        for r in core.strict:
            body = [b for b in r.body if not isinstance(b, Top)]
            pools = [lab.get(b, ()) for b in body]
            if any(not p for p in pools):
                continue
            for combo in itertools.product(*pools):
                rules, concs, prems, value = merged(combo)
                w = LabeledProfile(rules, concs, prems, value)
                if w not in lab[r.head]:
                    lab[r.head].add(w)
                    changed = True
        if core.mode == "ddagger":
            for goal in pool:
                for size in range(0, core.max_strict_arity + 1):
                    for children in itertools.combinations(pool, size):
                        if goal in children:
                            continue
                        try:
                            ok = cl_entails(frozenset(children), goal, hint)
                        except Exception:
                            ok = False
                        if not ok:
                            continue
                        pools = [lab.get(c, ()) for c in children]
                        if any(not p for p in pools):
                            continue
                        for combo in itertools.product(*pools):
                            rules, concs, prems, value = merged(combo)
                            w = LabeledProfile(rules, concs, prems, value)
                            if w not in lab[goal]:
                                lab[goal].add(w)
                                changed = True
        if not changed:
            break
    else:
        truncated = True

    defs = core._def_by_id()
    entries: dict[tuple[frozenset[Formula], Formula, int], None] = {}
    for goal, profs in lab.items():
        for p in profs:
            support: set[Formula] = set()
            for rid in p.def_rules:
                rule = defs[rid]
                support.add(rule.lit())
                support.add(rule.name_formula())
            for conc, v in p.labeled_concs:
                support.add(Labeled(conc, v))
            for f in p.premises:
                support.add(premise_rule(f))
            entries[(frozenset(support), goal, p.value)] = None
    ordered = sorted(
        entries,
        key=lambda e: (sorted(map(render, e[0])), render(e[1]), e[2]),
    )
    return tuple(ordered), truncated


# ---------------------------------------------------------------------------
# Prioritized graphs


def build_prioritized_graph(
    setting: Setting,
    premises: frozenset[Formula],
    pi: PriorityAssignment,
    lifting: str,
    queries: frozenset[Formula] = frozenset(),
    cap: int = 10,
    aba_r: bool = False,
) -> AttackGraph:
    """The defeat graph of the prioritized setting."""
    if lifting not in LIFTINGS:
        raise ValueError(f"unknown lifting {lifting!r}")
    premises = frozenset(premises)
    queries = frozenset(queries)
    core = setting.core
    contr = setting.contrariness
    if contr.core is None:
        contr = contr.with_core(core)
    warnings: tuple[str, ...] = ()
    if lifting == "weakest-link":
        if not isinstance(core, ASPICCore):
            raise ConfigurationError("weakest-link lifting needs a tree core")
        raw, truncated = labeled_tree_arguments(core, pi, queries)
        if truncated:
            warnings = ("labeled tree search hit its depth bound",)
        args = tuple(
            Argument(i, support, conclusion, value)
            for i, (support, conclusion, value) in enumerate(raw)
        )
    else:
        assumptions = core.assumptions if isinstance(core, ABARulesCore) else None
        plain_args, warn, witnesses = build_arguments(setting, premises, queries, cap)
        warnings = warn
        args = tuple(
            Argument(
                a.id,
                a.support,
                a.conclusion,
                argument_value(
                    a.support,
                    a.conclusion,
                    lifting,
                    pi,
                    witness=witnesses.get(a.key()),
                    assumptions=assumptions,
                ),
            )
            for a in plain_args
        )
    points_of: dict[frozenset[Formula], tuple] = {}
    for a in args:
        if a.support not in points_of:
            points_of[a.support] = labeled_points(a.support, setting, pi, aba_r)
    edges = set()
    for target in args:
        pts = points_of[target.support]
        if not pts:
            continue
        for attacker in args:
            if pi_defeats_points(attacker, pts, contr, pi):
                edges.add((attacker.id, target.id))
    return AttackGraph(args, frozenset(edges), queries, warnings)


def pi_defeats_points(
    attacker: Argument,
    points: tuple[tuple[Formula, Optional[int]], ...],
    contrariness: Contrariness,
    pi: PriorityAssignment,
) -> bool:
    conc = strip_label(attacker.conclusion)
    for point, value in points:
        if not contrariness.is_contrary(conc, point):
            continue
        if value is None:
            if isinstance(point, (RuleLit, RuleName)):
                return True  # undercut: no strength comparison
            raise ConfigurationError(
                f"attack point {render(point)} has no priority value"
            )
        if attacker.value is None or pi.leq(attacker.value, value):
            return True
    return False


def pi_defeats(
    a: Argument, b: Argument, setting: Setting, pi: PriorityAssignment, aba_r: bool = False
) -> bool:
    """Does ``a`` defeat ``b``: a contrary conclusion at some attack point
    of b's support, with a at least as strong as that point."""
    contr = setting.contrariness
    if contr.core is None:
        contr = contr.with_core(setting.core)
    pts = labeled_points(b.support, setting, pi, aba_r)
    return pi_defeats_points(a, pts, contr, pi)


# ---------------------------------------------------------------------------
# Assumption-level defeat


def aba_d_defeats(
    delta: frozenset[Formula],
    gamma: frozenset[Formula],
    core: ABARulesCore,
    pi: PriorityAssignment,
    contrariness: Contrariness,
) -> bool:
    """Some subset of ``delta`` derives a contrary of a member of ``gamma``
    and is at most as weak as that member."""
    table = core._witnesses(core._all_rule_ids())
    for target in gamma:
        target_value = pi.require(target)
        for phi, witnesses in table.items():
            if not contrariness.is_contrary(phi, target):
                continue
            for w in witnesses:
                if w.assumptions <= delta and pi.leq(
                    pi.weakest(pi.require(x) for x in w.assumptions), target_value
                ):
                    return True
    return False


def aba_r_defeat(
    delta: frozenset[Formula],
    gamma: frozenset[Formula],
    core: ABARulesCore,
    pi: PriorityAssignment,
    contrariness: Optional[Contrariness] = None,
    reverse_reading: str = "proof",
) -> bool:
    """Reverse-capable defeat between assumption sets.

    The d-defeat clause is as usual.  The reverse clause exists in two
    readings (the source text is ill-typed at this spot):

    * ``proof``   -- some member of ``delta`` is attacked from within
      ``gamma`` but strictly outranks its attackers, so the failed attack
      reverses.  This is the reading the correspondence results rely on.
    * ``literal`` -- some member of ``gamma`` is attacked by a strictly
      weaker subset of ``delta``.
    """
    if contrariness is None:
        contrariness = Contrariness("neg")
    delta = frozenset(delta)
    gamma = frozenset(gamma)
    if aba_d_defeats(delta, gamma, core, pi, contrariness):
        return True
    table = core._witnesses(core._all_rule_ids())
    if reverse_reading == "proof":
        holders, source = delta, gamma
    elif reverse_reading == "literal":
        holders, source = gamma, delta
    else:
        raise ValueError(f"unknown reverse reading {reverse_reading!r}")
    for member in holders:
        member_value = pi.require(member)
        for phi, witnesses in table.items():
            if not contrariness.is_contrary(phi, member):
                continue
            for w in witnesses:
                if not w.assumptions or not w.assumptions <= source:
                    continue
                if pi.lt(member_value, pi.weakest(pi.require(x) for x in w.assumptions)):
                    return True
    return False


# ---------------------------------------------------------------------------
# Prioritized consequence


def prioritized_entails(
    setting: Setting,
    premises: frozenset[Formula],
    pi: PriorityAssignment,
    lifting: str,
    phi: Formula,
    sem: str,
    at_most: Optional[int] = None,
    queries: frozenset[Formula] = frozenset(),
    cap: int = 10,
    aba_r: bool = False,
) -> bool:
    """Skeptical consequence over the defeat graph; with ``at_most`` the
    witnessing argument's value must not exceed the bound."""
    from .semantics import extension_families

    graph = build_prioritized_graph(
        setting, premises, pi, lifting, frozenset(queries) | {phi}, cap, aba_r
    )
    families = extension_families(graph)
    for ext in families[sem]:
        found = False
        for i in ext:
            a = graph.arguments[i]
            if strip_label(a.conclusion) != phi:
                continue
            if at_most is None or a.value is None or pi.leq(a.value, at_most):
                found = True
                break
        if not found:
            return False
    return True
