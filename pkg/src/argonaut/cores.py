"""Pluggable deducibility relations and their transforms.

A deducibility core decides ``holds(support, conclusion)`` for finite
supports.  Classical-logic cores decide by exhaustive valuation (hard cap
of 16 atoms); rule-based cores (assumption rules, defeasible/strict rule
trees) enumerate witness derivations and therefore also expose a finite
conclusion pool.

Transforms provided here:

* :func:`extend_with_axiom` -- add a premise-free axiom.  Rule cores gain
  an empty-bodied rule whose use is not tracked in supports; predicate
  cores use the one-step composition reading (``G |- x  or  G,phi |- x``).
* :func:`restrict_empty_attackers` -- drop pairs whose support can be
  attacked by an empty-support argument.
* :func:`restrict_consistent` -- keep only supports no subset of which
  derives a contrary of one of its own members.
* :func:`restrict_satisfiable` -- keep only classically satisfiable
  supports (rule names act as fresh atoms, rule literals are inert).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

from .formula import (
    ArgonautError,
    Bottom,
    ConfigurationError,
    Contrariness,
    Formula,
    Labeled,
    Not,
    RuleLit,
    RuleName,
    Top,
    render,
    truth_atoms,
)
from .report import PropertyReport

ATOM_CAP = 16


class AtomCapError(ArgonautError):
    """Raised when a classical query would need more than 16 atoms."""


# ---------------------------------------------------------------------------
# Rules


@dataclass(frozen=True)
class StrictRule:
    id: str
    body: tuple[Formula, ...]
    head: Formula

    def lit(self) -> RuleLit:
        return RuleLit(self.id, self.body, self.head, defeasible=False)


@dataclass(frozen=True)
class DefeasibleRule:
    id: str
    body: tuple[Formula, ...]
    head: Formula
    value: Optional[int] = None

    def lit(self) -> RuleLit:
        return RuleLit(self.id, self.body, self.head, defeasible=True)

    def name_formula(self) -> RuleName:
        return RuleName(self.id, self.body + (self.head,))


def premise_rule(f: Formula) -> RuleLit:
    """The empty-bodied rule that carries a premise into supports."""
    return RuleLit(f"prem:{render(f)}", (), f, defeasible=False)


# ---------------------------------------------------------------------------
# Classical valuation machinery

_FULLS: dict[int, int] = {}


def _full(n: int) -> int:
    out = _FULLS.get(n)
    if out is None:
        out = (1 << (1 << n)) - 1
        _FULLS[n] = out
    return out


@lru_cache(maxsize=None)
def _atom_column(j: int, n: int) -> int:
    out = 0
    for i in range(1 << n):
        if (i >> j) & 1:
            out |= 1 << i
    return out


@lru_cache(maxsize=None)
def _mask(f: Formula, order: tuple[str, ...]) -> int:
    """Bitmask of satisfying assignments of ``f`` over the atom order."""
    n = len(order)
    full = _full(n)
    if isinstance(f, Top) or isinstance(f, RuleLit):
        return full
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Labeled):
        return _mask(f.base, order)
    if isinstance(f, Not):
        return full & ~_mask(f.sub, order)
    from .formula import And, Atom, Implies, Or, rule_marker

    if isinstance(f, Atom):
        return _atom_column(order.index(f.name), n)
    if isinstance(f, RuleName):
        return _atom_column(order.index(rule_marker(f.rule_id)), n)
    if isinstance(f, And):
        return _mask(f.left, order) & _mask(f.right, order)
    if isinstance(f, Or):
        return _mask(f.left, order) | _mask(f.right, order)
    if isinstance(f, Implies):
        return (full & ~_mask(f.left, order)) | _mask(f.right, order)
    raise ConfigurationError(f"no truth value for {f!r}")


def _truth_atoms_of(formulas: Iterable[Formula]) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for f in formulas:
        out |= truth_atoms(f)
    return out


def _order_for(
    formulas: Iterable[Formula], hint: frozenset[str] = frozenset()
) -> tuple[str, ...]:
    needed = _truth_atoms_of(formulas)
    universe = needed | hint
    if len(universe) > ATOM_CAP:
        # fall back to the tight universe before giving up
        universe = needed
    if len(universe) > ATOM_CAP:
        raise AtomCapError(f"{len(universe)} atoms exceed the cap of {ATOM_CAP}")
    return tuple(sorted(universe))


def cl_entails(
    support: frozenset[Formula],
    conclusion: Formula,
    hint: frozenset[str] = frozenset(),
) -> bool:
    order = _order_for(tuple(support) + (conclusion,), hint)
    m = _full(len(order))
    for f in support:
        m &= _mask(f, order)
    return m & ~_mask(conclusion, order) == 0


def cl_satisfiable(formulas: frozenset[Formula], hint: frozenset[str] = frozenset()) -> bool:
    order = _order_for(formulas, hint)
    m = _full(len(order))
    for f in formulas:
        m &= _mask(f, order)
    return m != 0


# ---------------------------------------------------------------------------
# Core interface


class DeducibilityCore:
    """Common surface of all deducibility relations."""

    kind: str = "abstract"
    rule_based: bool = False
    axioms: tuple[Formula, ...] = ()

    def holds(self, support: frozenset[Formula], conclusion: Formula) -> bool:
        raise NotImplementedError

    def conclusions(
        self, premises: frozenset[Formula], queries: frozenset[Formula] = frozenset()
    ) -> Optional[frozenset[Formula]]:
        """Finite conclusion pool, or None when not finitely generable."""
        return None

    def extend_with_axiom(self, phi: Formula) -> "DeducibilityCore":
        raise NotImplementedError

    def arguments(
        self, premises: frozenset[Formula], queries: frozenset[Formula] = frozenset()
    ):
        """(support, conclusion, witness) triples for rule-based cores."""
        raise ConfigurationError(f"{self.kind} does not enumerate arguments")

    def primed(self, atom_hint: frozenset[str]) -> "DeducibilityCore":
        """Same relation, with a shared valuation universe for cache reuse."""
        return self


class CLCore(DeducibilityCore):
    """Classical propositional deducibility by exhaustive valuation."""

    kind = "cl"

    def __init__(self, hint: frozenset[str] = frozenset()):
        self.hint = hint

    def holds(self, support, conclusion):
        return cl_entails(frozenset(support), conclusion, self.hint)

    def extend_with_axiom(self, phi):
        return AxiomExtendedCore(self, phi)

    def primed(self, atom_hint):
        return CLCore(hint=frozenset(atom_hint))


class CLTopCore(DeducibilityCore):
    """Classical deducibility restricted to satisfiable supports."""

    kind = "cl-top"

    def __init__(self, hint: frozenset[str] = frozenset()):
        self.hint = hint

    def holds(self, support, conclusion):
        support = frozenset(support)
        return cl_satisfiable(support, self.hint) and cl_entails(
            support, conclusion, self.hint
        )

    def extend_with_axiom(self, phi):
        return AxiomExtendedCore(self, phi)

    def primed(self, atom_hint):
        return CLTopCore(hint=frozenset(atom_hint))


class MCSCore(DeducibilityCore):
    """Consequence over maximal classically-consistent subsets.

    ``universal=True`` requires every maximal consistent subset to entail
    the conclusion; ``universal=False`` asks for at least one.
    """

    def __init__(self, universal: bool, hint: frozenset[str] = frozenset()):
        self.universal = universal
        self.hint = hint
        self.kind = "mcs-cap" if universal else "mcs-cup"
        self._mcs_memo: dict[frozenset[Formula], tuple[frozenset[Formula], ...]] = {}

    def mcs_subsets(self, support: frozenset[Formula]) -> tuple[frozenset[Formula], ...]:
        hit = self._mcs_memo.get(support)
        if hit is not None:
            return hit
        members = sorted(support, key=render)
        consistent = [
            frozenset(c)
            for size in range(len(members) + 1)
            for c in itertools.combinations(members, size)
            if cl_satisfiable(frozenset(c), self.hint)
        ]
        maximal = tuple(
            c for c in consistent if not any(c < d for d in consistent)
        )
        self._mcs_memo[support] = maximal
        return maximal

    def holds(self, support, conclusion):
        support = frozenset(support)
        subsets = self.mcs_subsets(support)
        check = (cl_entails(c, conclusion, self.hint) for c in subsets)
        return all(check) if self.universal else any(check)

    def extend_with_axiom(self, phi):
        return AxiomExtendedCore(self, phi)

    def primed(self, atom_hint):
        return MCSCore(self.universal, hint=frozenset(atom_hint))


# ---------------------------------------------------------------------------
# Assumption-rule core


@dataclass(frozen=True)
class Derivation:
    """Witness of a rule derivation: exactly the parts it used."""

    assumptions: frozenset[Formula]
    rules: frozenset[str]


class ABARulesCore(DeducibilityCore):
    """Forward-chaining deducibility from assumptions over strict rules.

    ``tracked=True`` puts the rules used into supports (as rule literals),
    so supports live in the union of the language and the rule set and a
    pair holds only when the support lists exactly the used assumptions
    and rules.  ``tracked=False`` is the plain monotone closure: the
    support is a set of assumptions and the conclusion must be derivable
    from some subset of it.
    """

    rule_based = True

    def __init__(
        self,
        rules: Iterable[StrictRule],
        assumptions: Iterable[Formula],
        tracked: bool = False,
        axioms: Iterable[Formula] = (),
    ):
        self.rules = tuple(rules)
        self.assumptions = frozenset(assumptions)
        self.tracked = tracked
        self.axioms = tuple(axioms)
        self.kind = "aba-tracked" if tracked else "aba"
        for r in self.rules:
            if r.head in self.assumptions:
                raise ConfigurationError(
                    f"rule {r.id} concludes an assumption; the framework must be flat"
                )
        self._witness_memo: dict[frozenset[str], dict[Formula, frozenset[Derivation]]] = {}

    # -- witness computation ------------------------------------------------

    def _witnesses(
        self, usable_rule_ids: frozenset[str]
    ) -> dict[Formula, frozenset[Derivation]]:
        hit = self._witness_memo.get(usable_rule_ids)
        if hit is not None:
            return hit
        table: dict[Formula, set[Derivation]] = {}
        for a in self.assumptions:
            table.setdefault(a, set()).add(Derivation(frozenset((a,)), frozenset()))
        for phi in self.axioms:
            table.setdefault(phi, set()).add(Derivation(frozenset(), frozenset()))
        rules = [r for r in self.rules if r.id in usable_rule_ids]
        changed = True
        while changed:
            changed = False
            for r in rules:
                body = [b for b in r.body if not isinstance(b, Top)]
                if any(b not in table for b in body):
                    continue
                pools = [table[b] for b in body]
                for combo in itertools.product(*pools):
                    used_a = frozenset().union(*(w.assumptions for w in combo)) if combo else frozenset()
                    used_r = frozenset((r.id,)).union(*(w.rules for w in combo))
                    w = Derivation(used_a, used_r)
                    bucket = table.setdefault(r.head, set())
                    if w not in bucket:
                        bucket.add(w)
                        changed = True
        frozen = {k: frozenset(v) for k, v in table.items()}
        self._witness_memo[usable_rule_ids] = frozen
        return frozen

    def _all_rule_ids(self) -> frozenset[str]:
        return frozenset(r.id for r in self.rules)

    def derive(self, assumptions: frozenset[Formula], goal: Formula) -> Optional[Derivation]:
        """A witness derivation of ``goal`` from a subset of ``assumptions``."""
        table = self._witnesses(self._all_rule_ids())
        fits = [
            w for w in table.get(goal, ()) if w.assumptions <= frozenset(assumptions)
        ]
        if not fits:
            return None
        return min(
            fits,
            key=lambda w: (
                len(w.assumptions) + len(w.rules),
                sorted(map(render, w.assumptions)),
                sorted(w.rules),
            ),
        )

    # -- core surface ---------------------------------------------------------

    def _split_support(
        self, support: frozenset[Formula]
    ) -> Optional[tuple[frozenset[Formula], frozenset[str]]]:
        lits = {f for f in support if isinstance(f, RuleLit)}
        rest = frozenset(support) - lits
        if not rest <= self.assumptions:
            return None
        known = {r.id for r in self.rules}
        ids = set()
        for lit in lits:
            if lit.rule_id not in known:
                return None
            ids.add(lit.rule_id)
        return rest, frozenset(ids)

    def holds(self, support, conclusion):
        split = self._split_support(frozenset(support))
        if split is None:
            return False
        assum, rule_ids = split
        if self.tracked:
            table = self._witnesses(self._all_rule_ids())
            return any(
                w.assumptions == assum and w.rules == rule_ids
                for w in table.get(conclusion, ())
            )
        if rule_ids:
            return False
        table = self._witnesses(self._all_rule_ids())
        return any(w.assumptions <= assum for w in table.get(conclusion, ()))

    def conclusions(self, premises, queries=frozenset()):
        premises = frozenset(premises)
        if self.tracked:
            usable = frozenset(
                f.rule_id for f in premises if isinstance(f, RuleLit)
            ) & self._all_rule_ids()
        else:
            usable = self._all_rule_ids()
        table = self._witnesses(usable)
        avail = frozenset(f for f in premises if not isinstance(f, RuleLit))
        out = {
            goal
            for goal, ws in table.items()
            if any(w.assumptions <= avail for w in ws)
        }
        return frozenset(out) | (frozenset(queries) & frozenset(table))

    def arguments(self, premises, queries=frozenset()):
        """All (support, conclusion, witness) triples generable within
        ``premises``; the boolean is the truncation flag (never set here)."""
        premises = frozenset(premises)
        lits = {f.rule_id: f for f in premises if isinstance(f, RuleLit)}
        avail = frozenset(f for f in premises if not isinstance(f, RuleLit))
        usable = frozenset(lits) & self._all_rule_ids() if self.tracked else self._all_rule_ids()
        table = self._witnesses(usable)
        out = set()
        for goal, ws in table.items():
            for w in ws:
                if not w.assumptions <= avail:
                    continue
                if self.tracked:
                    support = w.assumptions | frozenset(lits[i] for i in w.rules)
                    out.add((support, goal, w))
                else:
                    # monotone closure: every superset of the witness works
                    rest = sorted(avail - w.assumptions, key=render)
                    for size in range(0, len(rest) + 1):
                        for add in itertools.combinations(rest, size):
                            out.add((w.assumptions | frozenset(add), goal, w))
        dedup: dict[tuple[frozenset[Formula], Formula], Derivation] = {}
        for support, goal, w in sorted(
            out,
            key=lambda e: (
                sorted(map(render, e[0])),
                render(e[1]),
                sorted(e[2].rules),
            ),
        ):
            dedup.setdefault((support, goal), w)
        return (
            frozenset((s, g, w) for (s, g), w in dedup.items()),
            False,
        )

    def extend_with_axiom(self, phi):
        if phi in self.axioms:
            return self
        return ABARulesCore(
            self.rules, self.assumptions, self.tracked, self.axioms + (phi,)
        )


def aba_derives(
    core: ABARulesCore, assumptions: frozenset[Formula], goal: Formula
) -> Optional[Derivation]:
    """Witness derivation of ``goal`` (used rules and assumptions), or None."""
    return core.derive(frozenset(assumptions), goal)


# ---------------------------------------------------------------------------
# Defeasible-rule core


@dataclass(frozen=True)
class TreeProfile:
    """What a deduction tree used: defeasible rules and their conclusions,
    tracked strict rules, and the premises at its leaves."""

    def_rules: frozenset[str]
    def_concs: frozenset[Formula]
    strict_rules: frozenset[str]
    premises: frozenset[Formula]

    def merge(self, other: "TreeProfile") -> "TreeProfile":
        return TreeProfile(
            self.def_rules | other.def_rules,
            self.def_concs | other.def_concs,
            self.strict_rules | other.strict_rules,
            self.premises | other.premises,
        )


_EMPTY_PROFILE = TreeProfile(frozenset(), frozenset(), frozenset(), frozenset())


@dataclass(frozen=True)
class DeduceEntry:
    support: frozenset[Formula]
    profile: TreeProfile


@dataclass(frozen=True)
class DeduceResult:
    entries: tuple[DeduceEntry, ...]
    truncated: bool


class ASPICCore(DeducibilityCore):
    """Deducibility via deduction trees over defeasible and strict rules.

    ``mode="dagger"`` treats strict rules as domain knowledge: they are
    tracked in supports.  ``mode="ddagger"`` generates strict steps from
    classical entailment over a bounded candidate pool (explicit strict
    rules, if any, still apply but are not tracked).

    Supports are sets over the enriched language: for every defeasible
    rule used, its rule literal and name; the conclusions of defeasible
    steps; the premise rules of used premises; and, in dagger mode, the
    used strict-rule literals.
    """

    rule_based = True

    def __init__(
        self,
        strict: Iterable[StrictRule],
        defeasible: Iterable[DefeasibleRule],
        premise_pool: Iterable[Formula] = (),
        mode: str = "ddagger",
        axioms: Iterable[Formula] = (),
        max_strict_arity: int = 2,
        depth: Optional[int] = None,
    ):
        if mode not in ("dagger", "ddagger"):
            raise ValueError(f"unknown mode {mode!r}")
        self.strict = tuple(strict)
        self.defeasible = tuple(defeasible)
        self.premise_pool = frozenset(premise_pool)
        self.mode = mode
        self.axioms = tuple(axioms)
        self.max_strict_arity = max_strict_arity
        self.depth = depth if depth is not None else len(self.defeasible) + len(self.strict) + 3
        self.kind = f"aspic-{mode}"
        self._profile_memo: dict[frozenset[Formula], tuple[dict, bool]] = {}

    # -- candidate pool -------------------------------------------------------

    def _pool(self, extra: frozenset[Formula]) -> tuple[Formula, ...]:
        pool: set[Formula] = set(self.premise_pool) | set(self.axioms) | set(extra)
        for r in self.defeasible:
            pool.update(b for b in r.body if not isinstance(b, Top))
            pool.add(r.head)
        for r in self.strict:
            pool.update(b for b in r.body if not isinstance(b, Top))
            pool.add(r.head)
        return tuple(sorted(pool, key=render))

    def _profiles(self, extra: frozenset[Formula]) -> tuple[dict[Formula, frozenset[TreeProfile]], bool]:
        hit = self._profile_memo.get(extra)
        if hit is not None:
            return hit
        pool = self._pool(extra)
        hint = _truth_atoms_of(pool)
        table: dict[Formula, set[TreeProfile]] = {f: set() for f in pool}
        for f in self.premise_pool:
            table[f].add(TreeProfile(frozenset(), frozenset(), frozenset(), frozenset((f,))))
        for f in self.axioms:
            table[f].add(_EMPTY_PROFILE)

        cl_ok: dict[tuple[tuple[Formula, ...], Formula], bool] = {}

        def strict_cl_step(children: tuple[Formula, ...], goal: Formula) -> bool:
            key = (children, goal)
            hit = cl_ok.get(key)
            if hit is None:
                try:
                    hit = cl_entails(frozenset(children), goal, hint)
                except AtomCapError:
                    hit = False
                cl_ok[key] = hit
            return hit

        def combos(bodies: list[Formula]) -> Iterable[TreeProfile]:
            pools = [table.get(b, ()) for b in bodies]
            if any(not p for p in pools):
                return
            for combo in itertools.product(*pools):
                prof = _EMPTY_PROFILE
                for w in combo:
                    prof = prof.merge(w)
                yield prof

        truncated = False
        for _ in range(self.depth):
            changed = False
            for r in self.defeasible:
                body = [b for b in r.body if not isinstance(b, Top)]
                if r.head not in table:
                    continue
                for prof in list(combos(body)):
                    w = TreeProfile(
                        prof.def_rules | {r.id},
                        prof.def_concs | {r.head},
                        prof.strict_rules,
                        prof.premises,
                    )
                    if w not in table[r.head]:
                        table[r.head].add(w)
                        changed = True
            for r in self.strict:
                body = [b for b in r.body if not isinstance(b, Top)]
                if r.head not in table:
                    continue
                for prof in list(combos(body)):
                    if self.mode == "dagger":
                        prof = TreeProfile(
                            prof.def_rules,
                            prof.def_concs,
                            prof.strict_rules | {r.id},
                            prof.premises,
                        )
                    if prof not in table[r.head]:
                        table[r.head].add(prof)
                        changed = True
            if self.mode == "ddagger":
                for goal in pool:
                    for size in range(0, self.max_strict_arity + 1):
                        for children in itertools.combinations(pool, size):
                            if goal in children:
                                continue
                            if not strict_cl_step(children, goal):
                                continue
                            for prof in list(combos(list(children))):
                                if prof not in table[goal]:
                                    table[goal].add(prof)
                                    changed = True
            if not changed:
                break
        else:
            truncated = changed
        frozen = {k: frozenset(v) for k, v in table.items() if v}
        self._profile_memo[extra] = (frozen, truncated)
        return frozen, truncated

    # -- supports -------------------------------------------------------------

    def _strict_by_id(self) -> dict[str, StrictRule]:
        return {r.id: r for r in self.strict}

    def _def_by_id(self) -> dict[str, DefeasibleRule]:
        return {r.id: r for r in self.defeasible}

    def profile_support(self, prof: TreeProfile) -> frozenset[Formula]:
        defs = self._def_by_id()
        out: set[Formula] = set()
        for rid in prof.def_rules:
            rule = defs[rid]
            out.add(rule.lit())
            out.add(rule.name_formula())
        out |= prof.def_concs
        for f in prof.premises:
            out.add(premise_rule(f))
        if self.mode == "dagger":
            stricts = self._strict_by_id()
            for rid in prof.strict_rules:
                out.add(stricts[rid].lit())
        return frozenset(out)

    def deduce(self, goal: Formula) -> DeduceResult:
        table, truncated = self._profiles(frozenset((goal,)))
        entries = []
        seen = set()
        for prof in sorted(
            table.get(goal, ()),
            key=lambda p: (sorted(p.def_rules), sorted(map(render, p.def_concs))),
        ):
            support = self.profile_support(prof)
            if support in seen:
                continue
            seen.add(support)
            entries.append(DeduceEntry(support, prof))
        return DeduceResult(tuple(entries), truncated)

    # -- core surface -----------------------------------------------------------

    def holds(self, support, conclusion):
        support = frozenset(support)
        table, _ = self._profiles(frozenset((conclusion,)))
        return any(
            self.profile_support(p) == support for p in table.get(conclusion, ())
        )

    def conclusions(self, premises, queries=frozenset()):
        table, _ = self._profiles(frozenset(queries))
        premises = frozenset(premises)
        out = {
            goal
            for goal, profs in table.items()
            if any(self.profile_support(p) <= premises for p in profs)
        }
        return frozenset(out)

    def arguments(
        self, premises: frozenset[Formula], queries: frozenset[Formula] = frozenset()
    ) -> tuple[frozenset[tuple[frozenset[Formula], Formula, TreeProfile]], bool]:
        table, truncated = self._profiles(frozenset(queries))
        premises = frozenset(premises)
        out = set()
        seen = set()
        for goal, profs in table.items():
            for p in profs:
                support = self.profile_support(p)
                if support <= premises and (support, goal) not in seen:
                    seen.add((support, goal))
                    out.add((support, goal, p))
        return frozenset(out), truncated

    def setting_premises(self) -> frozenset[Formula]:
        """The premise set the representation generates arguments over."""
        out: set[Formula] = set()
        for r in self.defeasible:
            out.add(r.lit())
            out.add(r.name_formula())
            out.add(r.head)
        for f in self.premise_pool:
            out.add(premise_rule(f))
        if self.mode == "dagger":
            for r in self.strict:
                out.add(r.lit())
        return frozenset(out)

    def extend_with_axiom(self, phi):
        if phi in self.axioms:
            return self
        return ASPICCore(
            self.strict,
            self.defeasible,
            self.premise_pool,
            self.mode,
            self.axioms + (phi,),
            self.max_strict_arity,
            self.depth,
        )


def aspic_deduce(core: ASPICCore, goal: Formula) -> DeduceResult:
    """Enumerate deduction trees for ``goal`` as (support, profile) entries."""
    return core.deduce(goal)


# ---------------------------------------------------------------------------
# Transforms


class AxiomExtendedCore(DeducibilityCore):
    """One-step composition reading of adding a premise-free axiom."""

    def __init__(self, base: DeducibilityCore, phi: Formula):
        self.base = base
        self.phi = phi
        self.kind = f"{base.kind}+axiom"
        self.rule_based = base.rule_based
        self.axioms = base.axioms + (phi,)

    def holds(self, support, conclusion):
        support = frozenset(support)
        return self.base.holds(support, conclusion) or self.base.holds(
            support | {self.phi}, conclusion
        )

    def conclusions(self, premises, queries=frozenset()):
        return None

    def extend_with_axiom(self, phi):
        if phi == self.phi:
            return self
        return AxiomExtendedCore(self, phi)

    def primed(self, atom_hint):
        return AxiomExtendedCore(self.base.primed(atom_hint), self.phi)


def extend_with_axiom(core: DeducibilityCore, phi: Formula) -> DeducibilityCore:
    return core.extend_with_axiom(phi)


class EmptyAttackerRestrictedCore(DeducibilityCore):
    """Drops pairs whose support is attackable from the empty support."""

    def __init__(self, base, contrariness: Contrariness, points):
        self.base = base
        self.contrariness = contrariness
        self.points = points
        self.kind = f"{base.kind}-noempty"
        self.rule_based = base.rule_based
        self.axioms = base.axioms
        self._memo: dict[Formula, bool] = {}

    def _empty_attackable(self, point: Formula) -> bool:
        hit = self._memo.get(point)
        if hit is not None:
            return hit
        finite = self.contrariness.finite_contraries(point)
        if finite is not None:
            hit = any(self.base.holds(frozenset(), delta) for delta in finite)
        elif self.base.rule_based:
            closure = self.base.conclusions(frozenset()) or frozenset()
            hit = any(
                self.contrariness.is_contrary(delta, point) for delta in closure
            )
        else:
            # entailment-style contraries: an empty-support contrary exists
            # exactly when the canonical one is derivable from nothing
            hit = self.base.holds(frozenset(), Not(point))
        self._memo[point] = hit
        return hit

    def _support_ok(self, support: frozenset[Formula]) -> bool:
        return not any(
            self._empty_attackable(p) for p in self.points.points(support)
        )

    def holds(self, support, conclusion):
        support = frozenset(support)
        return self.base.holds(support, conclusion) and self._support_ok(support)

    def conclusions(self, premises, queries=frozenset()):
        return self.base.conclusions(premises, queries)

    def arguments(self, premises, queries=frozenset()):
        inner, truncated = self.base.arguments(premises, queries)
        return frozenset(e for e in inner if self._support_ok(e[0])), truncated

    def setting_premises(self):
        return self.base.setting_premises()

    def extend_with_axiom(self, phi):
        return EmptyAttackerRestrictedCore(
            self.base.extend_with_axiom(phi), self.contrariness, self.points
        )

    def primed(self, atom_hint):
        out = EmptyAttackerRestrictedCore(
            self.base.primed(atom_hint), self.contrariness, self.points
        )
        return out


def restrict_empty_attackers(core, contrariness, points) -> DeducibilityCore:
    return EmptyAttackerRestrictedCore(core, contrariness, points)


class ConsistencyRestrictedCore(DeducibilityCore):
    """Keeps only supports no subset of which derives a contrary of one of
    its own members (the consistency-restricted relation)."""

    def __init__(self, base, contrariness: Contrariness):
        self.base = base
        self.contrariness = contrariness
        self.kind = f"{base.kind}-con"
        self.rule_based = base.rule_based
        self.axioms = base.axioms
        self._memo: dict[frozenset[Formula], bool] = {}

    def _derives_contrary(self, support: frozenset[Formula], member: Formula) -> bool:
        finite = self.contrariness.finite_contraries(member)
        if finite is not None:
            return any(self.base.holds(support, psi) for psi in finite)
        canonical = self.contrariness.canonical_contrary(member)
        return canonical is not None and self.base.holds(support, canonical)

    def consistent(self, support: frozenset[Formula]) -> bool:
        support = frozenset(support)
        hit = self._memo.get(support)
        if hit is not None:
            return hit
        members = sorted(support, key=render)
        hit = True
        for size in range(1, len(members) + 1):
            for sub in itertools.combinations(members, size):
                subset = frozenset(sub)
                for gamma in subset:
                    if self._derives_contrary(subset - {gamma}, gamma):
                        hit = False
                        break
                if not hit:
                    break
            if not hit:
                break
        self._memo[support] = hit
        return hit

    def holds(self, support, conclusion):
        support = frozenset(support)
        return self.consistent(support) and self.base.holds(support, conclusion)

    def conclusions(self, premises, queries=frozenset()):
        return self.base.conclusions(premises, queries)

    def arguments(self, premises, queries=frozenset()):
        inner, truncated = self.base.arguments(premises, queries)
        return frozenset(e for e in inner if self.consistent(e[0])), truncated

    def setting_premises(self):
        return self.base.setting_premises()

    def extend_with_axiom(self, phi):
        return ConsistencyRestrictedCore(
            self.base.extend_with_axiom(phi), self.contrariness
        )

    def primed(self, atom_hint):
        return ConsistencyRestrictedCore(self.base.primed(atom_hint), self.contrariness)


def restrict_consistent(core, contrariness: Contrariness) -> DeducibilityCore:
    return ConsistencyRestrictedCore(core, contrariness)


class SatisfiableSupportCore(DeducibilityCore):
    """Keeps only classically satisfiable supports.

    Rule names are read as fresh atoms and rule literals as inert, so for
    rule-based supports this checks the plain-formula part.
    """

    def __init__(self, base, hint: frozenset[str] = frozenset()):
        self.base = base
        self.hint = hint
        self.kind = f"{base.kind}-sat"
        self.rule_based = base.rule_based
        self.axioms = base.axioms
        self._memo: dict[frozenset[Formula], bool] = {}

    def _sat(self, support: frozenset[Formula]) -> bool:
        hit = self._memo.get(support)
        if hit is None:
            hit = cl_satisfiable(support, self.hint)
            self._memo[support] = hit
        return hit

    def holds(self, support, conclusion):
        support = frozenset(support)
        return self._sat(support) and self.base.holds(support, conclusion)

    def conclusions(self, premises, queries=frozenset()):
        return self.base.conclusions(premises, queries)

    def arguments(self, premises, queries=frozenset()):
        inner, truncated = self.base.arguments(premises, queries)
        return frozenset(e for e in inner if self._sat(e[0])), truncated

    def setting_premises(self):
        return self.base.setting_premises()

    def extend_with_axiom(self, phi):
        return SatisfiableSupportCore(self.base.extend_with_axiom(phi), self.hint)

    def primed(self, atom_hint):
        return SatisfiableSupportCore(
            self.base.primed(atom_hint), frozenset(atom_hint)
        )


def restrict_satisfiable(core) -> DeducibilityCore:
    return SatisfiableSupportCore(core)


# ---------------------------------------------------------------------------
# Cut check


def check_cut(
    core: DeducibilityCore,
    universe: Iterable[Formula],
    max_support: int = 2,
) -> PropertyReport:
    """Exhaustively search bounded supports for a violation of composition:
    if ``G |- phi`` and ``D |-(+phi) x`` then ``G u D |- x``."""
    pool = sorted(set(universe), key=render)
    supports = [
        frozenset(c)
        for size in range(0, max_support + 1)
        for c in itertools.combinations(pool, size)
    ]
    trials = 0
    for phi in pool:
        extended = core.extend_with_axiom(phi)
        gammas = [g for g in supports if core.holds(g, phi)]
        if not gammas:
            continue
        for delta in supports:
            for x in pool:
                if not extended.holds(delta, x):
                    continue
                for gamma in gammas:
                    trials += 1
                    if not core.holds(gamma | delta, x):
                        return PropertyReport(
                            property="cut",
                            verdict="fail",
                            trials=trials,
                            counterexample={
                                "gamma": sorted(map(render, gamma)),
                                "delta": sorted(map(render, delta)),
                                "phi": render(phi),
                                "conclusion": render(x),
                            },
                            bounds={
                                "universe": sorted(map(render, pool)),
                                "max_support": max_support,
                            },
                        )
    return PropertyReport(
        property="cut",
        verdict="pass",
        trials=trials,
        bounds={"universe": sorted(map(render, pool)), "max_support": max_support},
    )
