"""Formula language, syntactic relevance, contrariness and attack points.

The formula language is propositional logic extended with three kinds of
bookkeeping elements that let rule-based knowledge appear inside argument
supports: rule-name atoms ``n(r)``, rule literals (a whole inference rule
used as a premise-language element), and, for the prioritized layer,
``(+ ...)`` combination terms and value labels ``f @ v``.

Two different notions of "atoms of a formula" coexist on purpose:

* :func:`atoms` is the *syntactic relevance* notion.  Rule names and rule
  literals contribute the atoms of every formula occurring in the rule plus
  a synthetic identifier unique to the rule, so that rules are never
  atom-disjoint from the material they mention.
* :func:`truth_atoms` is the *valuation* notion used by the classical
  cores.  There a rule name behaves like a fresh propositional atom and a
  rule literal is inert (always true).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional


class ArgonautError(Exception):
    """Base class for all engine errors."""


class ConfigurationError(ArgonautError):
    """A setting component was asked something it cannot decide."""


class Formula:
    """Base class of all formula constructors.

    Formulas are immutable and compared structurally.  The operators
    ``~``, ``&``, ``|`` and ``>>`` build Not/And/Or/Implies, which keeps
    tests and demo scripts readable.
    """

    __slots__ = ()

    def __invert__(self) -> "Formula":
        return Not(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __repr__(self) -> str:
        return render(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str


@dataclass(frozen=True, repr=False)
class Top(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class RuleName(Formula):
    """The name atom of a defeasible rule, written ``n(<rule id>)``.

    ``content`` carries the rule's body and head so that syntactic
    relevance sees the rule's subject matter through its name.
    """

    rule_id: str
    content: tuple[Formula, ...] = ()


@dataclass(frozen=True, repr=False)
class RuleLit(Formula):
    """A whole rule used as a premise-language element.

    Needed by the representations in which supports live in the union of
    the formula language and the rule set.
    """

    rule_id: str
    body: tuple[Formula, ...]
    head: Formula
    defeasible: bool = False


@dataclass(frozen=True, repr=False)
class OPlus(Formula):
    """Combination term over a set of formulas, kept in canonical order.

    Only generated internally (as attack points of the reverse-defeat
    machinery); never part of user knowledge bases.
    """

    members: tuple[Formula, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("OPlus needs at least one member")
        canon = tuple(sorted(set(self.members), key=render))
        object.__setattr__(self, "members", canon)


@dataclass(frozen=True, repr=False)
class Labeled(Formula):
    """A formula carrying a priority value.  Labels never nest."""

    base: Formula
    value: int

    def __post_init__(self) -> None:
        if isinstance(self.base, Labeled):
            raise ValueError("Labeled formulas do not nest")


TOP = Top()
BOT = Bottom()


def rule_marker(rule_id: str) -> str:
    """Synthetic relevance identifier of a rule; cannot clash with user atoms."""
    return f"rule:{rule_id}"


@lru_cache(maxsize=None)
def atoms(f: Formula) -> frozenset[str]:
    """Atoms occurring in ``f``, in the syntactic-relevance sense."""
    match f:
        case Atom(name):
            return frozenset((name,))
        case Top() | Bottom():
            return frozenset()
        case Not(sub):
            return atoms(sub)
        case And(l, r) | Or(l, r) | Implies(l, r):
            return atoms(l) | atoms(r)
        case RuleName(rule_id, content):
            out = frozenset((rule_marker(rule_id),))
            for g in content:
                out |= atoms(g)
            return out
        case RuleLit(rule_id, body, head, _):
            out = frozenset((rule_marker(rule_id),))
            for g in body:
                out |= atoms(g)
            return out | atoms(head)
        case OPlus(members):
            out = frozenset()
            for g in members:
                out |= atoms(g)
            return out
        case Labeled(base, _):
            return atoms(base)
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(formulas: Iterable[Formula]) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for f in formulas:
        out |= atoms(f)
    return out


def disjoint(s1: Iterable[Formula], s2: Iterable[Formula]) -> bool:
    """Syntactic disjointness: no shared atom between the two sets."""
    return not (atoms_of(s1) & atoms_of(s2))


@lru_cache(maxsize=None)
def truth_atoms(f: Formula) -> frozenset[str]:
    """Atoms relevant for classical valuation of ``f``.

    Rule names act as fresh atoms, rule literals have no truth content.
    """
    match f:
        case Atom(name):
            return frozenset((name,))
        case Top() | Bottom() | RuleLit():
            return frozenset()
        case Not(sub):
            return truth_atoms(sub)
        case And(l, r) | Or(l, r) | Implies(l, r):
            return truth_atoms(l) | truth_atoms(r)
        case RuleName(rule_id, _):
            return frozenset((rule_marker(rule_id),))
        case Labeled(base, _):
            return truth_atoms(base)
        case OPlus():
            raise ConfigurationError("combination terms have no truth value")
    raise TypeError(f"not a formula: {f!r}")


_PREC = {"->": 1, "|": 2, "&": 3}


@lru_cache(maxsize=None)
def render(f: Formula) -> str:
    """Canonical text form; binary connectives are always parenthesized."""
    match f:
        case Atom(name):
            return name
        case Top():
            return "top"
        case Bottom():
            return "bot"
        case Not(sub):
            return "~" + render(sub)
        case And(l, r):
            return f"({render(l)} & {render(r)})"
        case Or(l, r):
            return f"({render(l)} | {render(r)})"
        case Implies(l, r):
            return f"({render(l)} -> {render(r)})"
        case RuleName(rule_id, _):
            return f"n({rule_id})"
        case RuleLit(rule_id, _, _, _):
            return f"rule({rule_id})"
        case OPlus(members):
            return "(+ " + " ".join(render(m) for m in members) + ")"
        case Labeled(base, value):
            return f"{render(base)} @ {value}"
    raise TypeError(f"not a formula: {f!r}")


def strip_label(f: Formula) -> Formula:
    return f.base if isinstance(f, Labeled) else f


def conjoin(formulas: Iterable[Formula]) -> Formula:
    """Left-associated conjunction of the formulas in canonical order."""
    ordered = sorted(set(formulas), key=render)
    if not ordered:
        return TOP
    out = ordered[0]
    for g in ordered[1:]:
        out = And(out, g)
    return out


# ---------------------------------------------------------------------------
# Contrariness


class Contrariness:
    """Decides membership in the set of contraries of a formula.

    ``neg``            contrary set of f is exactly {~f}
    ``neg-canonical``  contrary of ~g is {g}; contrary of any other f is {~f}
    ``entail-neg``     predicate style: c is contrary of f iff c entails ~f
    ``equiv-neg``      predicate style: c entails ~f and ~f entails c
    ``explicit``       a finite table; formulas absent from it have no contraries

    The entailment-style kinds and combination-term targets need a
    deducibility core to decide queries; ``core`` holds it.
    """

    KINDS = ("neg", "neg-canonical", "entail-neg", "equiv-neg", "explicit")

    def __init__(self, kind: str, core=None, table: Optional[dict] = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown contrariness kind {kind!r}")
        self.kind = kind
        self.core = core
        self.table = {k: frozenset(v) for k, v in (table or {}).items()}
        self._memo: dict[tuple[Formula, Formula], bool] = {}

    def with_core(self, core) -> "Contrariness":
        out = Contrariness(self.kind, core=core, table=self.table)
        return out

    def canonical_contrary(self, of: Formula) -> Optional[Formula]:
        """A representative contrary, when one exists syntactically."""
        if self.kind == "explicit":
            cands = sorted(self.table.get(of, ()), key=render)
            return cands[0] if cands else None
        if self.kind == "neg-canonical" and isinstance(of, Not):
            return of.sub
        return Not(of)

    def finite_contraries(self, of: Formula) -> Optional[frozenset[Formula]]:
        """The full contrary set when it is finite, else None."""
        if self.kind == "explicit":
            return self.table.get(of, frozenset())
        if self.kind in ("neg", "neg-canonical"):
            c = self.canonical_contrary(of)
            return frozenset((c,)) if c is not None else frozenset()
        return None

    def is_contrary(self, candidate: Formula, of: Formula) -> bool:
        key = (candidate, of)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._decide(candidate, of)
            self._memo[key] = hit
        return hit

    def _decide(self, candidate: Formula, of: Formula) -> bool:
        if isinstance(of, OPlus):
            # candidate is in conflict with a combination term iff the term's
            # members derive one of the candidate's own contraries.
            if self.core is None:
                raise ConfigurationError(
                    "combination-term contrariness needs a deducibility core"
                )
            members = frozenset(of.members)
            finite = self.finite_contraries(candidate)
            if finite is None:
                raise ConfigurationError(
                    "combination-term targets need an enumerable contrary set"
                )
            return any(self.core.holds(members, psi) for psi in finite)
        if self.kind == "neg":
            return candidate == Not(of)
        if self.kind == "neg-canonical":
            if isinstance(of, Not):
                return candidate == of.sub
            return candidate == Not(of)
        if self.kind == "explicit":
            return candidate in self.table.get(of, frozenset())
        if self.core is None:
            raise ConfigurationError(
                f"{self.kind} contrariness needs a deducibility core"
            )
        neg = Not(of)
        if self.kind == "entail-neg":
            return self.core.holds(frozenset((candidate,)), neg)
        # equiv-neg
        return self.core.holds(frozenset((candidate,)), neg) and self.core.holds(
            frozenset((neg,)), candidate
        )


def is_contrary(candidate: Formula, of: Formula, spec: Contrariness) -> bool:
    return spec.is_contrary(candidate, of)


# ---------------------------------------------------------------------------
# Attack points


@dataclass(frozen=True)
class AttackPoints:
    """Maps a support set to the formulas in which it can be attacked.

    ``id``    the support itself
    ``conj``  conjunctions of all nonempty subsets, in canonical order

    The empty support has no attack points, so empty-support arguments are
    unattackable by construction.
    """

    kind: str = "id"

    def __post_init__(self) -> None:
        if self.kind not in ("id", "conj"):
            raise ValueError(f"unknown attack-point kind {self.kind!r}")

    @property
    def pointed(self) -> bool:
        return self.kind == "id"

    def points(self, support: frozenset[Formula]) -> frozenset[Formula]:
        if not support:
            return frozenset()
        if self.kind == "id":
            return frozenset(support)
        out = set()
        members = sorted(support, key=render)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                out.add(conjoin(sub))
        return frozenset(out)

    def points_with_members(
        self, support: frozenset[Formula]
    ) -> tuple[tuple[Formula, frozenset[Formula]], ...]:
        """Each attack point together with the support members it came from.

        The member sets drive priority lookup for compound points.
        """
        if not support:
            return ()
        if self.kind == "id":
            return tuple((f, frozenset((f,))) for f in sorted(support, key=render))
        out = []
        members = sorted(support, key=render)
        for size in range(1, len(members) + 1):
            for sub in combinations(members, size):
                out.append((conjoin(sub), frozenset(sub)))
        return tuple(out)


def attack_points(support: frozenset[Formula], spec: AttackPoints) -> frozenset[Formula]:
    return spec.points(frozenset(support))
