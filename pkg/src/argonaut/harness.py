"""Executable postulate checks, consistency machinery, and random inputs.

Every check returns a :class:`~argonaut.report.PropertyReport`.  A pass is
always relative to the recorded bounds (supports searched, pools used);
failing reports carry a counterexample minimized by greedy premise
removal and enough data to replay the verdict.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .cores import (
    ABARulesCore,
    ASPICCore,
    CLCore,
    DeducibilityCore,
    DefeasibleRule,
    StrictRule,
    restrict_consistent,
)
from .engine import AttackGraph, Setting, build_graph
from .formula import (
    And,
    Atom,
    AttackPoints,
    Contrariness,
    Formula,
    Implies,
    Not,
    Or,
    Top,
    atoms_of,
    disjoint,
    render,
)
from .report import PropertyReport
from .semantics import consequences, entails_in_graph, extension_families, grounded

# ---------------------------------------------------------------------------
# Random generation


@dataclass
class KBGenerator:
    """Deterministic random knowledge bases, formulas and graphs."""

    atom_pool: tuple[str, ...] = ("a", "b", "c", "d")
    premise_count: tuple[int, int] = (2, 4)
    depth: int = 2
    rule_count: tuple[int, int] = (1, 3)
    value_range: tuple[int, int] = (0, 3)
    seed: int = 0

    def rng(self, offset: int = 0) -> random.Random:
        return random.Random(self.seed * 1_000_003 + offset)

    def formula(
        self,
        rng: random.Random,
        atoms: Optional[Sequence[str]] = None,
        depth: Optional[int] = None,
    ) -> Formula:
        """Random formula, weighted toward literals and binary connectives."""
        atoms = list(atoms if atoms is not None else self.atom_pool)
        depth = self.depth if depth is None else depth
        roll = rng.random()
        if depth <= 0 or roll < 0.45:
            atom = Atom(rng.choice(atoms))
            return Not(atom) if rng.random() < 0.4 else atom
        if roll < 0.55:
            return Not(self.formula(rng, atoms, depth - 1))
        ctor = rng.choice((And, Or, Implies))
        return ctor(
            self.formula(rng, atoms, depth - 1), self.formula(rng, atoms, depth - 1)
        )

    def premises(
        self, rng: random.Random, atoms: Optional[Sequence[str]] = None
    ) -> frozenset[Formula]:
        count = rng.randint(*self.premise_count)
        out: set[Formula] = set()
        for _ in range(count * 3):
            if len(out) >= count:
                break
            out.add(self.formula(rng, atoms))
        return frozenset(out)

    def aba_core(
        self,
        rng: random.Random,
        atoms: Optional[Sequence[str]] = None,
        tracked: bool = False,
        rule_prefix: str = "r",
    ) -> ABARulesCore:
        """Flat assumption framework with negation-shaped contraries."""
        atoms = list(atoms if atoms is not None else self.atom_pool)
        k = max(1, min(len(atoms) - 1, rng.randint(1, max(1, len(atoms) - 1))))
        assumption_atoms = rng.sample(atoms, k)
        derived_atoms = [a for a in atoms if a not in assumption_atoms]
        assumptions = frozenset(Atom(a) for a in assumption_atoms)
        heads = [Not(Atom(a)) for a in assumption_atoms] + [Atom(a) for a in derived_atoms]
        body_pool = [Atom(a) for a in atoms]
        rules = []
        for i in range(rng.randint(*self.rule_count)):
            head = rng.choice(heads)
            body = tuple(
                rng.sample(body_pool, rng.randint(1, min(2, len(body_pool))))
            )
            if head in body:
                continue
            rules.append(StrictRule(f"{rule_prefix}{i}", body, head))
        return ABARulesCore(rules, assumptions, tracked=tracked)

    def aspic_core(
        self,
        rng: random.Random,
        atoms: Optional[Sequence[str]] = None,
        mode: str = "ddagger",
        rule_prefix: str = "n",
    ) -> ASPICCore:
        atoms = list(atoms if atoms is not None else self.atom_pool)
        literals = [Atom(a) for a in atoms] + [Not(Atom(a)) for a in atoms]
        defeasible = []
        for i in range(rng.randint(*self.rule_count)):
            head = rng.choice(literals)
            if rng.random() < 0.4:
                body: tuple[Formula, ...] = (Top(),)
            else:
                body = tuple(rng.sample(literals, rng.randint(1, 2)))
            if head in body:
                continue
            defeasible.append(DefeasibleRule(f"{rule_prefix}{i}", body, head))
        strict: list[StrictRule] = []
        if mode == "dagger":
            for i in range(rng.randint(0, 2)):
                head = rng.choice(literals)
                body = tuple(rng.sample(literals, rng.randint(1, 2)))
                if head in body:
                    continue
                strict.append(StrictRule(f"s{rule_prefix}{i}", body, head))
        premise_pool = frozenset(rng.sample(literals, rng.randint(0, 2)))
        return ASPICCore(strict, defeasible, premise_pool, mode=mode)

    def abstract_graph(
        self, rng: random.Random, max_nodes: int = 18
    ) -> tuple[int, frozenset[tuple[int, int]]]:
        n = rng.randint(1, max_nodes)
        density = rng.choice((0.08, 0.15, 0.3, 0.5))
        edges = frozenset(
            (a, b)
            for a in range(n)
            for b in range(n)
            if rng.random() < density
        )
        return n, edges


def literal_pool(atoms: Iterable[str]) -> tuple[Formula, ...]:
    out: list[Formula] = []
    for a in atoms:
        out.append(Atom(a))
        out.append(Not(Atom(a)))
    return tuple(out)


def formula_pool(atoms: Sequence[str], include_contradictions: bool = True) -> tuple[Formula, ...]:
    """Small deterministic pool: literals, pairwise binaries, contradictions."""
    base = [Atom(a) for a in atoms]
    out: list[Formula] = []
    out.extend(base)
    out.extend(Not(b) for b in base)
    for x, y in itertools.combinations(base, 2):
        out.extend((And(x, y), Or(x, y), Implies(x, y)))
    if include_contradictions:
        out.extend(And(b, Not(b)) for b in base)
    return tuple(dict.fromkeys(out))


def bounded_universe(atoms: Sequence[str], depth: int = 2) -> tuple[Formula, ...]:
    """All formulas over the atoms up to the connective depth."""
    from .formula import BOT, TOP

    level: list[Formula] = [Atom(a) for a in atoms] + [TOP, BOT]
    seen = list(level)
    for _ in range(depth):
        new: list[Formula] = []
        new.extend(Not(f) for f in seen)
        for x in seen:
            for y in seen:
                new.extend((And(x, y), Or(x, y), Implies(x, y)))
        seen = list(dict.fromkeys(seen + new))
    return tuple(seen)


# ---------------------------------------------------------------------------
# Consistency machinery


def af_inconsistent(setting: Setting, theta: frozenset[Formula]) -> bool:
    """Some subset derives a contrary of one of its own members."""
    members = sorted(theta, key=render)
    contr = setting.contrariness
    core = setting.core
    for size in range(1, len(members) + 1):
        for sub in itertools.combinations(members, size):
            subset = frozenset(sub)
            for gamma in subset:
                finite = contr.finite_contraries(gamma)
                if finite is not None:
                    if any(core.holds(subset - {gamma}, psi) for psi in finite):
                        return True
                else:
                    canonical = contr.canonical_contrary(gamma)
                    if canonical is not None and core.holds(subset - {gamma}, canonical):
                        return True
    return False


def mcs(setting: Setting, premises: frozenset[Formula], cap: int = 12) -> frozenset[frozenset[Formula]]:
    """All maximal consistent subsets of the premise set."""
    premises = frozenset(premises)
    if len(premises) > cap:
        raise ValueError(f"{len(premises)} premises exceed the cap of {cap}")
    members = sorted(premises, key=render)
    consistent = [
        frozenset(sub)
        for size in range(len(members) + 1)
        for sub in itertools.combinations(members, size)
        if not af_inconsistent(setting, frozenset(sub))
    ]
    return frozenset(c for c in consistent if not any(c < d for d in consistent))


# ---------------------------------------------------------------------------
# Minimization


def minimize_set(
    violates: Callable[[frozenset[Formula]], bool], start: frozenset[Formula]
) -> frozenset[Formula]:
    """Greedy removal keeping the violation alive."""
    current = frozenset(start)
    for f in sorted(start, key=render):
        trimmed = current - {f}
        if trimmed != current and violates(trimmed):
            current = trimmed
    return current


# ---------------------------------------------------------------------------
# Postulate checks


def check_non_interference(
    setting: Setting,
    s1: frozenset[Formula],
    s2: frozenset[Formula],
    sem: str,
    query_pool: Iterable[Formula],
    seed: Optional[int] = None,
    cap: int = 12,
) -> PropertyReport:
    """Consequences over s1 must not change when the disjoint s2 is added."""
    s1, s2 = frozenset(s1), frozenset(s2)
    pool = tuple(dict.fromkeys(query_pool))
    if not disjoint(set(s1) | set(pool), s2):
        raise ValueError("query pool and s1 must be atom-disjoint from s2")
    queries = frozenset(pool)

    def mismatches(added: frozenset[Formula]) -> tuple[Formula, ...]:
        g_small = build_graph(setting, s1, queries, cap)
        g_big = build_graph(setting, s1 | added, queries, cap)
        c_small = consequences(g_small, sem, pool)
        c_big = consequences(g_big, sem, pool)
        return tuple(f for f in pool if (f in c_small) != (f in c_big))

    bad = mismatches(s2)
    bounds = {
        "sem": sem,
        "s1": sorted(map(render, s1)),
        "s2": sorted(map(render, s2)),
        "pool": sorted(map(render, pool)),
    }
    if not bad:
        return PropertyReport(
            "non-interference", "pass", trials=len(pool), seed=seed, bounds=bounds
        )
    small_s2 = minimize_set(lambda added: bool(mismatches(added)), s2)
    witness = mismatches(small_s2)[0]
    return PropertyReport(
        "non-interference",
        "fail",
        trials=len(pool),
        seed=seed,
        bounds=bounds,
        counterexample={
            "s1": sorted(map(render, s1)),
            "s2": sorted(map(render, small_s2)),
            "query": render(witness),
            "sem": sem,
        },
    )


def check_crash_resistance_probe(
    setting: Setting,
    candidate: frozenset[Formula],
    trials: int = 20,
    sem: str = "grd",
    seed: int = 0,
    fresh_atoms: tuple[str, ...] = ("u", "v", "w"),
    cap: int = 12,
) -> PropertyReport:
    """Search for an addition that changes some consequence of the candidate.

    Finding one refutes contamination (pass).  Exhausting the trials is
    inconclusive: contamination quantifies over all additions.
    """
    candidate = frozenset(candidate)
    rng = random.Random(seed)
    gen = KBGenerator(atom_pool=tuple(fresh_atoms), premise_count=(1, 2), seed=seed)
    pool = literal_pool(fresh_atoms) + tuple(sorted(candidate, key=render))
    for trial in range(trials):
        added = gen.premises(rng)
        if not disjoint(candidate, added):
            continue
        queries = frozenset(pool)
        g_small = build_graph(setting, candidate, queries, cap)
        g_big = build_graph(setting, candidate | added, queries, cap)
        c_small = consequences(g_small, sem, pool)
        c_big = consequences(g_big, sem, pool)
        diff = [f for f in pool if (f in c_small) != (f in c_big)]
        if diff:
            return PropertyReport(
                "crash-resistance-probe",
                "pass",
                trials=trial + 1,
                seed=seed,
                bounds={"sem": sem, "candidate": sorted(map(render, candidate))},
                counterexample=None,
                notes=(
                    f"contamination refuted: adding {sorted(map(render, added))} "
                    f"changes {render(diff[0])}"
                ),
            )
    return PropertyReport(
        "crash-resistance-probe",
        "inconclusive",
        trials=trials,
        seed=seed,
        bounds={"sem": sem, "candidate": sorted(map(render, candidate))},
        notes="no refuting addition found; consistent with contamination",
    )


def check_cumulativity(
    setting: Setting,
    premises: frozenset[Formula],
    phi: Formula,
    psi_pool: Iterable[Formula],
    sem: str,
    seed: Optional[int] = None,
    cap: int = 12,
) -> PropertyReport:
    """Adding an entailed formula as an axiom must not change consequences."""
    premises = frozenset(premises)
    pool = tuple(dict.fromkeys(psi_pool))
    queries = frozenset(pool) | {phi}
    base_graph = build_graph(setting, premises, queries, cap)
    base_families = extension_families(base_graph)
    bounds = {
        "sem": sem,
        "phi": render(phi),
        "premises": sorted(map(render, premises)),
        "pool": sorted(map(render, pool)),
    }
    if not entails_in_graph(base_graph, phi, sem, base_families):
        return PropertyReport(
            "cumulativity",
            "inconclusive",
            trials=0,
            seed=seed,
            bounds=bounds,
            notes="phi is not entailed, the postulate does not apply",
        )
    extended = setting.extend_with_axiom(phi)
    ext_graph = build_graph(extended, premises, queries, cap)
    base_c = consequences(base_graph, sem, pool, base_families)
    ext_c = consequences(ext_graph, sem, pool)
    bad = [f for f in pool if (f in base_c) != (f in ext_c)]
    if not bad:
        return PropertyReport(
            "cumulativity", "pass", trials=len(pool), seed=seed, bounds=bounds
        )
    psi = bad[0]
    return PropertyReport(
        "cumulativity",
        "fail",
        trials=len(pool),
        seed=seed,
        bounds=bounds,
        counterexample={
            "premises": sorted(map(render, premises)),
            "phi": render(phi),
            "psi": render(psi),
            "sem": sem,
            "before": psi in base_c,
            "after": psi in ext_c,
        },
    )


def _family_keys(graph: AttackGraph, families: dict, sem: str) -> frozenset[frozenset]:
    out = set()
    for ext in families[sem]:
        out.add(frozenset(graph.arguments[i].key() for i in ext))
    return frozenset(out)


def check_extensional_cumulativity(
    setting: Setting,
    premises: frozenset[Formula],
    phi: Formula,
    sem: str,
    seed: Optional[int] = None,
    cap: int = 12,
    queries: frozenset[Formula] = frozenset(),
) -> PropertyReport:
    """Extension families must correspond by restriction to the base
    argument set; for grounded semantics the containment, restriction and
    support-augmentation claims are checked as well."""
    premises = frozenset(premises)
    queries = frozenset(queries) | {phi}
    base_graph = build_graph(setting, premises, queries, cap)
    base_families = extension_families(base_graph)
    bounds = {"sem": sem, "phi": render(phi), "premises": sorted(map(render, premises))}
    if not entails_in_graph(base_graph, phi, sem, base_families):
        return PropertyReport(
            "extensional-cumulativity",
            "inconclusive",
            trials=0,
            seed=seed,
            bounds=bounds,
            notes="phi is not entailed, the postulate does not apply",
        )
    extended = setting.extend_with_axiom(phi)
    ext_graph = build_graph(extended, premises, queries, cap)
    ext_families = extension_families(ext_graph)
    base_keys = frozenset(a.key() for a in base_graph.arguments)

    base_family = _family_keys(base_graph, base_families, sem)
    restricted = frozenset(
        frozenset(k for k in ext if k in base_keys)
        for ext in _family_keys(ext_graph, ext_families, sem)
    )
    failures: dict[str, object] = {}
    if base_family != restricted:
        failures["family-mismatch"] = {
            "base": sorted(len(e) for e in base_family),
            "restricted": sorted(len(e) for e in restricted),
        }
    if sem == "grd":
        grd_base = next(iter(_family_keys(base_graph, base_families, "grd")))
        grd_ext = next(iter(_family_keys(ext_graph, ext_families, "grd")))
        if not grd_base <= grd_ext:
            failures["containment"] = sorted(
                render(c) for (_, c) in grd_base - grd_ext
            )
        if grd_ext & base_keys != grd_base:
            failures["restriction"] = True
        phis = [
            (supp, conc) for (supp, conc) in grd_base if conc == phi
        ]
        for supp, conc in grd_ext - base_keys:
            augmented_ok = any(
                (frozenset(supp) | frozenset(phi_supp), conc) in grd_base
                for (phi_supp, _) in phis
            )
            if not augmented_ok:
                failures["augmentation"] = {
                    "support": sorted(map(render, supp)),
                    "conclusion": render(conc),
                }
                break
    if not failures:
        return PropertyReport(
            "extensional-cumulativity", "pass", trials=1, seed=seed, bounds=bounds
        )
    return PropertyReport(
        "extensional-cumulativity",
        "fail",
        trials=1,
        seed=seed,
        bounds=bounds,
        counterexample={
            "premises": sorted(map(render, premises)),
            "phi": render(phi),
            "sem": sem,
            "failures": failures,
        },
    )


def check_contraposition(
    core: DeducibilityCore,
    contrariness: Contrariness,
    pool: Iterable[Formula],
    max_support: int = 2,
    seed: Optional[int] = None,
) -> PropertyReport:
    """A derivation of a contrary must rotate around any support member."""
    pool = tuple(dict.fromkeys(pool))
    supports = [
        frozenset(c)
        for size in range(1, max_support + 1)
        for c in itertools.combinations(pool, size)
    ]
    trials = 0
    bounds = {"pool": sorted(map(render, pool)), "max_support": max_support}
    for theta in supports:
        for gamma in pool:
            contrary = contrariness.canonical_contrary(gamma)
            if contrary is None or not core.holds(theta, contrary):
                continue
            for sigma in theta:
                trials += 1
                rotated = (theta | {gamma}) - {sigma}
                sigma_contrary = contrariness.canonical_contrary(sigma)
                ok = sigma_contrary is not None and core.holds(rotated, sigma_contrary)
                if not ok:
                    finite = contrariness.finite_contraries(sigma)
                    if finite:
                        ok = any(core.holds(rotated, s) for s in finite)
                if not ok:
                    return PropertyReport(
                        "contraposition",
                        "fail",
                        trials=trials,
                        seed=seed,
                        bounds=bounds,
                        counterexample={
                            "theta": sorted(map(render, theta)),
                            "gamma": render(gamma),
                            "sigma": render(sigma),
                        },
                    )
    return PropertyReport(
        "contraposition", "pass", trials=trials, seed=seed, bounds=bounds
    )


def check_pointed(
    points: AttackPoints, pool: Iterable[Formula], max_size: int = 2, seed=None
) -> PropertyReport:
    """Attack points must distribute over union."""
    pool = tuple(dict.fromkeys(pool))
    sets = [
        frozenset(c)
        for size in range(0, max_size + 1)
        for c in itertools.combinations(pool, size)
    ]
    trials = 0
    for g in sets:
        for d in sets:
            trials += 1
            if points.points(g | d) != points.points(g) | points.points(d):
                return PropertyReport(
                    "pointed",
                    "fail",
                    trials=trials,
                    seed=seed,
                    bounds={"pool": sorted(map(render, pool)), "max_size": max_size},
                    counterexample={
                        "gamma": sorted(map(render, g)),
                        "delta": sorted(map(render, d)),
                    },
                )
    return PropertyReport(
        "pointed",
        "pass",
        trials=trials,
        seed=seed,
        bounds={"pool": sorted(map(render, pool)), "max_size": max_size},
    )


def check_pre_relevance(
    core: DeducibilityCore,
    atoms1: Sequence[str],
    atoms2: Sequence[str],
    max_support: int = 2,
    seed: Optional[int] = None,
) -> PropertyReport:
    """Derivability from a split set must already hold from the relevant half."""
    pool1 = formula_pool(atoms1)
    pool2 = formula_pool(atoms2)
    s1_sets = [
        frozenset(c)
        for size in range(0, max_support + 1)
        for c in itertools.combinations(pool1, size)
    ]
    s2_sets = [
        frozenset(c)
        for size in range(0, max_support + 1)
        for c in itertools.combinations(pool2, size)
    ]
    bounds = {
        "atoms1": list(atoms1),
        "atoms2": list(atoms2),
        "max_support": max_support,
        "pool_sizes": (len(pool1), len(pool2)),
    }
    trials = 0
    for s1 in s1_sets:
        sub1 = [
            frozenset(c)
            for size in range(0, len(s1) + 1)
            for c in itertools.combinations(sorted(s1, key=render), size)
        ]
        for phi in pool1:
            derivable_alone = any(core.holds(sub, phi) for sub in sub1)
            for s2 in s2_sets:
                if not s2 and derivable_alone:
                    continue
                trials += 1
                if core.holds(s1 | s2, phi) and not derivable_alone:
                    return PropertyReport(
                        "pre-relevance",
                        "fail",
                        trials=trials,
                        seed=seed,
                        bounds=bounds,
                        counterexample={
                            "s1": sorted(map(render, s1)),
                            "s2": sorted(map(render, s2)),
                            "phi": render(phi),
                        },
                    )
    return PropertyReport("pre-relevance", "pass", trials=trials, seed=seed, bounds=bounds)


def check_prime(
    setting: Setting,
    atoms1: Sequence[str],
    atoms2: Sequence[str],
    max_support: int = 1,
    max_target: int = 1,
    seed: Optional[int] = None,
) -> PropertyReport:
    """Attack-producing derivations must factor through one side of a split.

    Contraries are represented by their canonical member, which is exact
    for the negation-shaped contrariness kinds.
    """
    pool1 = formula_pool(atoms1)
    pool2 = formula_pool(atoms2)
    contr = setting.contrariness
    core = setting.core
    points = setting.attack_points

    def subsets(pool, k):
        return [
            frozenset(c)
            for size in range(0, k + 1)
            for c in itertools.combinations(pool, size)
        ]

    bounds = {
        "atoms1": list(atoms1),
        "atoms2": list(atoms2),
        "max_support": max_support,
        "max_target": max_target,
    }
    trials = 0
    for t1 in subsets(pool1, max_target):
        for t2 in subsets(pool2, max_target):
            if not (t1 | t2):
                continue
            for point in points.points(t1 | t2):
                psi = contr.canonical_contrary(point)
                if psi is None:
                    continue
                for s1 in subsets(pool1, max_support):
                    for s2 in subsets(pool2, max_support):
                        trials += 1
                        if not core.holds(s1 | s2, psi):
                            continue
                        ok = False
                        for side_s, side_t in ((s1, t1), (s2, t2)):
                            if ok:
                                break
                            for spoint in points.points(side_t):
                                spsi = contr.canonical_contrary(spoint)
                                if spsi is None:
                                    continue
                                subs = [
                                    frozenset(c)
                                    for size in range(0, len(side_s) + 1)
                                    for c in itertools.combinations(
                                        sorted(side_s, key=render), size
                                    )
                                ]
                                if any(core.holds(sub, spsi) for sub in subs):
                                    ok = True
                                    break
                        if not ok:
                            return PropertyReport(
                                "prime",
                                "fail",
                                trials=trials,
                                seed=seed,
                                bounds=bounds,
                                counterexample={
                                    "t1": sorted(map(render, t1)),
                                    "t2": sorted(map(render, t2)),
                                    "point": render(point),
                                    "s1": sorted(map(render, s1)),
                                    "s2": sorted(map(render, s2)),
                                },
                            )
    return PropertyReport("prime", "pass", trials=trials, seed=seed, bounds=bounds)


def check_stb_eq_prf_con(
    setting: Setting,
    premises: frozenset[Formula],
    queries: frozenset[Formula] = frozenset(),
    seed: Optional[int] = None,
    cap: int = 12,
    precheck_pool: Optional[Iterable[Formula]] = None,
) -> PropertyReport:
    """Under the consistency restriction of a contrapositable base with
    composition, the stable and preferred families coincide."""
    premises = frozenset(premises)
    if setting.attack_points.kind != "id":
        raise ValueError("the consistency-restriction results need identity points")
    if precheck_pool is not None:
        pre = check_contraposition(setting.core, setting.contrariness, precheck_pool)
        if pre.verdict != "pass":
            return PropertyReport(
                "stb-eq-prf",
                "inconclusive",
                trials=0,
                seed=seed,
                bounds={"premises": sorted(map(render, premises))},
                notes="base setting is not contrapositable within bounds",
            )
    con = setting.with_core(restrict_consistent(setting.core, setting.contrariness))
    graph = build_graph(con, premises, queries, cap)
    families = extension_families(graph)
    stb = frozenset(families["stb"])
    prf = frozenset(families["prf"])
    bounds = {"premises": sorted(map(render, premises))}
    if stb == prf:
        return PropertyReport(
            "stb-eq-prf", "pass", trials=len(prf), seed=seed, bounds=bounds
        )
    return PropertyReport(
        "stb-eq-prf",
        "fail",
        trials=len(prf),
        seed=seed,
        bounds=bounds,
        counterexample={
            "premises": sorted(map(render, premises)),
            "stable": sorted(sorted(e) for e in stb),
            "preferred": sorted(sorted(e) for e in prf),
        },
    )


def check_grd_eq_intersection_mcs(
    setting: Setting,
    premises: frozenset[Formula],
    queries: frozenset[Formula] = frozenset(),
    seed: Optional[int] = None,
    cap: int = 12,
) -> PropertyReport:
    """Grounded under the consistency restriction equals the arguments
    generable from the intersection of the maximal consistent subsets."""
    premises = frozenset(premises)
    con = setting.with_core(restrict_consistent(setting.core, setting.contrariness))
    graph = build_graph(con, premises, queries, cap)
    grd = grounded(graph)
    core_mcs = mcs(setting, premises)
    free = (
        frozenset.intersection(*core_mcs) if core_mcs else frozenset()
    )
    expected = frozenset(
        a.id for a in graph.arguments if a.support <= free
    )
    bounds = {
        "premises": sorted(map(render, premises)),
        "mcs-intersection": sorted(map(render, free)),
    }
    if grd.members == expected:
        return PropertyReport(
            "grd-eq-mcs", "pass", trials=1, seed=seed, bounds=bounds
        )
    return PropertyReport(
        "grd-eq-mcs",
        "fail",
        trials=1,
        seed=seed,
        bounds=bounds,
        counterexample={
            "premises": sorted(map(render, premises)),
            "grounded-only": sorted(
                graph.arguments[i].text() for i in grd.members - expected
            ),
            "expected-only": sorted(
                graph.arguments[i].text() for i in expected - grd.members
            ),
        },
    )


def probe_axiom_closure(
    core: DeducibilityCore,
    universe: Iterable[Formula],
    phi: Formula,
    max_support: int = 2,
    seed: Optional[int] = None,
) -> PropertyReport:
    """Compare the one-step axiom composition with the full bounded
    composition closure; differences would show the one-step reading is
    lossy for this core."""
    pool = tuple(dict.fromkeys(universe))
    supports = [
        frozenset(c)
        for size in range(0, max_support + 1)
        for c in itertools.combinations(pool, size)
    ]
    relation: set[tuple[frozenset[Formula], Formula]] = set()
    for s in supports:
        for c in pool:
            if core.holds(s, c):
                relation.add((s, c))
    if phi in pool:
        relation.add((frozenset(), phi))
    closed = set(relation)
    changed = True
    while changed:
        changed = False
        for (g, chi) in list(closed):
            for (d, psi) in list(closed):
                if chi not in d:
                    continue
                combined = g | (d - {chi})
                if len(combined) > max_support:
                    continue
                if (combined, psi) not in closed:
                    closed.add((combined, psi))
                    changed = True
    one_step = core.extend_with_axiom(phi)
    diffs = []
    for s in supports:
        for c in pool:
            lhs = (s, c) in closed
            rhs = one_step.holds(s, c)
            if lhs != rhs:
                diffs.append((s, c, lhs, rhs))
    bounds = {
        "phi": render(phi),
        "universe": sorted(map(render, pool)),
        "max_support": max_support,
    }
    if not diffs:
        return PropertyReport(
            "axiom-closure-probe", "pass", trials=len(supports) * len(pool), seed=seed, bounds=bounds
        )
    s, c, lhs, rhs = diffs[0]
    return PropertyReport(
        "axiom-closure-probe",
        "fail",
        trials=len(supports) * len(pool),
        seed=seed,
        bounds=bounds,
        counterexample={
            "support": sorted(map(render, s)),
            "conclusion": render(c),
            "closure": lhs,
            "one-step": rhs,
        },
    )
