"""Command-line interface.

Subcommands::

    entails <kb> --query F --sem grd|cmp|prf|stb [--add-axiom F] [--at-most N]
    extensions <kb> --sem ... [--json]
    graph <kb> --dot PATH
    check <kb> --property P | check --random seed=N trials=K --property P

Exit codes: 0 success (and every checked property passed), 1 a property
failed, 2 only inconclusive results, 64 usage errors, 65 bad KB input.
The environment variable ``ARGONAUT_SEED`` overrides the default seed of
randomized checks.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from .engine import build_graph
from .export import export_dot, export_json
from .formula import ArgonautError, Formula, render, strip_label
from .harness import (
    KBGenerator,
    check_contraposition,
    check_cumulativity,
    check_extensional_cumulativity,
    check_grd_eq_intersection_mcs,
    check_non_interference,
    check_pointed,
    check_pre_relevance,
    check_prime,
    check_stb_eq_prf_con,
    formula_pool,
    literal_pool,
)
from .cores import check_cut
from .kb import KBError, LoadedKB, load_kb_text, parse_formula
from .priorities import build_prioritized_graph, prioritized_entails
from .report import PropertyReport
from .semantics import SEMANTICS, entails_in_graph, extension_families

USAGE_ERROR = 64
KB_ERROR = 65

_PROPERTIES = (
    "non-interference",
    "cumulativity",
    "ext-cumulativity",
    "stb-eq-prf",
    "grd-eq-mcs",
    "pre-relevance",
    "prime",
    "pointed",
    "cut",
    "contraposition",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 instead of argparse's 2
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="argonaut", description="structured argumentation engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ent = sub.add_parser("entails", help="skeptical consequence of a query")
    p_ent.add_argument("kb")
    p_ent.add_argument("--query", required=True)
    p_ent.add_argument("--sem", required=True, choices=SEMANTICS)
    p_ent.add_argument("--add-axiom", default=None)
    p_ent.add_argument("--at-most", type=int, default=None)

    p_ext = sub.add_parser("extensions", help="extension families")
    p_ext.add_argument("kb")
    p_ext.add_argument("--sem", required=True, choices=SEMANTICS)
    p_ext.add_argument("--json", action="store_true")

    p_gr = sub.add_parser("graph", help="attack graph export")
    p_gr.add_argument("kb")
    p_gr.add_argument("--dot", required=True)

    p_ch = sub.add_parser("check", help="metatheory property check")
    p_ch.add_argument("kb", nargs="?", default=None)
    p_ch.add_argument("--random", nargs="+", default=None, metavar="KEY=VALUE")
    p_ch.add_argument("--property", required=True, choices=_PROPERTIES)
    p_ch.add_argument("--sem", default="grd", choices=SEMANTICS)
    p_ch.add_argument("--json", action="store_true")
    return parser


def _load(path: str) -> LoadedKB:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise KBError(f"cannot read {path}: {exc}") from exc
    return load_kb_text(text)


def _parse_query(text: str) -> Formula:
    return parse_formula(text)


def _cmd_entails(args) -> int:
    loaded = _load(args.kb)
    query = _parse_query(args.query)
    setting = loaded.setting
    if args.add_axiom:
        setting = setting.extend_with_axiom(_parse_query(args.add_axiom))
    if loaded.lifting:
        graph = build_prioritized_graph(
            setting, loaded.premises, loaded.priorities, loaded.lifting, frozenset((query,))
        )
    else:
        if args.at_most is not None:
            raise _UsageError("--at-most needs a prioritized setting (lifting=...)")
        graph = build_graph(setting, loaded.premises, frozenset((query,)))
    for warning in graph.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    families = extension_families(graph)
    if loaded.lifting and args.at_most is not None:
        verdict = True
        for ext in families[args.sem]:
            if not any(
                strip_label(graph.arguments[i].conclusion) == query
                and (graph.arguments[i].value is None or graph.arguments[i].value <= args.at_most)
                for i in ext
            ):
                verdict = False
                break
    else:
        verdict = entails_in_graph(graph, query, args.sem, families)
    print("true" if verdict else "false")
    if args.sem == "stb" and not families["stb"]:
        print("note: no stable extension exists; the consequence is vacuous")
    for idx, ext in enumerate(families[args.sem]):
        witness = next(
            (
                graph.arguments[i]
                for i in sorted(ext)
                if strip_label(graph.arguments[i].conclusion) == query
            ),
            None,
        )
        if witness is None:
            print(f"extension {idx}: no argument concludes {render(query)}")
        else:
            print(f"extension {idx}: {witness.text()}")
    return 0


def _families_for(loaded: LoadedKB, queries=frozenset()):
    if loaded.lifting:
        graph = build_prioritized_graph(
            loaded.setting, loaded.premises, loaded.priorities, loaded.lifting, queries
        )
    else:
        graph = build_graph(loaded.setting, loaded.premises, queries)
    return graph, extension_families(graph)


def _cmd_extensions(args) -> int:
    loaded = _load(args.kb)
    graph, families = _families_for(loaded)
    if args.json:
        print(export_json(graph, {args.sem: families[args.sem]}), end="")
        return 0
    family = families[args.sem]
    print(f"{len(family)} {args.sem} extension(s)")
    for idx, ext in enumerate(family):
        print(f"extension {idx}:")
        for i in sorted(ext):
            print(f"  {graph.arguments[i].text()}")
    return 0


def _cmd_graph(args) -> int:
    loaded = _load(args.kb)
    graph, _ = _families_for(loaded)
    text = export_dot(graph)
    if args.dot == "-":
        print(text, end="")
    else:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {args.dot}")
    return 0


def _default_seed() -> int:
    env = os.environ.get("ARGONAUT_SEED")
    return int(env) if env else 0


def _parse_random_spec(parts) -> tuple[int, int]:
    seed, trials = _default_seed(), 10
    for part in parts:
        if "=" not in part:
            raise _UsageError(f"bad --random part {part!r}, expected key=value")
        key, _, value = part.partition("=")
        if key == "seed":
            seed = int(value)
        elif key == "trials":
            trials = int(value)
        else:
            raise _UsageError(f"unknown --random key {key!r}")
    return seed, trials


def _check_on_kb(loaded: LoadedKB, prop: str, sem: str, seed: int) -> PropertyReport:
    setting = loaded.setting
    premises = loaded.premises
    kb_atoms = tuple(loaded.doc.atoms) or ("p", "q")
    pool = literal_pool(kb_atoms)
    fresh = tuple(f"x{i}" for i in range(2))
    gen = KBGenerator(atom_pool=fresh, premise_count=(1, 2), seed=seed)
    if prop == "non-interference":
        from .formula import Atom, Not

        # a pairwise-contradictory pair over fresh atoms is the canonical
        # stress addition; seeded extras widen the probe
        s2 = frozenset({Atom(fresh[0]), Not(Atom(fresh[0]))}) | frozenset(
            gen.formula(gen.rng(), atoms=fresh[1:]) for _ in range(2)
        )
        return check_non_interference(setting, premises, s2, sem, pool, seed=seed)
    if prop == "cumulativity":
        graph = build_graph(setting, premises, frozenset(pool))
        entailed = [f for f in pool if entails_in_graph(graph, f, sem)]
        if not entailed:
            return PropertyReport(
                "cumulativity", "inconclusive", seed=seed,
                notes="no entailed literal to add as an axiom",
            )
        return check_cumulativity(setting, premises, entailed[0], pool, sem, seed=seed)
    if prop == "ext-cumulativity":
        graph = build_graph(setting, premises, frozenset(pool))
        entailed = [f for f in pool if entails_in_graph(graph, f, sem)]
        if not entailed:
            return PropertyReport(
                "extensional-cumulativity", "inconclusive", seed=seed,
                notes="no entailed literal to add as an axiom",
            )
        return check_extensional_cumulativity(setting, premises, entailed[0], sem, seed=seed)
    if prop == "stb-eq-prf":
        return check_stb_eq_prf_con(setting, premises, frozenset(pool), seed=seed)
    if prop == "grd-eq-mcs":
        return check_grd_eq_intersection_mcs(setting, premises, frozenset(pool), seed=seed)
    if prop == "pre-relevance":
        half = max(1, len(kb_atoms) // 2)
        return check_pre_relevance(setting.core, kb_atoms[:half], fresh, seed=seed)
    if prop == "prime":
        half = max(1, len(kb_atoms) // 2)
        return check_prime(setting, kb_atoms[:half], fresh, seed=seed)
    if prop == "pointed":
        return check_pointed(setting.attack_points, pool, seed=seed)
    if prop == "cut":
        return check_cut(setting.core, formula_pool(kb_atoms[:2]))
    if prop == "contraposition":
        return check_contraposition(
            setting.core, setting.contrariness, formula_pool(kb_atoms[:2]), seed=seed
        )
    raise _UsageError(f"unknown property {prop!r}")


def _check_random(prop: str, sem: str, seed: int, trials: int) -> list[PropertyReport]:
    from .engine import Setting
    from .cores import CLCore, CLTopCore

    reports = []
    for t in range(trials):
        gen = KBGenerator(seed=seed + t, premise_count=(2, 3))
        rng = gen.rng()
        premises = gen.premises(rng)
        setting = Setting.from_rule(CLTopCore(), "didef")
        pool = literal_pool(gen.atom_pool)
        if prop == "non-interference":
            gen2 = KBGenerator(atom_pool=("u", "v"), premise_count=(1, 2), seed=seed + t)
            s2 = gen2.premises(gen2.rng())
            reports.append(
                check_non_interference(setting, premises, s2, sem, pool, seed=seed + t)
            )
        elif prop in ("cumulativity", "ext-cumulativity"):
            graph = build_graph(setting, premises, frozenset(pool))
            entailed = [f for f in pool if entails_in_graph(graph, f, sem)]
            if not entailed:
                reports.append(
                    PropertyReport(prop, "inconclusive", seed=seed + t, notes="nothing entailed")
                )
            elif prop == "cumulativity":
                reports.append(
                    check_cumulativity(setting, premises, entailed[0], pool, sem, seed=seed + t)
                )
            else:
                reports.append(
                    check_extensional_cumulativity(setting, premises, entailed[0], sem, seed=seed + t)
                )
        elif prop == "stb-eq-prf":
            base = Setting.from_rule(CLCore(), "dicodef")
            reports.append(
                check_stb_eq_prf_con(base, premises, frozenset(pool), seed=seed + t)
            )
        elif prop == "grd-eq-mcs":
            base = Setting.from_rule(CLCore(), "dicodef")
            reports.append(
                check_grd_eq_intersection_mcs(base, premises, frozenset(pool), seed=seed + t)
            )
        elif prop == "pre-relevance":
            reports.append(
                check_pre_relevance(setting.core, ("a", "b"), ("u", "v"), seed=seed + t)
            )
        elif prop == "prime":
            reports.append(check_prime(setting, ("a", "b"), ("u", "v"), seed=seed + t))
        elif prop == "pointed":
            reports.append(check_pointed(setting.attack_points, pool, seed=seed + t))
        elif prop == "cut":
            reports.append(check_cut(setting.core, formula_pool(("a", "b"))))
        elif prop == "contraposition":
            reports.append(
                check_contraposition(
                    setting.core, setting.contrariness, formula_pool(("a", "b")), seed=seed + t
                )
            )
        else:
            raise _UsageError(f"unknown property {prop!r}")
    return reports


def _cmd_check(args) -> int:
    if (args.kb is None) == (args.random is None):
        raise _UsageError("check needs either a KB file or --random, not both")
    if args.kb is not None:
        reports = [_check_on_kb(_load(args.kb), args.property, args.sem, _default_seed())]
    else:
        seed, trials = _parse_random_spec(args.random)
        reports = _check_random(args.property, args.sem, seed, trials)
    if args.json:
        import json

        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            print(r.text())
    verdicts = {r.verdict for r in reports}
    if "fail" in verdicts:
        return 1
    if verdicts and verdicts <= {"inconclusive"}:
        return 2
    return 0


def cli_run(argv=None) -> int:
    """Dispatch a command line; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "entails":
            return _cmd_entails(args)
        if args.command == "extensions":
            return _cmd_extensions(args)
        if args.command == "graph":
            return _cmd_graph(args)
        if args.command == "check":
            return _cmd_check(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except KBError as exc:
        print(f"kb error: {exc}", file=sys.stderr)
        return KB_ERROR
    except ArgonautError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return KB_ERROR


def main(argv=None) -> int:
    return cli_run(argv)


if __name__ == "__main__":
    sys.exit(main())
