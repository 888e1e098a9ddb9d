"""Structured argumentation engine.

Arguments are premise-conclusion pairs over a pluggable deducibility
relation; attacks run through configurable contrariness and attack-point
functions; Dung semantics and skeptical consequence sit on top, with an
optional priority layer and a metatheory harness that probes relevance
and cumulativity postulates on concrete knowledge bases.
"""

from .formula import (
    And,
    ArgonautError,
    Atom,
    AttackPoints,
    BOT,
    Bottom,
    ConfigurationError,
    Contrariness,
    Formula,
    Implies,
    Labeled,
    Not,
    OPlus,
    Or,
    RuleLit,
    RuleName,
    TOP,
    Top,
    atoms,
    attack_points,
    disjoint,
    is_contrary,
    render,
)
from .cores import (
    ABARulesCore,
    ASPICCore,
    AtomCapError,
    CLCore,
    CLTopCore,
    DefeasibleRule,
    Derivation,
    MCSCore,
    StrictRule,
    aba_derives,
    aspic_deduce,
    check_cut,
    extend_with_axiom,
    restrict_consistent,
    restrict_empty_attackers,
    restrict_satisfiable,
)
from .engine import Argument, AttackGraph, Setting, build_arguments, build_graph, relevant_conclusions
from .semantics import (
    Extension,
    complete_all,
    conflict_free,
    defended_closure,
    defends,
    entails_in_graph,
    extension_families,
    grounded,
    preferred_all,
    skeptical_entails,
    stable_all,
)
from .priorities import (
    PriorityAssignment,
    aba_r_defeat,
    build_prioritized_graph,
    labeled_contrary,
    pi_defeats,
    prioritized_entails,
    weakest_link_value,
)
from .harness import KBGenerator, check_non_interference, check_cumulativity, mcs
from .kb import KBError, KnowledgeBaseDoc, load_kb, load_kb_text, parse_formula, parse_kb
from .export import export_dot, export_json
from .report import PropertyReport

__version__ = "0.1.0"
