"""Extensions, backends, quotient exactness, skeptical consequence."""

import random

import pytest

from argonaut import (
    Atom,
    Not,
    Or,
    build_graph,
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
from argonaut.cores import CLCore, CLTopCore
from argonaut.engine import Argument, AttackGraph, Setting
from argonaut.semantics import (
    complete_masks_enum,
    complete_masks_search,
    grounded_mask,
    preferred_masks,
    stable_masks,
)

import oracle

P, Q, R = Atom("p"), Atom("q"), Atom("r")


def abstract_graph(n, edges):
    """An attack graph over opaque arguments with distinct supports."""
    args = tuple(
        Argument(i, frozenset({Atom(f"a{i}")}), Atom(f"a{i}")) for i in range(n)
    )
    return AttackGraph(args, frozenset(edges))


def masks_to_sets(masks, n):
    return {frozenset(i for i in range(n) if m & (1 << i)) for m in masks}


class TestDefinitionalChecks:
    def test_conflict_free(self):
        g = abstract_graph(3, {(0, 1)})
        assert conflict_free(g, {0, 2})
        assert not conflict_free(g, {0, 1})
        g_loop = abstract_graph(1, {(0, 0)})
        assert not conflict_free(g_loop, {0})

    def test_defends(self):
        chain = abstract_graph(3, {(2, 1), (1, 0)})
        assert defends(chain, {2}, 0)
        assert defends(chain, set(), 2)
        assert not defends(abstract_graph(2, {(1, 0)}), set(), 0)

    def test_defended_closure(self):
        edgeless = abstract_graph(3, set())
        assert defended_closure(edgeless, set()) == {0, 1, 2}
        attacked = abstract_graph(2, {(1, 0)})
        assert defended_closure(attacked, set()) == {1}
        chain = abstract_graph(3, {(2, 1), (1, 0)})
        assert defended_closure(chain, {2}) == {0, 2}


class TestCanonicalGraphs:
    def test_edgeless(self):
        g = abstract_graph(3, set())
        assert grounded(g).members == {0, 1, 2}
        assert [e.members for e in complete_all(g)] == [frozenset({0, 1, 2})]
        assert [e.members for e in preferred_all(g)] == [frozenset({0, 1, 2})]
        assert [e.members for e in stable_all(g)] == [frozenset({0, 1, 2})]

    def test_two_cycle(self):
        g = abstract_graph(2, {(0, 1), (1, 0)})
        assert grounded(g).members == frozenset()
        assert {e.members for e in complete_all(g)} == {
            frozenset(),
            frozenset({0}),
            frozenset({1}),
        }
        assert {e.members for e in preferred_all(g)} == {frozenset({0}), frozenset({1})}
        assert {e.members for e in stable_all(g)} == {frozenset({0}), frozenset({1})}

    def test_chain(self):
        g = abstract_graph(3, {(2, 1), (1, 0)})
        assert grounded(g).members == {0, 2}

    def test_grounded_is_fixpoint(self):
        g = abstract_graph(4, {(0, 1), (1, 2), (2, 3), (3, 0)})
        assert defended_closure(g, grounded(g).members) == grounded(g).members

    def test_empty_stable_family(self):
        g = abstract_graph(1, {(0, 0)})
        assert stable_all(g) == ()
        # vacuous universal quantifier
        assert entails_in_graph(g, Atom("a0"), "stb")


class TestBackendAgreement:
    @pytest.mark.parametrize("seed", range(30))
    def test_backends_and_oracle_agree_small(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 7)
        edges = frozenset(
            (a, b) for a in range(n) for b in range(n) if rng.random() < 0.3
        )
        enum = masks_to_sets(complete_masks_enum(n, edges), n)
        search = masks_to_sets(complete_masks_search(n, edges), n)
        want = oracle.complete_sets(n, edges)
        assert enum == search == want
        stb = masks_to_sets(
            stable_masks(n, edges, complete_masks_enum(n, edges)), n
        )
        assert stb == oracle.stable_sets(n, edges)
        prf = masks_to_sets(preferred_masks(complete_masks_enum(n, edges)), n)
        assert prf == oracle.preferred_sets(n, edges)
        grd = frozenset(
            i for i in range(n) if grounded_mask(n, edges) & (1 << i)
        )
        assert grd == oracle.grounded_set(n, edges)

    def test_lattice_shape(self):
        rng = random.Random(7)
        for _ in range(10):
            n = rng.randint(1, 6)
            edges = frozenset(
                (a, b) for a in range(n) for b in range(n) if rng.random() < 0.35
            )
            g = abstract_graph(n, edges)
            completes = {e.members for e in complete_all(g)}
            grd = grounded(g).members
            assert all(grd <= c for c in completes)
            prf = {e.members for e in preferred_all(g)}
            assert prf == {c for c in completes if not any(c < d for d in completes)}
            assert {e.members for e in stable_all(g)} <= prf


class TestQuotientExactness:
    @pytest.mark.parametrize("seed", range(12))
    def test_kb_graph_matches_definition_oracle(self, seed):
        rng = random.Random(seed)
        atoms = [Atom(a) for a in ("p", "q")]
        pool = atoms + [Not(a) for a in atoms]
        premises = frozenset(rng.sample(pool, rng.randint(1, 3)))
        setting = Setting.from_rule(CLCore(), rng.choice(["dicodef", "def", "didef"]))
        g = build_graph(setting, premises, frozenset({P, Q}))
        n, edges = len(g), g.edges
        got = {frozenset(e.members) for e in complete_all(g)}
        want = oracle.complete_sets(n, edges)
        assert got == want
        assert grounded(g).members == oracle.grounded_set(n, edges)
        assert {e.members for e in stable_all(g)} == oracle.stable_sets(n, edges)
        assert {e.members for e in preferred_all(g)} == oracle.preferred_sets(n, edges)


class TestSkepticalConsequence:
    def test_single_unattacked_argument(self):
        setting = Setting.from_rule(CLTopCore(), "didef")
        assert skeptical_entails(setting, frozenset({P}), P, "grd")

    def test_tautology_from_empty_kb(self):
        setting = Setting.from_rule(CLCore(), "dicodef")
        taut = Or(P, Not(P))
        for sem in ("grd", "cmp", "prf", "stb"):
            assert skeptical_entails(setting, frozenset(), taut, sem)

    def test_complete_matches_grounded(self):
        setting = Setting.from_rule(CLCore(), "dicodef")
        g = build_graph(setting, frozenset({P, Not(P), Q}), frozenset({Q, P}))
        for query in (P, Q):
            assert entails_in_graph(g, query, "cmp") == entails_in_graph(g, query, "grd")


class TestRunningExamplePreferred:
    def test_only_preferred_extension_keeps_both(self, makinson_setting):
        core = makinson_setting.core
        g = build_graph(
            makinson_setting, core.setting_premises(), frozenset({P, Or(P, Q)})
        )
        assert entails_in_graph(g, P, "prf")
        assert entails_in_graph(g, Or(P, Q), "prf")
        n0, _ = core.defeasible
        a0_support = frozenset({n0.lit(), n0.name_formula(), P})
        a0 = g.id_of(a0_support, P)
        a = g.id_of(a0_support, Or(P, Q))
        non_trivial = [e for e in preferred_all(g) if {a0, a} <= e.members]
        assert len(non_trivial) == len(preferred_all(g)) == 1
