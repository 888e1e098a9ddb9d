"""Dung semantics over finite attack graphs and skeptical consequence.

Two extension backends are kept deliberately separate and cross-checked:

* ``enum``   -- plain subset enumeration checking the definitions directly;
  the correctness anchor, viable up to the configured node cap.
* ``search`` -- depth-first labelling propagation: choosing an argument IN
  forces its attackers and targets OUT, branches close as soon as an
  excluded argument becomes defended.  Scales past the cap.

Graphs produced by the engine carry argument supports, and two arguments
with the same support and the same outgoing attack pattern sit in every
extension together.  Extension computation therefore quotients such
arguments into blocks first and expands afterwards; this is exact for
complete, grounded, preferred and stable semantics and is what keeps the
dense classical graphs tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

from .engine import Argument, AttackGraph
from .formula import Formula, strip_label

Sem = Literal["grd", "cmp", "prf", "stb"]

SEMANTICS = ("grd", "cmp", "prf", "stb")

DEFAULT_ENUM_CAP = 24


@dataclass(frozen=True)
class Extension:
    members: frozenset[int]
    semantics: str


# ---------------------------------------------------------------------------
# Definitional checks on graphs


def conflict_free(graph: AttackGraph, ids: Iterable[int]) -> bool:
    ids = frozenset(ids)
    return not any(a in ids and b in ids for (a, b) in graph.edges)


def defends(graph: AttackGraph, ids: Iterable[int], arg_id: int) -> bool:
    ids = frozenset(ids)
    attacked_by_ids = frozenset(b for (a, b) in graph.edges if a in ids)
    return all(b in attacked_by_ids for b in graph.attackers_of(arg_id))


def defended_closure(graph: AttackGraph, ids: Iterable[int]) -> frozenset[int]:
    """All arguments defended by ``ids``."""
    ids = frozenset(ids)
    attacked = frozenset(b for (a, b) in graph.edges if a in ids)
    out = set()
    for arg in graph.arguments:
        if all(att in attacked for att in graph.attackers_of(arg.id)):
            out.add(arg.id)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Mask-level backends


def _mask_tables(n: int, edges: Iterable[tuple[int, int]]):
    attacks_from = [0] * n
    attackers_of = [0] * n
    for a, b in edges:
        attacks_from[a] |= 1 << b
        attackers_of[b] |= 1 << a
    return attacks_from, attackers_of


def _attacked_by(mask: int, attacks_from: list[int]) -> int:
    out = 0
    m = mask
    while m:
        low = m & -m
        out |= attacks_from[low.bit_length() - 1]
        m ^= low
    return out


def complete_masks_enum(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """All complete extensions by brute-force subset enumeration."""
    attacks_from, attackers_of = _mask_tables(n, edges)
    full = (1 << n) - 1
    out = []
    if n <= 20:
        attacked = [0] * (1 << n)
        for s in range(1, 1 << n):
            low = s & -s
            attacked[s] = attacked[s ^ low] | attacks_from[low.bit_length() - 1]
    else:
        attacked = None
    for s in range(1 << n):
        att = attacked[s] if attacked is not None else _attacked_by(s, attacks_from)
        if s & att:
            continue
        defended = 0
        for a in range(n):
            if attackers_of[a] & ~att == 0:
                defended |= 1 << a
        if defended == s:
            out.append(s)
    return out


def complete_masks_search(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """All complete extensions by labelling propagation."""
    attacks_from, attackers_of = _mask_tables(n, edges)
    full = (1 << n) - 1
    self_attackers = 0
    for a in range(n):
        if attacks_from[a] & (1 << a):
            self_attackers |= 1 << a
    out = []

    def defended_mask(att: int) -> int:
        d = 0
        for a in range(n):
            if attackers_of[a] & ~att == 0:
                d |= 1 << a
        return d

    def walk(idx: int, in_mask: int, excluded: int) -> None:
        att = _attacked_by(in_mask, attacks_from)
        defended = defended_mask(att)
        # an excluded argument that is already defended stays defended in
        # every completion of this branch, so no complete set lies below
        if defended & excluded:
            return
        while idx < n and (in_mask | excluded) & (1 << idx):
            idx += 1
        if idx == n:
            if defended == in_mask:
                out.append(in_mask)
            return
        bit = 1 << idx
        # branch 1: idx joins the extension (if conflict-freeness allows)
        if not (
            bit & att
            or attacks_from[idx] & (in_mask | bit)
            or att & bit
        ):
            newly_out = attacks_from[idx] | attackers_of[idx]
            walk(idx + 1, in_mask | bit, excluded | (newly_out & ~(in_mask | bit)))
        # branch 2: idx stays out
        walk(idx + 1, in_mask, excluded | bit)

    walk(0, 0, self_attackers)
    return sorted(set(out))


def grounded_mask(n: int, edges: Iterable[tuple[int, int]]) -> int:
    attacks_from, attackers_of = _mask_tables(n, edges)
    current = 0
    while True:
        att = _attacked_by(current, attacks_from)
        new = 0
        for a in range(n):
            if attackers_of[a] & ~att == 0:
                new |= 1 << a
        if new == current:
            return current
        current = new


def stable_masks(n: int, edges: Iterable[tuple[int, int]], completes: list[int]) -> list[int]:
    attacks_from, _ = _mask_tables(n, edges)
    full = (1 << n) - 1
    return [s for s in completes if (s | _attacked_by(s, attacks_from)) == full]


def preferred_masks(completes: list[int]) -> list[int]:
    ordered = sorted(completes, key=lambda s: (-bin(s).count("1"), s))
    kept: list[int] = []
    for s in ordered:
        if not any(s | k == k for k in kept):
            kept.append(s)
    return sorted(kept)


# ---------------------------------------------------------------------------
# Quotient by (support, outgoing attack pattern)


def _quotient(graph: AttackGraph):
    """Group arguments that necessarily share extension membership.

    Two arguments with equal supports have the same attackers; if they
    also attack the same targets they are interchangeable in every
    complete/preferred/stable extension.  Returns (blocks, edges) of the
    quotient problem.
    """
    support_ids: dict[frozenset, int] = {}
    for a in graph.arguments:
        support_ids.setdefault(a.support, len(support_ids))
    target_supports: dict[int, frozenset[int]] = {}
    for a in graph.arguments:
        targets = frozenset(
            support_ids[graph.arguments[b].support] for b in graph.targets_of(a.id)
        )
        target_supports[a.id] = targets
    block_index: dict[tuple[int, frozenset[int]], int] = {}
    blocks: list[list[int]] = []
    for a in graph.arguments:
        key = (support_ids[a.support], target_supports[a.id])
        idx = block_index.get(key)
        if idx is None:
            idx = len(blocks)
            block_index[key] = idx
            blocks.append([])
        blocks[idx].append(a.id)
    edges = set()
    member_block = {}
    for idx, ids in enumerate(blocks):
        for i in ids:
            member_block[i] = idx
    for a, b in graph.edges:
        edges.add((member_block[a], member_block[b]))
    return blocks, edges


def _expand(blocks: list[list[int]], mask: int) -> frozenset[int]:
    out: set[int] = set()
    for idx, ids in enumerate(blocks):
        if mask & (1 << idx):
            out.update(ids)
    return frozenset(out)


def _complete_family(
    graph: AttackGraph, enum_cap: int = DEFAULT_ENUM_CAP, search_fallback: bool = True
) -> tuple[list[frozenset[int]], list[frozenset[int]], frozenset[int]]:
    """(complete, stable, grounded) members over argument ids."""
    blocks, qedges = _quotient(graph)
    n = len(blocks)
    if n <= enum_cap:
        completes = complete_masks_enum(n, qedges)
    elif search_fallback:
        completes = complete_masks_search(n, qedges)
    else:
        raise ValueError(
            f"{n} nodes exceed the enumeration cap of {enum_cap} "
            "and the search fallback is disabled"
        )
    stables = stable_masks(n, qedges, completes)
    grd = grounded_mask(n, qedges)
    return (
        [_expand(blocks, s) for s in completes],
        [_expand(blocks, s) for s in stables],
        _expand(blocks, grd),
    )


def grounded(graph: AttackGraph, **kw) -> Extension:
    """Least fixpoint of defense; the unique minimal complete extension."""
    blocks, qedges = _quotient(graph)
    return Extension(_expand(blocks, grounded_mask(len(blocks), qedges)), "grd")


def complete_all(graph: AttackGraph, **kw) -> tuple[Extension, ...]:
    completes, _, _ = _complete_family(graph, **kw)
    return tuple(
        Extension(m, "cmp") for m in sorted(completes, key=lambda m: sorted(m))
    )


def preferred_all(graph: AttackGraph, **kw) -> tuple[Extension, ...]:
    completes, _, _ = _complete_family(graph, **kw)
    maximal = [
        m for m in completes if not any(m < other for other in completes)
    ]
    return tuple(
        Extension(m, "prf") for m in sorted(maximal, key=lambda m: sorted(m))
    )


def stable_all(graph: AttackGraph, **kw) -> tuple[Extension, ...]:
    _, stables, _ = _complete_family(graph, **kw)
    return tuple(
        Extension(m, "stb") for m in sorted(stables, key=lambda m: sorted(m))
    )


def extension_families(graph: AttackGraph, **kw) -> dict[str, tuple[frozenset[int], ...]]:
    completes, stables, grd = _complete_family(graph, **kw)
    maximal = [m for m in completes if not any(m < other for other in completes)]
    return {
        "grd": (grd,),
        "cmp": tuple(sorted(completes, key=lambda m: sorted(m))),
        "prf": tuple(sorted(maximal, key=lambda m: sorted(m))),
        "stb": tuple(sorted(stables, key=lambda m: sorted(m))),
    }


# ---------------------------------------------------------------------------
# Skeptical consequence


def _extension_concludes(graph: AttackGraph, members: frozenset[int], phi: Formula) -> bool:
    return any(
        strip_label(graph.arguments[i].conclusion) == phi for i in members
    )


def entails_in_graph(
    graph: AttackGraph,
    phi: Formula,
    sem: str,
    families: Optional[dict] = None,
    **kw,
) -> bool:
    """Skeptical consequence: every extension holds an argument for phi.

    An empty stable family makes the quantifier vacuously true; callers
    that care (the CLI does) should flag that case.
    """
    if sem not in SEMANTICS:
        raise ValueError(f"unknown semantics {sem!r}")
    if families is None:
        families = extension_families(graph, **kw)
    answer = all(_extension_concludes(graph, ext, phi) for ext in families[sem])
    if sem == "cmp":
        # the complete and grounded consequences coincide; keep that as a
        # live internal check rather than an assumption
        grd_answer = all(
            _extension_concludes(graph, ext, phi) for ext in families["grd"]
        )
        if answer != grd_answer:
            raise AssertionError(
                "complete-based and grounded-based consequence diverged"
            )
    return answer


def skeptical_entails(
    setting,
    premises: frozenset[Formula],
    phi: Formula,
    sem: str,
    queries: frozenset[Formula] = frozenset(),
    cap: int = 10,
) -> bool:
    from .engine import build_graph

    graph = build_graph(setting, frozenset(premises), frozenset(queries) | {phi}, cap)
    return entails_in_graph(graph, phi, sem)


def consequences(
    graph: AttackGraph, sem: str, pool: Iterable[Formula], families: Optional[dict] = None
) -> frozenset[Formula]:
    """The subset of ``pool`` that is skeptically entailed."""
    if families is None:
        families = extension_families(graph)
    per_ext = []
    for ext in families[sem]:
        per_ext.append(frozenset(strip_label(graph.arguments[i].conclusion) for i in ext))
    return frozenset(
        phi for phi in pool if all(phi in concs for concs in per_ext)
    )
