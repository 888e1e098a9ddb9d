"""Byte-stable DOT and JSON serialization of graphs and extensions."""

from __future__ import annotations

import json
from typing import Optional

from .engine import AttackGraph
from .formula import render


def export_dot(graph: AttackGraph) -> str:
    """DOT text with node order fixed by argument id."""
    lines = ["digraph attacks {"]
    for a in graph.arguments:
        label = a.text().replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  a{a.id} [label="{label}"];')
    for frm, to in sorted(graph.edges):
        lines.append(f"  a{frm} -> a{to};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(
    graph: AttackGraph, extensions: Optional[dict[str, tuple]] = None
) -> str:
    """The documented schema: arguments, edges and extension families,
    all arrays sorted so identical inputs give identical bytes."""
    args = []
    for a in graph.arguments:
        entry: dict = {
            "id": a.id,
            "support": sorted(render(f) for f in a.support),
            "conclusion": render(a.conclusion),
        }
        if a.value is not None:
            entry["value"] = a.value
        args.append(entry)
    payload: dict = {
        "arguments": args,
        "edges": sorted([frm, to] for frm, to in graph.edges),
        "extensions": {
            sem: sorted(sorted(members) for members in family)
            for sem, family in sorted((extensions or {}).items())
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
