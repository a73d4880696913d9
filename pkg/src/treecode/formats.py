"""JSON, edge-list and DOT serialization for trees and codes.

Tree JSON::

    {"n": 3, "root": 1, "parent": [0, 1, 1]}            rooted (parent of root is 0)
    {"n": 3, "roots": [1, 2], "parent": [0, 0, 1]}      forest
    {"n": 3, "root": 1, "parent": [...], "marks": [2]}  marked
    {"n": 3, "edges": [[1, 2], [1, 3]]}                 unrooted
    {"degrees": [2], "root": "i1", "parent": {"l1": "i1", "l2": "i1"}}

Code JSON::

    {"context": "rooted", "n": 3, "seq": [1, 1]}

Any object may carry a ``"meta"`` dict (seed, stream, ...), which is passed
through encode/decode unchanged.
"""

from __future__ import annotations

import json
from typing import Sequence

from .trees import (
    DegreeSequence,
    DegreeTree,
    Leaf,
    MarkedTree,
    RootedForest,
    RootedTree,
    TreeValidationError,
    UnrootedTree,
    parse_vertex_key,
    vertex_key,
)

CONTEXTS = ("rooted", "unrooted", "marked", "forest", "degree", "modified")


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(", ", ": "))


def tree_to_json(t, meta: dict | None = None) -> dict:
    if isinstance(t, MarkedTree):
        out = tree_to_json(t.tree)
        out["marks"] = list(t.marks)
    elif isinstance(t, RootedTree):
        out = {"n": t.n, "root": t.root, "parent": list(t.parent)}
    elif isinstance(t, RootedForest):
        out = {"n": t.n, "roots": list(t.roots), "parent": list(t.parent)}
    elif isinstance(t, UnrootedTree):
        out = {"n": t.n, "edges": [list(e) for e in sorted(t.edges)]}
    elif isinstance(t, DegreeTree):
        pm = t.parent_map()
        order = sorted(pm, key=lambda v: (isinstance(v, Leaf), v.index if isinstance(v, Leaf) else v))
        out = {
            "degrees": list(t.degrees.d),
            "root": vertex_key(t.root),
            "parent": {vertex_key(v): vertex_key(pm[v]) for v in order},
        }
    else:
        raise TypeError(f"cannot serialize {type(t).__name__}")
    if meta:
        out["meta"] = meta
    return out


def tree_from_json(obj: dict):
    try:
        if "degrees" in obj:
            pm = {parse_vertex_key(k): parse_vertex_key(v) for k, v in obj["parent"].items()}
            return DegreeTree.from_parent_map(DegreeSequence(tuple(obj["degrees"])), parse_vertex_key(str(obj["root"])), pm)
        if "edges" in obj:
            return UnrootedTree.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])
        n = int(obj["n"])
        parent = tuple(int(p) for p in obj["parent"])
        if len(parent) != n:
            raise TreeValidationError(f"parent list has length {len(parent)}, expected {n}")
        if "roots" in obj:
            return RootedForest(n, tuple(obj["roots"]), parent)
        tree = RootedTree(n, int(obj["root"]), parent)
        if "marks" in obj:
            return MarkedTree(tree, tuple(int(x) for x in obj["marks"]))
        return tree
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TreeValidationError):
            raise
        raise TreeValidationError(f"malformed tree JSON: {exc}") from exc


def edge_list(t) -> list[str]:
    """One ``parent child`` line per edge; leaves of degree trees print as ``l<j>``."""
    if isinstance(t, MarkedTree):
        t = t.tree
    if isinstance(t, UnrootedTree):
        return [f"{u} {v}" for u, v in sorted(t.edges)]
    return [f"{p} {v}" for p, v in t.edges()]


def to_dot(t, name: str = "tree") -> str:
    """Graphviz digraph with edges pointing from parent to child; roots double-circled."""
    marks: Sequence[int] = ()
    if isinstance(t, MarkedTree):
        marks = t.marks
        t = t.tree
    lines = [f"digraph {name} {{"]
    if isinstance(t, UnrootedTree):
        lines[0] = f"graph {name} {{"
        for v in range(1, t.n + 1):
            lines.append(f'  "{v}";')
        lines += [f'  "{u}" -- "{v}";' for u, v in sorted(t.edges)]
        lines.append("}")
        return "\n".join(lines)
    roots = set(t.roots)
    for v in t.vertices():
        attrs = [f'label="{v}"']
        attrs.append("shape=doublecircle" if v in roots else "shape=circle")
        if v in marks:
            attrs.append(f'xlabel="m{",".join(str(i + 1) for i, x in enumerate(marks) if x == v)}"')
        lines.append(f'  "{v}" [{", ".join(attrs)}];')
    lines += [f'  "{p}" -> "{v}";' for p, v in t.edges()]
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Codes


def code_to_text(seq: Sequence[int]) -> str:
    return " ".join(str(x) for x in seq)


def code_from_text(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for pos, tok in enumerate(text.split(), 1):
        try:
            out.append(int(tok))
        except ValueError:
            raise TreeValidationError(f"token {tok!r} at position {pos} is not an integer") from None
    return tuple(out)


def code_to_json(context: str, seq: Sequence[int], *, n=None, r=None, roots=None, degrees=None, meta=None) -> dict:
    if context not in CONTEXTS:
        raise ValueError(f"unknown context {context!r}")
    out: dict = {"context": context}
    if n is not None:
        out["n"] = n
    if r is not None:
        out["r"] = r
    if roots is not None:
        out["roots"] = list(roots)
    if degrees is not None:
        out["degrees"] = list(degrees)
    out["seq"] = list(seq)
    if meta:
        out["meta"] = meta
    return out
