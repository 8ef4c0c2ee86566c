"""Quivers (finite directed multigraphs) and dimension-vector helpers.

Vertex order is semantic: it fixes the coordinates of dimension vectors, so
parsing and canonical serialization both preserve the given order.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .errors import NotHereditarySetup

DimVec = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise NotHereditarySetup(f"unknown vertex {name!r}") from None


def validate_quiver(q: Quiver) -> None:
    """Check well-formedness and acyclicity; raises NotHereditarySetup.

    Acyclicity (no oriented cycles, loops included) is what keeps the module
    category hereditary and every object finite, so it is enforced here.
    """
    if not q.vertices:
        raise NotHereditarySetup("quiver must have at least one vertex")
    if len(set(q.vertices)) != len(q.vertices):
        raise NotHereditarySetup("duplicate vertex names")
    labels = [a.label for a in q.arrows]
    if len(set(labels)) != len(labels):
        raise NotHereditarySetup("duplicate arrow labels")
    for a in q.arrows:
        if not (0 <= a.source < q.n and 0 <= a.target < q.n):
            raise NotHereditarySetup(f"arrow {a.label!r} has an endpoint outside the vertex set")
    # Kahn's algorithm; leftover vertices mean an oriented cycle.
    indeg = [0] * q.n
    for a in q.arrows:
        indeg[a.target] += 1
    queue = deque(v for v in range(q.n) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for a in q.arrows:
            if a.source == v:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
    if seen != q.n:
        raise NotHereditarySetup("quiver has an oriented cycle; category is not hereditary here")


def topological_order(q: Quiver) -> tuple[int, ...]:
    """Vertices ordered so every arrow points forward (ties by vertex index)."""
    indeg = [0] * q.n
    for a in q.arrows:
        indeg[a.target] += 1
    ready = sorted(v for v in range(q.n) if indeg[v] == 0)
    order: list[int] = []
    while ready:
        v = ready.pop(0)
        order.append(v)
        for a in q.arrows:
            if a.source == v:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    ready.append(a.target)
        ready.sort()
    if len(order) != q.n:
        raise NotHereditarySetup("quiver has an oriented cycle; category is not hereditary here")
    return tuple(order)


def quiver_from_dict(d: dict) -> Quiver:
    """Build and validate a quiver from {"vertices": [...], "arrows": [{src,dst,label}]}."""
    try:
        vertices = tuple(str(v) for v in d["vertices"])
        raw_arrows = d.get("arrows", [])
    except (KeyError, TypeError) as e:
        raise NotHereditarySetup(f"malformed quiver description: {e}") from None
    name_to_idx = {v: i for i, v in enumerate(vertices)}
    arrows = []
    for i, a in enumerate(raw_arrows):
        try:
            src, dst = str(a["src"]), str(a["dst"])
        except (KeyError, TypeError) as e:
            raise NotHereditarySetup(f"malformed arrow #{i}: {e}") from None
        if src not in name_to_idx or dst not in name_to_idx:
            raise NotHereditarySetup(f"arrow #{i} references unknown vertex {src!r} or {dst!r}")
        arrows.append(Arrow(name_to_idx[src], name_to_idx[dst], str(a.get("label", f"a{i}"))))
    q = Quiver(vertices, tuple(arrows))
    validate_quiver(q)
    return q


def quiver_to_dict(q: Quiver) -> dict:
    return {
        "vertices": list(q.vertices),
        "arrows": [{"src": q.vertices[a.source], "dst": q.vertices[a.target], "label": a.label}
                   for a in q.arrows],
    }


def canonical_quiver_json(q: Quiver) -> str:
    return json.dumps(quiver_to_dict(q), sort_keys=True, separators=(",", ":"))


def line_quiver(n: int) -> Quiver:
    """The equioriented A_n quiver 1 -> 2 -> ... -> n."""
    if n < 1:
        raise NotHereditarySetup("line quiver needs at least one vertex")
    vertices = tuple(str(i + 1) for i in range(n))
    arrows = tuple(Arrow(i, i + 1, f"a{i + 1}") for i in range(n - 1))
    return Quiver(vertices, arrows)


def dims_add(d1: DimVec, d2: DimVec) -> DimVec:
    return tuple(a + b for a, b in zip(d1, d2))


def dims_sub(d1: DimVec, d2: DimVec) -> DimVec:
    return tuple(a - b for a, b in zip(d1, d2))


def dims_leq(d1: DimVec, d2: DimVec) -> bool:
    return all(a <= b for a, b in zip(d1, d2))


def dims_nonneg(d: DimVec) -> bool:
    return all(a >= 0 for a in d)


def total_dim(d: DimVec) -> int:
    return sum(d)


def zero_dims(n: int) -> DimVec:
    return (0,) * n


def subdimvecs(d: DimVec) -> Iterator[DimVec]:
    """All dimension vectors e with 0 <= e <= d componentwise (last coord fastest)."""
    yield from itertools.product(*(range(x + 1) for x in d))


def dimvecs_up_to(n_vertices: int, max_total: int) -> Iterator[DimVec]:
    """All dimension vectors with total dimension at most max_total."""
    for d in itertools.product(range(max_total + 1), repeat=n_vertices):
        if sum(d) <= max_total:
            yield d
