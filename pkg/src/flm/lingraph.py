"""Concept graphs with term-labelled edges, and expert collections."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import DuplicateEdge, EmptyCollection, SelfLoop, ShapeMismatch, ZeroEdge
from .matrix import LingMatrix
from .space import LinguisticSpace, Term


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: Term


class ConceptGraph:
    def __init__(self, space: LinguisticSpace, concepts: Sequence[str], edges: Sequence[tuple[int, int, Term]] = (),
                 directed: bool = True, name: str = ""):
        if len(set(concepts)) != len(concepts):
            raise ValueError("concept labels must be unique")
        self.name = name
        self.space = space
        self.concepts = tuple(concepts)
        self.directed = directed
        n = len(self.concepts)
        out = []
        for i, j, label in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"edge ({i}, {j}) outside {n} concepts")
            if i == j:
                raise SelfLoop(f"self-loop on {self.concepts[i]}")
            space.check(label)
            if label.is_zero:
                raise ZeroEdge(f"edge {self.concepts[i]} -> {self.concepts[j]} is labelled 0")
            out.append(Edge(i, j, label))
        self.edges = tuple(out)

    @classmethod
    def from_labels(cls, space: LinguisticSpace, concepts: Sequence[str], edges: Sequence[tuple[str, str, str]],
                    directed: bool = True, name: str = "") -> ConceptGraph:
        idx = {c: k for k, c in enumerate(concepts)}
        return cls(space, concepts, [(idx[a], idx[b], space.term(t)) for a, b, t in edges], directed, name)

    def __eq__(self, other):
        return (isinstance(other, ConceptGraph) and self.name == other.name and self.space == other.space
                and self.concepts == other.concepts and self.directed == other.directed
                and self.edges == other.edges)

    def __repr__(self):
        return f"ConceptGraph({self.name!r}, {len(self.concepts)} concepts, {len(self.edges)} edges)"

    def edge_set(self) -> set[tuple[int, int, Term]]:
        if self.directed:
            return {(e.source, e.target, e.label) for e in self.edges}
        return {(min(e.source, e.target), max(e.source, e.target), e.label) for e in self.edges}

    def relabel(self, perm: Sequence[int]) -> ConceptGraph:
        """Concept k moves to position perm[k]."""
        concepts = [None] * len(self.concepts)
        for k, c in enumerate(self.concepts):
            concepts[perm[k]] = c
        edges = [(perm[e.source], perm[e.target], e.label) for e in self.edges]
        return ConceptGraph(self.space, concepts, edges, self.directed, self.name)


def graph_to_matrix(g: ConceptGraph) -> LingMatrix:
    n = len(g.concepts)
    grid = [[g.space.zero] * n for _ in range(n)]
    for e in g.edges:
        cells = [(e.source, e.target)] if g.directed else [(e.source, e.target), (e.target, e.source)]
        for i, j in cells:
            if not grid[i][j].is_zero:
                raise DuplicateEdge(f"two labels for {g.concepts[e.source]} -> {g.concepts[e.target]}")
            grid[i][j] = e.label
    return LingMatrix(g.space, grid)


def matrix_to_graph(m: LingMatrix, concepts: Sequence[str] | None = None, directed: bool = True,
                    name: str = "") -> ConceptGraph:
    if m.rows != m.cols:
        raise ShapeMismatch(f"adjacency matrix must be square, got {m.rows}x{m.cols}")
    if concepts is None:
        concepts = [f"C{k + 1}" for k in range(m.rows)]
    if len(concepts) != m.rows:
        raise ShapeMismatch(f"{len(concepts)} concepts for a {m.rows}x{m.rows} matrix")
    edges = []
    for i in range(m.rows):
        for j in range(m.cols):
            t = m.data[i][j]
            if t.is_zero or (not directed and j < i):
                continue
            if i == j:
                raise SelfLoop(f"nonzero diagonal entry at {concepts[i]}")
            edges.append((i, j, t))
    return ConceptGraph(m.space, concepts, edges, directed, name)


def is_connected(g: ConceptGraph) -> bool:
    """Weak connectivity: edge direction is ignored."""
    n = len(g.concepts)
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for e in g.edges:
        adj[e.source].append(e.target)
        adj[e.target].append(e.source)
    seen = {0}
    queue = deque([0])
    while queue:
        for v in adj[queue.popleft()]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == n


class ExpertCollection:
    def __init__(self, graphs: Sequence[ConceptGraph], name: str = ""):
        graphs = list(graphs)
        if graphs:
            first = graphs[0].concepts
            for g in graphs[1:]:
                if g.concepts != first:
                    raise ValueError(f"graph {g.name or '?'} does not share the concept list of {graphs[0].name or '?'}")
        self.name = name
        self.graphs = tuple(graphs)

    def __eq__(self, other):
        return isinstance(other, ExpertCollection) and self.name == other.name and self.graphs == other.graphs

    def __len__(self):
        return len(self.graphs)


class Strength(enum.Enum):
    SUPER_STRONG = "super-strong"
    MIXED = "mixed"
    TOTALLY_DISCONNECTED = "totally-disconnected"


@dataclass(frozen=True)
class ExpertStrength:
    """Verdict over an expert collection.

    ``connected`` graphs out of ``total``.  A mixed verdict is the
    n-strong case with n = ``connected``.
    """

    kind: Strength
    connected: int
    total: int

    def __str__(self):
        if self.kind is Strength.MIXED:
            return f"{self.connected}-strong (mixed {self.connected}/{self.total})"
        return self.kind.value


def classify_experts(c: ExpertCollection) -> ExpertStrength:
    if not len(c):
        raise EmptyCollection("expert collection has no graphs")
    k = sum(1 for g in c.graphs if is_connected(g))
    if k == len(c):
        kind = Strength.SUPER_STRONG
    elif k == 0:
        kind = Strength.TOTALLY_DISCONNECTED
    else:
        kind = Strength.MIXED
    return ExpertStrength(kind, k, len(c))
