"""Graphs, terminal pairings and linkage results."""

from typing import Optional

import networkx as nx
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from ..errors import InputError


class Graph(BaseModel):
    """Simple undirected graph on vertices 0..vertices-1."""

    vertices: int = Field(ge=1)
    edges: list[tuple[int, int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_edges(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        return self

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.vertices))
        G.add_edges_from(self.edges)
        return G

    def adjacency(self) -> list[list[int]]:
        """Sorted neighbour lists, so searches visit vertices in a fixed order."""
        adj: list[set[int]] = [set() for _ in range(self.vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return [sorted(nbrs) for nbrs in adj]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges

    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(vertices=self.vertices, edges=[*self.edges, (u, v)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(vertices=n, edges=[(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(vertices=n, edges=[(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(vertices=n, edges=[(i, i + 1) for i in range(n - 1)])


class Pairing(BaseModel):
    """k terminal pairs (s_i, t_i) with all 2k terminals distinct."""

    pairs: list[tuple[int, int]]

    @field_validator("pairs")
    @classmethod
    def check_distinct(cls, v):
        if not v:
            raise ValueError("pairing must have at least one pair")
        terminals = [t for pair in v for t in pair]
        if len(set(terminals)) != len(terminals):
            raise ValueError("terminals must be pairwise distinct")
        return v

    @property
    def k(self) -> int:
        return len(self.pairs)

    def terminals(self) -> set[int]:
        return {t for pair in self.pairs for t in pair}

    def canonical(self) -> "Pairing":
        """Orientation-free form: each pair ascending, pairs sorted."""
        return Pairing(pairs=sorted((min(s, t), max(s, t)) for s, t in self.pairs))


def as_pairing(pairs, vertices: int) -> Pairing:
    """Validate a pairing against a graph's vertex range, raising InputError."""
    try:
        pairing = pairs if isinstance(pairs, Pairing) else Pairing(pairs=[tuple(p) for p in pairs])
    except ValidationError as e:
        raise InputError(e.errors()[0]["msg"], field="pairing") from e
    for t in pairing.terminals():
        if not 0 <= t < vertices:
            raise InputError(f"terminal {t} out of range", field="pairing")
    return pairing


class LinkageResult(BaseModel):
    linked: bool
    k: int
    witness_paths: Optional[list[list[int]]] = None
    failing_pairing: Optional[Pairing] = None
    pairings_checked: int = 0

    def summary(self) -> str:
        if self.linked:
            return f"linked k={self.k} pairings={self.pairings_checked}"
        return f"not linked k={self.k} failing={self.failing_pairing.pairs}"
