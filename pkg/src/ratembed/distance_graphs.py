"""Graphs, exact embeddings, certificate checks and closed-form parameters."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

import networkx as nx

from ratembed.errors import DomainError
from ratembed.exact_arith import (
    QVec,
    as_rational,
    format_rational,
    is_square,
    is_sum_two_squares,
    parse_rational,
    squared_dist,
)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    parts: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        names = set(self.vertices)
        if len(names) != len(self.vertices):
            raise DomainError("duplicate vertex names")
        seen = set()
        edges = []
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"loop at {u!r}")
            if u not in names or v not in names:
                raise DomainError(f"edge ({u!r}, {v!r}) references an unknown vertex")
            key = frozenset((u, v))
            if key in seen:
                raise DomainError(f"repeated edge ({u!r}, {v!r})")
            seen.add(key)
            edges.append((u, v))
        object.__setattr__(self, "edges", tuple(edges))
        if self.parts is not None:
            parts = tuple(tuple(p) for p in self.parts)
            object.__setattr__(self, "parts", parts)
            flat = [v for p in parts for v in p]
            if sorted(flat) != sorted(self.vertices):
                raise DomainError("parts must partition the vertex set")
            expected = {
                frozenset((u, v))
                for p, q in combinations(parts, 2)
                for u in p
                for v in q
            }
            if expected != seen:
                raise DomainError("edge set is not the complete multipartite graph on the parts")

    @classmethod
    def complete_multipartite(cls, parts: Sequence[Sequence[str]]) -> "Graph":
        parts = tuple(tuple(p) for p in parts)
        vertices = tuple(v for p in parts for v in p)
        edges = tuple((u, v) for p, q in combinations(parts, 2) for u in p for v in q)
        return cls(vertices, edges, parts)

    @classmethod
    def complete(cls, names: Sequence[str]) -> "Graph":
        return cls.complete_multipartite([(v,) for v in names])

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def edge_set(self) -> set[frozenset[str]]:
        return {frozenset(e) for e in self.edges}

    def degrees(self) -> dict[str, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def part_profile(self) -> tuple[int, int, int]:
        """Counts (parts of size 1, of size 2, of size >= 3)."""
        if self.parts is None:
            raise DomainError("graph carries no multipartite descriptor")
        sizes = [len(p) for p in self.parts]
        return (
            sum(1 for s in sizes if s == 1),
            sum(1 for s in sizes if s == 2),
            sum(1 for s in sizes if s >= 3),
        )


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    n: int
    r: Fraction
    coords: Mapping[str, QVec]

    def __post_init__(self):
        object.__setattr__(self, "r", as_rational(self.r))
        if self.r <= 0:
            raise DomainError("squared edge distance must be positive")
        missing = [v for v in self.graph.vertices if v not in self.coords]
        if missing:
            raise DomainError(f"no coordinates for {missing}")

    def scaled(self, factor) -> "Embedding":
        f = as_rational(factor)
        return Embedding(
            self.graph,
            self.n,
            self.r * f * f,
            {v: p * f for v, p in self.coords.items()},
        )

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "r": format_rational(self.r),
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.edges],
        }
        if self.graph.parts is not None:
            out["parts"] = [list(p) for p in self.graph.parts]
        out["coords"] = {v: self.coords[v].to_strings() for v in self.graph.vertices}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Embedding":
        try:
            parts = data.get("parts")
            graph = Graph(
                tuple(data["vertices"]),
                tuple(tuple(e) for e in data["edges"]),
                None if parts is None else tuple(tuple(p) for p in parts),
            )
            coords = {
                v: QVec(tuple(parse_rational(c) for c in data["coords"][v]))
                for v in graph.vertices
            }
            return cls(graph, int(data["n"]), parse_rational(data["r"]), coords)
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed embedding: {exc}") from exc


@dataclass
class EdgeCheck:
    u: str
    v: str
    squared_distance: Fraction
    ok: bool


@dataclass
class VerificationReport:
    edges: list[EdgeCheck]
    faithful_checked: bool = False
    unit_non_edges: list[tuple[str, str]] = field(default_factory=list)

    @property
    def edges_ok(self) -> bool:
        return all(e.ok for e in self.edges)

    @property
    def failed_edges(self) -> list[EdgeCheck]:
        return [e for e in self.edges if not e.ok]

    @property
    def ok(self) -> bool:
        if self.faithful_checked and self.unit_non_edges:
            return False
        return self.edges_ok

    def to_json(self) -> dict:
        out = {
            "ok": self.ok,
            "edges_ok": self.edges_ok,
            "edge_count": len(self.edges),
            "edges": [
                {
                    "u": e.u,
                    "v": e.v,
                    "squared_distance": format_rational(e.squared_distance),
                    "ok": e.ok,
                }
                for e in self.edges
            ],
        }
        if self.faithful_checked:
            out["non_edges_at_edge_distance"] = [list(p) for p in self.unit_non_edges]
        return out


def verify_embedding(e: Embedding, faithful: bool = False) -> VerificationReport:
    """Exact check that every edge has squared length ``e.r``.

    With ``faithful`` also list non-adjacent pairs at that same distance.
    """
    dims = {p.dim for p in e.coords.values()}
    if dims != {e.n}:
        raise DomainError(f"coordinates have dimensions {sorted(dims)}, expected {e.n}")
    checks = []
    for u, v in e.graph.edges:
        d = squared_dist(e.coords[u], e.coords[v])
        checks.append(EdgeCheck(u, v, d, d == e.r))
    report = VerificationReport(checks, faithful_checked=faithful)
    if faithful:
        adjacent = e.graph.edge_set()
        for u, v in combinations(e.graph.vertices, 2):
            if frozenset((u, v)) in adjacent:
                continue
            if squared_dist(e.coords[u], e.coords[v]) == e.r:
                report.unit_non_edges.append((u, v))
    return report


def multipartite_dimension(singles: int, pairs: int, larger: int) -> int:
    """Dimension of a complete multipartite graph from its part-size profile.

    ``singles``, ``pairs`` and ``larger`` count parts of size 1, 2 and >= 3.
    """
    if min(singles, pairs, larger) < 0:
        raise DomainError("part counts must be non-negative")
    if singles + pairs + larger < 2:
        raise DomainError("need at least two parts")
    base = singles + pairs + 2 * larger
    return base - 1 if pairs + larger <= 1 else base


def schoenberg_c1(n: int) -> int:
    """Largest regular simplex with vertices in Q^n, counted in vertices."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n % 2 == 0 and is_square(n + 1):
        return n + 1
    if n % 4 == 3:
        return n + 1
    if n % 4 == 1 and is_sum_two_squares(n + 1):
        return n + 1
    return n


def clique_search_bruteforce(
    n: int, r, height: int, denominator: int = 1
) -> tuple[int, list[QVec]]:
    """Largest set of grid points pairwise at squared distance ``r``.

    The grid is ``{c / denominator : 0 <= c <= height * denominator}^n``.
    Returns the size and a witness (the lexicographically least one among
    maximum cliques).
    """
    r = as_rational(r)
    if n < 1 or height < 1 or denominator < 1:
        raise DomainError("n, height and denominator must be positive")
    target = r * denominator * denominator
    span = range(height * denominator + 1)
    points = list(product(span, repeat=n))
    if target.denominator != 1 or target <= 0:
        return 1, [QVec(tuple(Fraction(c, denominator) for c in points[0]))]
    t = target.numerator
    g = nx.Graph()
    g.add_nodes_from(range(len(points)))
    # pairwise scan; grids here stay small
    for i, p in enumerate(points):
        for j in range(i + 1, len(points)):
            q = points[j]
            if sum((a - b) * (a - b) for a, b in zip(p, q)) == t:
                g.add_edge(i, j)
    best = (1, [0])
    for clique in nx.find_cliques(g):
        clique = sorted(clique)
        if len(clique) > best[0] or (len(clique) == best[0] and clique < best[1]):
            best = (len(clique), clique)
    size, idx = best
    witness = [QVec(tuple(Fraction(c, denominator) for c in points[i])) for i in idx]
    return size, witness
