"""Regular unit-distance supergraphs of plane unit-distance graphs.

Floating-point throughout; every output carries its worst edge-length
deviation.  Generic-position choices come from ``random.Random(seed)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping

from scipy.spatial import cKDTree

from ratembed.distance_graphs import Graph
from ratembed.errors import DomainError

Point = tuple[float, float]

DEFAULT_TOLERANCE = 1e-9
MIN_SEPARATION = 1e-6


class PlacementError(RuntimeError):
    def __init__(self, seed: int, attempts: int):
        super().__init__(
            f"could not place copies without vertex collisions "
            f"(seed={seed}, {attempts} attempts)"
        )
        self.seed = seed


@dataclass
class PlaneEmbedding:
    graph: Graph
    coords: dict[str, Point]
    tolerance: float = DEFAULT_TOLERANCE
    notes: list[str] = field(default_factory=list)

    def edge_lengths(self) -> list[float]:
        return [math.dist(self.coords[u], self.coords[v]) for u, v in self.graph.edges]

    def max_edge_deviation(self) -> float:
        return max((abs(d - 1.0) for d in self.edge_lengths()), default=0.0)

    def min_separation(self) -> float:
        pts = [self.coords[v] for v in self.graph.vertices]
        if len(pts) < 2:
            return math.inf
        dist, _ = cKDTree(pts).query(pts, k=2)
        return float(dist[:, 1].min())

    def validate(self) -> None:
        if self.max_edge_deviation() > self.tolerance:
            raise DomainError(
                f"edge lengths deviate from 1 by {self.max_edge_deviation():.3e} "
                f"(tolerance {self.tolerance:g})"
            )
        if self.min_separation() <= self.tolerance:
            raise DomainError("two vertices coincide within tolerance")

    def to_json(self) -> dict:
        return {
            "vertices": list(self.graph.vertices),
            "edges": [list(e) for e in self.graph.edges],
            "coords": {v: [repr(x) for x in self.coords[v]] for v in self.graph.vertices},
            "tolerance": repr(self.tolerance),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PlaneEmbedding":
        try:
            graph = Graph(tuple(data["vertices"]), tuple(tuple(e) for e in data["edges"]))
            coords = {v: (float(data["coords"][v][0]), float(data["coords"][v][1])) for v in graph.vertices}
            tol = float(data.get("tolerance", DEFAULT_TOLERANCE))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise DomainError(f"malformed plane embedding: {exc}") from exc
        return cls(graph, coords, tol)


def _unit(angle: float) -> Point:
    return (math.cos(angle), math.sin(angle))


def _too_close(points: list[Point]) -> bool:
    if len(points) < 2:
        return False
    pairs = cKDTree(points).query_pairs(MIN_SEPARATION)
    return bool(pairs)


def base_regular_graph(r: int, seed: int = 0) -> PlaneEmbedding:
    """An r-regular unit-distance graph on 2^r vertices.

    Start from K2 and repeatedly add a translate of the whole graph by a
    unit vector, joining each vertex to its translate.
    """
    if r < 1:
        raise DomainError(f"r must be at least 1, got {r}")
    rng = random.Random(seed)
    for _ in range(100):
        coords: dict[str, Point] = {"0": (0.0, 0.0), "1": (1.0, 0.0)}
        edges = [("0", "1")]
        for step in range(1, r):
            # golden-angle spread with a seeded jitter keeps translates generic
            angle = step * 2.399963229728653 + rng.uniform(-0.2, 0.2)
            dx, dy = _unit(angle)
            tag = f"+{step}"
            shifted = {v + tag: (x + dx, y + dy) for v, (x, y) in coords.items()}
            edges = (
                edges
                + [(u + tag, v + tag) for u, v in edges]
                + [(v, v + tag) for v in coords]
            )
            coords.update(shifted)
        if not _too_close(list(coords.values())):
            break
    names = {v: f"k{i}" for i, v in enumerate(coords)}
    graph = Graph(tuple(names.values()), tuple((names[u], names[v]) for u, v in edges))
    return PlaneEmbedding(graph, {names[v]: p for v, p in coords.items()})


class _Collision(Exception):
    pass


class _Builder:
    """Mutable vertex/edge store used while assembling a supergraph."""

    def __init__(self, g: PlaneEmbedding):
        self.coords: dict[str, Point] = dict(g.coords)
        self.edges: list[tuple[str, str]] = list(g.graph.edges)
        self.order: list[str] = list(g.graph.vertices)
        self._counter = 0

    def fresh(self, prefix: str) -> str:
        while True:
            self._counter += 1
            name = f"{prefix}{self._counter}"
            if name not in self.coords:
                return name

    def add_vertex(self, name: str, p: Point) -> None:
        self.coords[name] = p
        self.order.append(name)

    def degrees(self) -> dict[str, int]:
        deg = dict.fromkeys(self.order, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def check_separation(self) -> None:
        if _too_close([self.coords[v] for v in self.order]):
            raise _Collision()


def _unit_steps(delta: Point, rng: random.Random) -> list[Point]:
    """Unit vectors (an odd number, at least 3) summing to ``delta``."""
    length = math.hypot(*delta)
    count = max(3, math.ceil(length + 2))
    if count % 2 == 0:
        count += 1
    steps: list[Point] = []
    pos = (0.0, 0.0)
    for i in range(count - 2):
        remaining_after = count - i - 1
        rx, ry = delta[0] - pos[0], delta[1] - pos[1]
        toward = math.atan2(ry, rx)
        width = math.pi
        for _ in range(200):
            step = _unit(toward + rng.uniform(-width, width))
            nx_, ny_ = pos[0] + step[0], pos[1] + step[1]
            d = math.hypot(delta[0] - nx_, delta[1] - ny_)
            if 0.1 <= d <= remaining_after - 0.5:
                break
            width *= 0.9
        else:
            raise _Collision()
        steps.append(step)
        pos = (nx_, ny_)
    # close with two unit vectors w1 + w2 = rest, |rest| in [0.1, 1.5]
    rx, ry = delta[0] - pos[0], delta[1] - pos[1]
    d = math.hypot(rx, ry)
    h = math.sqrt(1.0 - d * d / 4.0) * (1 if rng.random() < 0.5 else -1)
    px, py = -ry / d, rx / d
    w1 = (rx / 2 + h * px, ry / 2 + h * py)
    w2 = (rx - w1[0], ry - w1[1])
    # renormalize away rounding so every link is unit to machine precision
    steps += [_normalized(w1), _normalized(w2)]
    return steps


def _normalized(p: Point) -> Point:
    n = math.hypot(*p)
    return (p[0] / n, p[1] / n)


def _rotate(p: Point, angle: float) -> Point:
    c, s = math.cos(angle), math.sin(angle)
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def _link(builder: _Builder, a: str, b: str, gadget: PlaneEmbedding, uv: tuple[str, str], rng):
    """Join pendant vertices ``a`` and ``b`` by a chain of gadget copies.

    The gadget is an r-regular graph minus the edge ``uv``; copy i has its
    ``u`` glued to a (first copy) or linked by a unit edge to the previous
    copy's ``v``, and the last copy's ``v`` is glued to ``b``.
    """
    u, v = uv
    gu, gv = gadget.coords[u], gadget.coords[v]
    base_angle = math.atan2(gv[1] - gu[1], gv[0] - gu[0])
    pa, pb = builder.coords[a], builder.coords[b]
    steps = _unit_steps((pb[0] - pa[0], pb[1] - pa[1]), rng)
    copies = (len(steps) + 1) // 2
    anchor = pa
    prev_v: str | None = None
    for c in range(copies):
        rho = steps[2 * c]
        theta = math.atan2(rho[1], rho[0]) - base_angle
        names: dict[str, str] = {}
        for w in gadget.graph.vertices:
            if c == 0 and w == u:
                names[w] = a
                continue
            if c == copies - 1 and w == v:
                names[w] = b
                continue
            off = _rotate((gadget.coords[w][0] - gu[0], gadget.coords[w][1] - gu[1]), theta)
            name = builder.fresh("g")
            builder.add_vertex(name, (anchor[0] + off[0], anchor[1] + off[1]))
            names[w] = name
        builder.edges.extend((names[x], names[y]) for x, y in gadget.graph.edges)
        if prev_v is not None:
            builder.edges.append((prev_v, names[u]))
        prev_v = names[v]
        if c < copies - 1:
            vpos = builder.coords[names[v]]
            sigma = steps[2 * c + 1]
            anchor = (vpos[0] + sigma[0], vpos[1] + sigma[1])


def _gadget(r: int, seed: int) -> tuple[PlaneEmbedding, tuple[str, str]]:
    k = base_regular_graph(r, seed)
    uv = k.graph.edges[0]
    rest = tuple(e for e in k.graph.edges if e != uv)
    return PlaneEmbedding(Graph(k.graph.vertices, rest), k.coords), uv


def _attempt(g: PlaneEmbedding, r: int, rng: random.Random, seed: int) -> PlaneEmbedding:
    builder = _Builder(g)
    deg = builder.degrees()
    pendants: list[str] = []
    for v in list(g.graph.vertices):
        missing = r - deg[v]
        start = rng.uniform(0, 2 * math.pi)
        for i in range(missing):
            angle = start + 2 * math.pi * i / missing + rng.uniform(-0.1, 0.1)
            dx, dy = _unit(angle)
            x, y = g.coords[v]
            name = builder.fresh("p")
            builder.add_vertex(name, (x + dx, y + dy))
            builder.edges.append((v, name))
            pendants.append(name)
    builder.check_separation()
    notes = []
    if r == 1 or not pendants:
        return _finish(builder, g, notes)

    gadget, uv = _gadget(r, seed)
    odd = len(pendants) % 2 == 1
    centre = pendants.pop() if odd else None
    for a, b in zip(pendants[0::2], pendants[1::2]):
        _link(builder, a, b, gadget, uv, rng)
    builder.check_separation()
    if not odd:
        return _finish(builder, g, notes)

    # r rotated copies of the whole thing, glued at the remaining pendant
    cx, cy = builder.coords[centre]
    base_order, base_edges = list(builder.order), list(builder.edges)
    offset = rng.uniform(0, 2 * math.pi)
    for j in range(1, r):
        angle = offset + 2 * math.pi * j / r + rng.uniform(-0.05, 0.05)
        rename = {w: (w if w == centre else f"{w}#{j}") for w in base_order}
        for w in base_order:
            if w == centre:
                continue
            x, y = builder.coords[w]
            ox, oy = _rotate((x - cx, y - cy), angle)
            builder.add_vertex(rename[w], (cx + ox, cy + oy))
        builder.edges.extend((rename[x], rename[y]) for x, y in base_edges)
    builder.check_separation()
    notes.append(f"odd pendant count: {r} copies glued at {centre}")
    return _finish(builder, g, notes)


def _finish(builder: _Builder, g: PlaneEmbedding, notes: list[str]) -> PlaneEmbedding:
    graph = Graph(tuple(builder.order), tuple(builder.edges))
    out = PlaneEmbedding(graph, {v: builder.coords[v] for v in builder.order}, g.tolerance, notes)
    out.validate()
    return out


def regular_supergraph(
    g: PlaneEmbedding, r: int, seed: int = 0, max_attempts: int = 25
) -> PlaneEmbedding:
    """An r-regular unit-distance graph containing ``g`` (same vertex names)."""
    g.validate()
    deg = g.graph.degrees()
    top = max(deg.values(), default=0)
    if r < max(top, 1):
        raise DomainError(f"r = {r} is below the maximum degree {top}")
    if all(d == r for d in deg.values()):
        return PlaneEmbedding(g.graph, dict(g.coords), g.tolerance)
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        try:
            out = _attempt(g, r, rng, seed + attempt)
        except _Collision:
            continue
        out.notes.append(
            f"collision avoidance is a bounded retry policy; succeeded on attempt {attempt}"
        )
        return out
    raise PlacementError(seed, max_attempts)


def is_regular(pe: PlaneEmbedding, r: int) -> bool:
    return all(d == r for d in pe.graph.degrees().values())


def contains_subgraph(big: PlaneEmbedding, small: PlaneEmbedding) -> bool:
    """Same-named vertices, same positions, and every edge of ``small`` present."""
    edges = big.graph.edge_set()
    return all(
        v in big.coords and big.coords[v] == small.coords[v] for v in small.graph.vertices
    ) and all(frozenset(e) in edges for e in small.graph.edges)


def moser_spindle() -> PlaneEmbedding:
    """The 7-vertex, 11-edge Moser spindle."""
    h = math.sqrt(3) / 2
    spread = 2 * math.asin(1 / (2 * math.sqrt(3)))
    coords: dict[str, Point] = {"A": (0.0, 0.0)}
    edges = []
    for side, angle in (("1", 0.0), ("2", spread)):
        b, c, d = _rotate((h, 0.5), angle), _rotate((h, -0.5), angle), _rotate((2 * h, 0.0), angle)
        coords.update({"B" + side: b, "C" + side: c, "D" + side: d})
        edges += [("A", "B" + side), ("A", "C" + side), ("B" + side, "C" + side),
                  ("B" + side, "D" + side), ("C" + side, "D" + side)]
    edges.append(("D1", "D2"))
    return PlaneEmbedding(Graph(tuple(coords), tuple(edges)), coords)


def path_graph(k: int = 3) -> PlaneEmbedding:
    """Path on k vertices laid out along the x-axis at unit spacing."""
    names = [f"x{i}" for i in range(k)]
    coords = {v: (float(i), 0.0) for i, v in enumerate(names)}
    return PlaneEmbedding(Graph(tuple(names), tuple(zip(names, names[1:]))), coords)
