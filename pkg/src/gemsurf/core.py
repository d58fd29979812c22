"""Core data model: 3-regular edge-colored multigraphs and their structural predicates.

A graph is stored as three fixed-point-free involutions on the vertex set
{1..n}, one per color.  ``matchings[c][u]`` is the unique color-``c``
neighbor of ``u``.  Proper coloring and looplessness are structural:
every vertex has exactly one neighbor per color and never itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

COLORS = (0, 1, 2)


class GemError(Exception):
    """Base error for this package."""


class ValidationError(GemError):
    """Raised when edge records do not form a valid colored graph."""


class SeamError(GemError):
    """Raised for invalid connected-sum witnesses."""


# ============================================================
# The graph value and its constructors
# ============================================================


@dataclass(frozen=True)
class ColoredGraph:
    """Immutable 3-regular colored multigraph on vertices 1..n.

    ``matchings`` holds three tuples of length n+1 (slot 0 unused); entry
    ``matchings[c][u]`` is the color-c neighbor of u.
    """

    n: int
    matchings: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        n = self.n
        if n < 2 or n % 2 != 0:
            raise ValidationError(f"vertex count must be a positive even integer, got {n}")
        for c in COLORS:
            m = self.matchings[c]
            if len(m) != n + 1:
                raise ValidationError(f"color {c} matching has wrong length")
            for u in range(1, n + 1):
                v = m[u]
                if not 1 <= v <= n:
                    raise ValidationError(f"color {c} image of vertex {u} out of range")
                if v == u:
                    raise ValidationError(f"loop of color {c} at vertex {u}")
                if m[v] != u:
                    raise ValidationError(f"color {c} matching is not an involution at vertex {u}")

    def neighbor(self, color: int, v: int) -> int:
        return self.matchings[color][v]

    def edges(self):
        """Yield every edge once as (color, u, v) with u < v, sorted."""
        for c in COLORS:
            m = self.matchings[c]
            for u in range(1, self.n + 1):
                if u < m[u]:
                    yield (c, u, m[u])

    def edges_of_color(self, color: int) -> list[tuple[int, int]]:
        m = self.matchings[color]
        return [(u, m[u]) for u in range(1, self.n + 1) if u < m[u]]

    def has_edge(self, color: int, u: int, v: int) -> bool:
        return 1 <= u <= self.n and self.matchings[color][u] == v

    def is_simple(self) -> bool:
        """True iff no two colors match the same vertex pair."""
        for u in range(1, self.n + 1):
            nbrs = [self.matchings[c][u] for c in COLORS]
            if len(set(nbrs)) != 3:
                return False
        return True


def graph_from_matchings(n: int, m0: dict[int, int], m1: dict[int, int], m2: dict[int, int]) -> ColoredGraph:
    """Build a graph from three vertex->neighbor maps (validated)."""
    ms = []
    for c, m in enumerate((m0, m1, m2)):
        row = [0] * (n + 1)
        for u in range(1, n + 1):
            if u not in m:
                raise ValidationError(f"missing color {c} at vertex {u}")
            row[u] = m[u]
        ms.append(tuple(row))
    return ColoredGraph(n, tuple(ms))


def graph_from_pairs(n: int, pairs_by_color: tuple) -> ColoredGraph:
    """Build a graph from three lists of vertex pairs, one list per color."""
    records = []
    for c in COLORS:
        for (u, v) in pairs_by_color[c]:
            records.append((c, u, v))
    return validate(n, records)


def validate(n: int, edge_records) -> ColoredGraph:
    """Check a list of (color, u, v) records and return the graph.

    Errors: odd or non-positive vertex count, vertex index out of range,
    loop edge, color not in {0,1,2}, duplicate color at a vertex, missing
    color at a vertex.
    """
    if n < 2 or n % 2 != 0:
        raise ValidationError(f"vertex count must be a positive even integer, got {n}")
    maps: list[dict[int, int]] = [{}, {}, {}]
    for (c, u, v) in edge_records:
        if c not in COLORS:
            raise ValidationError(f"invalid color {c} on edge {u}-{v}")
        if not (1 <= u <= n) or not (1 <= v <= n):
            raise ValidationError(f"vertex index out of range on color-{c} edge {u}-{v}")
        if u == v:
            raise ValidationError(f"loop of color {c} at vertex {u}")
        for w in (u, v):
            if w in maps[c]:
                raise ValidationError(f"duplicate color {c} at vertex {w}")
        maps[c][u] = v
        maps[c][v] = u
    for c in COLORS:
        for u in range(1, n + 1):
            if u not in maps[c]:
                raise ValidationError(f"missing color {c} at vertex {u}")
    return graph_from_matchings(n, *maps)


def relabel(g: ColoredGraph, perm: dict[int, int]) -> ColoredGraph:
    """Apply the vertex bijection ``perm`` (old -> new) to ``g``."""
    if sorted(perm) != list(range(1, g.n + 1)) or sorted(perm.values()) != list(range(1, g.n + 1)):
        raise ValidationError("relabeling is not a bijection of 1..n")
    ms = []
    for c in COLORS:
        row = [0] * (g.n + 1)
        for u in range(1, g.n + 1):
            row[perm[u]] = perm[g.matchings[c][u]]
        ms.append(tuple(row))
    return ColoredGraph(g.n, tuple(ms))


# ============================================================
# Bicolored cycles, contractedness, connectivity
# ============================================================


@dataclass(frozen=True)
class BicoloredCycles:
    """Cycle decomposition of the subgraph spanned by two colors.

    Cycles partition {1..n}; each is listed starting at its smallest
    vertex, first step along the first color, and cycles are sorted by
    smallest member.
    """

    colors: tuple[int, int]
    cycles: tuple[tuple[int, ...], ...]


def bicolored_cycles(g: ColoredGraph, i: int, j: int) -> BicoloredCycles:
    """Orbits of the group generated by the color-i and color-j matchings."""
    if i == j or i not in COLORS or j not in COLORS:
        raise GemError(f"invalid color pair ({i}, {j})")
    mi, mj = g.matchings[i], g.matchings[j]
    seen = [False] * (g.n + 1)
    cycles = []
    for start in range(1, g.n + 1):
        if seen[start]:
            continue
        cyc = []
        v, next_color = start, i
        while not seen[v]:
            seen[v] = True
            cyc.append(v)
            v = (mi if next_color == i else mj)[v]
            next_color = j if next_color == i else i
        cycles.append(tuple(cyc))
    return BicoloredCycles((i, j), tuple(cycles))


def cycle_counts(g: ColoredGraph) -> dict[tuple[int, int], int]:
    """Number of bicolored cycles for each of the three color pairs."""
    return {(i, j): len(bicolored_cycles(g, i, j).cycles)
            for (i, j) in ((0, 1), (0, 2), (1, 2))}


def is_contracted(g: ColoredGraph) -> bool:
    """True iff every bicolored subgraph is a single Hamiltonian cycle."""
    return all(k == 1 for k in cycle_counts(g).values())


def connected_components(g: ColoredGraph, removed_edges: frozenset = frozenset(),
                         vertices: frozenset | None = None) -> list[frozenset[int]]:
    """Components of (a vertex subset of) g, ignoring ``removed_edges``.

    ``removed_edges`` holds (color, u, v) triples with u < v.
    """
    verts = set(vertices) if vertices is not None else set(range(1, g.n + 1))
    seen: set[int] = set()
    comps = []
    for start in sorted(verts):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        seen.add(start)
        while stack:
            u = stack.pop()
            for c in COLORS:
                v = g.matchings[c][u]
                if v not in verts:
                    continue
                e = (c, min(u, v), max(u, v))
                if e in removed_edges:
                    continue
                if v not in seen:
                    seen.add(v)
                    comp.add(v)
                    stack.append(v)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: ColoredGraph) -> bool:
    return len(connected_components(g)) == 1


# ============================================================
# Bipartiteness
# ============================================================

BLACK = "black"
WHITE = "white"


@dataclass(frozen=True)
class Bipartition:
    """A 2-coloring of the vertices, normalized so vertex 1 is black."""

    blacks: frozenset[int]
    whites: frozenset[int]

    def type_of(self, v: int) -> str:
        return BLACK if v in self.blacks else WHITE


def is_bipartite(g: ColoredGraph) -> Bipartition | None:
    """The normalized bipartition if one exists, else None.

    The input must be connected (the normalization anchors vertex 1).
    """
    if not is_connected(g):
        raise GemError("bipartiteness is only defined here for connected graphs")
    side = [None] * (g.n + 1)
    side[1] = 0
    stack = [1]
    while stack:
        u = stack.pop()
        for c in COLORS:
            v = g.matchings[c][u]
            if side[v] is None:
                side[v] = 1 - side[u]
                stack.append(v)
            elif side[v] == side[u]:
                return None
    blacks = frozenset(v for v in range(1, g.n + 1) if side[v] == 0)
    whites = frozenset(v for v in range(1, g.n + 1) if side[v] == 1)
    return Bipartition(blacks, whites)


# ============================================================
# Isomorphism (colors fixed, never permuted)
# ============================================================


def _propagate(g: ColoredGraph, h: ColoredGraph, src: int, dst: int,
               mapping: dict[int, int], used: set[int]) -> bool:
    """Extend ``mapping`` with src -> dst through src's component.

    Returns False (leaving mapping/used dirty; caller discards) on any
    color conflict.  Since the component is 3-regular and colors are
    fixed, the image of one vertex forces the whole component.
    """
    mapping[src] = dst
    used.add(dst)
    stack = [src]
    while stack:
        u = stack.pop()
        for c in COLORS:
            v = g.matchings[c][u]
            w = h.matchings[c][mapping[u]]
            if v in mapping:
                if mapping[v] != w:
                    return False
            elif w in used:
                return False
            else:
                mapping[v] = w
                used.add(w)
                stack.append(v)
    return True


def are_isomorphic(g: ColoredGraph, h: ColoredGraph) -> dict[int, int] | None:
    """A color-preserving vertex bijection g -> h, or None.

    For a connected graph the image of vertex 1 determines everything, so
    at most n candidate maps are tried.  Disconnected graphs are matched
    component by component (greedy matching is safe: isomorphism classes
    partition the components).
    """
    if g.n != h.n:
        return None
    g_comps = connected_components(g)
    mapping: dict[int, int] = {}
    used: set[int] = set()
    for comp in g_comps:
        root = min(comp)
        found = False
        for dst in range(1, h.n + 1):
            if dst in used:
                continue
            trial = dict(mapping)
            trial_used = set(used)
            if _propagate(g, h, root, dst, trial, trial_used):
                mapping, used = trial, trial_used
                found = True
                break
        if not found:
            return None
    return mapping


# ============================================================
# Connected sums and seams
# ============================================================


def _compact_map(n: int, removed: tuple[int, ...]) -> dict[int, int]:
    """Order-preserving renumbering of {1..n} minus ``removed`` onto 1..n-len."""
    out = {}
    new = 0
    rem = set(removed)
    for v in range(1, n + 1):
        if v not in rem:
            new += 1
            out[v] = new
    return out


def connected_sum(g1: ColoredGraph, v1: int, g2: ColoredGraph, v2: int,
                  enforce_type_rule: bool = False) -> ColoredGraph:
    """Delete v1 from g1 and v2 from g2 and weld the dangling ends color by color.

    Vertices of g1 except v1 keep their order (renumbered 1..n1-1), g2's
    follow.  With ``enforce_type_rule`` and both graphs bipartite, v1 and
    v2 must be of different types under each graph's own normalization.
    """
    if not 1 <= v1 <= g1.n:
        raise GemError(f"vertex {v1} not in first summand")
    if not 1 <= v2 <= g2.n:
        raise GemError(f"vertex {v2} not in second summand")
    if enforce_type_rule:
        b1, b2 = is_bipartite(g1), is_bipartite(g2)
        if b1 is not None and b2 is not None and b1.type_of(v1) == b2.type_of(v2):
            raise GemError(
                f"type rule violated: vertices {v1} and {v2} are both {b1.type_of(v1)}")
    r1 = _compact_map(g1.n, (v1,))
    r2 = {u: new + (g1.n - 1) for u, new in _compact_map(g2.n, (v2,)).items()}
    n = g1.n + g2.n - 2
    maps: list[dict[int, int]] = [{}, {}, {}]
    for c in COLORS:
        for (u, v) in g1.edges_of_color(c):
            if v1 not in (u, v):
                maps[c][r1[u]] = r1[v]
                maps[c][r1[v]] = r1[u]
        for (u, v) in g2.edges_of_color(c):
            if v2 not in (u, v):
                maps[c][r2[u]] = r2[v]
                maps[c][r2[v]] = r2[u]
        a = r1[g1.matchings[c][v1]]
        b = r2[g2.matchings[c][v2]]
        maps[c][a] = b
        maps[c][b] = a
    return graph_from_matchings(n, *maps)


@dataclass(frozen=True)
class Seam:
    """A triple of edges, one per color, whose removal disconnects the graph.

    ``edges[c]`` is the color-c seam edge as (u, v) with u < v.  ``side_a``
    is the side containing vertex 1.  A seam is proper when both sides
    have at least two vertices; the edge triple at a single vertex is the
    trivial seam exhibiting the graph as a sum with the 2-vertex graph.
    """

    edges: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    side_a: frozenset[int]
    side_b: frozenset[int]
    proper: bool


def _seam_from_triple(g: ColoredGraph, triple) -> Seam | None:
    removed = frozenset((c, u, v) for c, (u, v) in zip(COLORS, triple))
    comps = connected_components(g, removed_edges=removed)
    if len(comps) != 2:
        return None
    a, b = comps if 1 in comps[0] else (comps[1], comps[0])
    for (u, v) in triple:
        if not ((u in a) != (v in a)):
            return None
    if len(a) == 1 and len(b) == 1:
        # Degenerate 2-vertex case: both summands would be forced to the
        # 2-vertex graph with the seam using all three edges; not a seam.
        return None
    return Seam(tuple(triple), a, b, proper=len(a) >= 2 and len(b) >= 2)


def find_seams(g: ColoredGraph) -> list[Seam]:
    """All seams of a connected graph, by brute force over (n/2)^3 triples."""
    if not is_connected(g):
        raise GemError("seam search requires a connected graph")
    seams = []
    for triple in itertools.product(*(g.edges_of_color(c) for c in COLORS)):
        s = _seam_from_triple(g, triple)
        if s is not None:
            seams.append(s)
    return seams


def seam_from_side(g: ColoredGraph, side: frozenset[int]) -> Seam:
    """Build the seam separating ``side`` from its complement.

    Requires exactly three crossing edges, one per color, and both parts
    connected once the triple is removed.
    """
    crossing: dict[int, tuple[int, int]] = {}
    for (c, u, v) in g.edges():
        if (u in side) != (v in side):
            if c in crossing:
                raise SeamError(f"more than one color-{c} edge crosses the side")
            crossing[c] = (u, v)
    if sorted(crossing) != list(COLORS):
        raise SeamError("side is not separated by one edge per color")
    triple = tuple(crossing[c] for c in COLORS)
    s = _seam_from_triple(g, triple)
    if s is None or side not in (s.side_a, s.side_b):
        raise SeamError("edge triple does not disconnect the graph along the given side")
    return s


def extract_summands(g: ColoredGraph, s: Seam) -> tuple[ColoredGraph, int, ColoredGraph, int]:
    """Invert a connected sum at a seam.

    Returns (G1, u, G2, v): G1 is side A plus a fresh apex u closing the
    three dangling ends (likewise G2/v for side B), renumbered so side
    vertices keep their order and the apex comes last.  Then
    ``connected_sum(G1, u, G2, v)`` is isomorphic to g.
    """
    check = _seam_from_triple(g, s.edges)
    if check is None or {check.side_a, check.side_b} != {s.side_a, s.side_b}:
        raise SeamError("not a seam of this graph")

    def build(side: frozenset[int]) -> tuple[ColoredGraph, int]:
        order = {v: i + 1 for i, v in enumerate(sorted(side))}
        apex = len(side) + 1
        maps: list[dict[int, int]] = [{}, {}, {}]
        for c in COLORS:
            for (u, v) in g.edges_of_color(c):
                if u in side and v in side:
                    maps[c][order[u]] = order[v]
                    maps[c][order[v]] = order[u]
            (u, v) = s.edges[c]
            end = u if u in side else v
            maps[c][apex] = order[end]
            maps[c][order[end]] = apex
        return graph_from_matchings(len(side) + 1, *maps), apex

    g1, u = build(s.side_a)
    g2, v = build(s.side_b)
    return g1, u, g2, v
