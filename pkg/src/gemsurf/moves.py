"""The move calculus: simple cut, simple glueing, cut-and-glue, interchange.

Also home of the canonical fingerprint (a full canonical labeling, not a
lossy hash) and of replayable, machine-verified move traces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    COLORS,
    ColoredGraph,
    GemError,
    Seam,
    _seam_from_triple,
    bicolored_cycles,
    connected_components,
    connected_sum,
    extract_summands,
    graph_from_matchings,
    is_bipartite,
)


class MoveError(GemError):
    """Raised for illegal move parameters."""


class TraceError(GemError):
    """Raised when a trace fails to replay."""


def other_colors(c: int) -> tuple[int, int]:
    """The two colors other than c, in increasing order."""
    a, b = sorted(set(COLORS) - {c})
    return a, b


# ============================================================
# Move parameter records
# ============================================================


@dataclass(frozen=True)
class CutSpec:
    """Parameters of a simple cut with chosen color ``cut_color``.

    ``edge_a`` is an edge of color a and ``edge_b`` of color b, where
    (a, b) are the other two colors in increasing order; both must lie on
    one cycle of the {a,b}-subgraph.  The first fresh vertex z1 = n+1 is
    placed on the arc containing ``arc_vertex``; z2 = n+2 on the other.
    """

    cut_color: int
    edge_a: tuple[int, int]
    edge_b: tuple[int, int]
    arc_vertex: int


def cut_spec(cut_color: int, edge_a, edge_b, arc_vertex: int | None = None) -> CutSpec:
    """Normalize a CutSpec; default arc is the one holding edge_a's smaller end."""
    ea = tuple(sorted(edge_a))
    eb = tuple(sorted(edge_b))
    if arc_vertex is None:
        arc_vertex = ea[0]
    return CutSpec(cut_color, ea, eb, arc_vertex)


@dataclass(frozen=True)
class GlueSpec:
    """A simple glueing at ``pair`` = (w1, w2), joined by an edge of the cut color."""

    cut_color: int
    pair: tuple[int, int]


@dataclass(frozen=True)
class Cut:
    spec: CutSpec


@dataclass(frozen=True)
class Glue:
    spec: GlueSpec


@dataclass(frozen=True)
class CutGlue:
    cut: CutSpec
    glue: GlueSpec


@dataclass(frozen=True)
class Interchange:
    """Re-choose the welded pair of the connected-sum decomposition at a seam.

    ``seam_edges[c]`` is the color-c seam edge; ``u_new``/``v_new`` are
    vertices of the extracted summands (side A first, apex last).
    """

    seam_edges: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    u_new: int
    v_new: int


Move = Cut | Glue | CutGlue | Interchange


# ============================================================
# Simple cut
# ============================================================


def _locate_cycle_edges(g: ColoredGraph, a: int, b: int, ea, eb):
    """Return (cycle, k_a, k_b): the {a,b}-cycle through ea and the edge positions.

    Edge k of a cycle joins cyc[k] and cyc[k+1 mod L] and has color a for
    even k, b for odd k (the traversal starts along color a).
    """
    for cyc in bicolored_cycles(g, a, b).cycles:
        L = len(cyc)
        k_a = k_b = None
        for k in range(L):
            pair = tuple(sorted((cyc[k], cyc[(k + 1) % L])))
            if k % 2 == 0 and pair == ea:
                k_a = k
            if k % 2 == 1 and pair == eb:
                k_b = k
        if k_a is not None and k_b is not None:
            return cyc, k_a, k_b
        if k_a is not None or k_b is not None:
            raise MoveError(f"edges {ea} and {eb} lie on different ({a},{b})-cycles")
    raise MoveError(f"no ({a},{b})-cycle through edges {ea} and {eb}")


def simple_cut(g: ColoredGraph, spec: CutSpec) -> ColoredGraph:
    """Split one {a,b}-cycle in two, inserting z1 = n+1 and z2 = n+2.

    z1 is welded into the arc containing ``spec.arc_vertex`` (an a-edge to
    that arc's edge_a end and a b-edge to its edge_b end), z2 into the
    other arc, and a new cut-color edge joins z1 to z2.  Degenerate cuts
    whose two edges share a vertex yield a singleton arc and hence
    parallel edges at the fresh vertex; that is allowed.
    """
    c = spec.cut_color
    if c not in COLORS:
        raise MoveError(f"invalid cut color {c}")
    a, b = other_colors(c)
    ea, eb = spec.edge_a, spec.edge_b
    if not g.has_edge(a, *ea):
        raise MoveError(f"{ea} is not an edge of color {a}")
    if not g.has_edge(b, *eb):
        raise MoveError(f"{eb} is not an edge of color {b}")
    cyc, k_a, k_b = _locate_cycle_edges(g, a, b, ea, eb)
    L = len(cyc)

    def arc(start: int, stop: int) -> list[int]:
        out = [cyc[start % L]]
        k = start
        while k % L != stop % L:
            k += 1
            out.append(cyc[k % L])
        return out

    # Arc 1 runs from edge_a's far end to edge_b's near end; arc 2 the rest.
    arc1 = arc(k_a + 1, k_b)
    arc2 = arc(k_b + 1, k_a)
    if spec.arc_vertex in arc1:
        arc_z1, arc_z2 = arc1, arc2
    elif spec.arc_vertex in arc2:
        arc_z1, arc_z2 = arc2, arc1
    else:
        raise MoveError(f"arc vertex {spec.arc_vertex} is not on the cut cycle")

    n = g.n
    z1, z2 = n + 1, n + 2
    maps: list[dict[int, int]] = [{}, {}, {}]
    for color in COLORS:
        for (u, v) in g.edges_of_color(color):
            if (color == a and (u, v) == ea) or (color == b and (u, v) == eb):
                continue
            maps[color][u] = v
            maps[color][v] = u
    for z, arc_z in ((z1, arc_z1), (z2, arc_z2)):
        end_a = arc_z[0] if arc_z is arc1 else arc_z[-1]
        end_b = arc_z[-1] if arc_z is arc1 else arc_z[0]
        maps[a][z] = end_a
        maps[a][end_a] = z
        maps[b][z] = end_b
        maps[b][end_b] = z
    maps[c][z1] = z2
    maps[c][z2] = z1
    return graph_from_matchings(n + 2, *maps)


# ============================================================
# Simple glueing
# ============================================================


def glue_relabeling(n: int, w1: int, w2: int) -> dict[int, int]:
    """The order-preserving renumbering a glue applies to surviving vertices."""
    out = {}
    new = 0
    for v in range(1, n + 1):
        if v not in (w1, w2):
            new += 1
            out[v] = new
    return out


def _check_glue(g: ColoredGraph, spec: GlueSpec) -> tuple[int, int]:
    c = spec.cut_color
    if c not in COLORS:
        raise MoveError(f"invalid cut color {c}")
    w1, w2 = spec.pair
    if not g.has_edge(c, w1, w2):
        raise MoveError(f"no color-{c} edge between {w1} and {w2}")
    a, b = other_colors(c)
    for cyc in bicolored_cycles(g, a, b).cycles:
        if w1 in cyc and w2 in cyc:
            raise MoveError(
                f"glue pair ({w1},{w2}) lies on a single ({a},{b})-cycle; "
                "such a glue inverts no cut")
    return a, b


def simple_glue(g: ColoredGraph, spec: GlueSpec) -> ColoredGraph:
    """Delete the glue pair and reweld its {a,b}-neighbors, merging two cycles."""
    a, b = _check_glue(g, spec)
    w1, w2 = spec.pair
    r = glue_relabeling(g.n, w1, w2)
    maps: list[dict[int, int]] = [{}, {}, {}]
    for color in COLORS:
        for (u, v) in g.edges_of_color(color):
            if u in (w1, w2) or v in (w1, w2):
                continue
            maps[color][r[u]] = r[v]
            maps[color][r[v]] = r[u]
    for d in (a, b):
        x = r[g.matchings[d][w1]]
        y = r[g.matchings[d][w2]]
        maps[d][x] = y
        maps[d][y] = x
    return graph_from_matchings(g.n - 2, *maps)


def cut_and_glue(g: ColoredGraph, cut: CutSpec, glue: GlueSpec) -> ColoredGraph:
    """A simple cut followed by a simple glueing with the same chosen color."""
    if cut.cut_color != glue.cut_color:
        raise MoveError("cut and glue phases must use the same chosen color")
    return simple_glue(simple_cut(g, cut), glue)


# ============================================================
# Interchange
# ============================================================


def _anchored_types(g: ColoredGraph, seam: Seam, g1: ColoredGraph, g2: ColoredGraph):
    """Summand bipartitions anchored to the parent graph's classes.

    Per-summand normalization (vertex 1 black) can disagree across the
    seam, which would outlaw the identity interchange; anchoring both
    sides to g's own bipartition keeps the welded pair's types opposite.
    Returns None when either summand is non-bipartite (no rule applies).
    """
    b1, b2 = is_bipartite(g1), is_bipartite(g2)
    if b1 is None or b2 is None:
        return None
    bg = is_bipartite(g)
    if bg is None:
        raise MoveError("both summands bipartite but the whole graph is not")

    def typer(side: frozenset[int], bp):
        flip = bg.type_of(min(side)) != bp.type_of(1)
        if not flip:
            return bp.type_of
        return lambda v: "black" if bp.type_of(v) == "white" else "white"

    return typer(seam.side_a, b1), typer(seam.side_b, b2)


def interchange(g: ColoredGraph, seam: Seam, u_new: int, v_new: int) -> ColoredGraph:
    """Re-weld the two summands at (u_new, v_new) instead of the seam's apexes."""
    if not seam.proper:
        raise MoveError("interchange requires a proper seam")
    g1, a1, g2, a2 = extract_summands(g, seam)
    if not 1 <= u_new <= g1.n:
        raise MoveError(f"vertex {u_new} not in the first summand")
    if not 1 <= v_new <= g2.n:
        raise MoveError(f"vertex {v_new} not in the second summand")
    typers = _anchored_types(g, seam, g1, g2)
    if typers is not None:
        t1, t2 = typers
        if t1(u_new) == t2(v_new):
            raise MoveError(
                f"type rule violated: replacement vertices {u_new} and {v_new} "
                "are of the same type")
    return connected_sum(g1, u_new, g2, v_new)


# ============================================================
# Canonical labeling and fingerprints
# ============================================================


def _bfs_encoding(g: ColoredGraph, root: int) -> tuple | None:
    """Relabel root's component by first-visit order (neighbors in color order).

    Returns (size, m0, m1, m2) with matchings restricted to the component
    in the new labels, or None if the component misses part of the graph
    the caller cares about (callers split components beforehand).
    """
    label = {root: 1}
    order = [root]
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for c in COLORS:
            v = g.matchings[c][u]
            if v not in label:
                label[v] = len(order) + 1
                order.append(v)
    k = len(order)
    rows = []
    for c in COLORS:
        rows.append(tuple(label[g.matchings[c][u]] for u in order))
    return (k, rows[0], rows[1], rows[2])


def canonical_graph(g: ColoredGraph) -> ColoredGraph:
    """The lexicographically least relabeling of g.

    Per connected component, propagation is run from every vertex and the
    least encoding kept; components are then sorted and concatenated.
    This is a canonical labeling, so equality of canonical graphs is
    exactly isomorphism.
    """
    comps = connected_components(g)
    encs = []
    for comp in comps:
        best = None
        for root in sorted(comp):
            enc = _bfs_encoding(g, root)
            if best is None or enc < best:
                best = enc
        encs.append(best)
    encs.sort()
    maps: list[dict[int, int]] = [{}, {}, {}]
    offset = 0
    for (k, m0, m1, m2) in encs:
        for c, row in enumerate((m0, m1, m2)):
            for u in range(1, k + 1):
                maps[c][offset + u] = offset + row[u - 1]
        offset += k
    return graph_from_matchings(g.n, *maps)


def fingerprint(g: ColoredGraph) -> str:
    """Collision-free canonical fingerprint: n and the canonical matchings."""
    cg = canonical_graph(g)
    parts = [".".join(str(x) for x in cg.matchings[c][1:]) for c in COLORS]
    return f"{cg.n}:" + ":".join(parts)


# ============================================================
# Applying moves and verifying traces
# ============================================================


def apply_move(g: ColoredGraph, move: Move) -> ColoredGraph:
    if isinstance(move, Cut):
        return simple_cut(g, move.spec)
    if isinstance(move, Glue):
        return simple_glue(g, move.spec)
    if isinstance(move, CutGlue):
        return cut_and_glue(g, move.cut, move.glue)
    if isinstance(move, Interchange):
        seam = _seam_from_triple(g, move.seam_edges)
        if seam is None:
            raise MoveError(f"edge triple {move.seam_edges} is not a seam")
        return interchange(g, seam, move.u_new, move.v_new)
    raise MoveError(f"unknown move {move!r}")


@dataclass(frozen=True)
class MoveTrace:
    """A replayable move sequence with a fingerprint checkpoint per step."""

    initial: str
    steps: tuple[tuple[Move, str], ...]


def record_trace(g0: ColoredGraph, moves) -> tuple[MoveTrace, ColoredGraph]:
    """Apply ``moves`` in order, recording fingerprints after each step."""
    g = g0
    steps = []
    for move in moves:
        g = apply_move(g, move)
        steps.append((move, fingerprint(g)))
    return MoveTrace(fingerprint(g0), tuple(steps)), g


def verify_trace(g0: ColoredGraph, trace: MoveTrace) -> ColoredGraph:
    """Replay a trace from g0, checking every fingerprint; return the final graph.

    A trace that verifies is a proof object that g0 is D-equivalent to the
    final graph.
    """
    if fingerprint(g0) != trace.initial:
        raise TraceError("initial fingerprint does not match the starting graph")
    g = g0
    for i, (move, fp) in enumerate(trace.steps, start=1):
        try:
            g = apply_move(g, move)
        except GemError as exc:
            raise TraceError(f"step {i}: illegal move: {exc}") from exc
        if fingerprint(g) != fp:
            raise TraceError(f"step {i}: fingerprint mismatch")
    return g


# ============================================================
# Exhaustive move enumeration (used by the desk-scale law checks)
# ============================================================


def enumerate_cut_specs(g: ColoredGraph):
    """All legal CutSpecs of g, one per (color, edge pair, arc) choice."""
    for c in COLORS:
        a, b = other_colors(c)
        for ea in g.edges_of_color(a):
            for eb in g.edges_of_color(b):
                try:
                    cyc, k_a, k_b = _locate_cycle_edges(g, a, b, ea, eb)
                except MoveError:
                    continue
                L = len(cyc)
                heads = (cyc[(k_a + 1) % L], cyc[(k_b + 1) % L])
                yield CutSpec(c, ea, eb, heads[0])
                if heads[1] != heads[0]:
                    yield CutSpec(c, ea, eb, heads[1])


def enumerate_glue_specs(g: ColoredGraph, cut_color: int):
    """All legal GlueSpecs of g for the given chosen color."""
    a, b = other_colors(cut_color)
    comp_of = {}
    for idx, cyc in enumerate(bicolored_cycles(g, a, b).cycles):
        for v in cyc:
            comp_of[v] = idx
    for (w1, w2) in g.edges_of_color(cut_color):
        if comp_of[w1] != comp_of[w2]:
            yield GlueSpec(cut_color, (w1, w2))
