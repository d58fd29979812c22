"""Exact text file formats for graphs, move traces, and reduction certificates.

Graph files:
    gem 1 <n>
    edge <color> <u> <v>        (exactly 3n/2 lines, 1 <= u < v <= n)

Trace files hold one record per line after a ``trace 1 <fingerprint>``
header.  Pure move traces use cut/glue/cutglue/interchange records; a
reduction certificate additionally uses compose records (one per
congruence step, naming the two summand fingerprints, the seam, and the
re-chosen weld pair) and ends every block with a conclude record carrying
the concluded form and the isomorphism witness.  Sub-certificates follow
as further trace blocks in pre-order: after a block, the blocks of its
first compose's left summand (with their own descendants), then the right
summand's, and so on.  '#' begins a comment; blank lines are ignored.
All writers emit fixed orderings, so write-read-write is byte identical.
"""

from __future__ import annotations

from .core import (
    COLORS,
    ColoredGraph,
    GemError,
    _seam_from_triple,
    connected_sum,
    extract_summands,
    graph_from_matchings,
)
from .moves import (
    Cut,
    CutGlue,
    CutSpec,
    Glue,
    GlueSpec,
    Interchange,
    Move,
    MoveTrace,
    fingerprint,
    other_colors,
    verify_trace,
)
from .reduction import (
    Cert,
    IsoCert,
    RecombineCert,
    ReductionCertificate,
    TraceCert,
    certificate_conclusion,
    parse_form_token,
    realize,
)

VERSION = "1"


class FormatError(GemError):
    """A parse failure with a 1-based line position."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def _meaningful_lines(text: str):
    """Yield (line_number, stripped_content) with comments and blanks removed."""
    for i, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield i, content


# ============================================================
# Graph files
# ============================================================


def write_graph(g: ColoredGraph) -> str:
    lines = [f"gem {VERSION} {g.n}"]
    for (c, u, v) in g.edges():
        lines.append(f"edge {c} {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> ColoredGraph:
    lines = list(_meaningful_lines(text))
    if not lines:
        raise FormatError(1, "empty file; expected a 'gem' header")
    ln, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "gem":
        raise FormatError(ln, f"expected 'gem {VERSION} <n>', got {header!r}")
    if parts[1] != VERSION:
        raise FormatError(ln, f"unsupported format version {parts[1]!r}")
    try:
        n = int(parts[2])
    except ValueError:
        raise FormatError(ln, f"vertex count {parts[2]!r} is not an integer")
    if n < 2 or n % 2 != 0:
        raise FormatError(ln, f"vertex count must be a positive even integer, got {n}")

    expected = 3 * n // 2
    maps: list[dict[int, int]] = [{}, {}, {}]
    count = 0
    last_ln = ln
    for ln, content in lines[1:]:
        last_ln = ln
        parts = content.split()
        if parts[0] != "edge" or len(parts) != 4:
            raise FormatError(ln, f"expected 'edge <color> <u> <v>', got {content!r}")
        try:
            c, u, v = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise FormatError(ln, f"non-integer field in {content!r}")
        if count == expected:
            raise FormatError(ln, f"too many edge lines (expected 3n/2 = {expected})")
        if c not in COLORS:
            raise FormatError(ln, f"color must be 0, 1 or 2, got {c}")
        if u == v:
            raise FormatError(ln, f"loop edge at vertex {u}")
        if not (1 <= u < v <= n):
            raise FormatError(ln, f"edge endpoints must satisfy 1 <= u < v <= {n}")
        for w in (u, v):
            if w in maps[c]:
                raise FormatError(ln, f"duplicate color {c} at vertex {w}")
        maps[c][u] = v
        maps[c][v] = u
        count += 1
    if count != expected:
        raise FormatError(last_ln, f"expected 3n/2 = {expected} edge lines, found {count}")
    for c in COLORS:
        for u in range(1, n + 1):
            if u not in maps[c]:
                raise FormatError(last_ln, f"missing color {c} at vertex {u}")
    return graph_from_matchings(n, *maps)


# ============================================================
# Move records
# ============================================================


def _fmt_edge(color: int, edge: tuple[int, int]) -> str:
    return f"{color}:{edge[0]}-{edge[1]}"


def _fmt_seam(edges) -> str:
    return ",".join(_fmt_edge(c, edges[c]) for c in COLORS)


def _fmt_cut_fields(spec: CutSpec) -> str:
    a, b = other_colors(spec.cut_color)
    return (f"c={spec.cut_color} ea={_fmt_edge(a, spec.edge_a)} "
            f"eb={_fmt_edge(b, spec.edge_b)} arc={spec.arc_vertex}")


def format_move(move: Move, fp: str) -> str:
    if isinstance(move, Cut):
        return f"cut {_fmt_cut_fields(move.spec)} -> {fp}"
    if isinstance(move, Glue):
        s = move.spec
        return f"glue c={s.cut_color} w={s.pair[0]}-{s.pair[1]} -> {fp}"
    if isinstance(move, CutGlue):
        return (f"cutglue {_fmt_cut_fields(move.cut)} "
                f"w={move.glue.pair[0]}-{move.glue.pair[1]} -> {fp}")
    if isinstance(move, Interchange):
        return (f"interchange seam={_fmt_seam(move.seam_edges)} "
                f"u'={move.u_new} v'={move.v_new} -> {fp}")
    raise GemError(f"unknown move {move!r}")


def _parse_fields(ln: int, parts: list[str]) -> dict[str, str]:
    fields = {}
    for part in parts:
        if "=" not in part:
            raise FormatError(ln, f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        fields[key] = value
    return fields


def _parse_pair(ln: int, text: str) -> tuple[int, int]:
    try:
        u, v = text.split("-")
        return int(u), int(v)
    except ValueError:
        raise FormatError(ln, f"expected <u>-<v>, got {text!r}")


def _parse_colored_edge(ln: int, text: str, want_color: int) -> tuple[int, int]:
    if ":" not in text:
        raise FormatError(ln, f"expected <color>:<u>-<v>, got {text!r}")
    color, pair = text.split(":", 1)
    try:
        c = int(color)
    except ValueError:
        raise FormatError(ln, f"bad color in {text!r}")
    if c != want_color:
        raise FormatError(ln, f"edge color {c} inconsistent with the cut color "
                              f"(expected {want_color})")
    return _parse_pair(ln, pair)


def _parse_cut_fields(ln: int, fields: dict[str, str]) -> CutSpec:
    for key in ("c", "ea", "eb", "arc"):
        if key not in fields:
            raise FormatError(ln, f"cut record missing field {key!r}")
    try:
        c = int(fields["c"])
        arc = int(fields["arc"])
    except ValueError:
        raise FormatError(ln, "non-integer cut field")
    if c not in COLORS:
        raise FormatError(ln, f"bad cut color {c}")
    a, b = other_colors(c)
    ea = _parse_colored_edge(ln, fields["ea"], a)
    eb = _parse_colored_edge(ln, fields["eb"], b)
    return CutSpec(c, ea, eb, arc)


def _parse_seam_edges(ln: int, text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise FormatError(ln, f"seam needs three edges, got {text!r}")
    edges = [None, None, None]
    for part in parts:
        if ":" not in part:
            raise FormatError(ln, f"expected <color>:<u>-<v>, got {part!r}")
        color, pair = part.split(":", 1)
        try:
            c = int(color)
        except ValueError:
            raise FormatError(ln, f"bad color in {part!r}")
        if c not in COLORS or edges[c] is not None:
            raise FormatError(ln, f"seam must list colors 0, 1, 2 once each")
        edges[c] = _parse_pair(ln, pair)
    return tuple(edges)


def parse_move_record(ln: int, content: str) -> tuple[Move, str]:
    parts = content.split()
    if len(parts) < 3 or parts[-2] != "->":
        raise FormatError(ln, f"record must end with '-> <fingerprint>': {content!r}")
    kind, fp = parts[0], parts[-1]
    fields = _parse_fields(ln, parts[1:-2])
    if kind == "cut":
        return Cut(_parse_cut_fields(ln, fields)), fp
    if kind == "glue":
        if "c" not in fields or "w" not in fields:
            raise FormatError(ln, "glue record needs c= and w=")
        c = int(fields["c"])
        if c not in COLORS:
            raise FormatError(ln, f"bad cut color {c}")
        return Glue(GlueSpec(c, _parse_pair(ln, fields["w"]))), fp
    if kind == "cutglue":
        if "w" not in fields:
            raise FormatError(ln, "cutglue record needs w=")
        spec = _parse_cut_fields(ln, fields)
        return CutGlue(spec, GlueSpec(spec.cut_color, _parse_pair(ln, fields["w"]))), fp
    if kind == "interchange":
        for key in ("seam", "u'", "v'"):
            if key not in fields:
                raise FormatError(ln, f"interchange record missing {key!r}")
        edges = _parse_seam_edges(ln, fields["seam"])
        return Interchange(edges, int(fields["u'"]), int(fields["v'"])), fp
    raise FormatError(ln, f"unknown record kind {kind!r}")


# ============================================================
# Pure move traces
# ============================================================


def write_trace(trace: MoveTrace) -> str:
    lines = [f"trace {VERSION} {trace.initial}"]
    for (move, fp) in trace.steps:
        lines.append(format_move(move, fp))
    return "\n".join(lines) + "\n"


def _parse_header(ln: int, content: str) -> str:
    parts = content.split()
    if len(parts) != 3 or parts[0] != "trace":
        raise FormatError(ln, f"expected 'trace {VERSION} <fingerprint>', got {content!r}")
    if parts[1] != VERSION:
        raise FormatError(ln, f"unsupported format version {parts[1]!r}")
    return parts[2]


def parse_trace(text: str) -> MoveTrace:
    """Parse a pure move trace (certificate records are rejected)."""
    lines = list(_meaningful_lines(text))
    if not lines:
        raise FormatError(1, "empty file; expected a 'trace' header")
    initial = _parse_header(*lines[0])
    steps = []
    for ln, content in lines[1:]:
        kind = content.split()[0]
        if kind in ("compose", "conclude", "trace"):
            raise FormatError(ln, f"{kind!r} records belong to certificates, "
                                  "not plain move traces")
        steps.append(parse_move_record(ln, content))
    return MoveTrace(initial, tuple(steps))


# ============================================================
# Reduction certificates
# ============================================================


def _fmt_mapping(mapping) -> str:
    return ",".join(f"{u}-{v}" for (u, v) in mapping)


def _parse_mapping(ln: int, text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for part in text.split(","):
        pairs.append(_parse_pair(ln, part))
    return tuple(pairs)


def write_certificate(g: ColoredGraph, cert: ReductionCertificate) -> str:
    """Serialize a certificate against its concrete input graph.

    The writer replays traces and re-extracts summands so every compose
    record carries the actual summand fingerprints.
    """
    blocks: list[str] = []

    def emit(graph: ColoredGraph, node: Cert) -> None:
        lines = [f"trace {VERSION} {fingerprint(graph)}"]
        pending: list[tuple[ColoredGraph, Cert]] = []
        current = graph
        while True:
            if isinstance(node, TraceCert):
                for (move, fp) in node.trace.steps:
                    lines.append(format_move(move, fp))
                current = verify_trace(current, node.trace)
                node = node.rest
            elif isinstance(node, RecombineCert):
                seam = _seam_from_triple(current, node.seam_edges)
                if seam is None:
                    raise GemError("certificate seam does not match its graph")
                g1, _, g2, _ = extract_summands(current, seam)
                f_a = certificate_conclusion(node.left)
                f_b = certificate_conclusion(node.right)
                joined = connected_sum(realize(f_a), node.weld_a,
                                       realize(f_b), node.weld_b)
                lines.append(
                    f"compose left={fingerprint(g1)} right={fingerprint(g2)} "
                    f"seam={_fmt_seam(node.seam_edges)} "
                    f"weld={node.weld_a}-{node.weld_b} -> {fingerprint(joined)}")
                pending.append((g1, node.left))
                pending.append((g2, node.right))
                current = joined
                node = node.rest
            elif isinstance(node, IsoCert):
                lines.append(f"conclude {node.form.token()} "
                             f"map={_fmt_mapping(node.mapping)}")
                break
            else:
                raise GemError(f"unknown certificate node {node!r}")
        blocks.append("\n".join(lines))
        for sub_graph, sub_node in pending:
            emit(sub_graph, sub_node)

    emit(g, cert.root)
    return "\n".join(blocks) + "\n"


def _split_blocks(text: str):
    """Split a certificate file into blocks at 'trace' headers."""
    blocks = []
    current = None
    for ln, content in _meaningful_lines(text):
        if content.split()[0] == "trace":
            current = [(ln, content)]
            blocks.append(current)
        elif current is None:
            raise FormatError(ln, "record before the first 'trace' header")
        else:
            current.append((ln, content))
    if not blocks:
        raise FormatError(1, "empty file; expected a 'trace' header")
    return blocks


def parse_certificate(text: str) -> ReductionCertificate:
    blocks = _split_blocks(text)
    root, consumed = _parse_block_tree(blocks, 0)
    if consumed != len(blocks):
        ln = blocks[consumed][0][0]
        raise FormatError(ln, "trailing trace block not referenced by any compose record")
    return ReductionCertificate(certificate_conclusion(root), root)


def _parse_block_tree(blocks, index: int) -> tuple[Cert, int]:
    if index >= len(blocks):
        last_ln = blocks[-1][-1][0]
        raise FormatError(last_ln, "compose record lacks its summand trace blocks")
    block = blocks[index]
    header_fp = _parse_header(*block[0])
    next_index = index + 1

    # Scan the block into items, consuming sub-blocks for compose records.
    items = []
    context_fp = header_fp
    move_run: list[tuple[Move, str]] = []
    run_initial = context_fp
    concluded = False
    for ln, content in block[1:]:
        kind = content.split()[0]
        if concluded:
            raise FormatError(ln, "records after the conclude record")
        if kind == "compose":
            if move_run:
                items.append(("trace", MoveTrace(run_initial, tuple(move_run))))
                move_run = []
            parts = content.split()
            if len(parts) < 3 or parts[-2] != "->":
                raise FormatError(ln, "compose record must end with '-> <fingerprint>'")
            fields = _parse_fields(ln, parts[1:-2])
            for key in ("left", "right", "seam", "weld"):
                if key not in fields:
                    raise FormatError(ln, f"compose record missing field {key!r}")
            left_start = next_index
            left_node, next_index = _parse_block_tree(blocks, left_start)
            right_start = next_index
            if fields["left"] != _parse_header(*blocks[left_start][0]):
                raise FormatError(ln, "left fingerprint does not match its trace block")
            right_node, next_index = _parse_block_tree(blocks, right_start)
            if fields["right"] != _parse_header(*blocks[right_start][0]):
                raise FormatError(ln, "right fingerprint does not match its trace block")
            edges = _parse_seam_edges(ln, fields["seam"])
            weld_a, weld_b = _parse_pair(ln, fields["weld"])
            items.append(("compose", edges, left_node, right_node, weld_a, weld_b))
            context_fp = parts[-1]
            run_initial = context_fp
        elif kind == "conclude":
            if move_run:
                items.append(("trace", MoveTrace(run_initial, tuple(move_run))))
                move_run = []
            parts = content.split()
            if len(parts) != 3 or not parts[2].startswith("map="):
                raise FormatError(ln, "expected 'conclude <form> map=<pairs>'")
            try:
                form = parse_form_token(parts[1])
            except GemError as exc:
                raise FormatError(ln, str(exc))
            items.append(("conclude", form, _parse_mapping(ln, parts[2][4:])))
            concluded = True
        else:
            move, fp = parse_move_record(ln, content)
            move_run.append((move, fp))
            context_fp = fp
    if not concluded:
        raise FormatError(block[-1][0], "certificate block lacks a conclude record")

    node: Cert = IsoCert(items[-1][1], items[-1][2])
    for item in reversed(items[:-1]):
        if item[0] == "trace":
            node = TraceCert(item[1], node)
        else:
            _, edges, left_node, right_node, weld_a, weld_b = item
            node = RecombineCert(edges, left_node, right_node, weld_a, weld_b, node)
    return node, next_index


def is_certificate(text: str) -> bool:
    """True when the trace file carries certificate records."""
    for _, content in _meaningful_lines(text):
        if content.split()[0] in ("compose", "conclude"):
            return True
    return False
