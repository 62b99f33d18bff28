"""Text formats for instances and orderings, and an SVG emitter.

Instance format (PACE-style, 1-based ids, fixed layer first)::

    c <comment>                      any number, anywhere
    p ocr <n_fixed> <n_free> <m>     exactly one, before the edges
    <a> <b>                          m lines, 1 <= a <= n_fixed < b <= n_fixed + n_free

Fixed vertex ``a`` sits at fixed-layer position ``a - 1``; free vertex ``b``
gets internal id ``b - n_fixed - 1``. Ordering files list one free vertex
id (in the same external numbering) per line, top to bottom.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .core import Instance, Ordering, build_instance, check_ordering
from .crossings import count_crossings


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class HeaderError(FormatError):
    pass


class IdRangeError(FormatError):
    pass


class EdgeCountError(FormatError):
    pass


class DuplicateEdgeError(FormatError):
    pass


class OrderingFormatError(FormatError):
    pass


@dataclass(frozen=True)
class InstanceDocument:
    comments: tuple[str, ...]
    header: tuple[int, int, int]
    # external 1-based ids
    edges: tuple[tuple[int, int], ...]

    def to_instance(self) -> Instance:
        n_fixed, n_free, _ = self.header
        return build_instance(n_fixed, n_free, [(a - 1, b - n_fixed - 1) for a, b in self.edges])


def _ints(tokens, lineno, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers in {what}, got {' '.join(tokens)!r}", lineno) from None


def parse_document(text: str) -> InstanceDocument:
    comments: list[str] = []
    header = None
    header_line = None
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] == "c":
            comments.append(raw.strip()[1:].strip())
            continue
        if tokens[0] == "p":
            if header is not None:
                raise HeaderError(f"second header (first on line {header_line})", lineno)
            if len(tokens) != 5 or tokens[1] != "ocr":
                raise HeaderError("header must read 'p ocr <n_fixed> <n_free> <m>'", lineno)
            header = tuple(_ints(tokens[2:], lineno, "header"))
            if min(header) < 0:
                raise HeaderError("header counts must be nonnegative", lineno)
            header_line = lineno
            continue
        if header is None:
            raise HeaderError("edge before the 'p ocr' header", lineno)
        if len(tokens) != 2:
            raise FormatError("edge line needs exactly two ids", lineno)
        a, b = _ints(tokens, lineno, "edge")
        n_fixed, n_free, m = header
        if not 1 <= a <= n_fixed:
            raise IdRangeError(f"fixed id {a} outside [1, {n_fixed}]", lineno)
        if not n_fixed < b <= n_fixed + n_free:
            raise IdRangeError(f"free id {b} outside [{n_fixed + 1}, {n_fixed + n_free}]", lineno)
        if (a, b) in seen:
            raise DuplicateEdgeError(f"duplicate edge {a} {b} (first on line {seen[(a, b)]})", lineno)
        if len(edges) == m:
            raise EdgeCountError(f"more than the {m} edges declared", lineno)
        seen[(a, b)] = lineno
        edges.append((a, b))
    if header is None:
        raise HeaderError("missing 'p ocr' header")
    if len(edges) != header[2]:
        raise EdgeCountError(f"header declares {header[2]} edges, found {len(edges)}", header_line)
    return InstanceDocument(tuple(comments), header, tuple(edges))


def parse_instance(text: str) -> Instance:
    return parse_document(text).to_instance()


def serialize_instance(inst: Instance, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p ocr {inst.n_fixed} {inst.n_free} {len(inst.edges)}")
    lines.extend(f"{a + 1} {inst.n_fixed + b + 1}" for a, b in inst.edges)
    return "\n".join(lines) + "\n"


def parse_ordering(text: str, inst: Instance) -> Ordering:
    order: list[int] = []
    first_seen: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if len(tokens) != 1:
            raise OrderingFormatError("one free vertex id per line", lineno)
        (ext,) = _ints(tokens, lineno, "ordering")
        u = ext - inst.n_fixed - 1
        if not 0 <= u < inst.n_free:
            raise OrderingFormatError(f"unknown free vertex {ext}", lineno)
        if u in first_seen:
            raise OrderingFormatError(f"repeated id {ext} (first on line {first_seen[u]})", lineno)
        first_seen[u] = lineno
        order.append(u)
    if len(order) != inst.n_free:
        raise OrderingFormatError(f"ordering lists {len(order)} of {inst.n_free} free vertices")
    return Ordering(tuple(order))


def serialize_ordering(ordering: Ordering, inst: Instance) -> str:
    ordering = check_ordering(inst, ordering)
    return "".join(f"{inst.n_fixed + u + 1}\n" for u in ordering)


# SVG layout, in user units
MARGIN = 40
TITLE_HEIGHT = 30
ROW_GAP = 40
LAYER_GAP = 240
RADIUS = 6
LABEL_OFFSET = 12


def emit_two_layer_svg(inst: Instance, ordering) -> str:
    """Straight-line two-layer drawing: fixed layer left (top = position 0), free layer right."""
    ordering = check_ordering(inst, ordering)
    pos = ordering.positions()
    rows = max(inst.n_fixed, inst.n_free, 1)
    width = 2 * MARGIN + LAYER_GAP
    height = TITLE_HEIGHT + 2 * MARGIN + (rows - 1) * ROW_GAP
    x_fixed, x_free = MARGIN, MARGIN + LAYER_GAP

    def y(i):
        return TITLE_HEIGHT + MARGIN + i * ROW_GAP

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<text x="{width // 2}" y="{TITLE_HEIGHT - 8}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="14">crossings: {count_crossings(inst, ordering)}</text>',
        '<g stroke="black" stroke-width="1.5">',
    ]
    for a, b in inst.edges:
        out.append(f'<line x1="{x_fixed}" y1="{y(a)}" x2="{x_free}" y2="{y(pos[b])}"/>')
    out.append("</g>")
    out.append('<g font-family="sans-serif" font-size="12">')
    for a in range(inst.n_fixed):
        out.append(f'<circle cx="{x_fixed}" cy="{y(a)}" r="{RADIUS}" fill="white" stroke="black"/>')
        out.append(
            f'<text x="{x_fixed - LABEL_OFFSET}" y="{y(a) + 4}" text-anchor="end">'
            f"{escape(inst.fixed_label(a))}</text>"
        )
    for i, u in enumerate(ordering):
        out.append(f'<circle cx="{x_free}" cy="{y(i)}" r="{RADIUS}" fill="black" stroke="black"/>')
        out.append(f'<text x="{x_free + LABEL_OFFSET}" y="{y(i) + 4}">{escape(inst.free_label(u))}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
