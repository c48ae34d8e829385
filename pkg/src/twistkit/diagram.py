"""Planar-diagram (PD) codes: parsing, strand tracing, Wirtinger presentations.

A crossing ``X a b c d`` lists the four edge labels counterclockwise starting
at the incoming under-strand ``a``; ``c`` is the outgoing under-strand and
``b``/``d`` belong to the over-strand.  Orientation of the over-strand is
recovered by strand tracing (every edge has one head and one tail), so labels
need not be consecutive along components.

File format (one item per line, ``#`` starts a comment)::

    components 1        # optional: number of extra crossingless circles
    X 1 4 2 5
    X 3 6 4 1
    X 5 2 6 3
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

from .fox import GroupPresentation, Word

__all__ = [
    "Crossing",
    "LinkDiagram",
    "ParseError",
    "MalformedLine",
    "ArcMultiplicityError",
    "StrandTracingError",
    "parse_pd",
    "read_pd",
    "format_pd",
    "from_crossings",
    "component_count",
    "wirtinger",
    "relabel",
    "add_kink",
    "disjoint_union",
]


class ParseError(ValueError):
    """Base class for PD input errors; ``line`` is 1-based or None."""

    category = "parse-error"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class MalformedLine(ParseError):
    category = "malformed-line"


class ArcMultiplicityError(ParseError):
    category = "arc-multiplicity"


class StrandTracingError(ParseError):
    category = "strand-tracing"


@dataclass(frozen=True)
class Crossing:
    sign: int
    arcs: tuple[int, int, int, int]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("crossing sign must be +1 or -1")
        if any(a < 1 for a in self.arcs):
            raise ValueError("arc labels are positive integers")


@dataclass(frozen=True)
class LinkDiagram:
    """Validated oriented link diagram.

    ``component_of_arc[label - 1]`` is the component of an edge.  Labels
    ``arc_count - free_circles + 1 .. arc_count`` are crossingless circles.
    """

    crossings: tuple[Crossing, ...]
    arc_count: int
    component_of_arc: tuple[int, ...]
    m: int
    free_circles: int = 0

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def classes(self) -> list[list]:
        groups: dict = {}
        for x in sorted(self.parent):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values(), key=lambda g: g[0])


_SPLIT = re.compile(r"[\s,]+")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text into a validated :class:`LinkDiagram`."""
    raw: list[tuple[int, int, int, int]] = []
    lines: list[int] = []
    extra = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = [tok for tok in _SPLIT.split(body) if tok]
        head = tokens[0]
        if head == "components":
            if extra is not None:
                raise MalformedLine("duplicate 'components' header", lineno)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise MalformedLine("expected 'components <count>'", lineno)
            extra = int(tokens[1])
        elif head == "X":
            if len(tokens) != 5:
                raise MalformedLine(f"crossing needs 4 arc labels, got {len(tokens) - 1}", lineno)
            try:
                arcs = tuple(int(tok) for tok in tokens[1:])
            except ValueError:
                raise MalformedLine("arc labels must be integers", lineno) from None
            if any(a < 1 for a in arcs):
                raise MalformedLine("arc labels must be >= 1", lineno)
            raw.append(arcs)  # type: ignore[arg-type]
            lines.append(lineno)
        else:
            raise MalformedLine(f"unrecognized line {body!r}", lineno)
    return from_crossings(raw, extra or 0, lines)


def read_pd(path) -> LinkDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_pd(fh.read())


def from_crossings(raw: Sequence[Sequence[int]], free_circles: int = 0,
                   lines: Sequence[int] | None = None) -> LinkDiagram:
    """Validate crossing 4-tuples, trace strands and compute signs."""
    raw = [tuple(x) for x in raw]
    if lines is None:
        lines = [None] * len(raw)  # type: ignore[list-item]
    if free_circles < 0:
        raise MalformedLine("negative number of crossingless components")
    if not raw and free_circles == 0:
        raise MalformedLine("diagram has no crossings and no components")

    counts = Counter(a for x in raw for a in x)
    n_edges = max(counts) if counts else 0
    first_line: dict[int, int | None] = {}
    for x, ln in zip(raw, lines):
        for a in x:
            first_line.setdefault(a, ln)
    for label in range(1, n_edges + 1):
        if counts.get(label, 0) != 2:
            raise ArcMultiplicityError(
                f"arc {label} appears {counts.get(label, 0)} times, expected 2",
                first_line.get(label),
            )

    # strand components: a-c and b-d are pieces of the same strand
    uf = _UnionFind(range(1, n_edges + 1))
    for a, b, c, d in raw:
        uf.union(a, c)
        uf.union(b, d)
    comps = uf.classes()
    comp_of = {}
    for ci, labels in enumerate(comps):
        for a in labels:
            comp_of[a] = ci

    role = _orient(raw, lines, comps)
    crossings = []
    for ci, (a, b, c, d) in enumerate(raw):
        # under-strand heads north; over-strand b->d runs east to west
        sign = -1 if role[(ci, 1)] == "in" else 1
        crossings.append(Crossing(sign, (a, b, c, d)))

    m_cross = len(comps)
    component_of_arc = [comp_of[a] for a in range(1, n_edges + 1)]
    component_of_arc += [m_cross + i for i in range(free_circles)]
    return LinkDiagram(
        crossings=tuple(crossings),
        arc_count=n_edges + free_circles,
        component_of_arc=tuple(component_of_arc),
        m=m_cross + free_circles,
        free_circles=free_circles,
    )


def _orient(raw, lines, comps) -> dict[tuple[int, int], str]:
    """Assign 'in'/'out' to every (crossing, position) slot.

    Under-strand slots are fixed by the PD convention; the rest follows from
    two constraints: an edge enters one crossing and leaves another, and an
    over-strand enters on one side and leaves on the other.
    """
    slots_of: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(raw):
        for pos, a in enumerate(x):
            slots_of.setdefault(a, []).append((ci, pos))

    def neighbours(slot):
        ci, pos = slot
        label = raw[ci][pos]
        for other in slots_of[label]:
            if other != slot:
                yield other
        if pos in (1, 3):
            yield (ci, 4 - pos)

    role: dict[tuple[int, int], str] = {}

    def assign(slot, value):
        queue = deque([(slot, value)])
        while queue:
            s, v = queue.popleft()
            have = role.get(s)
            if have is not None:
                if have != v:
                    raise StrandTracingError(
                        f"inconsistent orientation for arc {raw[s[0]][s[1]]}", lines[s[0]])
                continue
            role[s] = v
            flip = "out" if v == "in" else "in"
            for nb in neighbours(s):
                queue.append((nb, flip))

    for ci in range(len(raw)):
        assign((ci, 0), "in")
        assign((ci, 2), "out")

    # components that never pass under: orient by increasing label if possible
    for labels in comps:
        slots = [s for a in labels for s in slots_of[a]]
        if all(s in role for s in slots):
            continue
        label_set = set(labels)
        lo, hi = labels[0], labels[-1]
        seeded = False
        if len(labels) >= 3 and label_set == set(range(lo, hi + 1)):
            nxt = lambda a: lo if a == hi else a + 1  # noqa: E731
            for ci, pos in slots:
                if (ci, pos) in role:
                    continue
                partner = raw[ci][4 - pos]
                if partner == nxt(raw[ci][pos]):
                    assign((ci, pos), "in")
                    seeded = True
                    break
        if not seeded:
            first = min(s for s in slots if s not in role)
            assign(first, "in")
    return role


def component_count(d: LinkDiagram) -> int:
    return d.m


def wirtinger(d: LinkDiagram) -> GroupPresentation:
    """Wirtinger presentation: one meridian per over-arc, one relator per crossing.

    Edges joined through an over-crossing form one arc; at a crossing with
    sign s the relator is ``x_out * (o^s x_in o^-s)^-1``.
    """
    uf = _UnionFind(range(1, d.arc_count + 1))
    for cr in d.crossings:
        _, b, _, dd = cr.arcs
        uf.union(b, dd)
    classes = uf.classes()
    gen_of = {}
    for gi, labels in enumerate(classes):
        for a in labels:
            gen_of[a] = gi
    relators = []
    for cr in d.crossings:
        a, b, c, _ = cr.arcs
        x_in, x_over, x_out = gen_of[a], gen_of[b], gen_of[c]
        s = cr.sign
        relators.append(Word(((x_out, 1), (x_over, s), (x_in, -1), (x_over, -s))))
    comp = tuple(d.component_of_arc[labels[0] - 1] for labels in classes)
    names = tuple("x{}[{}]".format(i + 1, ",".join(map(str, labels))) for i, labels in enumerate(classes))
    return GroupPresentation(g=len(classes), relators=tuple(relators),
                             component_of_generator=comp, m=d.m, names=names)


def generator_of_arc(d: LinkDiagram) -> dict[int, int]:
    """Map edge label -> Wirtinger generator index (as used by :func:`wirtinger`)."""
    uf = _UnionFind(range(1, d.arc_count + 1))
    for cr in d.crossings:
        uf.union(cr.arcs[1], cr.arcs[3])
    return {a: gi for gi, labels in enumerate(uf.classes()) for a in labels}


# -- constructions used to build and perturb the corpus ------------------------


def format_pd(d: LinkDiagram) -> str:
    out = []
    if d.free_circles:
        out.append(f"components {d.free_circles}")
    out += ["X {} {} {} {}".format(*cr.arcs) for cr in d.crossings]
    return "\n".join(out) + "\n"


def _crossing_edges(d: LinkDiagram) -> int:
    return d.arc_count - d.free_circles


def relabel(d: LinkDiagram, perm: dict[int, int]) -> LinkDiagram:
    """Rename edge labels by a permutation of 1..(edges at crossings)."""
    n = _crossing_edges(d)
    if sorted(perm) != list(range(1, n + 1)) or sorted(perm.values()) != list(range(1, n + 1)):
        raise ValueError("perm must permute the crossing edge labels")
    raw = [tuple(perm[a] for a in cr.arcs) for cr in d.crossings]
    return from_crossings(raw, d.free_circles)


def add_kink(d: LinkDiagram, edge: int, sign: int = 1) -> tuple[LinkDiagram, dict[int, int]]:
    """Insert a Reidemeister I curl on ``edge``.

    Returns the new diagram and a map from every new edge label to the old
    edge it came from.  The curl passes under first, then over itself.
    """
    n = _crossing_edges(d)
    if not 1 <= edge <= n:
        raise ValueError("edge must be an edge between crossings")
    loop, tail = n + 1, n + 2
    # the old edge keeps its tail end; its head end is taken by the new tail edge
    raw = [list(cr.arcs) for cr in d.crossings]
    for ci, cr in enumerate(d.crossings):
        for pos, a in enumerate(cr.arcs):
            if a == edge and _slot_role(d, ci, pos) == "in":
                raw[ci][pos] = tail
    # over-strand enters via ``loop`` and leaves via ``tail``; entering at
    # position b means the over-strand runs b -> d, a negative crossing
    kink = (edge, loop, loop, tail) if sign == -1 else (edge, tail, loop, loop)
    raw.append(list(kink))
    new = from_crossings(raw, d.free_circles)
    origin = {a: a for a in range(1, n + 1)}
    origin[loop] = edge
    origin[tail] = edge
    # crossingless circles come last and move up by the two new labels
    for i in range(1, d.free_circles + 1):
        origin[n + 2 + i] = n + i
    return new, origin


def _slot_role(d: LinkDiagram, ci: int, pos: int) -> str:
    if pos == 0:
        return "in"
    if pos == 2:
        return "out"
    over_in = 1 if d.crossings[ci].sign == -1 else 3
    return "in" if pos == over_in else "out"


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Split union: d2 drawn far away from d1."""
    n1, n2 = _crossing_edges(d1), _crossing_edges(d2)
    raw = [cr.arcs for cr in d1.crossings]
    raw += [tuple(a + n1 for a in cr.arcs) for cr in d2.crossings]
    if n1 + n2 == 0:
        return from_crossings([], d1.free_circles + d2.free_circles)
    return from_crossings(raw, d1.free_circles + d2.free_circles)
