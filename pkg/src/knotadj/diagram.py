"""The 2-bridge closure of a B3 word as an oriented planar diagram.

Four vertical positions 0..3 are used; the braid acts on positions 1..3
(sigma_1 twists positions 1,2 and sigma_2 twists positions 2,3) and position
0 is the inert zero-th strand.  Caps: 0-1 and 2-3 on top; at the bottom
0-1 and 2-3 when the word ends in sigma_1, otherwise 0-3 and 1-2.

Crossings are recorded in PD form ``X[a,b,c,d]``: the four incident edge
labels counterclockwise, starting from the incoming under-strand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .braid import BraidWord, SiteRef, Syllable

TOP_CAPS = ((0, 1), (2, 3))
BOTTOM_CAPS = {1: ((0, 1), (2, 3)), 2: ((0, 3), (1, 2))}

# Corner coordinates with north = top of the braid.
_XY = {"NW": (-1, 1), "NE": (1, 1), "SW": (-1, -1), "SE": (1, -1)}
_CCW = ("NE", "NW", "SW", "SE")
_THROUGH = {"NW": "SE", "SE": "NW", "NE": "SW", "SW": "NE"}


class ClosureError(ValueError):
    pass


class NotAKnot(ValueError):
    """Raised where a knot is required but the closure has two components."""


@dataclass(frozen=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    def __str__(self):
        return "X[{},{},{},{}]".format(*self.edges)


@dataclass(frozen=True)
class PlatMove:
    """One crossing of the plat: twist of positions (pos, pos+1)."""
    pos: int
    twist: int  # +1 right-handed, -1 left-handed (as drawn, orientation-free)


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...]
    n_components: int
    free_loops: int = 0
    # edge label -> +1 if it runs downward where it leaves its tail crossing
    orientation: dict = field(default_factory=dict, compare=False)
    site_map: dict = field(default_factory=dict, compare=False)
    source: tuple[Syllable, ...] | None = None
    plat: tuple[PlatMove, ...] | None = field(default=None, compare=False)
    bottom_rule: int | None = None
    # syllable index -> (direction at left position, direction at right), +1 down
    site_directions: dict = field(default_factory=dict, compare=False)
    # syllable index -> component ids of the two strands through its box
    site_components: dict = field(default_factory=dict, compare=False)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def edge_labels(self) -> list[int]:
        return sorted({e for c in self.crossings for e in c.edges})

    def pd_code(self) -> str:
        return ", ".join(str(c) for c in self.crossings)


def unknot_diagram() -> PlanarDiagram:
    return PlanarDiagram(crossings=(), n_components=1, free_loops=1)


def unlink_diagram(k: int) -> PlanarDiagram:
    return PlanarDiagram(crossings=(), n_components=k, free_loops=k)


def plat_moves(syllables: Iterable[Syllable]) -> list[PlatMove]:
    moves = []
    for g, e in syllables:
        s = 1 if e > 0 else -1
        moves.extend(PlatMove(g, s) for _ in range(abs(e)))
    return moves


def component_count_of(syllables: Sequence[Syllable], bottom_rule: int | None = None) -> int:
    """Count closed curves from the strand permutation and the caps alone."""
    syllables = [s for s in syllables if s[1]]
    if bottom_rule is None:
        if not syllables:
            raise ClosureError("empty word has no 2-bridge closure")
        bottom_rule = syllables[-1][0]
    where = list(range(4))  # where[top position] = current position
    for g, e in syllables:
        if e % 2:
            where = [g + 1 if x == g else g if x == g + 1 else x for x in where]
    parent = list(range(8))  # 0..3 top endpoints, 4..7 bottom endpoints

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    links = [(x, 4 + where[x]) for x in range(4)]
    links += list(TOP_CAPS) + [(4 + a, 4 + b) for a, b in BOTTOM_CAPS[bottom_rule]]
    for a, b in links:
        parent[find(a)] = find(b)
    return len({find(a) for a in range(8)})


def plat_diagram(syllables: Sequence[Syllable], bottom_rule: int | None = None) -> PlanarDiagram:
    """Diagram of the 2-bridge closure of an arbitrary syllable sequence.

    No normal form is required and a leading sigma_2 is accepted (the top
    2-3 cap simply untwists it); this is the geometric object that surgery
    acts on.  ``bottom_rule`` overrides the cap rule that is otherwise read
    from the last generator of the sequence.
    """
    syllables = tuple((int(g), int(e)) for g, e in syllables)
    if bottom_rule is None:
        nonzero = [g for g, e in syllables if e]
        if not nonzero:
            raise ClosureError("empty word has no 2-bridge closure")
        bottom_rule = nonzero[-1]
    moves = plat_moves(syllables)
    n = len(moves)

    # Point ids: ("x", k, corner) for crossings, ("T", pos) and ("B", pos).
    column: dict = {}
    last = {x: ("T", x) for x in range(4)}
    for k, mv in enumerate(moves):
        left, right = mv.pos, mv.pos + 1
        for pos, upper, lower in ((left, "NW", "SW"), (right, "NE", "SE")):
            column[last[pos]] = ("x", k, upper)
            column[("x", k, upper)] = last[pos]
            last[pos] = ("x", k, lower)
    for x in range(4):
        column[last[x]] = ("B", x)
        column[("B", x)] = last[x]

    other: dict = {}
    for a, b in TOP_CAPS:
        other[("T", a)], other[("T", b)] = ("T", b), ("T", a)
    for a, b in BOTTOM_CAPS[bottom_rule]:
        other[("B", a)], other[("B", b)] = ("B", b), ("B", a)
    for k in range(n):
        for c, d in _THROUGH.items():
            other[("x", k, c)] = ("x", k, d)

    # Trace components. Walk = column link, then other link, alternately.
    # corner_edge[(k, corner)] = (edge label, incoming?)
    corner_edge: dict = {}
    corner_comp: dict = {}
    orientation: dict = {}
    visited = set()
    n_components = 0
    free_loops = 0
    label = 0
    starts = [("T", x) for x in range(4)]
    for start in starts:
        if start in visited:
            continue
        n_components += 1
        # enter at a top point moving down: the column link goes downward
        p = start
        first_label = None
        pending = None  # label of edge currently being drawn
        hit = False
        while True:
            visited.add(p)
            q = column[p]  # move along the column
            visited.add(q)
            if q[0] == "x":
                _, k, corner = q
                hit = True
                if pending is None:
                    label += 1
                    pending = label
                    first_label = pending
                corner_edge[(k, corner)] = (pending, True)
                out_corner = _THROUGH[corner]
                corner_comp[(k, corner)] = corner_comp[(k, out_corner)] = n_components - 1
                label += 1
                pending = label
                corner_edge[(k, out_corner)] = (pending, False)
                orientation[pending] = 1 if out_corner in ("SW", "SE") else -1
                p = ("x", k, out_corner)
            else:
                p = other[q]
                if p == start:
                    break
        if not hit:
            free_loops += 1
            continue
        # close the cycle: last pending edge is the same as the first one
        if pending != first_label:
            for key, (lab, inc) in list(corner_edge.items()):
                if lab == pending:
                    corner_edge[key] = (first_label, inc)
            orientation[first_label] = orientation.pop(pending)
            label -= 1

    crossings = []
    for k, mv in enumerate(moves):
        under = ("NW", "SE") if mv.twist > 0 else ("NE", "SW")
        over = ("NE", "SW") if mv.twist > 0 else ("NW", "SE")
        u_in = next(c for c in under if corner_edge[(k, c)][1])
        o_in = next(c for c in over if corner_edge[(k, c)][1])
        start_i = _CCW.index(u_in)
        order = [_CCW[(start_i + j) % 4] for j in range(4)]
        edges = tuple(corner_edge[(k, c)][0] for c in order)
        uvec = _vec(u_in, _THROUGH[u_in])
        ovec = _vec(o_in, _THROUGH[o_in])
        cross = ovec[0] * uvec[1] - ovec[1] * uvec[0]
        crossings.append(Crossing(edges, 1 if cross > 0 else -1))

    site_map: dict = {}
    site_directions: dict = {}
    site_components: dict = {}
    k = 0
    for i, (g, e) in enumerate(syllables):
        ids = list(range(k, k + abs(e)))
        site_map[SiteRef(i)] = ids
        if ids:
            first = ids[0]
            site_directions[i] = (
                1 if corner_edge[(first, "NW")][1] else -1,
                1 if corner_edge[(first, "NE")][1] else -1,
            )
            site_components[i] = (corner_comp[(first, "NW")], corner_comp[(first, "NE")])
        k += abs(e)

    return PlanarDiagram(
        crossings=tuple(crossings),
        n_components=n_components,
        free_loops=free_loops,
        orientation=orientation,
        site_map=site_map,
        source=syllables,
        plat=tuple(moves),
        bottom_rule=bottom_rule,
        site_directions=site_directions,
        site_components=site_components,
    )


def _vec(a: str, b: str) -> tuple[int, int]:
    return (_XY[b][0] - _XY[a][0], _XY[b][1] - _XY[a][1])


def two_bridge_closure(w: BraidWord) -> PlanarDiagram:
    if not w.syllables:
        raise ClosureError("empty word has no 2-bridge closure")
    if w.first_generator != 1:
        raise ClosureError("2-bridge closure needs sigma_1 as the first generator")
    return plat_diagram(w.syllables)


def component_count(d: PlanarDiagram) -> int:
    return d.n_components


def site_algebraic_intersection(d: PlanarDiagram, s: SiteRef) -> int:
    """Signed count of strands through the disk around syllable ``s``.

    Each of the two strands entering the syllable's twist box contributes +1
    when it runs downward and -1 when it runs upward, so 0 means the strands
    are antiparallel.
    """
    if d.source is None or not 0 <= s.syllable_index < len(d.source):
        raise IndexError(f"site {s.syllable_index} out of range")
    left, right = d.site_directions[s.syllable_index]
    return left + right
