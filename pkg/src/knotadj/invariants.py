"""Exact invariants of planar diagrams, used to decide isotopy of closures.

Two routes to the Kauffman bracket are provided: a naive sum over all 2^c
smoothings of the PD code, and a transfer scan down the plat that keeps a
polynomial for each of the two crossingless matchings of four points.
Convention: <unknot> = 1, loop value d = -A^2 - A^-2, and the A-smoothing of
X[a,b,c,d] joins (a,b) and (c,d).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .diagram import BOTTOM_CAPS, TOP_CAPS, NotAKnot, PlanarDiagram
from .laurent import LaurentPolynomial
from .twobridge import Fraction, NotAKnotFraction, plat_fraction

DEFAULT_ALEXANDER_CAP = 40
NAIVE_LIMIT = 14

A = LaurentPolynomial.monomial(1, var="A")
LOOP = LaurentPolynomial({2: -1, -2: -1}, var="A")


def _require_knot(d: PlanarDiagram):
    if d.n_components != 1:
        raise NotAKnot(f"diagram has {d.n_components} components")


def bracket_state_sum(d: PlanarDiagram) -> LaurentPolynomial:
    """Reference bracket: sum over all 2^c states."""
    n = d.crossing_count
    if n > NAIVE_LIMIT:
        raise ValueError(f"state sum limited to {NAIVE_LIMIT} crossings, got {n}")
    if n == 0:
        return LOOP ** (d.free_loops - 1) if d.free_loops else LaurentPolynomial.const(1, "A")
    labels = d.edge_labels()
    index = {lab: i for i, lab in enumerate(labels)}
    pairs_a = [((index[a], index[b]), (index[c], index[dd])) for a, b, c, dd in
               (x.edges for x in d.crossings)]
    pairs_b = [((index[a], index[dd]), (index[b], index[c])) for a, b, c, dd in
               (x.edges for x in d.crossings)]
    counts: dict[tuple[int, int], int] = {}
    for state in product((0, 1), repeat=n):
        parent = list(range(len(labels)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for bit, pa, pb in zip(state, pairs_a, pairs_b):
            for u, v in (pa if bit == 0 else pb):
                parent[find(u)] = find(v)
        loops = len({find(i) for i in range(len(labels))}) + d.free_loops
        a_minus_b = n - 2 * sum(state)
        key = (a_minus_b, loops)
        counts[key] = counts.get(key, 0) + 1
    total = LaurentPolynomial({}, "A")
    for (k, loops), mult in counts.items():
        total = total + LOOP ** (loops - 1) * LaurentPolynomial.monomial(k, mult, "A")
    return total


def _pairing(pairs) -> tuple[int, ...]:
    m = [0] * 4
    for a, b in pairs:
        m[a], m[b] = b, a
    return tuple(m)


def _loops(m1: tuple[int, ...], m2: tuple[int, ...]) -> int:
    seen, count = set(), 0
    for s in range(4):
        if s in seen:
            continue
        count += 1
        x = s
        while x not in seen:
            seen.add(x)
            y = m1[x]
            seen.add(y)
            x = m2[y]
    return count


def bracket_transfer(d: PlanarDiagram) -> LaurentPolynomial:
    """Bracket by scanning the plat top to bottom.

    The state maps each crossingless matching of the four current endpoints
    (as connected through the part of the diagram above) to its weight.
    """
    if d.plat is None:
        raise ValueError("transfer scan needs a plat diagram")
    states = {_pairing(TOP_CAPS): LaurentPolynomial.const(1, "A")}
    a_pos, a_neg = A, A ** -1
    for mv in d.plat:
        i, j = mv.pos, mv.pos + 1
        keep = a_pos if mv.twist > 0 else a_neg
        hook = a_neg if mv.twist > 0 else a_pos
        nxt: dict = {}
        for m, w in states.items():
            nxt[m] = nxt.get(m, 0) + w * keep
            if m[i] == j:
                m2, w2 = m, w * LOOP
            else:
                x, y = m[i], m[j]
                m2 = list(m)
                m2[x], m2[y] = y, x
                m2[i], m2[j] = j, i
                m2, w2 = tuple(m2), w
            nxt[m2] = nxt.get(m2, 0) + w2 * hook
        states = {m: w for m, w in nxt.items() if not (isinstance(w, int) or w.is_zero())}
    bottom = _pairing(BOTTOM_CAPS[d.bottom_rule])
    total = LaurentPolynomial({}, "A")
    for m, w in states.items():
        total = total + w * LOOP ** (_loops(m, bottom) - 1)
    return total


def kauffman_bracket(d: PlanarDiagram) -> LaurentPolynomial:
    if d.plat is not None:
        return bracket_transfer(d)
    return bracket_state_sum(d)


def jones_from_bracket(bracket: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    sign = -1 if writhe % 2 else 1
    f = bracket.shift(-3 * writhe) * sign
    out = {}
    for e, c in f.items():
        if e % 4:
            raise NotAKnot("bracket exponents not divisible by 4 after normalization")
        out[-e // 4] = c
    return LaurentPolynomial(out, "t")


def jones_polynomial(d: PlanarDiagram) -> LaurentPolynomial:
    _require_knot(d)
    return jones_from_bracket(kauffman_bracket(d), d.writhe())


def alexander_matrix(d: PlanarDiagram):
    """Rows of (arc -> LaurentPolynomial) from the Wirtinger relations.

    A crossing of sign e with over arc k, incoming under arc i and outgoing
    under arc j gives the relation x_j = x_k^e x_i x_k^-e, whose Fox
    derivatives are (1-t, t, -1) for e=+1 and (1-t, -1, t) for e=-1 after
    clearing units.
    """
    labels = d.edge_labels()
    parent = {lab: lab for lab in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in d.crossings:
        _, b, _, dd = x.edges
        parent[find(b)] = find(dd)
    arcs = sorted({find(lab) for lab in labels})
    col = {arc: i for i, arc in enumerate(arcs)}
    rows = []
    for x in d.crossings:
        a, b, c, _ = x.edges
        row: dict[int, dict[int, int]] = {}

        def add(arc, poly):
            cell = row.setdefault(col[find(arc)], {})
            for e, v in poly.items():
                cell[e] = cell.get(e, 0) + v

        add(b, {0: 1, 1: -1})
        if x.sign > 0:
            add(a, {1: 1})
            add(c, {0: -1})
        else:
            add(a, {0: -1})
            add(c, {1: 1})
        rows.append(row)
    return rows, len(arcs)


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def alexander_polynomial(d: PlanarDiagram) -> LaurentPolynomial:
    """Normalized Alexander polynomial: symmetric, Delta(1) = 1.

    The first minor of the Alexander matrix is evaluated at t = 2^k with
    exact integers and the coefficients are read back as balanced base-2^k
    digits; k is chosen above the coefficient bound 4^n.
    """
    _require_knot(d)
    if d.crossing_count == 0:
        return LaurentPolynomial.const(1)
    rows, n = alexander_matrix(d)
    bits = 2 * n + 4
    base = 1 << bits
    minor = []
    for row in rows[:-1]:
        vals = [0] * (n - 1)
        for c, poly in row.items():
            if c < n - 1:
                vals[c] = sum(v * base ** e for e, v in poly.items())
        minor.append(vals)
    det = _bareiss_det(minor)
    coeffs = {}
    e = 0
    half = base >> 1
    while det:
        digit = det & (base - 1)
        if digit >= half:
            digit -= base
        det = (det - digit) >> bits
        if digit:
            coeffs[e] = digit
        e += 1
    if not coeffs:
        raise ValueError("vanishing Alexander minor for a knot diagram")
    poly = LaurentPolynomial(coeffs)
    return normalize_alexander(poly)


def normalize_alexander(poly: LaurentPolynomial) -> LaurentPolynomial:
    poly = poly.shift(-poly.min_degree())
    span = poly.max_degree()
    if span % 2:
        raise ValueError(f"Alexander polynomial of odd span: {poly}")
    poly = poly.shift(-span // 2)
    if poly.evaluate(1) < 0:
        poly = -poly
    return poly


def determinant(d: PlanarDiagram) -> int:
    _require_knot(d)
    return abs(alexander_polynomial(d).evaluate(-1))


def genus_from_alexander(delta: LaurentPolynomial) -> int:
    """span(Delta)/2, exact for alternating (hence 2-bridge) knots."""
    return delta.span() // 2


@dataclass(frozen=True)
class Fingerprint:
    component_count: int
    determinant: Optional[int] = None
    fraction: Optional[Fraction] = None
    jones: Optional[LaurentPolynomial] = None
    alexander: Optional[LaurentPolynomial] = None
    genus: Optional[int] = None
    crossing_count: int = field(default=0, compare=False)

    @property
    def is_knot(self) -> bool:
        return self.component_count == 1

    def to_json(self) -> dict:
        return {
            "components": self.component_count,
            "crossings": self.crossing_count,
            "determinant": self.determinant,
            "fraction": self.fraction.to_json() if self.fraction else None,
            "jones": self.jones.to_json() if self.jones is not None else None,
            "alexander": self.alexander.to_json() if self.alexander is not None else None,
            "genus": self.genus,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Fingerprint":
        return cls(
            component_count=obj["components"],
            determinant=obj.get("determinant"),
            fraction=Fraction.from_json(obj["fraction"]) if obj.get("fraction") else None,
            jones=LaurentPolynomial.from_json(obj["jones"], "t") if obj.get("jones") is not None else None,
            alexander=(LaurentPolynomial.from_json(obj["alexander"], "t")
                       if obj.get("alexander") is not None else None),
            genus=obj.get("genus"),
            crossing_count=obj.get("crossings", 0),
        )

    def matches(self, other: "Fingerprint") -> bool:
        """Isotopy verdict: fractions and Jones agree, Alexander where both exist."""
        if not (self.is_knot and other.is_knot):
            return False
        if self.fraction is None or other.fraction is None or self.fraction != other.fraction:
            return False
        if self.jones != other.jones:
            return False
        if self.alexander is not None and other.alexander is not None:
            if self.alexander != other.alexander:
                return False
        return True


def alexander_cap_from_env(default: int = DEFAULT_ALEXANDER_CAP) -> int:
    raw = os.environ.get("ADJ_ALEX_CAP")
    return int(raw) if raw not in (None, "") else default


def fingerprint(d: PlanarDiagram, alexander_cap: int | None = None) -> Fingerprint:
    """Bundle of invariants; Alexander, determinant and genus only up to the cap.

    Above the cap the determinant is still reported, read off as |V(-1)|.
    """
    cap = DEFAULT_ALEXANDER_CAP if alexander_cap is None else alexander_cap
    if d.n_components != 1:
        return Fingerprint(component_count=d.n_components, crossing_count=d.crossing_count)
    frac = None
    if d.source is not None:
        try:
            frac = plat_fraction(d.source, d.bottom_rule)
        except NotAKnotFraction as exc:  # pragma: no cover - contradicts component count
            raise AssertionError(f"knot diagram with link fraction: {exc}") from exc
    jones = jones_polynomial(d)
    alex = genus = None
    if d.crossing_count <= cap:
        alex = alexander_polynomial(d)
        genus = genus_from_alexander(alex)
        det = abs(alex.evaluate(-1))
    else:
        det = abs(jones.evaluate(-1))
    return Fingerprint(
        component_count=1,
        determinant=det,
        fraction=frac,
        jones=jones,
        alexander=alex,
        genus=genus,
        crossing_count=d.crossing_count,
    )
