"""Finite verified samples of the 2-adjacency graph.

Vertices are 2-bridge knots keyed by their Schubert-canonical fraction;
an edge src -> dst records a checked 2-adjacency from src to dst together
with the witness that checked it.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import networkx as nx

from . import __version__
from .adjacency import (AdjacencyWitness, CosmeticFlag, FamilyParams, tower_extend,
                        verify_two_adjacency)
from .braid import BraidWord, format_braid_word
from .diagram import NotAKnot, two_bridge_closure
from .invariants import Fingerprint, fingerprint
from .laurent import LaurentPolynomial
from .twobridge import Fraction

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class GraphError(ValueError):
    pass


class InvariantMismatch(AssertionError):
    """Two words in one Schubert class gave different Jones polynomials."""


@dataclass
class KnotVertex:
    id: int
    fraction: Fraction
    jones: LaurentPolynomial
    names: list[str] = field(default_factory=list)
    fingerprint: Optional[Fingerprint] = field(default=None, compare=False)


@dataclass
class AdjEdge:
    src: int
    dst: int
    n: int
    construction: str
    params: FamilyParams
    cosmetic_flag: CosmeticFlag
    witness: Optional[int] = None

    @property
    def key(self):
        return (self.src, self.dst, self.construction, self.params.m, self.params.n)


@dataclass
class AdjacencyGraph:
    vertices: dict[int, KnotVertex] = field(default_factory=dict)
    edges: list[AdjEdge] = field(default_factory=list)
    witnesses: list[AdjacencyWitness] = field(default_factory=list, compare=False)
    provenance: dict = field(default_factory=dict)
    _by_fraction: dict = field(default_factory=dict, repr=False, compare=False)

    def vertex_for(self, f: Fraction) -> Optional[KnotVertex]:
        vid = self._by_fraction.get(f)
        return None if vid is None else self.vertices[vid]

    def _add_vertex(self, v: KnotVertex) -> None:
        self.vertices[v.id] = v
        self._by_fraction[v.fraction] = v.id

    def to_networkx(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(e.src, e.dst, construction=e.construction)
        return g

    def longest_path_length(self) -> int:
        g = nx.DiGraph(self.to_networkx())
        g.remove_edges_from(list(nx.selfloop_edges(g)))
        if not nx.is_directed_acyclic_graph(g):
            raise GraphError("graph has a cycle; longest path undefined")
        return nx.dag_longest_path_length(g)


def insert_knot(g: AdjacencyGraph, w: BraidWord, fp: Fingerprint | None = None,
                alexander_cap: int | None = None) -> int:
    if fp is None:
        fp = fingerprint(two_bridge_closure(w), alexander_cap)
    if fp.component_count != 1 or fp.fraction is None:
        raise NotAKnot(f"{format_braid_word(w)!r} closes to a link")
    existing = g.vertex_for(fp.fraction)
    name = format_braid_word(w)
    if existing is not None:
        if existing.jones != fp.jones:
            raise InvariantMismatch(
                f"{fp.fraction}: Jones {fp.jones} differs from stored {existing.jones}")
        if name not in existing.names and len(existing.names) < 4:
            existing.names.append(name)
        return existing.id
    vid = len(g.vertices)
    g._add_vertex(KnotVertex(vid, fp.fraction, fp.jones, [name], fp))
    return vid


@dataclass
class BuildReport:
    attempted: int = 0
    inserted: int = 0
    rejected: list = field(default_factory=list)  # (base, m, n, reason)

    def reject(self, base: BraidWord, params: FamilyParams, reason: str):
        self.rejected.append((format_braid_word(base), params.m, params.n, reason))


def _verify_cell(args):
    beta, params, cap = args
    try:
        return verify_two_adjacency(beta, params, cap), None
    except (ValueError, NotAKnot) as exc:
        return None, str(exc)


def _rejection_reason(w: AdjacencyWitness) -> Optional[str]:
    if not w.verdict:
        return "verdict false: surgered closures differ from the base knot"
    if not w.family_is_knot:
        return "family closure is a 2-component link"
    if not w.sites_are_crossing_circles:
        return f"sites are not crossing circles (intersections {w.site_intersections})"
    if not w.deletion_is_twist_surgery:
        return "odd box: deletion is not a generalized crossing change"
    return None


def _add_witness_edge(g: AdjacencyGraph, w: AdjacencyWitness, construction: str,
                      report: BuildReport, allow_loops: bool, cap) -> bool:
    reason = _rejection_reason(w)
    if reason:
        report.reject(w.base_word, w.params, reason)
        return False
    dst = insert_knot(g, w.base_word, w.base_fingerprint, cap)
    src = insert_knot(g, w.family_word, w.family_fingerprint, cap)
    if src == dst and not allow_loops:
        report.reject(w.base_word, w.params, "family knot isotopic to base (loop)")
        return False
    g.witnesses.append(w)
    edge = AdjEdge(src, dst, 2, construction, w.params, w.cosmetic_flag, len(g.witnesses) - 1)
    if any(e.key == edge.key for e in g.edges):
        g.witnesses.pop()
        return False
    g.edges.append(edge)
    report.inserted += 1
    return True


def build_family_graph(bases: Sequence[BraidWord], m_values: Iterable[int] = (),
                       n_values: Iterable[int] = (), tower_depth: int = 0,
                       tower_params: FamilyParams = FamilyParams(2, 2),
                       alexander_cap: int | None = None, jobs: int = 1,
                       allow_loops: bool = False) -> tuple[AdjacencyGraph, BuildReport]:
    """Verify K_beta(m,n) -> K_beta for each base and grid cell, plus towers.

    Cells are verified independently (in a process pool when ``jobs > 1``)
    and merged in sorted parameter order, so output does not depend on
    scheduling.
    """
    m_values, n_values = sorted(set(m_values)), sorted(set(n_values))
    g = AdjacencyGraph(provenance={
        "tool": "knotadj",
        "version": __version__,
        "bases": [format_braid_word(b) for b in bases],
        "m_values": m_values,
        "n_values": n_values,
        "tower_depth": tower_depth,
        "tower_params": {"m": tower_params.m, "n": tower_params.n},
        "alexander_cap": alexander_cap,
    })
    report = BuildReport()
    cells = [(b, FamilyParams(m, n), alexander_cap)
             for b in bases for m in m_values for n in n_values]
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_cell, cells))
    else:
        results = [_verify_cell(c) for c in cells]
    for (beta, params, _), (wit, err) in zip(cells, results):
        report.attempted += 1
        if wit is None:
            report.reject(beta, params, err)
            continue
        _add_witness_edge(g, wit, "k_beta_family", report, allow_loops, alexander_cap)

    for beta in bases:
        beta_i = beta
        for level in range(tower_depth):
            report.attempted += 1
            wit, err = _verify_cell((beta_i, tower_params, alexander_cap))
            if wit is None:
                report.reject(beta_i, tower_params, f"tower level {level}: {err}")
                break
            if not _add_witness_edge(g, wit, "tower", report, allow_loops, alexander_cap):
                if _rejection_reason(wit):
                    break
            beta_i = tower_extend(beta_i, tower_params)
    for entry in report.rejected:
        log.info("rejected %s (m=%d, n=%d): %s", *entry)
    return g, report


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: AdjacencyGraph) -> str:
    lines = ["digraph Gamma2 {"]
    for vid in sorted(g.vertices):
        v = g.vertices[vid]
        lines.append(f"  v{vid} [label={_dot_quote(str(v.fraction))}];")
    for e in g.edges:
        attrs = [f"label={_dot_quote(f'n={e.n}')}", f"construction={_dot_quote(e.construction)}",
                 f"m={e.params.m}", f"n_param={e.params.n}"]
        if e.src == e.dst:
            attrs.append("dir=both")
        lines.append(f"  v{e.src} -> v{e.dst} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: AdjacencyGraph, include_witnesses: bool = True) -> dict:
    out = {
        "version": SCHEMA_VERSION,
        "vertices": [
            {"id": v.id, "p": v.fraction.p, "q": v.fraction.q,
             "jones": v.jones.to_json(), "names": list(v.names)}
            for v in (g.vertices[k] for k in sorted(g.vertices))
        ],
        "edges": [
            {"src": e.src, "dst": e.dst, "n": e.n, "construction": e.construction,
             "params": {"m": e.params.m, "n": e.params.n}, "cosmetic": e.cosmetic_flag.value,
             **({"witness": e.witness} if include_witnesses and e.witness is not None else {})}
            for e in g.edges
        ],
        "provenance": g.provenance,
    }
    if include_witnesses:
        out["witnesses"] = [w.to_json() for w in g.witnesses]
    return out


def export_json(g: AdjacencyGraph, include_witnesses: bool = True) -> str:
    return json.dumps(graph_to_dict(g, include_witnesses), indent=1, sort_keys=True)


def import_json(text: str) -> AdjacencyGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict) or "version" not in obj:
        raise GraphError("missing schema version")
    if obj["version"] != SCHEMA_VERSION:
        raise GraphError(f"schema version {obj['version']} != {SCHEMA_VERSION}")
    try:
        g = AdjacencyGraph(provenance=obj.get("provenance", {}))
        for v in obj["vertices"]:
            g._add_vertex(KnotVertex(int(v["id"]), Fraction(int(v["p"]), int(v["q"])),
                                     LaurentPolynomial.from_json(v["jones"], "t"),
                                     list(v.get("names", []))))
        g.witnesses = [AdjacencyWitness.from_json(w) for w in obj.get("witnesses", [])]
        for e in obj["edges"]:
            if e["src"] not in g.vertices or e["dst"] not in g.vertices:
                raise GraphError(f"edge refers to unknown vertex: {e}")
            g.edges.append(AdjEdge(int(e["src"]), int(e["dst"]), int(e["n"]), e["construction"],
                                   FamilyParams(int(e["params"]["m"]), int(e["params"]["n"])),
                                   CosmeticFlag(e["cosmetic"]), e.get("witness")))
    except (KeyError, TypeError) as exc:
        raise GraphError(f"schema violation: {exc!r}") from exc
    return g


def reverify(g: AdjacencyGraph, limit: int | None = None,
             alexander_cap: int | None = None) -> list[int]:
    """Recompute witnesses of stored edges; return indices of edges that fail."""
    bad = []
    for i, e in enumerate(g.edges[:limit] if limit else g.edges):
        if e.witness is None:
            bad.append(i)
            continue
        old = g.witnesses[e.witness]
        new = verify_two_adjacency(old.base_word, old.params, alexander_cap)
        ok = (new.is_adjacency
              and all(a.fraction == b.fraction and a.jones == b.jones
                      for a, b in zip(old.surgered_fingerprints, new.surgered_fingerprints))
              and new.base_fingerprint.fraction == g.vertices[e.dst].fraction
              and new.family_fingerprint.fraction == g.vertices[e.src].fraction)
        if not ok:
            bad.append(i)
    return bad
