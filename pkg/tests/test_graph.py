import json

import networkx as nx
import pydot
import pytest

from knotadj.adjacency import FamilyParams
from knotadj.braid import parse_braid_word
from knotadj.diagram import NotAKnot
from knotadj.graph import (AdjacencyGraph, GraphError, build_family_graph, export_dot,
                           export_json, graph_to_dict, import_json, insert_knot, reverify)
from knotadj.twobridge import Fraction

TREFOIL = parse_braid_word("s1^3")


@pytest.fixture(scope="module")
def grid_graph():
    return build_family_graph([TREFOIL], [-2, -1, 1, 2], [-2, -1, 1, 2])


def test_insert_knot_dedups_on_fraction():
    g = AdjacencyGraph()
    a = insert_knot(g, TREFOIL)
    b = insert_knot(g, parse_braid_word("s1^2 s2^-1"))
    c = insert_knot(g, parse_braid_word("s1^2 s2^-2"))
    assert (a, b, c) == (0, 0, 1)
    assert g.vertices[a].fraction == Fraction(3, 1)
    assert g.vertices[a].names == ["s1^3", "s1^2 s2^-1"]
    with pytest.raises(NotAKnot):
        insert_knot(g, parse_braid_word("s1^2"))


def test_grid_graph(grid_graph):
    g, report = grid_graph
    assert report.attempted == 16
    assert len(g.edges) == 4 and report.inserted == 4
    assert len(report.rejected) == 12
    target = g.vertex_for(Fraction(3, 1)).id
    assert all(e.dst == target and e.src != target for e in g.edges)
    assert {(e.params.m, e.params.n) for e in g.edges} == {(-2, -2), (-2, 2), (2, -2), (2, 2)}
    assert all(g.witnesses[e.witness].is_adjacency for e in g.edges)
    assert g.longest_path_length() == 1


def test_json_roundtrip(grid_graph):
    g, _ = grid_graph
    text = export_json(g)
    back = import_json(text)
    assert graph_to_dict(back) == graph_to_dict(g)
    assert export_json(back) == text


def test_dot_parses(grid_graph):
    g, _ = grid_graph
    (parsed,) = pydot.graph_from_dot_data(export_dot(g))
    assert parsed.get_name() == "Gamma2"
    assert len(parsed.get_edges()) == len(g.edges)
    assert len(parsed.get_nodes()) == len(g.vertices)


def test_loops_render_bidirectional():
    g, _ = build_family_graph([TREFOIL], [2], [2], allow_loops=True)
    g.edges[0].dst = g.edges[0].src
    dot = export_dot(g)
    assert "dir=both" in dot
    assert pydot.graph_from_dot_data(dot)


def test_tower_path_ends_at_base():
    g, report = build_family_graph([TREFOIL], tower_depth=3, tower_params=FamilyParams(2, 2))
    assert len(g.edges) == 3 and not report.rejected
    nxg = g.to_networkx()
    path = nx.dag_longest_path(nx.DiGraph(nxg))
    assert len(path) == 4
    assert g.vertices[path[-1]].fraction == Fraction(3, 1)


def test_deterministic_across_jobs():
    bases = [TREFOIL, parse_braid_word("s1^2 s2^-1 s1")]
    g1, _ = build_family_graph(bases, [-2, 2], [2], jobs=1)
    g2, _ = build_family_graph(bases, [-2, 2], [2], jobs=2)
    assert export_json(g1) == export_json(g2)


def test_reverify(grid_graph):
    g, _ = grid_graph
    assert reverify(g) == []


@pytest.mark.parametrize("text", [
    "not json",
    "{}",
    json.dumps({"version": 2, "vertices": [], "edges": []}),
    json.dumps({"version": 1, "vertices": [{"id": 0}], "edges": []}),
    json.dumps({"version": 1, "vertices": [], "edges": [
        {"src": 0, "dst": 1, "n": 2, "construction": "x", "params": {"m": 2, "n": 2},
         "cosmetic": "unknown"}]}),
])
def test_import_rejects(text):
    with pytest.raises(GraphError):
        import_json(text)
