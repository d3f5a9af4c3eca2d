import json

import pytest

from ggdkit.editpath import DeleteEdge, InsertVertex, TranslateVertex
from ggdkit.exceptions import DocumentError
from ggdkit.geometry import graphs_equal
from ggdkit.instances import tight_edit_path, tight_pair
from ggdkit.matching import DELETED, trivial_matching
from ggdkit.serialization import (
    dump,
    graph_to_dict,
    load_graph,
    load_instance,
    load_matching,
    load_path,
    to_json,
)

GRAPH = {
    "dim": 2,
    "vertices": [{"id": "u1", "coords": [0.0, 1.0]}, {"id": 2, "coords": [0.5, 0.25]}],
    "edges": [[2, "u1"]],
}


class TestGraphs:
    def test_load(self):
        g = load_graph(GRAPH)
        assert g.vertices[2] == (0.5, 0.25)
        assert g.has_edge("u1", 2)

    def test_file_round_trip(self, tmp_path, path3):
        path = dump(graph_to_dict(path3), tmp_path / "nested" / "g.json")
        loaded = load_graph(path)
        assert graphs_equal(loaded, path3)
        assert dict(loaded.vertices) == dict(path3.vertices)

    def test_floats_survive_exactly(self, tmp_path, unit_coeffs):
        g, _ = tight_pair(0.1, unit_coeffs)
        loaded = load_graph(dump(graph_to_dict(g), tmp_path / "g.json"))
        assert dict(loaded.vertices) == dict(g.vertices)

    @pytest.mark.parametrize(
        "document",
        [
            {**GRAPH, "colour": "red"},
            {**GRAPH, "dim": 0},
            {**GRAPH, "vertices": GRAPH["vertices"] + [{"id": "u1", "coords": [3.0, 3.0]}]},
            {**GRAPH, "edges": [["u1", "nope"]]},
            {**GRAPH, "edges": [["u1", 2], [2, "u1"]]},
            {**GRAPH, "vertices": [{"id": "u1", "coords": [0.0]}, {"id": 2, "coords": [0.5, 0.25]}]},
            {"dim": 2, "vertices": [{"id": "u1", "coords": [0.0, 1.0], "weight": 3}]},
        ],
    )
    def test_rejected(self, document):
        with pytest.raises(DocumentError):
            load_graph(document)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(DocumentError, match="not valid JSON"):
            load_graph(path)

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "binary.json"
        path.write_bytes(b'{"dim": 2, "vertices": [], "id": "\xff\xfe"}')
        with pytest.raises(DocumentError, match="not UTF-8"):
            load_graph(path)

    def test_sorted_output(self, path3):
        text = to_json(graph_to_dict(path3))
        assert text.endswith("\n")
        assert list(json.loads(text)) == ["dim", "edges", "vertices"]


class TestMatchings:
    def test_round_trip(self, tmp_path, path3):
        m = trivial_matching(path3, path3)
        assert load_matching(dump(m.to_dict(), tmp_path / "m.json")) == m

    def test_null_means_deleted(self):
        m = load_matching({"pairs": [["a", None], [None, "x"], ["b", "y"]]})
        assert m.image("a") is DELETED
        assert m.preimage("x") is DELETED
        assert m.image("b") == "y"

    def test_rejected(self):
        with pytest.raises(DocumentError):
            load_matching({"pairs": [["a"]]})


class TestPaths:
    def test_round_trip(self, tmp_path, unit_coeffs):
        g, _ = tight_pair(1.0, unit_coeffs)
        p = tight_edit_path(1.0, unit_coeffs)
        loaded = load_path(dump(p.to_dict(), tmp_path / "p.json"), g)
        assert loaded.ops == p.ops

    def test_op_kinds(self, path3):
        p = load_path(
            {
                "ops": [
                    {"op": "delete_edge", "ids": ["a", "b"]},
                    {"op": "insert_vertex", "id": "d", "coords": [2, 2]},
                    {"op": "translate", "id": "c", "to": [0, 3]},
                ]
            },
            path3,
        )
        assert p.ops == (DeleteEdge("a", "b"), InsertVertex("d", (2.0, 2.0)), TranslateVertex("c", (0.0, 3.0)))
        assert p.source is path3

    @pytest.mark.parametrize(
        "op",
        [
            {"op": "explode", "id": "a"},
            {"op": "delete_vertex"},
            {"op": "delete_vertex", "id": ""},
            {"op": "translate", "id": "a", "to": [0, "x"]},
        ],
    )
    def test_rejected(self, path3, op):
        with pytest.raises(DocumentError):
            load_path({"ops": [op]}, path3)


class TestInstances:
    def test_load(self):
        inst = load_instance({"n": 2, "b": 6, "s": [2, 2, 2, 2, 2, 2]})
        assert inst.s == (2, 2, 2, 2, 2, 2)
        assert inst.to_dict() == {"n": 2, "b": 6, "s": [2, 2, 2, 2, 2, 2]}

    def test_rejects_nonpositive(self):
        with pytest.raises(DocumentError):
            load_instance({"n": 2, "b": 6, "s": [2, 2, 2, 2, 2, 0]})
