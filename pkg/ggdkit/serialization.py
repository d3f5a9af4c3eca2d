"""JSON documents for graphs, matchings, edit paths and 3-PARTITION instances.

Documents are validated with pydantic models that reject unknown keys.
Writers emit sorted keys and Python's shortest round-trip float repr, so
reading a document back yields bit-identical numbers.
"""

import json
from pathlib import Path
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ggdkit.editpath import DeleteEdge, DeleteVertex, EditPath, InsertEdge, InsertVertex, TranslateVertex
from ggdkit.exceptions import DocumentError, InvalidGraphError
from ggdkit.geometry import GeometricGraph
from ggdkit.instances.reduction import ThreePartitionInstance
from ggdkit.matching import Matching

VertexId = Union[int, str]


class _Document(BaseModel):
    model_config = ConfigDict(extra="forbid")


class VertexDocument(_Document):
    id: VertexId
    coords: list[float]


class GraphDocument(_Document):
    dim: int = Field(ge=1)
    vertices: list[VertexDocument]
    edges: list[tuple[VertexId, VertexId]] = []

    @model_validator(mode="after")
    def _unique_ids(self):
        seen = set()
        for vertex in self.vertices:
            if vertex.id in seen:
                raise ValueError(f"duplicate vertex id {vertex.id!r}")
            seen.add(vertex.id)
        return self


class MatchingDocument(_Document):
    pairs: list[tuple[Optional[VertexId], Optional[VertexId]]]


class InsertVertexDocument(_Document):
    op: Literal["insert_vertex"]
    id: VertexId
    coords: list[float]


class DeleteVertexDocument(_Document):
    op: Literal["delete_vertex"]
    id: VertexId


class InsertEdgeDocument(_Document):
    op: Literal["insert_edge"]
    ids: tuple[VertexId, VertexId]


class DeleteEdgeDocument(_Document):
    op: Literal["delete_edge"]
    ids: tuple[VertexId, VertexId]


class TranslateDocument(_Document):
    op: Literal["translate"]
    id: VertexId
    to: list[float]


OpDocument = Annotated[
    Union[InsertVertexDocument, DeleteVertexDocument, InsertEdgeDocument, DeleteEdgeDocument, TranslateDocument],
    Field(discriminator="op"),
]


class EditPathDocument(_Document):
    ops: list[OpDocument]


class InstanceDocument(_Document):
    n: int
    b: int
    s: list[int]

    @field_validator("s")
    @classmethod
    def _positive(cls, s):
        if any(a <= 0 for a in s):
            raise ValueError("every integer of S must be positive")
        return s


def _read(source):
    """Parses JSON from a path or returns a dict unchanged."""
    if isinstance(source, dict):
        return source
    data = Path(source).read_bytes()
    try:
        return json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise DocumentError(f"{source}: not UTF-8 text: {e}") from e
    except json.JSONDecodeError as e:
        raise DocumentError(f"{source}: not valid JSON: {e}") from e


def _validate(model, source):
    try:
        return model.model_validate(_read(source))
    except ValidationError as e:
        raise DocumentError(f"{source if not isinstance(source, dict) else model.__name__}: {e}") from e


def load_graph(source):
    doc = _validate(GraphDocument, source)
    try:
        return GeometricGraph(doc.dim, {v.id: v.coords for v in doc.vertices}, doc.edges)
    except InvalidGraphError as e:
        raise DocumentError(str(e)) from e


def graph_to_dict(g):
    return {
        "dim": g.dim,
        "vertices": [{"id": v, "coords": list(g.vertices[v])} for v in g.vertex_order],
        "edges": [list(e) for e in g.edge_order],
    }


def load_matching(source):
    return Matching(tuple(_validate(MatchingDocument, source).pairs))


def _op_from_document(doc):
    if doc.op == "insert_vertex":
        return InsertVertex(doc.id, doc.coords)
    if doc.op == "delete_vertex":
        return DeleteVertex(doc.id)
    if doc.op == "insert_edge":
        return InsertEdge(*doc.ids)
    if doc.op == "delete_edge":
        return DeleteEdge(*doc.ids)
    return TranslateVertex(doc.id, doc.to)


def load_path(source, start):
    """The edit path in source, starting at graph start."""
    doc = _validate(EditPathDocument, source)
    try:
        return EditPath(start, tuple(_op_from_document(op) for op in doc.ops))
    except (ValueError, InvalidGraphError) as e:
        raise DocumentError(str(e)) from e


def load_instance(source):
    doc = _validate(InstanceDocument, source)
    return ThreePartitionInstance(n=doc.n, b=doc.b, s=tuple(doc.s))


def to_json(document):
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def dump(document, path):
    """Writes document as JSON, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(document))
    return path
