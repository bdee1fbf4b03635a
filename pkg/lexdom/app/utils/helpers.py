import json
from enum import Enum
from typing import Any

from pydantic import BaseModel

from app.models.graph import FamilySpec, Graph
from app.utils.graph6 import parse_graph6, write_graph6


class JSONEncoder(json.JSONEncoder):
    """JSON encoder for vertex sets, enums and pydantic models"""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        elif isinstance(obj, Enum):
            return obj.value
        elif isinstance(obj, BaseModel):
            return obj.model_dump(mode="json")
        return super().default(obj)


def to_json(data: Any, indent: int = 2) -> str:
    return json.dumps(data, cls=JSONEncoder, indent=indent, ensure_ascii=False)


def is_family_text(text: str) -> bool:
    # graph6 never contains ':'
    return ":" in text


def resolve_graph(text: str) -> Graph:
    """Graph from a CLI argument: a family spec such as ``path:7`` or a graph6 line"""
    from app.services.graph_service import graph_service

    if is_family_text(text):
        return graph_service.family(FamilySpec.parse(text))
    return parse_graph6(text)


def graph_key(graph: Graph) -> str:
    return write_graph6(graph)
