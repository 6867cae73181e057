"""
Graph I/O
JSON interchange for plane graphs and pipeline artifacts
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

from src.errors import GraphParseError
from src.plane_graph import PlaneGraph, build_plane_graph

logger = logging.getLogger(__name__)


def graph_to_dict(g: PlaneGraph) -> dict:
    return {
        'n': g.n,
        'rotation': {str(v): list(nbrs) for v, nbrs in g.rotation.items()},
        'outer': list(g.outer),
    }


def graph_from_dict(data: Any) -> PlaneGraph:
    """
    Parse the graph JSON object

    Args:
        data: {"n": int, "rotation": {vertex: [neighbors clockwise]}, "outer": [v1, v2, v3]}

    Returns:
        validated PlaneGraph; embedding problems raise EmbeddingError subclasses
    """
    if not isinstance(data, dict):
        raise GraphParseError("graph JSON must be an object")
    for key in ('rotation', 'outer'):
        if key not in data:
            raise GraphParseError(f"graph JSON lacks '{key}'")

    rotation = data['rotation']
    if not isinstance(rotation, dict) or not all(isinstance(nbrs, list) for nbrs in rotation.values()):
        raise GraphParseError("'rotation' must map vertices to neighbor lists")
    try:
        rotation = {int(v): [int(u) for u in nbrs] for v, nbrs in rotation.items()}
        outer = [int(v) for v in data['outer']]
    except (TypeError, ValueError) as e:
        raise GraphParseError(f"vertex ids must be integers: {e}") from e

    if 'n' in data and data['n'] != len(rotation):
        raise GraphParseError(f"n={data['n']} but rotation lists {len(rotation)} vertices")
    gaps = sorted(set(range(1, len(rotation) + 1)) - set(rotation))
    if gaps:
        raise GraphParseError(f"vertex ids must be 1..{len(rotation)}; missing {gaps}",
                              witness=gaps)
    return build_plane_graph(rotation, outer)


def dumps(data: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation"""
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def read_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise GraphParseError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise GraphParseError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e


def write_json(path: Union[str, Path], data: Any):
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data))
    logger.debug(f"Wrote {path}")


def load_graph(path: Union[str, Path]) -> PlaneGraph:
    return graph_from_dict(read_json(path))
