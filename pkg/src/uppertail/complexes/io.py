"""JSON complex files: ``{"n": int, "facets": [[int, ...], ...]}``."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Union

from ..exceptions import MalformedComplex
from .simplicial import SimplicialComplex, from_facets

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def complex_from_dict(data: Dict[str, Any]) -> SimplicialComplex:
    """Rebuild a complex from its facet listing."""
    if not isinstance(data, dict) or "n" not in data:
        raise MalformedComplex("complex JSON must be an object with an integer 'n'")
    n = data["n"]
    facets = data.get("facets", [])
    if not isinstance(n, int) or not isinstance(facets, list):
        raise MalformedComplex("'n' must be an integer and 'facets' a list")
    return from_facets(n, [tuple(f) for f in facets])


def read_complex(path: PathLike) -> SimplicialComplex:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise MalformedComplex(f"{path}: invalid JSON ({e})") from e
    except OSError as e:
        raise MalformedComplex(f"{path}: cannot read complex file ({e})") from e
    K = complex_from_dict(data)
    logger.debug(f"Read {K!r} from {path}")
    return K


def write_complex(K: SimplicialComplex, path: PathLike) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(K.to_dict(), f)
        f.write("\n")
