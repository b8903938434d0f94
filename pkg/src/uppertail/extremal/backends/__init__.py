"""LP backends for the vertex-weight program."""

from .base import LPBackend
from .factory import create_lp_backend
from .highs import HighsBackend
from .tableau import TableauBackend

__all__ = ["LPBackend", "HighsBackend", "TableauBackend", "create_lp_backend"]
