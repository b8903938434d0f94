"""Factory for creating LP backends."""

import logging
from typing import Optional, Union

from ...config import LPBackendName, get_settings
from .base import LPBackend
from .highs import HighsBackend
from .tableau import TableauBackend

logger = logging.getLogger(__name__)


def create_lp_backend(name: Optional[Union[str, LPBackendName]] = None) -> LPBackend:
    """
    Create an LP backend by name.

    Args:
        name: Backend name; defaults to ``settings.lp_backend``

    Returns:
        LPBackend instance

    Raises:
        ValueError: If the backend name is not supported
    """
    choice = LPBackendName(name) if name is not None else get_settings().lp_backend
    if choice == LPBackendName.TABLEAU:
        return TableauBackend()
    elif choice == LPBackendName.HIGHS:
        return HighsBackend()
    else:
        raise ValueError(f"Unsupported LP backend: {choice}")
