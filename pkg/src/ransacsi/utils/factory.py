r"""Contain a function to instantiate an object from its
configuration."""

from __future__ import annotations

__all__ = ["setup_object"]

import logging
from typing import TypeVar

from objectory import factory

logger = logging.getLogger(__name__)

T = TypeVar("T")


def setup_object(obj_or_config: T | dict) -> T:
    r"""Set up an object from its configuration.

    The configuration is a dictionary whose ``_target_`` key is the
    fully qualified name of the class or function to call, e.g. the
    ingestor used to read a CSV dataset.

    Args:
        obj_or_config: The object or its configuration.

    Returns:
        The instantiated object.

    Example usage:

    ```pycon

    >>> from ransacsi.utils.factory import setup_object
    >>> cfg = setup_object({"_target_": "ransacsi.ransac.RansacConfig", "tau": 1.5})
    >>> cfg
    RansacConfig(num_iterations=15, tau=1.5, subset_size=None, seed=0)
    >>> setup_object(cfg)  # Do nothing because the object is already instantiated
    RansacConfig(num_iterations=15, tau=1.5, subset_size=None, seed=0)

    ```
    """
    if isinstance(obj_or_config, dict):
        logger.info("Initializing an object from its configuration... ")
        obj_or_config = factory(**obj_or_config)
    return obj_or_config
