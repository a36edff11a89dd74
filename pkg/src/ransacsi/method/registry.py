r"""Contain the registry of the named p-value methods."""

from __future__ import annotations

__all__ = ["CONDITIONAL_METHODS", "METHOD_NAMES", "create_method"]

from typing import TYPE_CHECKING

from ransacsi.exceptions import InvalidInputError
from ransacsi.method.baseline import BonferroniMethod, NaiveMethod, NoInferenceMethod
from ransacsi.method.selective import SelectiveMethod
from ransacsi.truncation import (
    DivideConquerRegionFinder,
    LineSearchRegionFinder,
    OverConditioningRegionFinder,
)

if TYPE_CHECKING:
    from ransacsi.method.base import BaseMethod

METHOD_NAMES = ("ctrl", "line_search", "oc", "naive", "bonferroni", "no_inference")
CONDITIONAL_METHODS = ("ctrl", "line_search", "oc")


def create_method(name: str, **kwargs) -> BaseMethod:  # noqa: ANN003
    r"""Create a p-value method from its name.

    Args:
        name: The name of the method. The valid names are ``ctrl``,
            ``line_search``, ``oc``, ``naive``, ``bonferroni`` and
            ``no_inference``.
        **kwargs: The keyword arguments of the truncation region finder
            of the conditional methods.

    Returns:
        The method.

    Raises:
        InvalidInputError: if the name is unknown.

    Example usage:

    ```pycon

    >>> from ransacsi.method import create_method
    >>> create_method("ctrl", counting="sweep")
    SelectiveMethod(name=ctrl, finder=DivideConquerRegionFinder(counting=sweep, symmetric=False))

    ```
    """
    if name == "ctrl":
        return SelectiveMethod(name, DivideConquerRegionFinder(**kwargs))
    if name == "line_search":
        return SelectiveMethod(name, LineSearchRegionFinder(**kwargs))
    if name == "oc":
        return SelectiveMethod(name, OverConditioningRegionFinder(**kwargs))
    if name == "naive":
        return NaiveMethod()
    if name == "bonferroni":
        return BonferroniMethod()
    if name == "no_inference":
        return NoInferenceMethod()
    msg = f"Incorrect method name: {name}. Valid names are: {METHOD_NAMES}"
    raise InvalidInputError(msg)
