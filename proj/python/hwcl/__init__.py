"""Exact shortest-path distances on unweighted graphs via highway cover labelling."""

from ._hwcl import (
    DomainError,
    FormatError,
    Graph,
    Index,
    LoadError,
    ParseError,
    build,
    load,
    select_landmarks,
)

__all__ = [
    "DomainError",
    "FormatError",
    "Graph",
    "Index",
    "LoadError",
    "ParseError",
    "build",
    "load",
    "select_landmarks",
]
