"""Partial cohomology of finite groups."""

from ._parcoh import Engine, Group, ParcohError, ParseError, pre_cohomology

__all__ = ["Engine", "Group", "ParcohError", "ParseError", "pre_cohomology"]
__version__ = "0.1.0"
