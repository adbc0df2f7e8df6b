"""Scalar expressions in the time variable t."""

from .parser import Expression, parse, evaluate, to_source

__all__ = ["Expression", "parse", "evaluate", "to_source"]
