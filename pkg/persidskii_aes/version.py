"""Package version, kept apart so reports can embed it without import cycles."""

__version__ = "0.1.0"
