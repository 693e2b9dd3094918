"""Verification machinery for partitioning Boolean-cube subsets by diameter."""

__version__ = "0.1.0"
