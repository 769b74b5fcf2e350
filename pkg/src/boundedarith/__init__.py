"""Executable workbench for bounded-quantifier arithmetic with limited exponentiation."""

__version__ = "0.1.0"
