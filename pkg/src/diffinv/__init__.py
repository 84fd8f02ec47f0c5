"""Modular invariants of SL_2(F_3) acting on trace-zero matrices, with differential forms."""

__version__ = "0.1.0"
