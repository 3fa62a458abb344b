"""Exact-arithmetic workbench for a degenerating family of double octic
Calabi-Yau threefolds: plane-arrangement strata, Picard-Fuchs local analysis
and mixed Hodge bookkeeping through the semistable reduction."""

__version__ = "0.1.0"
