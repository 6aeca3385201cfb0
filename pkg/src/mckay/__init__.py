"""Exact McKay correspondence toolkit for finite subgroups of SU(2)."""

__version__ = "0.1.0"
