"""Exact computations of fibering numbers of surface bundles over surfaces."""

__version__ = "0.1.0"
