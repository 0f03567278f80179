"""Orbit spaces of spherical homogeneous varieties via moment polytopes."""

__version__ = "0.1.0"
