"""Exact convex hulls, layered point sets and hulls of spheres."""

__version__ = "0.1.0"
