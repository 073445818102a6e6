"""Exact computations with affine charts of local models at Iwahori and
pro-p Iwahori level: polynomial ideals, alcove combinatorics, chart
presentations, Veronese presentations and verification harnesses."""

__version__ = "0.1.0"
