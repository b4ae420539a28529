"""Exact-rational workbench for the Chevalley-Eilenberg homology of
derivation Lie algebras attached to connected sums of sphere products,
together with the matrix-group and Schur-calculus ingredients of the
associated homological-stability statements."""

__version__ = "0.1.0"
