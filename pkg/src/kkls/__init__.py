"""Invariant-theoretic analysis of the reduced mean-field free energy for
nematic liquid crystals: Molien counting, Haar-quadrature entropy
coefficients, the symmetry-preserving reduction to two variables, and the
local bifurcation geometry of the resulting normal form."""

__version__ = "0.1.0"
