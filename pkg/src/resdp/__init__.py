"""Resonant-oscillator dual pairs on C^2 and their reduced Poisson geometry.

The package certifies, numerically, that the circle momentum and the leaf
map of an n:(+/-)m resonance form a dual pair of Poisson maps, builds the
implicit Casimir functions whose level sets are the bounded and unbounded
Kummer shapes, and exposes the induced Poisson structures on open subsets
of R^3 together with flows, geometry exports, and a verification CLI.
"""

from .casimir import CasimirEval, solve_casimir
from .phase_space import MINUS, PLUS
from .resonance_maps import Resonance

__all__ = ["CasimirEval", "MINUS", "PLUS", "Resonance", "solve_casimir"]

__version__ = "0.1.0"
