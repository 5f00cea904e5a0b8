"""ramlie: exact machinery for free nilpotent Lie algebras over Galois rings,
Campbell-Hausdorff groups, weight filtrations, admissible exponent sets, the
eta shuffle calculus and explicit ramification-ideal generators."""

from .params import GlobalParams, Rational, vp

__all__ = ["GlobalParams", "Rational", "vp"]
__version__ = "0.1.0"
