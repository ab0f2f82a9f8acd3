"""Exact computations with polynomial automorphisms and vector fields."""

from .exactpoly import ParseError, Polynomial, format_polynomial, parse_polynomial
from .polymap import Automorphism, NotAnAutomorphism, PolyMap, compose, jacobian, parse_map
from .vectorfield import VectorField, bracket, divergence, parse_field, pushforward

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "NotAnAutomorphism",
    "ParseError",
    "PolyMap",
    "Polynomial",
    "VectorField",
    "bracket",
    "compose",
    "divergence",
    "format_polynomial",
    "jacobian",
    "parse_field",
    "parse_map",
    "parse_polynomial",
    "pushforward",
]
