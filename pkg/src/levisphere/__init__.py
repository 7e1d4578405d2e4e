"""Levi-spherical Schubert varieties, combinatorially.

Key polynomials, D-Schur expansions, sphericality classifiers and the
t_{ij} posets, with exhaustive verification at small n.
"""

from .compositions import BlockStructure, act, t_transform
from .keypoly import key_demazure, key_kohnert, key_polynomial, pi_along
from .poly import SparsePoly
from .splitschur import DSchurExpansion, dschur_expand, dschur_poly, straighten
from .symgroup import Permutation, longest_element

__version__ = "0.1.0"

__all__ = [
    "BlockStructure",
    "DSchurExpansion",
    "Permutation",
    "SparsePoly",
    "act",
    "dschur_expand",
    "dschur_poly",
    "key_demazure",
    "key_kohnert",
    "key_polynomial",
    "longest_element",
    "pi_along",
    "straighten",
    "t_transform",
]
