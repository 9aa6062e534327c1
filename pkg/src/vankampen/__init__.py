"""Exact fundamental-group computations for plane curve complements.

The package mechanizes the Zariski-van Kampen method for a pencil-fibred
curve complement: braid monodromy actions on a free fiber group, descent
to an index-2 subgroup, presentation assembly and simplification,
abelianization, coset enumeration, Alexander polynomials, and exact
verification of the defining curve equations.  All arithmetic is exact
(integers, rationals, and the field Q(eps) with eps^2 + eps + 1 = 0).
"""

__version__ = "0.1.0"
