"""Exact finite-field laboratory for the function-field circle method.

Modules
-------
fields, laurent, cyclotomic
    Prime fields, polynomials, truncated Laurent series in 1/t, Z[zeta_p].
approx
    Hankel/Pade approximation and the major/minor arc table.
lattice
    Polynomial lattices, successive minima and the shrinking inequality.
circle
    Exponential sums, singular series, local factors, arc identities.
weyl
    Multilinear Weyl systems and the integer inequality behind the minor arcs.
jets
    Jet-space classes and the changes of variables between local counts.
hodge
    Truncated Hodge-Deligne series and the variety of lines.
cli
    The ``lab`` batch front end.
"""

__version__ = "0.1.0"
