"""Finite free additive and multiplicative convolutions in exact arithmetic.

Rationals are returned as fractions.Fraction. Polynomials are MonicPoly
values; distances accept either polynomials or target strings such as
"arcsine:-2:2".
"""

from ._core import (
    Error,
    MonicPoly,
    ParseError,
    atom_triplets,
    boxplus,
    boxtimes,
    boxtimes_via_diffop,
    cut,
    derivative_map,
    dilate,
    e_tilde,
    empirical_cdf,
    expand_in_r_basis,
    expected_charpoly_mc,
    free_atoms,
    interlacing_chain,
    interlaces,
    is_real_rooted,
    kolmogorov,
    levy,
    partial_order_le,
    quantile_poly,
    reflect,
    reverse,
    roots,
    shift,
    sturm_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
