"""Simultaneous Waring decompositions of vectors of forms.

Polynomial vectors are passed as ``(num_vars, degrees, parts)`` with one
complex coefficient array per part, in graded-lex order (see ``monomials``).
"""

from ._waring import (
    WaringError,
    count_decompositions,
    decompose,
    forward_construct,
    is_perfect,
    monomials,
    nonabelian_matrix,
    pair_lower_bound,
    reconstruction_residual,
    secant_defect,
    solve_by_monodromy,
    veronese_count,
)

__all__ = [
    "WaringError",
    "count_decompositions",
    "decompose",
    "forward_construct",
    "is_perfect",
    "monomials",
    "nonabelian_matrix",
    "pair_lower_bound",
    "reconstruction_residual",
    "secant_defect",
    "solve_by_monodromy",
    "veronese_count",
]
