"""Exact Terwilliger algebras of direct products of group divisible schemes.

The symbolic layers (:mod:`scheme_core`, :mod:`basis_combinatorics`,
:mod:`terwilliger_algebra`, :mod:`structure_theory`) compute everything from
closed forms over F_p or Q; :mod:`matrix_oracle` rebuilds the same objects as
explicit matrices and checks them.
"""

from .basis_combinatorics import (
    EMPTY_TRIPLE,
    TripleSet,
    ceiling,
    compose,
    enumerate_U,
    k_round,
    k_square,
    k_triple,
    k_weight,
    layer,
    layer_count,
    members_U,
    support_triple,
    v_set,
)
from .fields import Field, is_prime
from .scheme_core import (
    GDParams,
    enumerate_colors,
    enumerate_P,
    intersection_number,
    is_p_prime_valenced,
    parse_params,
    profile,
    support_nonzero,
    valency,
)
from .structure_theory import (
    DLabel,
    WedderburnReport,
    corner_nilpotency_index,
    corner_quotient_dim,
    d_element,
    is_semisimple,
    quotient_basis,
    quotient_multiply,
    radical_basis,
    radical_dim,
    radical_nilpotency_index,
    wedderburn,
)
from .terwilliger_algebra import (
    AlgebraElement,
    B1Label,
    B2Label,
    CenterLabel,
    b1_expand_in_b2,
    b2_expand_in_b1,
    b2_labels,
    basis_element,
    center_basis,
    center_dim,
    center_element,
    center_labels,
    dim_T,
    identity,
    is_central,
    multiply,
    multiply_b2,
    transpose,
)

__version__ = "0.1.0"
