"""Group codes over finite fields.

Decides whether a linear code is a (left) group code by searching the regular
subgroups of its permutation automorphism group, and classifies Cauchy
(generalized Reed-Solomon) codes through the homographies of the projective line.
"""

from .errors import CapExceeded, FieldMismatchError, ParseError
from .gf import FiniteField, field_of_order, make_field, parse_field
from .perm import Permutation, PermGroupSmall, anti_iso_sigma, centralizer_of_regular, closure
from .groups import FiniteGroupTable, group_from_spec, groups_of_order
from .lincode import LinearCode, parse_code, paut
from .classify import classify, classify_one_dim, is_left_G_code, is_G_code, regular_subgroups
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapExceeded",
    "FieldMismatchError",
    "FiniteField",
    "FiniteGroupTable",
    "LinearCode",
    "ParseError",
    "PermGroupSmall",
    "Permutation",
    "anti_iso_sigma",
    "centralizer_of_regular",
    "classify",
    "classify_one_dim",
    "closure",
    "field_of_order",
    "group_from_spec",
    "groups_of_order",
    "is_G_code",
    "is_left_G_code",
    "make_field",
    "parse_code",
    "parse_field",
    "paut",
    "regular_subgroups",
]
