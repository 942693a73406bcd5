"""Finite near vector spaces: fields, twisted spaces, blocks, pointwise sums and QE."""

from . import charmix, errors, fbar, gf, logic
from .config import Limits, limits
from .fbar import (
    BlockTuple, FormalSum, ImageRing, aut_set_equal, crt_preimage, image_ring,
    is_automorphism, parse_formal_sum, phi_eval, separating_idempotent,
)
from .gf import FieldTable, field_make, irreducibles_enum, is_frobenius, mult_twists
from .space import (
    GenericFGroup, TwistedSpace, ValidationReport, compatible, coords, decompose_blocks,
    in_quasi_kernel, induced_addition, is_regular, is_vector_space, make_space,
    morley_report, quasi_kernel, scalar_act, validate_fgroup,
)

__version__ = "0.1.0"
