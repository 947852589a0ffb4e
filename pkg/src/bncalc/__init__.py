"""Brill-Noether loci of semistable sheaves on the projective plane."""

__version__ = "0.1.0"

from .invariants import (  # noqa: E402
    SheafClass,
    alpha,
    beta,
    bogomolov_ok,
    euler_line_twist,
    euler_pairing,
    make_class,
    moduli_dim,
    section_bound_max,
)
from .steiner import SteinerData, classify_maximal, fibonacci, general_steiner_stability, golden_test  # noqa: E402
from .brill_noether import BNQuery, Status, bn_codim, bn_verdict, deficiency_alpha_data  # noqa: E402
