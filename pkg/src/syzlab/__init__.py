"""Syzygies, minimal free resolutions, Ext/Tor and ring invariants over
standard-graded quotient rings of F_p[x_1..x_n]."""

__version__ = "0.1.0"

from syzlab.echelon import BACKEND
from syzlab.rings import (
    GradedFreeModule,
    GradedRing,
    PresentedModule,
    RingError,
    cyclic_module,
    define_ring,
    direct_sum,
    free_module,
    module_from_matrix,
    polynomial_ring,
    quotient_ring,
    residue_field,
)
from syzlab.groebner import buchberger, ideal_colon, ideal_module, module_annihilator, reduce, syzygies
from syzlab.resolve import (
    BettiTable,
    FreeComplex,
    betti_table,
    minimal_free_resolution,
    minimal_presentation,
    quotient_by_linear_regular,
    syzygy_module,
)
from syzlab.invariants import HilbertData, canonical_module, classify, depth, hilbert
from syzlab.homology import dual_and_biduality, ext, hom_module, socle, tor
from syzlab.criteria import (
    CriterionRefused,
    CriterionVerdict,
    gdim_zero_up_to,
    gorenstein_criterion_ext_L_R,
    gorenstein_criterion_omega,
    gorenstein_scan_syzygies_of_omega,
    has_free_summand,
    is_semidualizing_up_to,
    no_summand_audit,
    regularity_criterion,
    syzygy_image_builder,
    trace_ideal,
)
