"""Interpolatory dual and quasi-tight framelet filter banks for integer dilation matrices.

Filters are exact Laurent polynomials with rational coefficients (optionally
times one square root), so perfect reconstruction is checked without rounding.
"""

from __future__ import annotations

from .cascade import SampledGrid, export_grid, sample_psi, subdivide_phi
from .design import (
    AffineFilterFamily,
    DesignConstraints,
    instantiate,
    optimize_sm2,
    parametrize,
    solve_parameters,
    with_coordinates,
)
from .dual import (
    DualBank,
    build_dual_bank,
    coset_defect,
    difference_ideal_divide,
    explicit_highpass,
    factor_defect,
    merge_proportional,
    split_vanishing_factors,
)
from .errors import FrameletError
from .io import load_bank, load_filter, load_fixture, save_bank, save_filter
from .laurent import Filter, delta, nabla_delta
from .lattice import (
    DilationContext,
    coset_merge,
    coset_split,
    has_zero_coset,
    is_interpolatory,
    make_context,
    upsample,
    upsample_shift,
)
from .moments import linear_phase_moment_order, moment_report, sum_rule_order, vanishing_moment_order
from .quasitight import QuasiTightBank, build_quasitight, hermitian_sos_decompose
from .smoothness import SmoothnessEstimate, sm2_estimate, sm_inf_bracket
from .symmetry import (
    SymmetryGroup,
    SymmetryType,
    check_interpolatory_center,
    coset_symmetry_subgroup,
    coset_symmetry_type,
    detect_symmetry,
    has_symmetry,
    is_compatible,
    named_group,
    transfer_symmetry,
)
from .verify import BankReport, frequency_check, polyphase_defect, verify_bank, verify_dual_bank, verify_quasitight

__version__ = "0.1.0"
