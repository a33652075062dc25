"""Lorentz sequence norms, level sequences, dual norms and certified checks of their inequalities."""

from .constants import (
    SweepRow,
    const_A,
    const_B,
    const_S,
    const_zeta_hardy,
    dual_norm_uK,
    holder_equal_exponent_bound,
    maximal_norm_uK,
    ratio_S_sequence,
    sharpness_sweep,
)
from .dual import OracleNotConverged, dual_level_sequence, dual_norm, dual_norm_oracle
from .enclosure import Enclosure
from .harness import (
    SuiteConfig,
    check_dual_bounds,
    check_holder,
    check_level_sequence,
    check_norm_equivalences,
    check_pointwise_lemmas,
    check_pooling_lemma,
    check_reversed_hardy,
    run_full_suite,
    suite_passed,
)
from .level import LevelDecomposition, Segment, WeightSeq, level_sequence, verify_level_properties
from .norms import (
    Exponents,
    PowerWeight,
    cesaro_weighted_lp_norm,
    lorentz_maximal_norm,
    lorentz_norm,
    lorentz_norm_enclosure,
    weighted_lp_norm,
    weighted_lp_norm_enclosure,
)
from .report import CheckReport
from .seq import (
    Seq,
    cesaro_prefix,
    compensated_cumsum,
    decreasing_rearrangement,
    indicator,
    partial_sums,
    random_decreasing,
)
from .tails import TailSumError, head_sum, tail_sum, zeta

__version__ = "0.1.0"
