"""Exact symbolic analysis of polynomial map germs and their compositions."""

__version__ = "0.1.0"

from .poly import GREVLEX, LEX, LOCAL, MonomialOrder, Polynomial, QQ, Ring
from .ideal import (
    INFINITE,
    Ideal,
    colength,
    dimension,
    eliminate,
    ideal_intersection,
    ideal_quotient,
    local_dimension_at_origin,
    radical_membership,
    saturate,
)
from .limits import Limits, ResourceLimitError, limited
from .germ import MapGerm, compose, discriminant_ideal, identity, jacobian, singular_locus_ideal
from .strata import Stratification, Stratum, adapted_stratifications, rank_stratification
from .milnor import milnor_set
from .tameness import (
    check_equivalent_forms,
    discriminant_condition,
    germ_subset,
    germ_subset_of_origin,
    is_tame,
    is_tamely_composable,
    zero_fiber_shortcut,
)
from .fiber import (
    composed_fiber_report,
    milnor_number_hypersurface,
    milnor_number_icis_point,
    sebastiani_thom_check,
)
from .parsing import parse_germ_file, parse_polynomial
from .report import GermReport
