"""Exact Milnor-Witt K-theory, quadratic-form invariants, residues, transfers
and Rost-Schmid/Chow-Witt computations on curves over small finite fields."""

from .errors import (
    DomainError,
    ExtendScalarsError,
    HomogeneityError,
    MWCalcError,
    ParseError,
    ScopeError,
    UndecidedEqualityError,
    UnsupportedFieldError,
)
from .fields import (
    ExtField,
    FieldElem,
    Poly,
    PrimeField,
    RationalFunctionField,
    RealField,
    ValuationSpec,
    ext_field,
    factor,
    function_field,
    is_irreducible,
    real_field,
    residue_field,
    valuation_and_unit,
)
from .forms import (
    GWForm,
    GWInvariants,
    diagonal,
    gw_add,
    gw_equal,
    gw_mul,
    gw_neg,
    hyperbolic,
    in_I_power,
    invariants,
    n_epsilon,
    pfister,
    sbar_n,
    witt_class,
    witt_equal,
)
from .mw import (
    Equality,
    MWExpr,
    angle,
    bracket,
    canonical_class_rep,
    eps_mw,
    eta,
    gw_to_mw0,
    h_n,
    hyperbolic_mw,
    j_witt,
    milnor_invariant,
    mw0_to_gw,
    mw_add,
    mw_compare,
    mw_equal,
    mw_is_zero,
    mw_mul,
    mw_neg,
    n_eps_mw,
    render_expr,
    simplify,
    symbol,
    to_milnor,
)
from .lines import GradedLine, LineAtom, TwistedMW, dual_pairing_sign, swap_sign, tensor
from .residues import (
    canonical_transfer,
    canonical_transfer_expr,
    constant_part,
    geometric_transfer,
    pullback,
    reciprocity_defect,
    reconstruct,
    residue,
    residue_twisted,
    scharlau_transfer,
    total_residue,
)
from .rost_schmid import (
    ChowWittClass,
    RSCochain,
    SchemeTag,
    affine_line,
    chow_comparison,
    chow_degree,
    cochain0,
    differential,
    euler_class_line,
    exterior_product,
    h0_membership,
    localization_boundary,
    mu_f,
    ord_tilde,
    proj_line,
    pullback_flat,
    pushforward_point,
)
from .suites import SUITES, run_suite

__version__ = "0.1.0"
