"""Exact computations in abstract Cuntz semigroups."""

from .core import (
    INF,
    ChainDescriptor,
    CuModel,
    EkModel,
    Element,
    FiniteModel,
    LscModel,
    NbarModel,
    ProductModel,
    add,
    basis_chain,
    discrete_space,
    is_compact,
    leq,
    lsc_model,
    omega_multiple,
    product,
    sierpinski,
    sup_chain,
    to_table,
    trivial_model,
    way_below,
)
from .errors import *  # noqa: F401,F403
from .glimm import (
    char_div_equiv,
    classify_divisibility,
    classify_glimm,
    cu_equiv_ab_soft,
    div_soft_divisor,
    has_2_splitting,
    has_abundance_soft,
    has_property_V,
    is_ideal_filtered,
    k_div_seq,
    k_omega_divisible,
    lhd_interpolate,
    pre_cu_equiv,
    soft_dominator,
    two_omega_divisible,
    weakly_two_omega_divisible,
)
from .harness import verify
from .report import classify_model
from .search import SearchResult, SearchSpec, canonical_form, enumerate_models, hunt
from .serialize import dump_model, load_model, parse_model
from .softness import (
    Summands,
    char_strong_soft,
    classify_softness,
    map_element,
    soft_interpolate,
    soft_submonoid,
    strongly_soft_witness,
    sum_soft,
)
from .structure import (
    Ideal,
    Scale,
    check_axiom,
    classify_finiteness,
    enumerate_ideals,
    ideal_generated,
    quotient,
    validate_model,
)
from .verdict import DEFAULT_BUDGET, Budget, Status, Verdict
