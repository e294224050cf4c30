"""Desk-scale workbench for finitely presented Boolean algebras,
forcing-style conditions with m-fold amalgamation, and interval algebras
over linear orders with a symbolic cut calculus."""

from .ba import (
    INF,
    Assignment,
    Carrier,
    Element,
    OrderedPartition,
    Presentation,
    brute_force_min_dense,
    compl,
    denote,
    eval_hom,
    first_hit_selector,
    free_relation_holds,
    is_zero,
    join,
    leq_elem,
    meet,
    pi_density,
    product_grid,
    subalgebra_closure,
)
from .errors import (
    DomainError,
    GenerationError,
    IntegrityError,
    MonkbenchError,
    PreconditionError,
    SizeCapError,
    UsageError,
)
from .forcing import (
    AmalgamInstance,
    Certificate,
    DeltaFamily,
    IsoMap,
    PosetBounds,
    baq_embedding_check,
    chain_upper_bound,
    check_generator_novelty,
    cond_leq,
    is_condition,
    m_amalgam,
    pair_amalgam,
    tau_star,
    truncation_closure,
    validate_condition,
)
from .harness import Report, SuiteConfig, run_suite
from .intervals import FiniteOrder, IntervalElem, LexQ, Rationals, parse_order
from .symcard import ALEPH0, ONE_CARD, ZERO_CARD, SymCard, fin, reg
from .terms import ONE, ZERO, And, Gen, Not, Or, Term, parse_sexpr, to_sexpr

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
