"""Primitive solutions of x^2 + m y^2 = z^2, their Pell subgroup, and order-two
torsion in the quotient, computed exactly."""

from .classgroup import QuadForm, certify_order_two, class_number, compose, f_m_image, reduce
from .errors import (
    CertificateRefused,
    ContractViolation,
    FactorizationTimeout,
    GmError,
    InvalidArgument,
    NotEligible,
    NotFound,
)
from .lambdasieve import in_lambda, lambda_primes, lemma32_test, triple_from_prime
from .pell import cf_sqrt, convergents, least_pell, lucas_pair, pell_power, rank_rho
from .scan import reproduce_table, scan_candidates
from .triplegroup import GroupContext, PrimitiveTriple, add, neg, normalize, order, pell_generator, scalar_mul

__version__ = "0.1.0"
