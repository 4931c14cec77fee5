"""
End-to-end check that val(det M) = -D for an ultrametric tree.
"""

from fractions import Fraction
from typing import Dict, Optional
import logging

from utils.rationals import ExtendedRational, format_rational
from trees.models import Tree
from trees.ultrametric import as_ultrametric
from puiseux.matrix import MAX_DETERMINANT_SIZE, determinant
from puiseux.reduction import apply_reduction
from tropical.assignment import tropical_det_bound
from .claims import ClaimsReport, check_reduced_claims, height_sum_identity
from .coefficients import DEFAULT_COEFFICIENT_BITS, derive_seed, sample_coefficients
from .construction import (
    HypothesisError,
    build_matrix,
    construct_alpha,
    reduction_from_alpha,
)

logger = logging.getLogger(__name__)


class VerificationReport:
    """Outcome of one verification run.

    verdict is True exactly when valuation == -D. tropical_bound and
    bound_tight are recorded for the ledger and text output; they are not
    part of the JSON document.
    """

    def __init__(self,
                 n: int,
                 d: Fraction,
                 total_weight: Fraction,
                 valuation: ExtendedRational,
                 height_sum_ok: bool,
                 claims: ClaimsReport,
                 seed: int,
                 resamples: int,
                 tropical_bound: Optional[ExtendedRational] = None):
        self.n = n
        self.d = d
        self.total_weight = total_weight
        self.valuation = valuation
        self.verdict = valuation == -total_weight
        self.height_sum_ok = height_sum_ok
        self.claims = claims
        self.seed = seed
        self.resamples = resamples
        self.tropical_bound = tropical_bound

    @property
    def bound_tight(self) -> bool:
        return self.tropical_bound is not None and self.tropical_bound == self.valuation

    @property
    def ok(self) -> bool:
        """Verdict, height-sum identity and all four claims."""
        return self.verdict and self.height_sum_ok and self.claims.all_ok

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'd': format_rational(self.d),
            'D': format_rational(self.total_weight),
            'valuation': format_rational(self.valuation),
            'verdict': self.verdict,
            'height_sum_ok': self.height_sum_ok,
            'claims': self.claims.to_dict(),
            'seed': self.seed,
            'resamples': self.resamples,
        }

    def __repr__(self):
        return (f"VerificationReport(n={self.n}, D={self.total_weight}, "
                f"valuation={self.valuation}, verdict={self.verdict})")


def verify(tree: Tree, seed: int = 0, max_resamples: int = 3,
           coefficient_bits: int = DEFAULT_COEFFICIENT_BITS) -> VerificationReport:
    """Compute val(det M) for generic coefficients and compare it with -D.

    A failed trial (wrong valuation or a failed reduced-matrix claim) can only
    come from non-generic coefficients; the run is retried with derived seeds
    up to max_resamples times. A failure that survives every retry is reported
    with verdict False and logged as a counterexample candidate.

    Args:
        tree: Ultrametric tree with n >= 4
        seed: Seed of the first coefficient table
        max_resamples: Number of reseeded retries allowed
        coefficient_bits: Coefficients are drawn from [-2^bits, 2^bits] \\ {0}

    Returns:
        VerificationReport for the last trial

    Raises:
        HypothesisError: If n < 4 or n exceeds the determinant size bound
        TreeError: If the tree is not ultrametric
    """
    if max_resamples < 0:
        raise ValueError(f"max_resamples must be >= 0, got {max_resamples}")
    tree = as_ultrametric(tree)
    n = tree.n
    if n < 4:
        raise HypothesisError(f"Verification assumes n >= 4, got n={n}")
    if n > MAX_DETERMINANT_SIZE:
        raise HypothesisError(f"n={n} exceeds the determinant bound {MAX_DETERMINANT_SIZE}")

    d = tree.depth
    total = tree.total_weight()
    heights = height_sum_identity(tree)
    assignment = construct_alpha(tree)
    reduction = reduction_from_alpha(assignment)

    for attempt in range(max_resamples + 1):
        trial_seed = derive_seed(seed, attempt)
        coeffs = sample_coefficients(tree, trial_seed, coefficient_bits)
        matrix = build_matrix(tree, coeffs)
        value = determinant(matrix).valuation()
        claims = check_reduced_claims(apply_reduction(matrix, reduction), assignment, d)
        if value == -total and claims.all_ok:
            break
        logger.warning(
            f"Trial {attempt} (seed {trial_seed}) not generic: valuation {value}, "
            f"claims {claims.to_dict()}"
        )

    bound = tropical_det_bound(matrix.valuation_matrix())
    report = VerificationReport(n, d, total, value, heights.ok, claims, seed, attempt, bound)
    if report.verdict:
        logger.info(f"Verified n={n} D={total}: valuation {value} after {attempt} resamples")
    else:
        logger.error(
            f"Counterexample candidate: n={n} D={total} valuation {value} "
            f"persisted through {max_resamples} resamples from seed {seed}"
        )
    return report
