"""
Bound formulas and reference curves for mu(A) and mu(A, B, C).

Everything here is plain arithmetic on sizes; natural logarithms throughout.
Exponents are alpha = log_N |A| and beta = log_N |B|.
"""
import math
from typing import Optional

from mu_lab.core.constants import (
    DEFAULT_EPSILON, DEFAULT_MAIN_CONSTANT, DEFAULT_ALON_CONSTANT,
    DEFAULT_PSEUDORANDOM_SLACK, KILTZ_ALPHA_LIMIT
)
from mu_lab.models.models import BoundInputs, BoundReport
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)


def exponent(N: int, m: int) -> Optional[float]:
    """log_N m, or None for m = 0. log2 keeps powers of two exact."""
    if m <= 0:
        return None
    return math.log2(m) / math.log2(N)


def sharpened_constant(h: float) -> float:
    """The constant 2*sqrt(2) + h that may replace 4 in the main bounds."""
    return 2.0 * math.sqrt(2.0) + h


def general_bound(N: int, mA: int, mB: int, mC: int,
                  constant: float = DEFAULT_MAIN_CONSTANT) -> float:
    """|A||B||C|/N + constant * sqrt(ln N * |A||B||C|)."""
    product = float(mA) * float(mB) * float(mC)
    return product / N + constant * math.sqrt(math.log(N) * product)


def main_bound(N: int, m: int, constant: float = DEFAULT_MAIN_CONSTANT) -> float:
    """
    m^3/N + constant * m^(3/2) * sqrt(ln N).

    Evaluated through general_bound so both agree bit for bit when all sizes are m.
    """
    return general_bound(N, m, m, m, constant)


def hayes_coeff_bound(N: int, m: int, epsilon: float = DEFAULT_EPSILON) -> float:
    """
    (2/N) * sqrt(2 (1 + epsilon) ln N * m') with m' = max(0, min(m, N - m)).

    With epsilon = 1 and m <= N/2 this is (4/N) * sqrt(ln N * m).
    """
    m_prime = max(0, min(m, N - m))
    return (2.0 / N) * math.sqrt(2.0 * (1.0 + epsilon) * math.log(N) * m_prime)


def chernoff_coeff_bound(N: int, m: int, h: float = 0.0) -> float:
    """(1/N) * sqrt((2 + h) ln N * m), the comparator for sampling with replacement."""
    return math.sqrt((2.0 + h) * math.log(N) * m) / N


def kiltz_bound(N: int, m: int) -> float:
    """m^(1 + 2 alpha); defined as 0 when m = 0."""
    alpha = exponent(N, m)
    if alpha is None:
        return 0.0
    return float(m) ** (1.0 + 2.0 * alpha)


def alon_threshold(N: int) -> Optional[float]:
    """2 + 1/ln(ln N), or None when ln ln N <= 0."""
    loglog = math.log(math.log(N))
    if loglog <= 0:
        return None
    return 2.0 + 1.0 / loglog


def alon_bound(N: int, mA: int, mB: int,
               alon_constant: float = DEFAULT_ALON_CONSTANT) -> Optional[float]:
    """
    alon_constant / (2 alpha + beta - 2) * |A||B|^2 / N, when applicable.

    Returns None unless 2 alpha + beta > 2 + 1/ln(ln N). The constant stands in
    for an unstated absolute constant.
    """
    alpha = exponent(N, mA)
    beta = exponent(N, mB)
    threshold = alon_threshold(N)
    if alpha is None or beta is None or threshold is None:
        return None
    gap = 2.0 * alpha + beta
    if gap <= threshold:
        return None
    return alon_constant / (gap - 2.0) * float(mA) * float(mB) ** 2 / N


def conjecture_curve(N: int, m: int) -> float:
    """max(m, m^3/N): a reference curve only."""
    return max(float(m), float(m) ** 3 / N)


def optimal_regime(N: int, mA: int, mB: int, mC: int) -> bool:
    """|A||B||C| >= N^2, where the general bound is essentially tight."""
    return mA * mB * mC >= N * N


def pseudorandom_bound(N: int, mA: int, mB: int,
                       slack: float = DEFAULT_PSEUDORANDOM_SLACK) -> Optional[float]:
    """(1 + slack) |A||B|^2 / N when |A||B|^2 > N^2, else None."""
    if mA * mB * mB <= N * N:
        return None
    return (1.0 + slack) * float(mA) * float(mB) ** 2 / N


def first_term_dominates(N: int, m: int, constant: float = DEFAULT_MAIN_CONSTANT) -> bool:
    """Whether m^3/N >= constant * m^(3/2) * sqrt(ln N)."""
    return float(m) ** 3 / N >= constant * float(m) ** 1.5 * math.sqrt(math.log(N))


def bound_report(inputs: BoundInputs) -> BoundReport:
    """
    Evaluate every formula for one set of sizes.

    Args:
        inputs: Group order, sizes and constants

    Returns:
        A BoundReport; the Alon constant is always flagged as unknown
    """
    N, mA, mB, mC = inputs.N, inputs.mA, inputs.mB, inputs.mC
    constant = DEFAULT_MAIN_CONSTANT if inputs.h is None else sharpened_constant(inputs.h)
    alpha = exponent(N, mA)
    alon = alon_bound(N, mA, mB, inputs.alon_constant)

    report = BoundReport(
        main_bound=main_bound(N, mA, constant),
        general_bound=general_bound(N, mA, mB, mC, constant),
        hayes_coeff_bound=hayes_coeff_bound(N, mA, inputs.epsilon),
        kiltz_bound=kiltz_bound(N, mA),
        alon_bound=alon,
        conjecture_curve=conjecture_curve(N, mA),
        alpha=alpha,
        beta=exponent(N, mB),
        main_constant=constant,
        chernoff_coeff_bound=chernoff_coeff_bound(N, mA, inputs.h or 0.0),
        pseudorandom_bound=pseudorandom_bound(N, mA, mB),
        kiltz_regime=alpha is not None and alpha <= KILTZ_ALPHA_LIMIT,
        kiltz_defined=alpha is not None,
        alon_applicable=alon is not None,
        alon_constant_unknown=True,
        first_term_dominates=first_term_dominates(N, mA, constant),
        optimal_regime=optimal_regime(N, mA, mB, mC),
    )
    logger.debug(f"Bound report for N={N}, sizes=({mA}, {mB}, {mC}): main {report.main_bound:.6g}")
    return report
