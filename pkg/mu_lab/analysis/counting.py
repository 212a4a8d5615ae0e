"""
Counting mu(A, B, C) = |{(a, b, c) in A x B x C : a = b + c}|.

Three independent routes must agree exactly:
  direct       scan (b, c) in B x C and look b + c up in the indicator of A
  convolution  <1_A, 1_B * 1_C>
  fourier      N^2 sum_t conj(1_A^(t)) 1_B^(t) 1_C^(t)
In multiset mode every triple is weighted by the product of multiplicities.
"""
import math
from typing import Dict, Tuple

import numpy as np

from mu_lab.core.constants import (
    COUNT_RELATIVE_TOLERANCE, ROUTE_DIRECT, ROUTE_CONVOLUTION, ROUTE_FOURIER
)
from mu_lab.core.exceptions import ResidualError
from mu_lab.models.models import Subset, DenseFunction, MuResult
from mu_lab.analysis.group import add_many, neg_many
from mu_lab.analysis.fourier import (
    check_same_group, dense_weights, indicator, forward, convolve, max_nonprincipal_coeff
)
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)

# Pairs evaluated per vectorized block in the direct scans
_PAIR_BLOCK = 1 << 22


def _row_blocks(indices: np.ndarray, weights: np.ndarray, width: int):
    """Yield (indices, weights) row blocks so that rows x width stays bounded."""
    step = max(1, _PAIR_BLOCK // max(1, width))
    for start in range(0, len(indices), step):
        yield indices[start:start + step], weights[start:start + step]


def _check_residual(value: float, count: int, residual: float, route: str) -> None:
    limit = COUNT_RELATIVE_TOLERANCE * max(1, count)
    if residual > limit:
        raise ResidualError(
            f"{route} route: value {value!r} is {residual:.3e} from {count}, above {limit:.1e}"
        )


def mu_direct(A: Subset, B: Subset, C: Subset) -> MuResult:
    """
    Exact count by scanning B x C, O(|B||C|) after an O(N) indicator setup.

    Args:
        A: Target set
        B, C: Shores

    Returns:
        MuResult with route 'direct'
    """
    g = check_same_group(A.group, B.group, C.group)
    weights_a = dense_weights(A)
    # mu is symmetric in (B, C); put the larger shore on the vectorized axis
    rows, cols = (B, C) if len(B.elements) <= len(C.elements) else (C, B)

    total = 0
    for row_idx, row_w in _row_blocks(rows.indices, rows.weights, len(cols.elements)):
        sums = add_many(g, cols.indices[None, :], row_idx[:, None])
        hits = weights_a[sums] * cols.weights[None, :]
        total += int(np.sum(hits.sum(axis=1) * row_w))
    return MuResult(count=total, route=ROUTE_DIRECT)


def inner_product(f: DenseFunction, h: DenseFunction) -> float:
    """<f, h> = sum_x f(x) h(x), unnormalized."""
    check_same_group(f.group, h.group)
    return float(np.dot(f.values, h.values))


def mu_convolution(A: Subset, B: Subset, C: Subset) -> MuResult:
    """Count as <1_A, 1_B * 1_C>, rounded to the nearest integer."""
    check_same_group(A.group, B.group, C.group)
    value = inner_product(indicator(A), convolve(indicator(B), indicator(C)))
    count = int(round(value))
    residual = abs(value - count)
    _check_residual(value, count, residual, ROUTE_CONVOLUTION)
    return MuResult(count=count, route=ROUTE_CONVOLUTION, residual=residual)


def fourier_terms(A: Subset, B: Subset, C: Subset) -> Tuple[complex, complex]:
    """
    Split the spectral triple sum into the trivial-character term and the rest.

    Returns:
        (principal, remainder): principal = |A||B||C|/N and
        remainder = N^2 sum_{t != 0} conj(1_A^(t)) 1_B^(t) 1_C^(t)
    """
    g = check_same_group(A.group, B.group, C.group)
    n = g.order
    fa = forward(indicator(A)).coeffs
    fb = forward(indicator(B)).coeffs
    fc = forward(indicator(C)).coeffs
    terms = np.conj(fa) * fb * fc
    principal = complex(n * n * terms[0])
    remainder = complex(n * n * np.sum(terms[1:]))
    return principal, remainder


def mu_fourier(A: Subset, B: Subset, C: Subset) -> MuResult:
    """
    Count via N^2 sum_t conj(1_A^(t)) 1_B^(t) 1_C^(t).

    The conjugate sits on the A factor; on boolean groups every coefficient is
    real and this is the plain triple product sum. The residual is the
    distance of the complex total from the rounded count.
    """
    principal, remainder = fourier_terms(A, B, C)
    total = principal + remainder
    count = int(round(total.real))
    residual = abs(total - count)
    _check_residual(total.real, count, residual, ROUTE_FOURIER)
    logger.debug(f"Fourier route: principal {principal.real:.6g}, remainder {remainder.real:.6g}, residual {residual:.3e}")
    return MuResult(count=count, route=ROUTE_FOURIER, residual=residual)


def mu_all_routes(A: Subset, B: Subset, C: Subset) -> Dict[str, MuResult]:
    """
    Run all three routes and insist they agree.

    Raises:
        ResidualError: the routes disagree
    """
    results = {
        ROUTE_DIRECT: mu_direct(A, B, C),
        ROUTE_CONVOLUTION: mu_convolution(A, B, C),
        ROUTE_FOURIER: mu_fourier(A, B, C),
    }
    counts = {route: result.count for route, result in results.items()}
    if len(set(counts.values())) != 1:
        raise ResidualError(f"mu routes disagree: {counts}")
    return results


def proof_chain_bound(A: Subset, B: Subset, C: Subset) -> float:
    """
    |A||B||C|/N + N * max_nonprincipal(A) * sqrt(||1_B||^2 ||1_C||^2).

    With the instance's own max coefficient this upper-bounds mu(A, B, C)
    unconditionally. For sets ||1_B||^2 = |B|.
    """
    g = check_same_group(A.group, B.group, C.group)
    n = g.order
    coeff, _ = max_nonprincipal_coeff(A)
    norm_b = float(np.sum(B.weights.astype(np.float64) ** 2))
    norm_c = float(np.sum(C.weights.astype(np.float64) ** 2))
    return A.size * B.size * C.size / n + n * coeff * math.sqrt(norm_b * norm_c)


def cayley_edge_count(A: Subset, B: Subset, C: Subset) -> int:
    """
    Edges (u, v) of the Cayley graph H_A with v in B and u in -C.

    H_A has an edge u -> v iff v - u lies in A, so this equals mu(A, B, C).
    Membership is tested by binary search on A's sorted elements rather than
    through a dense indicator.
    """
    g = check_same_group(A.group, B.group, C.group)
    if not A.elements:
        return 0
    tails = neg_many(g, C.indices)
    total = 0
    for u_idx, u_w in _row_blocks(tails, C.weights, len(B.elements)):
        diffs = add_many(g, B.indices[None, :], neg_many(g, u_idx)[:, None])
        pos = np.clip(np.searchsorted(A.indices, diffs), 0, len(A.elements) - 1)
        hit = A.indices[pos] == diffs
        edge_weights = np.where(hit, A.weights[pos], 0) * B.weights[None, :]
        total += int(np.sum(edge_weights.sum(axis=1) * u_w))
    return total
