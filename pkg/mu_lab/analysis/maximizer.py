"""
Maximizing mu(A, B, C) over shores B, C of size k.

For a fixed C the best B is solvable exactly: score(b) = sum_{c in C} 1_A(b + c)
counts the triples b would contribute, and the k highest scores (ties by
ascending index) maximize mu(A, B, C). Since mu(A, B, C) = mu(A, C, B) the
same routine gives the best C for a fixed B.

exact_maximize enumerates every C and takes the best B, which is exhaustive
because an optimum is always attained at a best response. alternating_maximize
alternates best responses from random starts and yields a certified lower
bound on max mu.
"""
import itertools
import math
from typing import Callable, Optional, Tuple

import numpy as np

from mu_lab import config
from mu_lab.core.constants import DEFAULT_RESTARTS, DEFAULT_MAX_ITERS
from mu_lab.core.exceptions import BudgetExceededError, ConfigError, MuLabError
from mu_lab.models.models import GroupSpec, Subset, DenseFunction, MaximizeResult
from mu_lab.analysis.group import add_many, neg_many
from mu_lab.analysis.fourier import check_same_group, convolve_with, dense_weights
from mu_lab.analysis.counting import mu_direct
from mu_lab.simulation.sampler import derive_seed, sample_subset
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)

# Largest |A| x |C| pair block scattered directly; above it scores go through one convolution
_PAIR_LIMIT = 1 << 22

StepCallback = Callable[[int, int, int], None]


class ShoreScorer:
    """
    score[b] = sum_c w_C(c) w_A(b + c) for every b, for one fixed A.

    Small shores are scored by scattering the |A| x |C| differences a - c;
    larger ones by convolving the reflected shore with w_A, whose transform
    is computed once per scorer.
    """

    def __init__(self, A: Subset):
        self.group = A.group
        self.weights_a = dense_weights(A)
        self.support = A.indices
        self.support_weights = A.weights
        n = self.group.order
        self.pair_limit = min(_PAIR_LIMIT, n * max(1, (n - 1).bit_length()))
        self._convolve_a: Optional[Callable[[DenseFunction], DenseFunction]] = None

    def __call__(self, C: Subset) -> np.ndarray:
        g = self.group
        n = g.order
        if len(self.support) * len(C.elements) <= self.pair_limit:
            diffs = add_many(g, self.support[:, None], neg_many(g, C.indices)[None, :])
            products = self.support_weights[:, None] * C.weights[None, :]
            return np.bincount(diffs.ravel(), weights=products.ravel(), minlength=n).astype(np.int64)
        if self._convolve_a is None:
            self._convolve_a = convolve_with(DenseFunction(g, self.weights_a.astype(np.float64)))
        reflected = np.zeros(n, dtype=np.float64)
        reflected[neg_many(g, C.indices)] = C.weights
        return self._convolve_a(DenseFunction(g, reflected)).values.astype(np.int64)


def _top_k(scores: np.ndarray, k: int) -> Tuple[np.ndarray, int]:
    """Indices of the k largest scores (ties by ascending index), sorted, and their total."""
    n = len(scores)
    threshold = np.partition(scores, n - k)[n - k]
    above = np.flatnonzero(scores > threshold)
    ties = np.flatnonzero(scores == threshold)[:k - len(above)]
    chosen = np.sort(np.concatenate([above, ties]))
    return chosen, int(scores[chosen].sum())


def _check_k(g: GroupSpec, k: int) -> None:
    if not 1 <= k <= g.order:
        raise ConfigError(f"shore size k must lie in [1, {g.order}], got {k}")


def _respond(scorer: ShoreScorer, other: Subset, k: int) -> Tuple[Subset, int]:
    chosen, value = _top_k(scorer(other), k)
    return Subset(scorer.group, tuple(chosen.tolist())), value


def best_response(A: Subset, C: Subset, k: int) -> Subset:
    """
    The size-k shore B maximizing mu(A, B, C) for fixed A and C.

    Args:
        A: Target set
        C: The fixed opposite shore
        k: Size of the returned shore

    Returns:
        B as a Subset; ties between equal scores go to smaller indices
    """
    g = check_same_group(A.group, C.group)
    _check_k(g, k)
    shore, _ = _respond(ShoreScorer(A), C, k)
    return shore


def _self_check(A: Subset, result: MaximizeResult) -> MaximizeResult:
    recount = mu_direct(A, result.B, result.C).count
    if recount != result.count:
        raise MuLabError(f"maximizer self-check failed: reported {result.count}, recount {recount}")
    return result


def exact_maximize(A: Subset, k: int, budget: Optional[int] = None) -> MaximizeResult:
    """
    True max of mu(A, B, C) over |B| = |C| = k.

    Every C of size k is enumerated in lexicographic order with B set to its
    best response; the first maximizer found is kept.

    Args:
        A: Target set
        k: Shore size
        budget: Cap on binomial(N, k) * N; defaults to the configured oracle budget

    Raises:
        BudgetExceededError: the enumeration is too large
    """
    g = A.group
    _check_k(g, k)
    n = g.order
    budget = config.ORACLE_BUDGET if budget is None else budget
    work = math.comb(n, k) * n
    if work > budget:
        raise BudgetExceededError(
            f"exhaustive search needs binomial({n}, {k}) * {n} = {work} steps, above the "
            f"budget {budget}; use alternating_maximize instead"
        )

    scorer = ShoreScorer(A)
    best: Optional[Tuple[int, Subset, Subset]] = None
    for combo in itertools.combinations(range(n), k):
        C = Subset(g, combo)
        B, value = _respond(scorer, C, k)
        if best is None or value > best[0]:
            best = (value, B, C)

    value, B, C = best
    logger.info(f"Exact maximum on {g} with k={k}: {value} over {math.comb(n, k)} shores")
    return _self_check(A, MaximizeResult(B=B, C=C, count=value, exact=True,
                                         iterations=math.comb(n, k), restarts_used=0))


def alternating_maximize(A: Subset, k: int, restarts: int = DEFAULT_RESTARTS, seed: int = 0,
                         max_iters: int = DEFAULT_MAX_ITERS,
                         on_step: Optional[StepCallback] = None) -> MaximizeResult:
    """
    Lower bound on max mu(A, B, C) by alternating best responses.

    Each restart r draws C uniformly with seed derive_seed(seed, r), then
    repeats B <- best_response(A, C), C <- best_response(A, B) until the count
    stops strictly increasing or max_iters rounds have run. The best restart
    wins, the lowest restart index on ties.

    Args:
        A: Target set
        k: Shore size
        restarts: Number of random starts
        seed: Master seed for the starts
        max_iters: Round limit per restart
        on_step: Called as on_step(restart, half_step, count) after every half-step

    Returns:
        MaximizeResult with exact=False; iterations is the total number of rounds
    """
    g = A.group
    _check_k(g, k)
    if restarts < 1:
        raise ConfigError(f"restarts must be >= 1, got {restarts}")
    if max_iters < 1:
        raise ConfigError(f"max_iters must be >= 1, got {max_iters}")

    scorer = ShoreScorer(A)
    best: Optional[Tuple[int, Subset, Subset]] = None
    total_rounds = 0

    for restart in range(restarts):
        C = sample_subset(g, k, derive_seed(seed, restart))
        current = -1
        half_step = 0
        for _ in range(max_iters):
            B, after_b = _respond(scorer, C, k)
            half_step += 1
            if on_step:
                on_step(restart, half_step, after_b)
            C, after_c = _respond(scorer, B, k)
            half_step += 1
            if on_step:
                on_step(restart, half_step, after_c)
            total_rounds += 1
            improved = after_c > current
            current = after_c
            if not improved:
                break
        logger.debug(f"Restart {restart}: count {current} after {half_step // 2} rounds")
        if best is None or current > best[0]:
            best = (current, B, C)

    value, B, C = best
    logger.info(f"Alternating maximization on {g} with k={k}: best {value} over {restarts} restarts")
    return _self_check(A, MaximizeResult(B=B, C=C, count=value, exact=False,
                                         iterations=total_rounds, restarts_used=restarts))
