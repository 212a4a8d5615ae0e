"""
Seeded random subsets.

All randomness flows from numpy's PCG64 generator (``np.random.default_rng``).
Independent streams are derived with ``SeedSequence([master_seed, index])``,
which mixes the pair through SeedSequence's hash and lets trials and
maximizer restarts run in any order with identical results.
"""
from typing import Set

import numpy as np

from mu_lab.core.exceptions import ConfigError
from mu_lab.models.models import GroupSpec, Subset
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)


def derive_seed(master_seed: int, index: int) -> int:
    """
    Child seed for stream `index` of `master_seed`.

    Args:
        master_seed: Unsigned 64-bit master seed
        index: Trial or restart index

    Returns:
        An unsigned 64-bit seed
    """
    state = np.random.SeedSequence([int(master_seed), int(index)]).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _distinct_draws(rng: np.random.Generator, n: int, count: int) -> Set[int]:
    """First `count` distinct values of an i.i.d. uniform stream on [0, n)."""
    chosen: Set[int] = set()
    while len(chosen) < count:
        # Only draw what is still missing
        batch = rng.integers(0, n, size=count - len(chosen), dtype=np.uint64)
        for value in batch.tolist():
            chosen.add(value)
            if len(chosen) == count:
                break
    return chosen


def sample_subset(g: GroupSpec, m: int, seed: int, replacement: bool = False) -> Subset:
    """
    Draw a random subset (or multiset) of size m.

    Without replacement every m-subset is equally likely; draws are rejected
    against a hash set, and for m > N/2 the complement is drawn instead.
    With replacement the result is the multiset of m independent uniform draws.

    Args:
        g: The group
        m: Size (number of draws with replacement)
        seed: Generator seed
        replacement: Sample with replacement

    Returns:
        The sampled Subset, with multiplicities in replacement mode
    """
    n = g.order
    if m < 1:
        raise ConfigError(f"subset size must be >= 1, got {m}")
    rng = np.random.default_rng(seed)

    if replacement:
        draws = rng.integers(0, n, size=m, dtype=np.uint64)
        values, counts = np.unique(draws, return_counts=True)
        return Subset(g, tuple(values.tolist()), tuple(counts.tolist()))

    if m > n:
        raise ConfigError(f"cannot draw {m} distinct elements from a group of order {n}")
    if 2 * m <= n:
        elements = sorted(_distinct_draws(rng, n, m))
    else:
        excluded = _distinct_draws(rng, n, n - m)
        elements = [x for x in range(n) if x not in excluded]
    logger.debug(f"Sampled {m} elements of {g} with seed {seed}")
    return Subset(g, tuple(elements))
