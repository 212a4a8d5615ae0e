#!/usr/bin/env python3
"""
Maximizer Oracle Calibration Script

Draws random small instances (group order at most 12, shore size at most 3,
|A| at most 4), runs the alternating maximizer and the exhaustive search on
each, and reports how often the alternating maximizer reaches the true
maximum. It must never exceed it; any excess is reported as an error.

The hit rate measured here is the calibration target used by the oracle
integration test.
"""

import argparse
import json
import sys
from typing import Any, Dict, List

import numpy as np

from mu_lab.analysis.group import parse_group_spec
from mu_lab.analysis.maximizer import alternating_maximize, exact_maximize
from mu_lab.models.models import GroupSpec, Subset
from mu_lab.simulation.sampler import derive_seed, sample_subset
from mu_lab.utils.logging_config import LOG_LEVELS, configure_logging, get_logger
from mu_lab.config import LOG_CONFIG

# Set up logging
logger = get_logger(__name__)

# Every group of order at most 12, written as spec strings
SMALL_GROUPS = [
    "Z2^1", "Z2^2", "Z2^3", "Z(3)", "Z(4)", "Z(5)", "Z(6)", "Z(7)", "Z(8)", "Z(9)",
    "Z(10)", "Z(11)", "Z(12)", "Z(2)xZ(4)", "Z(3)xZ(3)", "Z(2)xZ(6)", "Z(2)xZ(2)xZ(3)",
]


def draw_instance(rng: np.random.Generator, instance_seed: int) -> Dict[str, Any]:
    """Pick a group, a shore size k <= 3 and a random A with |A| <= 4."""
    g: GroupSpec = parse_group_spec(SMALL_GROUPS[int(rng.integers(len(SMALL_GROUPS)))])
    k = int(rng.integers(1, min(3, g.order) + 1))
    size = int(rng.integers(1, min(4, g.order) + 1))
    A: Subset = sample_subset(g, size, instance_seed)
    return {'group': g, 'k': k, 'A': A}


def calibrate(instances: int, seed: int, restarts: int) -> Dict[str, Any]:
    """
    Compare the alternating maximizer with the exhaustive search.

    Args:
        instances: Number of random instances
        seed: Master seed for instance generation
        restarts: Restarts for the alternating maximizer

    Returns:
        Hit count, excess count and the instances that missed
    """
    rng = np.random.default_rng(seed)
    hits = 0
    excess = 0
    misses: List[Dict[str, Any]] = []
    for i in range(instances):
        instance = draw_instance(rng, derive_seed(seed, i))
        A, k = instance['A'], instance['k']
        exact = exact_maximize(A, k)
        heuristic = alternating_maximize(A, k, restarts=restarts, seed=derive_seed(seed, i))
        if heuristic.count > exact.count:
            excess += 1
            logger.error(f"Instance {i}: heuristic {heuristic.count} exceeds exact {exact.count}")
        elif heuristic.count == exact.count:
            hits += 1
        else:
            misses.append({'instance': i, 'group': str(instance['group']), 'k': k,
                           'A': list(A.elements), 'exact': exact.count, 'heuristic': heuristic.count})
    return {'instances': instances, 'hits': hits, 'excess': excess, 'misses': misses}


def main():
    """Main entry point for the script."""
    parser = argparse.ArgumentParser(description='Calibrate the alternating maximizer against exhaustive search')
    parser.add_argument('--instances', type=int, default=100, help='Number of random instances')
    parser.add_argument('--seed', type=int, default=0, help='Master seed')
    parser.add_argument('--restarts', type=int, default=20, help='Alternating maximizer restarts')
    parser.add_argument('--log-level', choices=list(LOG_LEVELS),
                        help='Set the logging level (default MU_LAB_LOG_LEVEL)')
    parser.add_argument('--log-file', help='Log to this file (in addition to stderr)')
    args = parser.parse_args()

    configure_logging(level=args.log_level or LOG_CONFIG['default_level'], log_file=args.log_file)
    result = calibrate(args.instances, args.seed, args.restarts)
    print(json.dumps(result, indent=2))
    return 1 if result['excess'] else 0


if __name__ == '__main__':
    sys.exit(main())
