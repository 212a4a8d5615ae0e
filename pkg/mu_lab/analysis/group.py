"""
Finite abelian groups as products of cyclic factors.

Elements are encoded as mixed-radix indices in [0, N) with the first factor
most significant, which is numpy's C order: ``np.unravel_index(x, factors)``
decodes and ``np.ravel_multi_index`` encodes. On Z2^n the index is the bit
string read as an integer and addition is XOR.
"""
import re
from typing import Sequence, Tuple, Union

import numpy as np

from mu_lab.core.exceptions import GroupSpecError
from mu_lab.models.models import GroupSpec
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)

_POWER_TOKEN = re.compile(r'^Z2\^(\d+)$')
_CYCLIC_TOKEN = re.compile(r'^Z\((\d+)\)$')

# Z2^n with n above this cannot fit in 64 bits
_MAX_BOOLEAN_RANK = 64

ArrayLike = Union[int, np.ndarray]


def parse_group_spec(text: str) -> GroupSpec:
    """
    Parse a group spec such as ``Z2^3``, ``Z(12)`` or ``Z(2)xZ(4)``.

    Args:
        text: The spec string; factors keep their written order

    Returns:
        The parsed GroupSpec

    Raises:
        GroupSpecError: malformed text, modulus below 2, or order above 2^64 - 1
    """
    compact = re.sub(r'\s+', '', text or '')
    if not compact:
        raise GroupSpecError("empty group spec")

    factors = []
    for token in compact.split('x'):
        power = _POWER_TOKEN.match(token)
        cyclic = _CYCLIC_TOKEN.match(token)
        if power:
            rank = int(power.group(1))
            if rank < 1:
                raise GroupSpecError(f"Z2^n needs n >= 1 in {text!r}")
            if rank > _MAX_BOOLEAN_RANK:
                raise GroupSpecError(f"group order overflows 64 bits in {text!r}")
            factors.extend([2] * rank)
        elif cyclic:
            factors.append(int(cyclic.group(1)))
        else:
            raise GroupSpecError(f"malformed group spec token {token!r} in {text!r}")

    group = GroupSpec(tuple(factors))
    logger.debug(f"Parsed group spec {text!r} -> factors {group.factors}, order {group.order}")
    return group


def format_group_spec(g: GroupSpec) -> str:
    """Canonical text form (Z2^n or Z(m1)xZ(m2)...); parse_group_spec reads it back to g."""
    return g.spec_string()


def check_element(g: GroupSpec, x: int) -> int:
    """Return x as an int, raising GroupSpecError unless 0 <= x < N."""
    x = int(x)
    if not 0 <= x < g.order:
        raise GroupSpecError(f"element {x} out of range for {g} (order {g.order})")
    return x


def decode(g: GroupSpec, x: int) -> Tuple[int, ...]:
    """Coordinates (x1, ..., xk) of element x, first factor most significant."""
    x = check_element(g, x)
    coords = []
    for m in reversed(g.factors):
        x, r = divmod(x, m)
        coords.append(r)
    return tuple(reversed(coords))


def encode(g: GroupSpec, coords: Sequence[int]) -> int:
    """Index of the element with the given coordinates."""
    if len(coords) != g.rank:
        raise GroupSpecError(f"expected {g.rank} coordinates for {g}, got {len(coords)}")
    x = 0
    for c, m in zip(coords, g.factors):
        c = int(c)
        if not 0 <= c < m:
            raise GroupSpecError(f"coordinate {c} out of range for Z({m})")
        x = x * m + c
    return x


def add(g: GroupSpec, x: int, y: int) -> int:
    """Group sum x + y."""
    x = check_element(g, x)
    y = check_element(g, y)
    if g.is_boolean:
        return x ^ y
    return encode(g, [(a + b) % m for a, b, m in zip(decode(g, x), decode(g, y), g.factors)])


def neg(g: GroupSpec, x: int) -> int:
    """Group inverse -x."""
    x = check_element(g, x)
    if g.is_boolean:
        return x
    return encode(g, [(-a) % m for a, m in zip(decode(g, x), g.factors)])


def add_many(g: GroupSpec, xs: ArrayLike, ys: ArrayLike) -> np.ndarray:
    """
    Elementwise group sum of index arrays (numpy broadcasting applies).

    Inputs are assumed valid; callers index dense vectors with the result.
    """
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if g.is_boolean:
        return np.bitwise_xor(xs, ys)
    xs, ys = np.broadcast_arrays(xs, ys)
    cx = np.unravel_index(xs, g.factors)
    cy = np.unravel_index(ys, g.factors)
    summed = tuple((a + b) % m for a, b, m in zip(cx, cy, g.factors))
    return np.ravel_multi_index(summed, g.factors).astype(np.int64)


def neg_many(g: GroupSpec, xs: ArrayLike) -> np.ndarray:
    """Elementwise group inverse of an index array."""
    xs = np.asarray(xs, dtype=np.int64)
    if g.is_boolean:
        return xs.copy()
    coords = np.unravel_index(xs, g.factors)
    negated = tuple((-a) % m for a, m in zip(coords, g.factors))
    return np.ravel_multi_index(negated, g.factors).astype(np.int64)
