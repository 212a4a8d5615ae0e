"""
Reading and writing subset files.

A subset file lists one decimal element index per line. Blank lines and
anything after '#' are ignored. Repeated indices are only accepted when the
file is read as a multiset.
"""
import os
from typing import Dict, List

from mu_lab.core.exceptions import SubsetFileError
from mu_lab.models.models import GroupSpec, Subset
from mu_lab.utils.logging_config import get_logger

# Set up logging
logger = get_logger(__name__)


def load_subset_file(path: str, group: GroupSpec, allow_duplicates: bool = False) -> Subset:
    """
    Load a subset file.

    Args:
        path: Path to the file
        group: Group the indices belong to
        allow_duplicates: Read repeated indices as multiplicities

    Returns:
        The Subset described by the file

    Raises:
        SubsetFileError: unreadable file, bad line, out-of-range or repeated index
    """
    if not os.path.exists(path):
        raise SubsetFileError(path, "file not found")

    counts: Dict[int, int] = {}
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = f.readlines()
    except (OSError, UnicodeDecodeError) as e:
        raise SubsetFileError(path, f"cannot read file: {e}") from e

    for line_number, raw in enumerate(lines, start=1):
        text = raw.split('#', 1)[0].strip()
        if not text:
            continue
        if not (text.isascii() and text.isdigit()):
            raise SubsetFileError(path, f"expected a decimal element index, got {text!r}", line_number)
        x = int(text)
        if x >= group.order:
            raise SubsetFileError(path, f"element {x} out of range for {group} (order {group.order})",
                                  line_number)
        if x in counts and not allow_duplicates:
            raise SubsetFileError(path, f"duplicate element {x}", line_number)
        counts[x] = counts.get(x, 0) + 1

    elements = sorted(counts)
    if allow_duplicates and any(c > 1 for c in counts.values()):
        subset = Subset(group, tuple(elements), tuple(counts[x] for x in elements))
    else:
        subset = Subset(group, tuple(elements))
    logger.debug(f"Loaded {subset.size} elements of {group} from {path}")
    return subset


def format_subset(subset: Subset) -> str:
    """Subset file text: one index per line, repeated per multiplicity."""
    lines: List[str] = []
    for x, w in zip(subset.elements, subset.weights.tolist()):
        lines.extend([str(x)] * w)
    return "\n".join(lines) + ("\n" if lines else "")


def write_subset_file(path: str, subset: Subset) -> str:
    """
    Write a subset file that load_subset_file reads back to the same Subset.

    Args:
        path: Destination path
        subset: The subset to write

    Returns:
        The path written
    """
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, 'w') as f:
        f.write(format_subset(subset))
    logger.info(f"Wrote {subset.size} elements to {path}")
    return path
